#pragma once

#include "minklab/core.hpp"

#include <functional>
#include <optional>
#include <random>
#include <utility>

namespace minklab {

struct LorentzCheck
{
    bool ok;
    double residual; // max |(L^T G L - G)_ij|
};

LorentzCheck is_lorentz(const Mat& L, double tol = 1e-10);

class AffineIsometry
{
public:
    AffineIsometry(Mat linear, MinkVector translation, double tol = 1e-9);
    static AffineIsometry identity(int n);

    const Mat& linear() const { return l_; }
    const MinkVector& translation() const { return a_; }
    int dim() const { return static_cast<int>(l_.rows()); }
    bool proper() const { return proper_; }
    bool orthochronous() const { return orthochronous_; }

    Event apply(const Event& p) const;
    MinkVector apply(const MinkVector& v) const;
    AffineIsometry compose(const AffineIsometry& inner) const; // this o inner
    AffineIsometry inverse() const;

private:
    Mat l_;
    MinkVector a_;
    bool proper_ = true;
    bool orthochronous_ = true;
};

class Reflection
{
public:
    explicit Reflection(MinkVector axis);

    const MinkVector& axis() const { return v_; }
    MinkVector apply(const MinkVector& x) const;
    Mat matrix() const;

private:
    MinkVector v_;
};

MinkVector reflect(const MinkVector& v, const MinkVector& x);

// Reflections rho_1..rho_k with rho_1 * rho_2 * ... * rho_k = L.
std::vector<Reflection> cartan_dieudonne(const Mat& L);
Mat compose_reflections(const std::vector<Reflection>& rs, int n);

struct Dilation
{
    double factor;
    Event center;

    Dilation(double lambda, Event m);
};

Event dilation_apply(const Dilation& d, const Event& p);

struct ConformalFactor
{
    double alpha = 0.0;
    double residual = 0.0;
    std::optional<MinkVector> violated_probe; // image of this probe is not lightlike
};

std::vector<MinkVector> lightcone_probes(int n);
ConformalFactor conformal_factor(const Mat& f, double tol = 1e-9);

enum class CausalRelation { causal_future, chronological_future, lightlike_future, interval_sign };

std::string to_string(CausalRelation r);
bool related(CausalRelation r, const Event& p, const Event& q, double tol = 1e-9);

struct RelationReport
{
    std::vector<std::pair<int, int>> forward;  // p~q but not F(p)~F(q)
    std::vector<std::pair<int, int>> backward; // F(p)~F(q) but not p~q
    bool empty() const { return forward.empty() && backward.empty(); }
};

RelationReport relation_preservation_harness(const std::vector<std::pair<Event, Event>>& map, CausalRelation r,
                                             double tol = 1e-9);

struct UnitDistanceReport
{
    int pairs = 0;
    std::vector<std::pair<Vec, Vec>> violations;
    double max_error = 0.0;
    bool empty() const { return violations.empty(); }
};

using EuclideanMap = std::function<Vec(const Vec&)>;
UnitDistanceReport unit_distance_harness(const EuclideanMap& f, int n, double delta, int samples,
                                         unsigned long long seed, double tol = 1e-9);

// Spot checks around the "product preserving surjection is linear" statement.
using VectorMap = std::function<MinkVector(const MinkVector&)>;
double product_preservation_residual(const VectorMap& f, const std::vector<MinkVector>& probes);
double nonlinearity_residual(const VectorMap& f, const std::vector<MinkVector>& probes);

// Random test material.
Mat random_rotation(int n_spatial, std::mt19937_64& rng);
Mat boost_matrix(const Vec& direction, double rapidity); // acts on (ct, x, ...)
Mat random_lorentz(int n, std::mt19937_64& rng, bool allow_improper = false);

} // namespace minklab
