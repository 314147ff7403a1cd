#pragma once

#include "minklab/core.hpp"

#include <vector>

namespace minklab {

// f(x) = (A x + a) / (p.x + q), singular on the hyperplane p.x + q = 0.
struct ProjectiveMap
{
    Mat A;
    Vec a;
    Vec p; // covector, contracted with plain coordinates
    double q = 1.0;

    ProjectiveMap(Mat A_, Vec a_, Vec p_, double q_);
    bool proper() const { return !p.isZero(0.0); }
    double denominator(const Event& x) const { return p.dot(x.coordinates()) + q; }
};

Event proj_apply(const ProjectiveMap& m, const Event& x, double eps_s = 1e-8);

// Smallest-to-largest singular value ratio of the centred point cloud: 0 iff collinear.
double collinearity_residual(const std::vector<Event>& points);

struct ImageLine
{
    double sigma;
    Eigen::Vector2d direction;  // unit, from the analytic velocity (e0 + sigma e1)/(1-s)^2
    double max_s_deviation = 0; // angle spread of fd image directions over sampled s
};

struct ImageLinesReport
{
    std::vector<ImageLine> lines;
    std::vector<std::vector<double>> pairwise_angle; // radians
};

// Image of the parallel lines x(s, sigma) = s e0 + sigma e1 under x -> x / (1 - e0.x).
ImageLinesReport parallelism_breaking_demo(const std::vector<double>& sigmas);

struct SpaceTimePoint
{
    double t = 0.0;
    Eigen::Vector3d x = Eigen::Vector3d::Zero();
};

struct FLBoost
{
    Eigen::Vector3d v;
    double c;
    double R;

    FLBoost(Eigen::Vector3d v_, double c_, double R_);
    double gamma() const;
};

SpaceTimePoint fl_boost_apply(const FLBoost& b, const SpaceTimePoint& e, double eps_s = 1e-8);
SpaceTimePoint lorentz_boost_apply(const Eigen::Vector3d& v, double c, const SpaceTimePoint& e);
SpaceTimePoint deformation_phi(double R, double c, const SpaceTimePoint& e, double eps_s = 1e-8);
SpaceTimePoint deformation_phi_inverse(double R, double c, const SpaceTimePoint& e, double eps_s = 1e-8);

struct ConjugationReport
{
    double max_residual = 0.0;
    int valid = 0;
    int skipped = 0;
};

ConjugationReport conjugation_check(const FLBoost& b, const std::vector<SpaceTimePoint>& samples,
                                    double eps_s = 1e-8);

// Time slabs of the deformation map:
// [0,R/c) -> [0,inf), (R/c,inf) -> (-inf,-R/c), (-inf,0] -> (-R/c,0]
enum class TimeSlab { past, early, late, singular }; // t<=0, 0<t<R/c, t>R/c, t=R/c

TimeSlab time_slab(double R, double c, double t);
bool in_expected_image(TimeSlab s, double R, double c, double t_image);

} // namespace minklab
