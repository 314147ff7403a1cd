#pragma once

#include <Eigen/Dense>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace minklab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Raised when an operation is called outside its domain of definition.
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Raised when a formula hits a genuine singularity (pole, caustic, ...).
struct SingularityError : std::domain_error {
    using std::domain_error::domain_error;
};

/**
A vector of the n-dimensional Minkowski vector space. Components are
(x^0, x^1, ..., x^{n-1}) with x^0 = ct, and the form is
g = diag(1, -1, ..., -1).
*/
class MinkVector
{
public:
    MinkVector() = default;
    explicit MinkVector(Vec components);
    MinkVector(std::initializer_list<double> components);

    static MinkVector zero(int n);
    static MinkVector basis(int n, int a);

    int dim() const { return static_cast<int>(c_.size()); }
    double operator[](int a) const { return c_[a]; }
    const Vec& components() const { return c_; }

    MinkVector operator+(const MinkVector& w) const;
    MinkVector operator-(const MinkVector& w) const;
    MinkVector operator-() const;
    MinkVector operator*(double s) const;
    MinkVector operator/(double s) const;

    double euclidean_norm2() const { return c_.squaredNorm(); }
    bool is_zero() const { return c_.isZero(0.0); }

private:
    Vec c_;
};

MinkVector operator*(double s, const MinkVector& v);

/**
A point of the affine Minkowski space. Differences of events are vectors;
events can be translated by vectors, but never added to each other.
*/
class Event
{
public:
    Event() = default;
    explicit Event(Vec coordinates);
    Event(std::initializer_list<double> coordinates);

    static Event origin(int n);

    int dim() const { return static_cast<int>(x_.size()); }
    double operator[](int a) const { return x_[a]; }
    const Vec& coordinates() const { return x_; }

    MinkVector operator-(const Event& q) const;
    Event operator+(const MinkVector& v) const;
    Event operator-(const MinkVector& v) const;

private:
    Vec x_;
};

Mat metric_matrix(int n);

double inner(const MinkVector& v, const MinkVector& w);
inline double square(const MinkVector& v) { return inner(v, v); }
double norm_g(const MinkVector& v); // sqrt|g(v,v)|

// d(p,q) = ||p - q||_g; deliberately not a metric in the topological sense.
double minkowski_distance(const Event& p, const Event& q);

struct Metric
{
    int dim = 4;
    MinkVector future_ref;
    double tol = 1e-10;
    double c = 1.0;

    explicit Metric(int n = 4, double tol = 1e-10);
    Metric(int n, MinkVector future_ref, double tol = 1e-10, double c = 1.0);
};

enum class CausalLabel { zero, timelike, lightlike, spacelike };
enum class TimeOrientation { none, future, past };

struct CausalClass
{
    CausalLabel label = CausalLabel::zero;
    TimeOrientation orientation = TimeOrientation::none;

    bool causal() const { return label == CausalLabel::timelike || label == CausalLabel::lightlike; }
    bool future() const { return orientation == TimeOrientation::future; }
    bool past() const { return orientation == TimeOrientation::past; }
};

CausalClass classify(const MinkVector& v, const Metric& m);
std::string to_string(CausalLabel l);
std::string to_string(TimeOrientation o);

enum class CSCase { less_equal, equal, greater_equal };

struct CauchySchwarzResult
{
    CSCase which;
    CausalLabel span; // timelike, lightlike or spacelike
    double lhs;       // v^2 w^2
    double rhs;       // (v.w)^2
};

CauchySchwarzResult cauchy_schwarz_case(const MinkVector& v, const MinkVector& w, double tol = 1e-10);

struct InvertedCSResult
{
    bool holds = true;
    MinkVector witness; // set when !holds
    int tested = 0;
};

InvertedCSResult strict_inverted_cs_holds(const MinkVector& v, int sample_count, unsigned long long seed);

struct TriangleResult
{
    bool holds;
    double slack; // ||v+w|| - ||v|| - ||w||
};

TriangleResult reversed_triangle_check(const MinkVector& v, const MinkVector& w, const Metric& m);

Event affine_combination(const std::vector<Event>& points, const std::vector<double>& weights, std::size_t base = 0);

class Hyperplane
{
public:
    Hyperplane(MinkVector normal, Event base);

    const MinkVector& normal() const { return normal_; }
    const Event& base() const { return base_; }
    bool degenerate(double tol = 1e-10) const;

    double level(const Event& x) const { return inner(normal_, x - base_); }
    bool contains(const Event& x, double tol = 1e-10) const;

private:
    MinkVector normal_;
    Event base_;
};

class AffineFrame
{
public:
    AffineFrame(Event origin, std::vector<MinkVector> basis);

    const Event& origin() const { return origin_; }
    const std::vector<MinkVector>& basis() const { return basis_; }

    Vec coords(const Event& p) const;
    Event point(const Vec& x) const;

private:
    Event origin_;
    std::vector<MinkVector> basis_;
    Mat b_;
    Eigen::PartialPivLU<Mat> lu_;
};

inline Vec frame_coords(const AffineFrame& f, const Event& p) { return f.coords(p); }
inline Event frame_point(const AffineFrame& f, const Vec& x) { return f.point(x); }

bool affinely_independent(const std::vector<Event>& points, std::size_t base = 0);

} // namespace minklab
