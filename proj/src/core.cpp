#include "minklab/core.hpp"

#include <cmath>
#include <random>

namespace minklab {

namespace {

void require_same_dim(int a, int b)
{
    if (a != b)
        throw PreconditionError("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

} // namespace

// ---------------------------------------------------------------------------
MinkVector::MinkVector(Vec components) : c_(std::move(components)) {}

MinkVector::MinkVector(std::initializer_list<double> components) : c_(static_cast<Eigen::Index>(components.size()))
{
    int i = 0;
    for (double x : components)
        c_[i++] = x;
}

MinkVector MinkVector::zero(int n) { return MinkVector(Vec::Zero(n)); }

MinkVector MinkVector::basis(int n, int a)
{
    Vec e = Vec::Zero(n);
    e[a] = 1.0;
    return MinkVector(e);
}

MinkVector MinkVector::operator+(const MinkVector& w) const
{
    require_same_dim(dim(), w.dim());
    return MinkVector(Vec(c_ + w.c_));
}

MinkVector MinkVector::operator-(const MinkVector& w) const
{
    require_same_dim(dim(), w.dim());
    return MinkVector(Vec(c_ - w.c_));
}

MinkVector MinkVector::operator-() const { return MinkVector(Vec(-c_)); }
MinkVector MinkVector::operator*(double s) const { return MinkVector(Vec(c_ * s)); }
MinkVector MinkVector::operator/(double s) const { return MinkVector(Vec(c_ / s)); }
MinkVector operator*(double s, const MinkVector& v) { return v * s; }

// ---------------------------------------------------------------------------
Event::Event(Vec coordinates) : x_(std::move(coordinates)) {}

Event::Event(std::initializer_list<double> coordinates) : x_(static_cast<Eigen::Index>(coordinates.size()))
{
    int i = 0;
    for (double x : coordinates)
        x_[i++] = x;
}

Event Event::origin(int n) { return Event(Vec::Zero(n)); }

MinkVector Event::operator-(const Event& q) const
{
    require_same_dim(dim(), q.dim());
    return MinkVector(Vec(x_ - q.x_));
}

Event Event::operator+(const MinkVector& v) const
{
    require_same_dim(dim(), v.dim());
    return Event(Vec(x_ + v.components()));
}

Event Event::operator-(const MinkVector& v) const
{
    require_same_dim(dim(), v.dim());
    return Event(Vec(x_ - v.components()));
}

// ---------------------------------------------------------------------------
Mat metric_matrix(int n)
{
    Mat g = -Mat::Identity(n, n);
    g(0, 0) = 1.0;
    return g;
}

double inner(const MinkVector& v, const MinkVector& w)
{
    require_same_dim(v.dim(), w.dim());
    double s = v[0] * w[0];
    for (int i = 1; i < v.dim(); ++i)
        s -= v[i] * w[i];
    return s;
}

double norm_g(const MinkVector& v) { return std::sqrt(std::abs(square(v))); }

double minkowski_distance(const Event& p, const Event& q) { return norm_g(p - q); }

// ---------------------------------------------------------------------------
Metric::Metric(int n, double tol_) : Metric(n, MinkVector::basis(n, 0), tol_) {}

Metric::Metric(int n, MinkVector ref, double tol_, double c_) : dim(n), future_ref(std::move(ref)), tol(tol_), c(c_)
{
    if (n < 2)
        throw PreconditionError("Metric: dimension must be at least 2");
    require_same_dim(n, future_ref.dim());
    if (tol < 0.0)
        throw PreconditionError("Metric: negative tolerance");
    if (c <= 0.0)
        throw PreconditionError("Metric: c must be positive");
    if (!(square(future_ref) > tol * future_ref.euclidean_norm2()))
        throw PreconditionError("Metric: future reference vector must be timelike");
}

CausalClass classify(const MinkVector& v, const Metric& m)
{
    require_same_dim(v.dim(), m.dim);
    CausalClass cc;
    const double e2 = v.euclidean_norm2();
    if (e2 == 0.0)
        return cc;

    const double q = square(v);
    if (q > m.tol * e2)
        cc.label = CausalLabel::timelike;
    else if (std::abs(q) <= m.tol * e2)
        cc.label = CausalLabel::lightlike;
    else
        cc.label = CausalLabel::spacelike;

    if (cc.causal())
        cc.orientation = inner(v, m.future_ref) > 0.0 ? TimeOrientation::future : TimeOrientation::past;
    return cc;
}

std::string to_string(CausalLabel l)
{
    switch (l) {
    case CausalLabel::zero: return "zero";
    case CausalLabel::timelike: return "timelike";
    case CausalLabel::lightlike: return "lightlike";
    case CausalLabel::spacelike: return "spacelike";
    }
    return "?";
}

std::string to_string(TimeOrientation o)
{
    switch (o) {
    case TimeOrientation::none: return "none";
    case TimeOrientation::future: return "future";
    case TimeOrientation::past: return "past";
    }
    return "?";
}

// ---------------------------------------------------------------------------
namespace {

// |v ^ w|^2 in the auxiliary Euclidean structure, relative to |v|^2 |w|^2
double relative_wedge2(const MinkVector& v, const MinkVector& w)
{
    const double vv = v.euclidean_norm2(), ww = w.euclidean_norm2();
    if (vv == 0.0 || ww == 0.0)
        return 0.0;
    const double vw = v.components().dot(w.components());
    return (vv * ww - vw * vw) / (vv * ww);
}

} // namespace

CauchySchwarzResult cauchy_schwarz_case(const MinkVector& v, const MinkVector& w, double tol)
{
    require_same_dim(v.dim(), w.dim());
    if (relative_wedge2(v, w) <= 1e-24)
        throw PreconditionError("cauchy_schwarz_case: vectors are linearly dependent");

    CauchySchwarzResult r{};
    r.lhs = square(v) * square(w);
    const double vw = inner(v, w);
    r.rhs = vw * vw;

    // The Gram determinant of span{v,w} decides its causal character.
    const double scale = v.euclidean_norm2() * w.euclidean_norm2();
    const double det = r.lhs - r.rhs;
    if (det < -tol * scale) {
        r.which = CSCase::less_equal;
        r.span = CausalLabel::timelike;
    } else if (det > tol * scale) {
        r.which = CSCase::greater_equal;
        r.span = CausalLabel::spacelike;
    } else {
        r.which = CSCase::equal;
        r.span = CausalLabel::lightlike;
    }
    return r;
}

InvertedCSResult strict_inverted_cs_holds(const MinkVector& v, int sample_count, unsigned long long seed)
{
    const int n = v.dim();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;

    // a vector with nonzero product against v, used to project into v-perp when v is null
    MinkVector probe = MinkVector::basis(n, 0);
    if (std::abs(inner(probe, v)) < 1e-12 * std::sqrt(v.euclidean_norm2()))
        probe = MinkVector::basis(n, 1);

    const double v2 = square(v);
    const bool null_v = std::abs(v2) <= 1e-12 * v.euclidean_norm2();

    InvertedCSResult out;
    auto test = [&](const MinkVector& w) {
        if (relative_wedge2(v, w) <= 1e-12)
            return true;
        ++out.tested;
        const double vw = inner(v, w);
        const double scale = v.euclidean_norm2() * w.euclidean_norm2();
        if (v2 * square(w) >= vw * vw - 1e-12 * scale) {
            out.holds = false;
            out.witness = w;
            return false;
        }
        return true;
    };

    for (int s = 0; s < sample_count; ++s) {
        Vec c(n);
        for (int a = 0; a < n; ++a)
            c[a] = gauss(rng);
        MinkVector w(c);
        if (!test(w))
            return out;

        // Projection into v-perp: this is where the inequality is tightest.
        MinkVector wp = null_v ? w - probe * (inner(w, v) / inner(probe, v)) : w - v * (inner(w, v) / v2);
        if (!test(wp))
            return out;
    }
    return out;
}

TriangleResult reversed_triangle_check(const MinkVector& v, const MinkVector& w, const Metric& m)
{
    const CausalClass cv = classify(v, m), cw = classify(w, m);
    if (cv.label != CausalLabel::timelike || cw.label != CausalLabel::timelike)
        throw PreconditionError("reversed_triangle_check: both vectors must be timelike");
    if (cv.orientation != cw.orientation)
        throw PreconditionError("reversed_triangle_check: vectors must share a time orientation");

    const double lhs = norm_g(v + w);
    const double rhs = norm_g(v) + norm_g(w);
    const double slack = lhs - rhs;
    return {slack >= -1e-12 * std::max(1.0, lhs), slack};
}

Event affine_combination(const std::vector<Event>& points, const std::vector<double>& weights, std::size_t base)
{
    if (points.empty() || points.size() != weights.size())
        throw PreconditionError("affine_combination: need one weight per point");
    if (base >= points.size())
        throw PreconditionError("affine_combination: base index out of range");
    double sum = 0.0;
    for (double w : weights)
        sum += w;
    if (std::abs(sum - 1.0) > 1e-12)
        throw PreconditionError("affine_combination: weights must sum to 1");

    const Event& o = points[base];
    MinkVector d = MinkVector::zero(o.dim());
    for (std::size_t i = 0; i < points.size(); ++i)
        if (i != base)
            d = d + weights[i] * (points[i] - o);
    return o + d;
}

// ---------------------------------------------------------------------------
Hyperplane::Hyperplane(MinkVector normal, Event base) : normal_(std::move(normal)), base_(std::move(base))
{
    require_same_dim(normal_.dim(), base_.dim());
    if (normal_.is_zero())
        throw PreconditionError("Hyperplane: zero normal");
}

bool Hyperplane::degenerate(double tol) const { return std::abs(square(normal_)) <= tol * normal_.euclidean_norm2(); }

bool Hyperplane::contains(const Event& x, double tol) const
{
    const double scale = std::sqrt(normal_.euclidean_norm2()) * std::max(1.0, std::sqrt((x - base_).euclidean_norm2()));
    return std::abs(level(x)) <= tol * scale;
}

// ---------------------------------------------------------------------------
AffineFrame::AffineFrame(Event origin, std::vector<MinkVector> basis)
    : origin_(std::move(origin)), basis_(std::move(basis))
{
    const int n = origin_.dim();
    if (static_cast<int>(basis_.size()) != n)
        throw PreconditionError("AffineFrame: need exactly n basis vectors");
    b_.resize(n, n);
    for (int a = 0; a < n; ++a) {
        require_same_dim(n, basis_[a].dim());
        b_.col(a) = basis_[a].components();
    }
    Eigen::FullPivLU<Mat> check(b_);
    check.setThreshold(1e-12);
    if (!check.isInvertible())
        throw PreconditionError("AffineFrame: basis is linearly dependent");
    lu_.compute(b_);
}

Vec AffineFrame::coords(const Event& p) const { return lu_.solve((p - origin_).components()); }

Event AffineFrame::point(const Vec& x) const
{
    require_same_dim(static_cast<int>(x.size()), origin_.dim());
    return origin_ + MinkVector(Vec(b_ * x));
}

bool affinely_independent(const std::vector<Event>& points, std::size_t base)
{
    if (points.empty())
        throw PreconditionError("affinely_independent: empty point list");
    if (base >= points.size())
        throw PreconditionError("affinely_independent: base index out of range");
    const int n = points[0].dim();
    const int m = static_cast<int>(points.size()) - 1;
    if (m > n)
        throw PreconditionError("affinely_independent: more than n+1 points");
    if (m == 0)
        return true;

    Mat d(n, m);
    double scale = 0.0;
    int col = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i == base)
            continue;
        d.col(col++) = (points[i] - points[base]).components();
    }
    scale = d.cwiseAbs().maxCoeff();
    if (scale == 0.0)
        return false;
    Eigen::FullPivLU<Mat> lu(d / scale);
    lu.setThreshold(1e-10);
    return lu.rank() == m;
}

} // namespace minklab
