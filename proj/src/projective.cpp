#include "minklab/projective.hpp"

#include <algorithm>
#include <cmath>

namespace minklab {

ProjectiveMap::ProjectiveMap(Mat A_, Vec a_, Vec p_, double q_) : A(std::move(A_)), a(std::move(a_)), p(std::move(p_)), q(q_)
{
    if (A.rows() != A.cols() || A.rows() != a.size() || A.rows() != p.size())
        throw PreconditionError("ProjectiveMap: inconsistent dimensions");
}

Event proj_apply(const ProjectiveMap& m, const Event& x, double eps_s)
{
    if (x.dim() != m.A.rows())
        throw PreconditionError("proj_apply: dimension mismatch");
    const double den = m.denominator(x);
    if (!(std::abs(den) > eps_s))
        throw SingularityError("proj_apply: event is on (or too close to) the singular hyperplane");
    return Event(Vec((m.A * x.coordinates() + m.a) / den));
}

double collinearity_residual(const std::vector<Event>& points)
{
    if (points.size() < 2)
        throw PreconditionError("collinearity_residual: need at least two points");
    const int n = points[0].dim();
    const int m = static_cast<int>(points.size());
    double scale = 0.0;
    for (const auto& p : points)
        scale = std::max(scale, p.coordinates().cwiseAbs().maxCoeff());
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if ((points[i] - points[j]).euclidean_norm2() <= 1e-28 * std::max(1.0, scale * scale))
                throw PreconditionError("collinearity_residual: duplicate points");
    if (m == 2)
        return 0.0;

    Vec mean = Vec::Zero(n);
    for (const auto& p : points)
        mean += p.coordinates();
    mean /= m;
    Mat d(m, n);
    for (int i = 0; i < m; ++i)
        d.row(i) = (points[i].coordinates() - mean).transpose();
    Eigen::JacobiSVD<Mat> svd(d);
    const Vec s = svd.singularValues();
    return s.size() > 1 ? s[1] / s[0] : 0.0;
}

ImageLinesReport parallelism_breaking_demo(const std::vector<double>& sigmas)
{
    for (std::size_t i = 0; i < sigmas.size(); ++i)
        for (std::size_t j = i + 1; j < sigmas.size(); ++j)
            if (sigmas[i] == sigmas[j])
                throw PreconditionError("parallelism_breaking_demo: sigma values must be distinct");

    // f(x) = x / (-e0.x + 1) in two dimensions
    Mat A = Mat::Identity(2, 2);
    Vec a = Vec::Zero(2), p(2);
    p << -1.0, 0.0;
    const ProjectiveMap f(A, a, p, 1.0);

    ImageLinesReport rep;
    const double h = 1e-5;
    for (double sigma : sigmas) {
        ImageLine line;
        line.sigma = sigma;
        line.direction = Eigen::Vector2d(1.0, sigma).normalized();
        // fd tangent of the image curve at several s, compared with the analytic direction
        for (double s : {-2.0, -0.5, 0.0, 0.3, 0.6, 2.0, 4.0}) {
            auto y = [&](double ss) { return proj_apply(f, Event{ss, sigma}).coordinates(); };
            Eigen::Vector2d dy = (y(s + h) - y(s - h)) / (2 * h);
            // image of the parameter line runs backwards beyond the singular line s = 1
            if (dy.dot(line.direction) < 0)
                dy = -dy;
            const double ang = std::acos(std::clamp(dy.normalized().dot(line.direction), -1.0, 1.0));
            line.max_s_deviation = std::max(line.max_s_deviation, ang);
        }
        rep.lines.push_back(line);
    }
    const std::size_t k = rep.lines.size();
    rep.pairwise_angle.assign(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            rep.pairwise_angle[i][j] =
                std::acos(std::clamp(rep.lines[i].direction.dot(rep.lines[j].direction), -1.0, 1.0));
    return rep;
}

// ---------------------------------------------------------------------------
FLBoost::FLBoost(Eigen::Vector3d v_, double c_, double R_) : v(std::move(v_)), c(c_), R(R_)
{
    if (!(c > 0.0) || !(R > 0.0))
        throw PreconditionError("FLBoost: c and R must be positive");
    if (!(v.norm() < c))
        throw PreconditionError("FLBoost: superluminal velocity");
}

double FLBoost::gamma() const { return 1.0 / std::sqrt(1.0 - v.squaredNorm() / (c * c)); }

namespace {

// numerators of the boost: (gamma(t - v.x/c^2), gamma(x_par - v t) + x_perp)
SpaceTimePoint boost_numerators(const Eigen::Vector3d& v, double c, const SpaceTimePoint& e)
{
    const double v2 = v.squaredNorm();
    if (v2 == 0.0)
        return e;
    const double g = 1.0 / std::sqrt(1.0 - v2 / (c * c));
    const Eigen::Vector3d xpar = v * (v.dot(e.x) / v2);
    const Eigen::Vector3d xperp = e.x - xpar;
    return {g * (e.t - v.dot(e.x) / (c * c)), g * (xpar - v * e.t) + xperp};
}

} // namespace

SpaceTimePoint lorentz_boost_apply(const Eigen::Vector3d& v, double c, const SpaceTimePoint& e)
{
    if (!(v.norm() < c))
        throw PreconditionError("lorentz_boost_apply: superluminal velocity");
    return boost_numerators(v, c, e);
}

SpaceTimePoint fl_boost_apply(const FLBoost& b, const SpaceTimePoint& e, double eps_s)
{
    const double g = b.gamma();
    const double den = 1.0 - (g - 1.0) * b.c * e.t / b.R + g * b.v.dot(e.x) / (b.R * b.c);
    if (!(std::abs(den) > eps_s))
        throw SingularityError("fl_boost_apply: singular denominator");
    const SpaceTimePoint num = boost_numerators(b.v, b.c, e);
    return {num.t / den, num.x / den};
}

SpaceTimePoint deformation_phi(double R, double c, const SpaceTimePoint& e, double eps_s)
{
    const double den = 1.0 - c * e.t / R;
    if (!(std::abs(den) > eps_s))
        throw SingularityError("deformation_phi: t = R/c is singular");
    return {e.t / den, e.x / den};
}

SpaceTimePoint deformation_phi_inverse(double R, double c, const SpaceTimePoint& e, double eps_s)
{
    const double den = 1.0 + c * e.t / R;
    if (!(std::abs(den) > eps_s))
        throw SingularityError("deformation_phi_inverse: t = -R/c is singular");
    return {e.t / den, e.x / den};
}

ConjugationReport conjugation_check(const FLBoost& b, const std::vector<SpaceTimePoint>& samples, double eps_s)
{
    ConjugationReport rep;
    for (const auto& e : samples) {
        try {
            const SpaceTimePoint direct = fl_boost_apply(b, e, eps_s);
            const SpaceTimePoint two =
                deformation_phi(b.R, b.c, lorentz_boost_apply(b.v, b.c, deformation_phi_inverse(b.R, b.c, e, eps_s)),
                                eps_s);
            const double scale = std::max(1.0, std::abs(b.c * direct.t) + direct.x.norm());
            const double r = (std::abs(b.c * (direct.t - two.t)) + (direct.x - two.x).norm()) / scale;
            rep.max_residual = std::max(rep.max_residual, r);
            ++rep.valid;
        } catch (const SingularityError&) {
            ++rep.skipped;
        }
    }
    return rep;
}

TimeSlab time_slab(double R, double c, double t)
{
    const double T = R / c;
    if (t == T)
        return TimeSlab::singular;
    if (t <= 0.0)
        return TimeSlab::past;
    return t < T ? TimeSlab::early : TimeSlab::late;
}

bool in_expected_image(TimeSlab s, double R, double c, double ti)
{
    const double T = R / c;
    switch (s) {
    case TimeSlab::past: return ti > -T && ti <= 0.0;
    case TimeSlab::early: return ti >= 0.0;
    case TimeSlab::late: return ti < -T;
    case TimeSlab::singular: return false;
    }
    return false;
}

} // namespace minklab
