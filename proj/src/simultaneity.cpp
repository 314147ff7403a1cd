#include "minklab/simultaneity.hpp"

#include <cmath>

namespace minklab {

WorldLine::WorldLine(Event base, MinkVector direction) : r_(std::move(base)), v_(std::move(direction))
{
    if (r_.dim() != v_.dim())
        throw PreconditionError("WorldLine: dimension mismatch");
    if (v_.is_zero())
        throw PreconditionError("WorldLine: zero direction");
}

WorldLine WorldLine::canonical(double c) const
{
    const double v2 = square(v_);
    const double e2 = v_.euclidean_norm2();
    MinkVector v = v_;
    if (v2 > 1e-12 * e2) {
        v = v * (c / std::sqrt(v2));
    } else {
        v = v / std::sqrt(e2);
    }
    // future orientation (or, for spacelike lines, first nonzero component positive)
    int lead = 0;
    while (lead < v.dim() - 1 && v[lead] == 0.0)
        ++lead;
    if (v[lead] < 0.0)
        v = -v;
    const Vec& r = r_.coordinates();
    const Vec& d = v.components();
    return WorldLine(Event(Vec(r - d * (r.dot(d) / d.squaredNorm()))), v);
}

bool WorldLine::contains(const Event& q, double tol) const
{
    const Vec d = (q - r_).components();
    const Vec& v = v_.components();
    const Vec perp = d - v * (d.dot(v) / v.squaredNorm());
    return perp.norm() <= tol * std::max(1.0, d.norm());
}

bool WorldLine::same_line(const WorldLine& other, double tol) const
{
    const WorldLine a = canonical(), b = other.canonical();
    const double scale = std::max({1.0, a.r_.coordinates().norm(), b.r_.coordinates().norm()});
    return (a.r_ - b.r_).components().norm() <= tol * scale &&
           (a.v_ - b.v_).components().norm() <= tol * std::max(1.0, a.v_.components().norm());
}

std::vector<Event> line_cone_intersect(const WorldLine& l, const Event& p, double tol)
{
    const MinkVector& v = l.direction();
    const MinkVector d = l.base() - p;
    const double v2 = square(v), d2 = square(d), b = inner(v, d);
    const double ve = v.euclidean_norm2(), de = d.euclidean_norm2();

    if (std::abs(d2) <= tol * de)
        throw PreconditionError("line_cone_intersect: base point lies on the light cone of p");
    if (v2 < -tol * ve)
        throw PreconditionError("line_cone_intersect: spacelike direction");

    std::vector<Event> out;
    if (std::abs(v2) <= tol * ve) {
        // lightlike line: the quadratic degenerates to 2 lambda v.d + d^2 = 0
        if (std::abs(b) <= tol * std::sqrt(ve * de))
            return out;
        out.push_back(l.at(-d2 / (2.0 * b)));
        return out;
    }

    // lambda^2 v^2 + 2 lambda v.d + d^2 = 0
    const double disc = b * b - v2 * d2;
    if (disc < 0.0)
        return out; // cannot happen for timelike v (strict inverted Cauchy-Schwarz)
    if (disc <= tol * tol * b * b) {
        out.push_back(l.at(-b / v2));
        return out;
    }
    const double q = -(b + std::copysign(std::sqrt(disc), b));
    double l1 = q / v2, l2 = d2 / q;
    if (l1 > l2)
        std::swap(l1, l2);
    out.push_back(l.at(l1));
    out.push_back(l.at(l2));
    return out;
}

RadarResult radar_simultaneous_event(const WorldLine& l, const Event& p)
{
    if (!(square(l.direction()) > 0.0))
        throw PreconditionError("radar_simultaneous_event: line must be timelike");
    if (l.contains(p, 1e-12))
        throw PreconditionError("radar_simultaneous_event: event lies on the line");
    const WorldLine cl = l.canonical();
    const auto pts = line_cone_intersect(cl, p);
    if (pts.size() != 2)
        throw std::logic_error("radar_simultaneous_event: expected two cone intersections");
    // canonical direction is future pointing, so parameter order is time order
    const Event& qm = pts[0];
    const Event& qp = pts[1];
    return {affine_combination({qm, qp}, {0.5, 0.5}), qm, qp};
}

bool between(const Event& q, const Event& a, const Event& b)
{
    return (b - q).components().dot((q - a).components()) >= 0.0;
}

double radar_product_residual(const RadarResult& r, const Event& p, const Event& q)
{
    const double lhs = std::abs(square(q - p));
    const double rhs = norm_g(r.q_plus - q) * norm_g(q - r.q_minus);
    return std::abs(lhs - rhs) / std::max(1.0, rhs);
}

std::pair<Event, Event> mutual_simultaneity(const WorldLine& l1, const WorldLine& l2)
{
    const MinkVector &v = l1.direction(), &w = l2.direction();
    const double vv = square(v), ww = square(w), vw = inner(v, w);
    if (!(vv > 1e-12 * v.euclidean_norm2()) || !(ww > 1e-12 * w.euclidean_norm2()))
        throw PreconditionError("mutual_simultaneity: directions must be timelike");
    // [[v^2, -v.w], [v.w, -w^2]] (lambda, mu) = ((r'-r).v, (r'-r).w)
    const double det = vw * vw - vv * ww;
    if (!(det > 1e-12 * vw * vw))
        throw PreconditionError("mutual_simultaneity: lines are parallel");
    const MinkVector dr = l2.base() - l1.base();
    const double b1 = inner(dr, v), b2 = inner(dr, w);
    // Cramer's rule keeps dyadic-rational inputs exact
    const double lambda = (-b1 * ww + vw * b2) / det;
    const double mu = (vv * b2 - vw * b1) / det;
    return {l1.at(lambda), l2.at(mu)};
}

Hyperplane simultaneity_hyperplane(const WorldLine& l, const Event& q, double tol)
{
    if (!l.contains(q, tol))
        throw PreconditionError("simultaneity_hyperplane: event is not on the line");
    return Hyperplane(l.direction(), q);
}

int simultaneity_class_index(const std::vector<Hyperplane>& planes, const Event& x, double tol)
{
    for (std::size_t i = 0; i < planes.size(); ++i)
        if (planes[i].contains(x, tol))
            return static_cast<int>(i);
    return -1;
}

} // namespace minklab
