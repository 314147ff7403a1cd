#pragma once

#include "minklab/core.hpp"

#include <utility>
#include <vector>

namespace minklab {

// Straight line r + lambda v; v timelike unless stated otherwise.
class WorldLine
{
public:
    WorldLine(Event base, MinkVector direction);

    const Event& base() const { return r_; }
    const MinkVector& direction() const { return v_; }
    Event at(double lambda) const { return r_ + lambda * v_; }

    // future-normalized direction (v^2 = c^2, or unit Euclidean length if null),
    // base moved to the point of least Euclidean norm
    WorldLine canonical(double c = 1.0) const;
    bool same_line(const WorldLine& other, double tol = 1e-10) const;
    bool contains(const Event& q, double tol = 1e-10) const;

private:
    Event r_;
    MinkVector v_;
};

// Intersections of the line with the light cone of p, ordered by the line parameter.
std::vector<Event> line_cone_intersect(const WorldLine& l, const Event& p, double tol = 1e-12);

struct RadarResult
{
    Event q;       // radar-simultaneous event, midpoint of q_minus and q_plus
    Event q_minus; // earlier intersection (signal sent)
    Event q_plus;  // later intersection (echo received)
};

RadarResult radar_simultaneous_event(const WorldLine& l, const Event& p);

// ||q-p||^2 - ||q_+ - q|| ||q - q_-|| for q on the segment [q_-, q_+]
double radar_product_residual(const RadarResult& r, const Event& p, const Event& q);
bool between(const Event& q, const Event& a, const Event& b);

std::pair<Event, Event> mutual_simultaneity(const WorldLine& l1, const WorldLine& l2);

Hyperplane simultaneity_hyperplane(const WorldLine& l, const Event& q, double tol = 1e-10);

// Index of the (first) plane containing x, or -1
int simultaneity_class_index(const std::vector<Hyperplane>& planes, const Event& x, double tol = 1e-10);

} // namespace minklab
