#pragma once

#include "minklab/core.hpp"

#include <limits>
#include <string>

namespace minklab {

enum class Branch { euclidean, galilei, lorentz };

std::string to_string(Branch b);

struct BranchInfo
{
    Branch branch;
    double invariant_speed; // +inf for galilei, NaN (undefined) for euclidean
    std::string group;
    bool time_orientable;
};

BranchInfo classify_branch(double k);

// The one-parameter family A(v) acting on (t, x), from the relativity principle.
struct BoostFamily
{
    double k;

    explicit BoostFamily(double k_) : k(k_) {}
    Branch branch() const { return classify_branch(k).branch; }
    double invariant_speed() const { return classify_branch(k).invariant_speed; }
    bool admits(double v) const;
};

double a_of_v(double k, double v);
double b_of_v(double k, double v); // k v a(v)
Eigen::Matrix2d boost_matrix_1d(double k, double v);

struct ComposedVelocity
{
    bool pole = false; // k v v' = 1: "infinite velocity"
    double value = 0.0;
};

ComposedVelocity compose_velocities(double k, double v, double w);

double rapidity(double v, double c);
double rapidity_inverse(double rho, double c);

// Full spatial boost, acting on (ct, x, y, z); built by rotating a boost along e_x.
Eigen::Matrix4d boost_3d(const Eigen::Vector3d& v, double c);
// Closed form (t, x) -> (gamma(t - v.x/c^2), x_perp + gamma(x_par - v t)), same coordinates
Eigen::Matrix4d boost_3d_closed_form(const Eigen::Vector3d& v, double c);
// Minimal rotation carrying e_x to the unit vector n
Eigen::Matrix3d rotation_taking_ex_to(const Eigen::Vector3d& n);

} // namespace minklab
