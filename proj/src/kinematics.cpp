#include "minklab/kinematics.hpp"

#include <cmath>

namespace minklab {

std::string to_string(Branch b)
{
    switch (b) {
    case Branch::euclidean: return "euclidean";
    case Branch::galilei: return "galilei";
    case Branch::lorentz: return "lorentz";
    }
    return "?";
}

BranchInfo classify_branch(double k)
{
    if (k > 0.0)
        return {Branch::euclidean, std::numeric_limits<double>::quiet_NaN(), "SO(4)", false};
    if (k == 0.0)
        return {Branch::galilei, std::numeric_limits<double>::infinity(), "Galilei", true};
    return {Branch::lorentz, 1.0 / std::sqrt(-k), "Lorentz", true};
}

bool BoostFamily::admits(double v) const { return 1.0 + k * v * v > 0.0; }

double a_of_v(double k, double v)
{
    const double s = 1.0 + k * v * v;
    if (!(s > 0.0))
        throw PreconditionError("a_of_v: velocity outside the branch domain (1 + k v^2 <= 0)");
    return 1.0 / std::sqrt(s);
}

double b_of_v(double k, double v) { return k * v * a_of_v(k, v); }

Eigen::Matrix2d boost_matrix_1d(double k, double v)
{
    const double a = a_of_v(k, v);
    Eigen::Matrix2d m;
    m << a, k * v * a, -v * a, a;
    return m;
}

ComposedVelocity compose_velocities(double k, double v, double w)
{
    if (!(1.0 + k * v * v > 0.0) || !(1.0 + k * w * w > 0.0))
        throw PreconditionError("compose_velocities: velocity outside the branch domain");
    const double den = 1.0 - k * v * w;
    if (den == 0.0)
        return {true, std::numeric_limits<double>::infinity()};
    return {false, (v + w) / den};
}

double rapidity(double v, double c)
{
    if (!(std::abs(v) < c))
        throw PreconditionError("rapidity: |v| must be below c");
    return std::atanh(v / c);
}

double rapidity_inverse(double rho, double c) { return c * std::tanh(rho); }

Eigen::Matrix3d rotation_taking_ex_to(const Eigen::Vector3d& n)
{
    const Eigen::Vector3d ex = Eigen::Vector3d::UnitX();
    const Eigen::Vector3d nh = n.normalized();
    const double cs = ex.dot(nh);
    if (cs < -1.0 + 1e-15) {
        // antipodal: half turn about e_y
        return Eigen::AngleAxisd(M_PI, Eigen::Vector3d::UnitY()).toRotationMatrix();
    }
    // Rodrigues for the rotation about ex x n
    const Eigen::Vector3d k = ex.cross(nh);
    Eigen::Matrix3d K;
    K << 0, -k.z(), k.y(), k.z(), 0, -k.x(), -k.y(), k.x(), 0;
    return Eigen::Matrix3d::Identity() + K + K * K / (1.0 + cs);
}

Eigen::Matrix4d boost_3d(const Eigen::Vector3d& v, double c)
{
    const double speed = v.norm();
    if (!(speed < c))
        throw PreconditionError("boost_3d: superluminal velocity");
    if (speed == 0.0)
        return Eigen::Matrix4d::Identity();

    // B(v e_x) from the 1D family with k = -1/c^2, moved from (t, x) to (ct, x)
    const Eigen::Matrix2d a = boost_matrix_1d(-1.0 / (c * c), speed);
    Eigen::Matrix4d bx = Eigen::Matrix4d::Identity();
    bx(0, 0) = a(0, 0);
    bx(0, 1) = a(0, 1) * c;
    bx(1, 0) = a(1, 0) / c;
    bx(1, 1) = a(1, 1);

    Eigen::Matrix4d R = Eigen::Matrix4d::Identity();
    R.block<3, 3>(1, 1) = rotation_taking_ex_to(v);
    return R * bx * R.transpose();
}

Eigen::Matrix4d boost_3d_closed_form(const Eigen::Vector3d& v, double c)
{
    const double v2 = v.squaredNorm();
    if (!(v2 < c * c))
        throw PreconditionError("boost_3d_closed_form: superluminal velocity");
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    if (v2 == 0.0)
        return m;
    const double g = 1.0 / std::sqrt(1.0 - v2 / (c * c));
    const Eigen::Vector3d beta = v / c;
    m(0, 0) = g;
    m.block<1, 3>(0, 1) = -g * beta.transpose();
    m.block<3, 1>(1, 0) = -g * beta;
    m.block<3, 3>(1, 1) += (g - 1.0) * v * v.transpose() / v2;
    return m;
}

} // namespace minklab
