#pragma once

#include "minklab/core.hpp"

#include <functional>
#include <string>
#include <vector>

namespace minklab {

// Four-dimensional work happens in (ct, x, y, z) components.
using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

Mat4 metric4();
inline Vec4 flat(const Vec4& v) { return Vec4(v[0], -v[1], -v[2], -v[3]); }
inline double dot4(const Vec4& a, const Vec4& b) { return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]; }
Vec4 to_vec4(const Event& e);
Vec4 to_vec4(const MinkVector& v);

enum class FieldProvenance { boost_killing, rotation_killing, worldline_induced, user };
std::string to_string(FieldProvenance p);

/**
Normalized timelike velocity field u = c K / sqrt(K.K) built from a generator K
on a domain. The generator is kept: rigidity only depends on the direction
field, and several checks compare K, u and rescaled K.
*/
class VelocityField
{
public:
    using Generator = std::function<Vec4(const Vec4&)>;
    using Domain = std::function<bool(const Vec4&)>;

    VelocityField(Generator k, Domain omega, FieldProvenance prov, double c, bool simply_connected);

    MinkVector operator()(const Event& x) const { return MinkVector(Vec(u(to_vec4(x)))); }
    Vec4 u(const Vec4& x) const;
    Vec4 generator(const Vec4& x) const { return k_(x); }
    bool in_domain(const Vec4& x) const { return omega_(x); }

    double c() const { return c_; }
    FieldProvenance provenance() const { return prov_; }
    bool simply_connected() const { return simply_connected_; }

    VelocityField rescaled(const std::function<double(const Vec4&)>& g) const;

private:
    Generator k_;
    Domain omega_;
    FieldProvenance prov_;
    double c_;
    bool simply_connected_;
};

VelocityField constant_field(double c = 1.0);
VelocityField boost_killing_field(double c = 1.0);             // K = x d_ct + ct d_x, right wedge
VelocityField rotation_killing_field(double kappa, double c);  // K = d_t + kappa d_phi, kappa rho < c
VelocityField expanding_field(double eps, double c = 1.0);     // u ~ e0 + eps x

Mat4 spatial_metric(const Vec4& u, double c);

struct KinematicDecomposition
{
    Vec4 at;
    Vec4 u, u_flat;
    Mat4 grad;  // grad(a,b) = d_a u_b
    Mat4 theta; // symmetric, horizontal
    Mat4 omega; // antisymmetric, horizontal
    Vec4 accel, accel_flat;
    double fd_step;
    double c;

    double theta_norm() const { return theta.cwiseAbs().maxCoeff(); }
    double omega_norm() const { return omega.cwiseAbs().maxCoeff(); }
    double accel_norm() const { return std::sqrt(std::abs(dot4(accel, accel))); }
    double reconstruction_residual() const;
    double horizontality_residual() const;
};

KinematicDecomposition kinematic_decomposition(const VelocityField& f, const Vec4& p, double step = 1e-3);
inline KinematicDecomposition kinematic_decomposition(const VelocityField& f, const Event& p, double step = 1e-3)
{
    return kinematic_decomposition(f, to_vec4(p), step);
}

struct RigidityVerdict
{
    bool rigid;
    double max_theta;
};

RigidityVerdict is_rigid(const VelocityField& f, const std::vector<Vec4>& probes, double step = 1e-3,
                         double tol = 1e-5);

// Central-difference helpers, fourth order unless asked otherwise. Second order is
// kept for convergence checks; at step 1e-3 its h^2 error is already visible in |a|.
Mat4 jacobian(const std::function<Vec4(const Vec4&)>& f, const Vec4& p, double h, int order = 4); // d_a f^b
Mat4 lie_derivative_2tensor(const std::function<Vec4(const Vec4&)>& X, const std::function<Mat4(const Vec4&)>& T,
                            const Vec4& p, double h);
Vec4 lie_derivative_oneform(const std::function<Vec4(const Vec4&)>& X, const std::function<Vec4(const Vec4&)>& a,
                            const Vec4& p, double h);
Mat4 exterior_derivative(const std::function<Vec4(const Vec4&)>& a, const Vec4& p, double h);

// L_X h for h the spatial metric of f, X = u, K or a rescaled K
double lie_h_norm(const VelocityField& f, const std::function<Vec4(const Vec4&)>& X, const Vec4& p, double step);

struct ReparameterizationReport
{
    bool rigid_u, rigid_generator, rigid_scaled;
    double lie_h_u, lie_h_generator, lie_h_scaled;
    bool consistent() const { return rigid_u == rigid_generator && rigid_u == rigid_scaled; }
};

ReparameterizationReport reparameterization_invariance_check(const VelocityField& f,
                                                             const std::function<double(const Vec4&)>& g,
                                                             const std::vector<Vec4>& probes, double step = 1e-3,
                                                             double tol = 1e-5);

// Boost Killing flow and Rindler chart
struct RindlerChart
{
    double x0;
    double lambda;
    double tau;
};

Vec4 boost_killing_flow(double x0, double tau, double c = 1.0);
RindlerChart rindler_from_event(double ct, double x, double c = 1.0);
double eigentime_to_velocity(double x0, double v, double c = 1.0);
Eigen::Matrix2d rindler_metric_fd(double lambda, double x0, double h = 1e-3);      // (lambda, x0) chart
Eigen::Matrix2d rindler_metric_tau_fd(double tau, double x0, double c, double h = 1e-3); // (tau, x0) chart

struct RotationProbeReport
{
    Vec4 at;
    double rho;
    double theta_norm, omega_norm, lie_omega_norm;
    double split_residual;   // u_flat against the closed-form split
    double h_psipsi;         // from the field, pulled back to the comoving chart
    double h_psipsi_formula; // rho^2 / (1 - (kappa rho / c)^2)
};

struct RotationReport
{
    std::vector<RotationProbeReport> probes;
    double max_theta = 0, min_omega = 0, max_lie_omega = 0, max_split = 0, max_h_error = 0;
};

RotationReport rotation_killing_checks(double kappa, double c, const std::vector<Vec4>& probes, double step = 1e-3);

// Worldlines parameterized by eigentime
struct WorldLineCurve
{
    std::function<Vec4(double)> z, zdot, zddot, zdddot;
    double c = 1.0;
};

WorldLineCurve straight_worldline(double c = 1.0);
WorldLineCurve hyperbolic_worldline(double x0, double c = 1.0);
// motion along x with rapidity eta(tau); position by Gauss-Legendre quadrature
WorldLineCurve rapidity_worldline(std::function<double(double)> eta, std::function<double(double)> deta,
                                  std::function<double(double)> ddeta, double c = 1.0);
WorldLineCurve wiggly_worldline(double alpha = 0.3, double eps = 0.2, double omega = 2.0, double c = 1.0);

struct TauWindow
{
    double lo = -10.0, hi = 10.0;
};

double herglotz_sigma(const WorldLineCurve& z, const Vec4& x, TauWindow w = {});
double herglotz_N(const WorldLineCurve& z, const Vec4& x, double sigma);
VelocityField herglotz_field(const WorldLineCurve& z, TauWindow w = {}, double eps_n = 1e-3);

Vec4 herglotz_accel_flat(const WorldLineCurve& z, const Vec4& x, TauWindow w = {});
Mat4 herglotz_da_closed_form(const WorldLineCurve& z, const Vec4& x, TauWindow w = {});
// N^-2 Proj_h z''' (flat), as printed; exact on the worldline itself
Vec4 herglotz_lie_accel_printed(const WorldLineCurve& z, const Vec4& x, TauWindow w = {});
// i_u da including the z'' term of da, valid everywhere in the tube
Vec4 herglotz_lie_accel_full(const WorldLineCurve& z, const Vec4& x, TauWindow w = {});

struct KillingVerdict
{
    bool is_killing;
    bool rigid;
    double max_theta;
    double closedness_residual; // max |d a_flat|
};

KillingVerdict killing_test(const VelocityField& f, const std::vector<Vec4>& probes, double step = 1e-3,
                            double tol = 1e-5);

struct CurvatureReport
{
    double max_residual = 0;     // |R + 3 c^-2 (id - P_wedge)(omega x omega)|
    double max_curvature = 0;    // |R|
    double max_alt_part = 0;     // totally antisymmetric part of omega x omega (zero in n <= 4)
    double max_omega = 0;
};

// Probes are events on the slice ct = 0, which serves as a comoving chart of the quotient.
CurvatureReport projected_curvature_check(const VelocityField& f, const std::vector<Vec4>& probes,
                                          double step = 1e-3);

} // namespace minklab
