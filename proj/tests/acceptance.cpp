// One line per acceptance criterion; every check carries its own oracle.
#include "minklab/isometry.hpp"
#include "minklab/kinematics.hpp"
#include "minklab/lattice.hpp"
#include "minklab/projective.hpp"
#include "minklab/rigid.hpp"
#include "minklab/simultaneity.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace minklab;

namespace {

struct Outcome
{
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            detail << " [" << what << "]";
        }
    }
};

int failures = 0;

void criterion(int id, const std::string& title, double budget_s, const std::function<void(Outcome&)>& body)
{
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.ok = false;
        o.detail << " [exception: " << e.what() << "]";
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_s > 0 && dt > budget_s) {
        o.ok = false;
        o.detail << " [runtime over " << budget_s << " s]";
    }
    failures += !o.ok;
    std::printf("%s %d %-28s %8.3f s%s\n", o.ok ? "PASS" : "FAIL", id, title.c_str(), dt, o.detail.str().c_str());
    std::fflush(stdout);
}

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace

int main()
{
    criterion(1, "velocity composition", 1.0, [](Outcome& o) {
        // rapidities add under the Lorentz law
        const auto h = compose_velocities(-1.0, 0.5, 0.5);
        o.require(!h.pole && std::abs(h.value - std::tanh(2 * std::atanh(0.5))) <= 1e-12 &&
                      std::abs(h.value - 0.8) <= 1e-12,
                  "0.5 + 0.5");
        std::mt19937_64 rng(1);
        std::uniform_real_distribution<double> u(-0.9, 0.9);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const double a = u(rng), b = u(rng), c = u(rng);
            const double l = compose_velocities(-1.0, compose_velocities(-1.0, a, b).value, c).value;
            const double r = compose_velocities(-1.0, a, compose_velocities(-1.0, b, c).value).value;
            const double oracle = std::tanh(std::atanh(a) + std::atanh(b) + std::atanh(c));
            worst = std::max({worst, std::abs(l - r), std::abs(l - oracle)});
        }
        o.detail << " assoc " << worst;
        o.require(worst <= 1e-12, "associativity");
        o.require(compose_velocities(1.0, 2.0, 0.5).pole, "pole at vw = 1/k");
        const auto neg = compose_velocities(1.0, 2.0, 3.0);
        o.require(!neg.pole && neg.value == -1.0, "2 + 3 = -1");
    });

    criterion(2, "boost matrices", 5.0, [](Outcome& o) {
        double hyp = 0.0;
        for (double c : {1.0, 2.5})
            for (double rho : {-1.7, -0.3, 0.2, 0.9, 2.4}) {
                const double v = c * std::tanh(rho);
                Eigen::Matrix2d m;
                m << std::cosh(rho), -std::sinh(rho) / c, -c * std::sinh(rho), std::cosh(rho);
                hyp = std::max(hyp, (boost_matrix_1d(-1.0 / (c * c), v) - m).cwiseAbs().maxCoeff());
            }
        o.require(hyp <= 1e-12, "hyperbolic form");
        std::mt19937_64 rng(2);
        std::normal_distribution<double> g;
        double lor = 0.0, eq = 0.0;
        for (int i = 0; i < 100; ++i) {
            Eigen::Vector3d w(g(rng), g(rng), g(rng));
            w *= 0.95 * std::abs(std::tanh(g(rng))) / w.norm();
            const Eigen::Matrix4d B = boost_3d(w, 1.0);
            lor = std::max(lor, is_lorentz(B).residual);
            const Eigen::Matrix3d R = random_rotation(3, rng);
            Eigen::Matrix4d R4 = Eigen::Matrix4d::Identity();
            R4.block<3, 3>(1, 1) = R;
            eq = std::max(eq, (R4 * B * R4.transpose() - boost_3d(R * w, 1.0)).cwiseAbs().maxCoeff());
        }
        o.detail << " lorentz " << lor << " equivariance " << eq;
        o.require(lor < 1e-10, "is_lorentz");
        o.require(eq <= 1e-12, "equivariance");
    });

    criterion(3, "Cartan-Dieudonne", 30.0, [](Outcome& o) {
        std::mt19937_64 rng(3);
        int bad = 0;
        double worst = 0.0;
        for (int n = 2; n <= 4; ++n)
            for (int i = 0; i < 1000; ++i) {
                const Mat L = random_lorentz(n, rng, true);
                const auto refl = cartan_dieudonne(L);
                // rebuild the product independently from the reflection formula
                Mat P = Mat::Identity(n, n);
                Mat G = Mat::Identity(n, n);
                for (int k = 1; k < n; ++k)
                    G(k, k) = -1.0;
                for (const auto& r : refl) {
                    const Vec v = r.axis().components();
                    P = P * (Mat::Identity(n, n) - 2.0 * v * (G * v).transpose() / v.dot(G * v));
                }
                const double res = max_abs(P - L);
                worst = std::max(worst, res);
                bad += res >= 1e-9 || refl.size() > static_cast<std::size_t>(2 * n - 1);
            }
        o.detail << " worst " << worst << " failures " << bad;
        o.require(bad == 0, "decompositions");
    });

    criterion(4, "conformal factor", 0.0, [](Outcome& o) {
        std::mt19937_64 rng(4);
        std::uniform_real_distribution<double> lam(0.5, 2.0);
        double da = 0.0, res = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double l = lam(rng);
            const auto cf = conformal_factor(l * random_lorentz(4, rng, true));
            da = std::max(da, std::abs(cf.alpha - l * l));
            res = std::max(res, cf.residual);
            o.require(!cf.violated_probe, "probe violated");
        }
        o.detail << " alpha " << da << " residual " << res;
        o.require(da <= 1e-9 && res < 1e-9, "alpha = lambda^2");
    });

    criterion(5, "simultaneity", 0.0, [](Outcome& o) {
        std::mt19937_64 rng(5);
        std::normal_distribution<double> g;
        double worst = 0.0;
        int configs = 0;
        while (configs < 50) {
            const MinkVector v{1.5 + std::abs(g(rng)), 0.4 * g(rng), 0.4 * g(rng), 0.4 * g(rng)};
            if (square(v) <= 0.2)
                continue;
            const WorldLine l(Event{g(rng), g(rng), g(rng), g(rng)}, v);
            const Event p{g(rng), 1.0 + g(rng), g(rng), g(rng)};
            if (l.contains(p, 1e-6))
                continue;
            ++configs;
            const auto r = radar_simultaneous_event(l, p);
            // (p - q)^2 = (q_minus - q).(q_plus - q) for q between the signal events
            for (int i = 1; i <= 10; ++i) {
                const double s = i / 11.0;
                const Event q = r.q_minus + s * (r.q_plus - r.q_minus);
                const double lhs = square(p - q), rhs = inner(r.q_minus - q, r.q_plus - q);
                worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
            }
        }
        o.detail << " radar " << worst;
        o.require(worst <= 1e-10, "radar identity");

        double orth = 0.0;
        for (int i = 0; i < 50; ++i) {
            const MinkVector v{2.0, g(rng) * 0.3, g(rng) * 0.3}, w{2.0, g(rng) * 0.3, g(rng) * 0.3};
            const auto [a, b] = mutual_simultaneity(WorldLine(Event{g(rng), g(rng), g(rng)}, v),
                                                    WorldLine(Event{g(rng), g(rng), g(rng)}, w));
            orth = std::max({orth, std::abs(inner(a - b, v)), std::abs(inner(a - b, w))});
        }
        o.detail << " orthogonality " << orth;
        o.require(orth < 1e-10, "mutual orthogonality");
        // lines through (-2, 0) with directions (1, 0) and (2, 1)
        const auto [q1, q2] = mutual_simultaneity(WorldLine(Event{0, 0}, MinkVector{1, 0}),
                                                  WorldLine(Event{0, 1}, MinkVector{2, 1}));
        o.require(q1[0] == -2.0 && q1[1] == 0.0 && q2[0] == -2.0 && q2[1] == 0.0, "intersection");
    });

    criterion(6, "lattice laws", 60.0, [](Outcome& o) {
        const auto C = SeparationMode::causal;
        const auto g = IntegerGrid::centered(2, 20);
        const Region full = Region::full(g), none(g);
        int bad = 0;
        for (unsigned long long seed = 0; seed < 1000; ++seed) {
            const Region s = random_region(g, seed), t = random_region(g, seed + 5000);
            const Region s1 = complement(s, C), t1 = complement(t, C);
            const Region s2 = complement(s1, C), t2 = complement(t1, C);
            bad += complement(s2, C) != s1;
            bad += complement(complement(s2, C), C) != s2;
            // De Morgan on complete sets; joins are the completions of unions
            const Region jn = complement(complement(s2 | t2, C), C);
            bad += complement(s2 & t2, C) != complement(complement(s1 | t1, C), C);
            bad += complement(jn, C) != (s1 & t1);
            // orthocomplement: S meet S' = 0, S join S' = 1
            bad += !(s2 & s1).empty();
            bad += complement(complement(s2 | s1, C), C) != full;
            if (seed < 20) {
                // spot-check the accelerated complement against the definition
                Region direct(g);
                const auto pts = s.points();
                for (std::size_t i = 0; i < g->size(); ++i)
                    if (std::all_of(pts.begin(), pts.end(),
                                    [&](const GridPoint& p) { return IntegerGrid::disjoint(g->point(i), p, C); }))
                        direct.set(i);
                bad += direct != s1;
            }
        }
        o.detail << " law violations " << bad;
        o.require(bad == 0, "laws");

        const Fig2Report f = fig2_counterexample(g);
        const Region w = (f.b & f.a_join_b_prime).minus(f.a);
        o.detail << " fig2 witness " << w.count();
        o.require(!w.empty() && w == f.witness && f.a.subset_of(f.b), "fig2");

        // {p} v {q} for timelike p, q: the closed diamond, by the exact interval test
        const GridPoint p{-4, 1, 0}, q{6, 3, 0};
        Region d(g);
        for (std::size_t i = 0; i < g->size(); ++i) {
            const GridPoint x = g->point(i);
            if (IntegerGrid::interval(x, p) >= 0 && x[0] >= p[0] && IntegerGrid::interval(q, x) >= 0 && q[0] >= x[0])
                d.set(i);
        }
        const Region pq = join(Region::from_points(g, {p}), Region::from_points(g, {q}), C);
        o.require(pq == d, "join of two points");
        // covering fails: {q} < diamond(r, q) < {p} v {q} with r strictly inside
        const Region k = diamond(g, {0, 2, 0}, q, false);
        o.require(is_complete(k, C) && Region::from_points(g, {q}) != k && k != pq && k.subset_of(pq) &&
                      k.contains(q),
                  "covering counterexample");
    });

    criterion(7, "rigid motion", 0.0, [](Outcome& o) {
        const double c = 1.0, step = 1e-3;
        const auto bf = boost_killing_field(c);
        double th = 0, om = 0, acc = 0;
        for (double x0 : {0.5, 1.0, 2.0}) {
            Vec4 p = boost_killing_flow(x0, 0.25 * x0, c);
            p[2] = 0.1;
            const auto d = kinematic_decomposition(bf, p, step);
            th = std::max(th, d.theta_norm());
            om = std::max(om, d.omega_norm());
            acc = std::max(acc, std::abs(d.accel_norm() - c * c / x0));
        }
        o.detail << " boost theta " << th << " omega " << om << " |a| " << acc;
        o.require(th < 1e-5 && om < 1e-5 && acc <= 1e-6, "boost field");

        std::vector<Vec4> probes;
        for (int i = 0; i < 10; ++i) {
            const double rho = 0.1 + 0.6 * i / 9.0, phi = 1.1 * i;
            probes.push_back(Vec4(0.1 * i, rho * std::cos(phi), rho * std::sin(phi), 0.05 * i));
        }
        const auto r = rotation_killing_checks(1.0, c, probes, step);
        o.detail << " rotation theta " << r.max_theta << " L_u omega " << r.max_lie_omega;
        o.require(r.max_theta < 1e-5 && r.min_omega > 1e-3 && r.max_lie_omega < 1e-5, "rotation field");

        const auto hyp = hyperbolic_worldline(1.0, c);
        const auto hf = herglotz_field(hyp);
        double du = 0, da = 0;
        for (const Vec4& p : {Vec4(0.2, 1.1, 0.1, 0), Vec4(-0.3, 0.8, 0, 0.2)}) {
            du = std::max(du, (hf.u(p) - bf.u(p)).cwiseAbs().maxCoeff());
            da = std::max(da, exterior_derivative([&](const Vec4& y) { return herglotz_accel_flat(hyp, y); }, p, step)
                                  .cwiseAbs()
                                  .maxCoeff());
        }
        o.detail << " herglotz du " << du << " da " << da;
        o.require(du < 1e-10 && da < 1e-5, "hyperbolic Herglotz");

        const auto wig = wiggly_worldline();
        const auto wf = herglotz_field(wig);
        auto U = [&](const Vec4& y) { return wf.u(y); };
        auto A = [&](const Vec4& y) { return herglotz_accel_flat(wig, y); };
        double lie = 0;
        for (double tau : {-0.6, 0.5, 1.2}) {
            const Vec4 on = wig.z(tau);
            // on the worldline: N = 1 and L_u a = Proj z''' (flat)
            const Vec4 zd = wig.zdot(tau), j = wig.zdddot(tau);
            const Vec4 proj = j - zd * (dot4(j, zd) / (c * c));
            lie = std::max(lie, (lie_derivative_oneform(U, A, on, step) - flat(proj)).cwiseAbs().maxCoeff());
        }
        o.detail << " wiggly L_u a " << lie;
        o.require(lie <= 1e-4, "wiggly Lie derivative");

        // step halving on the boost field: error of the second-order stencil drops by ~4
        const Vec4 p(0.1, 1.2, 0, 0);
        auto exact = [&](const Vec4& x) {
            // u = (x, ct, 0, 0) / s with s^2 = x^2 - (ct)^2; J(a, b) = d_a u_b
            const double s = std::sqrt(x[1] * x[1] - x[0] * x[0]);
            Mat4 J = Mat4::Zero();
            const Vec4 u(x[1] / s, x[0] / s, 0, 0);
            Vec4 ds(-x[0] / s, x[1] / s, 0, 0);
            Mat4 dK = Mat4::Zero();
            dK(0, 1) = 1;
            dK(1, 0) = 1;
            for (int a = 0; a < 4; ++a)
                J.row(a) = flat(dK.row(a).transpose() / s - u * ds[a] / s).transpose();
            return J;
        };
        auto err = [&](double h) {
            return (jacobian([&](const Vec4& y) { return flat(bf.u(y)); }, p, h, 2) - exact(p)).cwiseAbs().maxCoeff();
        };
        const double ratio = err(0.1) / err(0.05);
        o.detail << " fd ratio " << ratio;
        o.require(ratio >= 3.0 && ratio <= 5.0, "convergence ratio");
    });

    criterion(8, "projected curvature", 0.0, [](Outcome& o) {
        std::vector<Vec4> probes;
        for (int i = 0; i < 10; ++i) {
            const double rho = 0.1 + 0.6 * i / 9.0, phi = 0.6 * i;
            probes.push_back(Vec4(0, rho * std::cos(phi), rho * std::sin(phi), 0.2 - 0.04 * i));
        }
        const auto r = projected_curvature_check(rotation_killing_field(1.0, 1.0), probes, 1e-3);
        o.detail << " residual " << r.max_residual << " |R| " << r.max_curvature;
        o.require(r.max_residual < 1e-4 && r.max_curvature > 1.0, "identity");
    });

    criterion(9, "Fock-Lorentz", 0.0, [](Outcome& o) {
        const double c = 1.0, R = 10.0;
        auto scale = [&](const SpaceTimePoint& e, double f) {
            SpaceTimePoint s;
            s.t = e.t * f;
            s.x = e.x * f;
            return s;
        };
        auto phi = [&](const SpaceTimePoint& e) { return scale(e, 1.0 / (1.0 - c * e.t / R)); };
        auto phi_inv = [&](const SpaceTimePoint& e) { return scale(e, 1.0 / (1.0 + c * e.t / R)); };

        std::mt19937_64 rng(9);
        std::uniform_real_distribution<double> ut(0.0, R / c), ux(-2.0, 2.0), uv(-0.5, 0.5);
        const FLBoost b(Eigen::Vector3d(uv(rng), uv(rng), uv(rng)), c, R);
        int valid = 0;
        double worst = 0.0;
        while (valid < 1000) {
            SpaceTimePoint e;
            e.t = ut(rng);
            e.x = Eigen::Vector3d(ux(rng), ux(rng), ux(rng));
            // f = phi o L o phi^-1
            const SpaceTimePoint l = lorentz_boost_apply(b.v, c, phi_inv(e));
            if (std::abs(1.0 - c * l.t / R) < 1e-6)
                continue; // f is singular there
            const SpaceTimePoint want = phi(l), got = fl_boost_apply(b, e);
            const double mag = std::max(1.0, std::abs(want.t) + want.x.norm());
            worst = std::max(worst, (std::abs(want.t - got.t) + (want.x - got.x).norm()) / mag);
            ++valid;
        }
        o.detail << " conjugation " << worst;
        o.require(worst < 1e-10, "conjugation");

        const FLBoost big(Eigen::Vector3d(0.3, -0.2, 0.1), c, 1e6);
        std::uniform_real_distribution<double> box(-10.0, 10.0);
        bool bounded = true;
        for (int i = 0; i < 1000; ++i) {
            SpaceTimePoint e;
            e.t = box(rng);
            e.x = Eigen::Vector3d(box(rng), box(rng), box(rng));
            const auto f = fl_boost_apply(big, e), l = lorentz_boost_apply(big.v, c, e);
            const double bound = 10.0 * (e.x.norm() + c * std::abs(e.t)) / big.R;
            bounded = bounded && std::abs(f.t - l.t) <= bound && (f.x - l.x).norm() <= bound;
        }
        o.require(bounded, "large-R deviation");

        std::uniform_real_distribution<double> wide(-3 * R / c, 3 * R / c);
        int slab_bad = 0;
        for (int i = 0; i < 1000; ++i) {
            SpaceTimePoint e;
            e.t = wide(rng);
            const double ti = deformation_phi(R, c, e).t;
            const double T = R / c;
            // [0,T) -> [0,inf), (T,inf) -> (-inf,-T), (-inf,0] -> (-T,0]
            const bool ok = e.t <= 0 ? (ti > -T && ti <= 0) : e.t < T ? ti >= 0 : ti < -T;
            slab_bad += !ok || std::abs(ti - phi(e).t) > 1e-12 * std::max(1.0, std::abs(ti));
            slab_bad += !in_expected_image(time_slab(R, c, e.t), R, c, ti);
        }
        o.require(slab_bad == 0, "time slabs");
    });

    std::printf("%s: %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
