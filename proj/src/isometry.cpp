#include "minklab/isometry.hpp"

#include <algorithm>
#include <cmath>

namespace minklab {

LorentzCheck is_lorentz(const Mat& L, double tol)
{
    if (L.rows() != L.cols() || L.rows() < 1)
        throw PreconditionError("is_lorentz: matrix must be square");
    const Mat G = metric_matrix(static_cast<int>(L.rows()));
    const double r = (L.transpose() * G * L - G).cwiseAbs().maxCoeff();
    return {r < tol, r};
}

// ---------------------------------------------------------------------------
AffineIsometry::AffineIsometry(Mat linear, MinkVector translation, double tol)
    : l_(std::move(linear)), a_(std::move(translation))
{
    if (l_.rows() != a_.dim())
        throw PreconditionError("AffineIsometry: translation dimension mismatch");
    const LorentzCheck chk = is_lorentz(l_, tol);
    if (!chk.ok)
        throw PreconditionError("AffineIsometry: linear part is not a Lorentz matrix (residual " +
                                std::to_string(chk.residual) + ")");
    proper_ = l_.determinant() > 0.0;
    orthochronous_ = l_(0, 0) > 0.0;
}

AffineIsometry AffineIsometry::identity(int n) { return AffineIsometry(Mat::Identity(n, n), MinkVector::zero(n)); }

Event AffineIsometry::apply(const Event& p) const { return Event(Vec(l_ * p.coordinates() + a_.components())); }

MinkVector AffineIsometry::apply(const MinkVector& v) const { return MinkVector(Vec(l_ * v.components())); }

AffineIsometry AffineIsometry::compose(const AffineIsometry& in) const
{
    return AffineIsometry(l_ * in.l_, MinkVector(Vec(l_ * in.a_.components() + a_.components())));
}

AffineIsometry AffineIsometry::inverse() const
{
    // L^{-1} = G L^T G for a Lorentz matrix
    const Mat G = metric_matrix(dim());
    const Mat li = G * l_.transpose() * G;
    return AffineIsometry(li, MinkVector(Vec(-(li * a_.components()))));
}

// ---------------------------------------------------------------------------
Reflection::Reflection(MinkVector axis) : v_(std::move(axis))
{
    if (v_.is_zero() || std::abs(square(v_)) <= 1e-12 * v_.euclidean_norm2())
        throw PreconditionError("Reflection: axis must be non-null");
}

MinkVector Reflection::apply(const MinkVector& x) const { return x - v_ * (2.0 * inner(x, v_) / square(v_)); }

Mat Reflection::matrix() const
{
    const int n = v_.dim();
    const Vec& v = v_.components();
    const Vec gv = metric_matrix(n) * v;
    return Mat::Identity(n, n) - (2.0 / square(v_)) * v * gv.transpose();
}

MinkVector reflect(const MinkVector& v, const MinkVector& x) { return Reflection(v).apply(x); }

Mat compose_reflections(const std::vector<Reflection>& rs, int n)
{
    Mat m = Mat::Identity(n, n);
    for (const auto& r : rs)
        m = m * r.matrix();
    return m;
}

namespace {

// Orthonormal-ish (Euclidean) basis of the span of the columns, via rank-revealing QR.
Mat column_span(const Mat& a)
{
    Eigen::ColPivHouseholderQR<Mat> qr(a);
    qr.setThreshold(1e-10);
    const int r = static_cast<int>(qr.rank());
    Mat q = qr.householderQ() * Mat::Identity(a.rows(), r);
    return q;
}

} // namespace

std::vector<Reflection> cartan_dieudonne(const Mat& L)
{
    const LorentzCheck chk = is_lorentz(L, 1e-8);
    if (!chk.ok)
        throw PreconditionError("cartan_dieudonne: input is not a Lorentz matrix");

    const int n = static_cast<int>(L.rows());
    const Mat G = metric_matrix(n);
    Mat phi = L;
    Mat W = Mat::Identity(n, n); // columns span the current non-degenerate subspace
    std::vector<Reflection> out;

    auto apply_reflection = [&](const Vec& axis) {
        Reflection r{MinkVector(axis)};
        phi = r.matrix() * phi;
        out.push_back(std::move(r));
    };

    while (W.cols() > 0) {
        // Pick the best-conditioned non-null vector among basis vectors and pairwise sums.
        Vec v;
        double best = -1.0;
        auto consider = [&](const Vec& c) {
            const double q = std::abs(c.dot(G * c)) / c.squaredNorm();
            if (q > best) {
                best = q;
                v = c;
            }
        };
        for (int i = 0; i < W.cols(); ++i) {
            consider(W.col(i));
            for (int j = i + 1; j < W.cols(); ++j) {
                consider(W.col(i) + W.col(j));
                consider(W.col(i) - W.col(j));
            }
        }
        if (best <= 1e-12)
            throw std::logic_error("cartan_dieudonne: no non-null vector in a non-degenerate subspace");

        const Vec w = phi * v;
        const Vec d = v - w;
        const double scale = v.squaredNorm();
        // rounding noise in phi v must not become a reflection axis
        if (d.squaredNorm() > 1e-18 * scale) {
            if (std::abs(d.dot(G * d)) > 1e-10 * d.squaredNorm()) {
                apply_reflection(d);
            } else {
                // v - w is null: go through v + w, whose square is 4 v^2 != 0
                apply_reflection(v + w);
                apply_reflection(v);
            }
        }

        // restrict to v-perp inside W
        const double v2 = v.dot(G * v);
        Mat P(n, W.cols());
        for (int i = 0; i < W.cols(); ++i)
            P.col(i) = W.col(i) - v * (W.col(i).dot(G * v) / v2);
        W = W.cols() > 1 ? column_span(P) : Mat(n, 0);
        if (W.cols() != P.cols() - 1)
            throw std::logic_error("cartan_dieudonne: subspace dimension did not drop by one");
    }

    // phi = A_m ... A_1 L = 1, hence L = A_1 ... A_m.
    return out;
}

// ---------------------------------------------------------------------------
Dilation::Dilation(double lambda, Event m) : factor(lambda), center(std::move(m))
{
    if (!(lambda > 0.0))
        throw PreconditionError("Dilation: factor must be positive");
}

Event dilation_apply(const Dilation& d, const Event& p) { return d.center + d.factor * (p - d.center); }

// ---------------------------------------------------------------------------
std::vector<MinkVector> lightcone_probes(int n)
{
    std::vector<MinkVector> probes;
    const MinkVector e0 = MinkVector::basis(n, 0);
    for (int a = 1; a < n; ++a) {
        probes.push_back(e0 + MinkVector::basis(n, a));
        probes.push_back(e0 - MinkVector::basis(n, a));
    }
    for (int a = 1; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            probes.push_back(std::sqrt(2.0) * e0 + MinkVector::basis(n, a) + MinkVector::basis(n, b));
    return probes;
}

ConformalFactor conformal_factor(const Mat& f, double tol)
{
    if (f.rows() != f.cols())
        throw PreconditionError("conformal_factor: matrix must be square");
    const int n = static_cast<int>(f.rows());
    ConformalFactor out;

    for (const auto& p : lightcone_probes(n)) {
        const MinkVector img(Vec(f * p.components()));
        if (std::abs(square(img)) > tol * std::max(img.euclidean_norm2(), 1e-300)) {
            out.violated_probe = p;
            return out;
        }
    }

    const Mat G = metric_matrix(n);
    const Mat h = f.transpose() * G * f;
    out.alpha = h(0, 0);
    out.residual = (h - out.alpha * G).cwiseAbs().maxCoeff();
    return out;
}

// ---------------------------------------------------------------------------
std::string to_string(CausalRelation r)
{
    switch (r) {
    case CausalRelation::causal_future: return "causal_future";
    case CausalRelation::chronological_future: return "chronological_future";
    case CausalRelation::lightlike_future: return "lightlike_future";
    case CausalRelation::interval_sign: return "interval_sign";
    }
    return "?";
}

namespace {

CausalClass separation(const Event& p, const Event& q, double tol)
{
    return classify(p - q, Metric(p.dim(), tol));
}

} // namespace

bool related(CausalRelation r, const Event& p, const Event& q, double tol)
{
    const CausalClass cc = separation(p, q, tol);
    switch (r) {
    case CausalRelation::causal_future:
        return cc.label == CausalLabel::zero || (cc.causal() && cc.future());
    case CausalRelation::chronological_future:
        return cc.label == CausalLabel::timelike && cc.future();
    case CausalRelation::lightlike_future:
        return cc.label == CausalLabel::lightlike && cc.future();
    case CausalRelation::interval_sign:
        return cc.label == CausalLabel::spacelike;
    }
    return false;
}

RelationReport relation_preservation_harness(const std::vector<std::pair<Event, Event>>& map, CausalRelation r,
                                             double tol)
{
    const int m = static_cast<int>(map.size());
    auto distinct = [&](bool images) {
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                const Event& a = images ? map[i].second : map[j].first;
                const Event& b = images ? map[j].second : map[i].first;
                if ((a - b).euclidean_norm2() <= 1e-24 * std::max(1.0, a.coordinates().squaredNorm()))
                    return false;
            }
        return true;
    };
    if (!distinct(false) || !distinct(true))
        throw PreconditionError("relation_preservation_harness: map is not a bijection on the sample set");

    RelationReport rep;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i == j)
                continue;
            const Event &p = map[i].first, &q = map[j].first;
            const Event &fp = map[i].second, &fq = map[j].second;
            bool before, after;
            if (r == CausalRelation::interval_sign) {
                // the separation class itself must be preserved
                const CausalLabel a = separation(p, q, tol).label, b = separation(fp, fq, tol).label;
                before = after = true;
                if (a != b) {
                    rep.forward.emplace_back(i, j);
                    rep.backward.emplace_back(i, j);
                }
                continue;
            }
            before = related(r, p, q, tol);
            after = related(r, fp, fq, tol);
            if (before && !after)
                rep.forward.emplace_back(i, j);
            if (after && !before)
                rep.backward.emplace_back(i, j);
        }
    return rep;
}

UnitDistanceReport unit_distance_harness(const EuclideanMap& f, int n, double delta, int samples,
                                         unsigned long long seed, double tol)
{
    if (n < 2)
        throw PreconditionError("unit_distance_harness: n must be at least 2");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> box(-5.0, 5.0);
    std::normal_distribution<double> gauss;

    UnitDistanceReport rep;
    for (int s = 0; s < samples; ++s) {
        Vec x(n), d(n);
        for (int i = 0; i < n; ++i) {
            x[i] = box(rng);
            d[i] = gauss(rng);
        }
        const Vec y = x + delta * d.normalized();
        const double err = std::abs((f(x) - f(y)).norm() - delta);
        ++rep.pairs;
        rep.max_error = std::max(rep.max_error, err);
        if (err > tol * std::max(1.0, delta))
            rep.violations.emplace_back(x, y);
    }
    return rep;
}

double product_preservation_residual(const VectorMap& f, const std::vector<MinkVector>& probes)
{
    double r = 0.0;
    std::vector<MinkVector> img;
    for (const auto& p : probes)
        img.push_back(f(p));
    for (std::size_t i = 0; i < probes.size(); ++i)
        for (std::size_t j = i; j < probes.size(); ++j)
            r = std::max(r, std::abs(inner(img[i], img[j]) - inner(probes[i], probes[j])));
    return r;
}

double nonlinearity_residual(const VectorMap& f, const std::vector<MinkVector>& probes)
{
    double r = 0.0;
    for (std::size_t i = 0; i < probes.size(); ++i) {
        const MinkVector fi = f(probes[i]);
        r = std::max(r, std::sqrt((f(2.0 * probes[i]) - 2.0 * fi).euclidean_norm2()));
        for (std::size_t j = i + 1; j < probes.size(); ++j)
            r = std::max(r, std::sqrt((f(probes[i] + probes[j]) - fi - f(probes[j])).euclidean_norm2()));
    }
    return r;
}

// ---------------------------------------------------------------------------
Mat random_rotation(int m, std::mt19937_64& rng)
{
    std::normal_distribution<double> gauss;
    Mat a(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            a(i, j) = gauss(rng);
    Eigen::HouseholderQR<Mat> qr(a);
    Mat q = qr.householderQ();
    const Mat r = qr.matrixQR();
    for (int i = 0; i < m; ++i)
        if (r(i, i) < 0.0)
            q.col(i) = -q.col(i);
    if (q.determinant() < 0.0)
        q.col(0) = -q.col(0);
    return q;
}

Mat boost_matrix(const Vec& direction, double rapidity)
{
    const int n = static_cast<int>(direction.size()) + 1;
    const Vec nh = direction.normalized();
    const double ch = std::cosh(rapidity), sh = std::sinh(rapidity);
    Mat b = Mat::Identity(n, n);
    b(0, 0) = ch;
    b.block(0, 1, 1, n - 1) = -sh * nh.transpose();
    b.block(1, 0, n - 1, 1) = -sh * nh;
    b.block(1, 1, n - 1, n - 1) += (ch - 1.0) * nh * nh.transpose();
    return b;
}

Mat random_lorentz(int n, std::mt19937_64& rng, bool allow_improper)
{
    std::uniform_real_distribution<double> rap(-2.0, 2.0);
    std::normal_distribution<double> gauss;
    auto embed = [n](const Mat& r) {
        Mat m = Mat::Identity(n, n);
        m.block(1, 1, n - 1, n - 1) = r;
        return m;
    };
    Vec dir(n - 1);
    for (int i = 0; i < n - 1; ++i)
        dir[i] = gauss(rng);
    Mat L = embed(random_rotation(n - 1, rng)) * boost_matrix(dir, rap(rng)) * embed(random_rotation(n - 1, rng));
    if (allow_improper) {
        std::uniform_int_distribution<int> coin(0, 1);
        if (coin(rng))
            L.row(0) = -L.row(0); // time reversal
        if (coin(rng))
            L.row(1) = -L.row(1); // space reflection
    }
    return L;
}

} // namespace minklab
