#include "minklab/core.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace minklab;

TEST_CASE("inner product on the standard basis")
{
    const auto e0 = MinkVector::basis(4, 0), e1 = MinkVector::basis(4, 1);
    CHECK(square(e0) == 1.0);
    CHECK(square(e1) == -1.0);
    CHECK(square(e0 + e1) == 0.0);
    CHECK(inner(e0, e1) == 0.0);
    CHECK_THROWS_AS(inner(e0, MinkVector::basis(3, 0)), PreconditionError);
}

TEST_CASE("metric matrix and distance")
{
    const Mat G = metric_matrix(3);
    CHECK(G(0, 0) == 1.0);
    CHECK(G(1, 1) == -1.0);
    CHECK(G(2, 2) == -1.0);
    CHECK(minkowski_distance(Event{0, 0}, Event{5, 3}) == doctest::Approx(4.0));
}

TEST_CASE("causal classification")
{
    const Metric m(4);
    const auto a = classify({1, 0, 0, 0}, m);
    CHECK(a.label == CausalLabel::timelike);
    CHECK(a.future());
    const auto b = classify({1, 1, 0, 0}, m);
    CHECK(b.label == CausalLabel::lightlike);
    CHECK(b.future());
    CHECK(classify({0.5, 1, 0, 0}, m).label == CausalLabel::spacelike); // 0.25 - 1
    CHECK(classify({-2, 1, 0, 0}, m).past());
    CHECK(classify(MinkVector::zero(4), m).label == CausalLabel::zero);
    // the tolerance is relative to the Euclidean size
    CHECK(classify({1e6, 1e6 * (1 + 1e-13), 0, 0}, m).label == CausalLabel::lightlike);
}

TEST_CASE("Cauchy-Schwarz cases by span")
{
    const auto tl = cauchy_schwarz_case(MinkVector::basis(4, 0), MinkVector::basis(4, 1));
    CHECK(tl.which == CSCase::less_equal);
    CHECK(tl.span == CausalLabel::timelike);
    CHECK(tl.lhs == -1.0);
    CHECK(tl.rhs == 0.0);

    const auto sl = cauchy_schwarz_case(MinkVector::basis(4, 1), MinkVector::basis(4, 2));
    CHECK(sl.which == CSCase::greater_equal);
    CHECK(sl.span == CausalLabel::spacelike);
    CHECK(sl.lhs == 1.0);

    // span{e0+e1, e2} is degenerate: equality
    const auto ll = cauchy_schwarz_case({1, 1, 0, 0}, {0, 0, 1, 0});
    CHECK(ll.which == CSCase::equal);
    CHECK(ll.span == CausalLabel::lightlike);

    CHECK_THROWS_AS(cauchy_schwarz_case({1, 1, 0, 0}, {2, 2, 0, 0}), PreconditionError);
}

TEST_CASE("strict inverted Cauchy-Schwarz characterizes timelike vectors")
{
    CHECK(strict_inverted_cs_holds({1, 0.2, 0.3, -0.1}, 1000, 3).holds);

    const auto s = strict_inverted_cs_holds({0.1, 1, 0, 0}, 1000, 3);
    REQUIRE_FALSE(s.holds);
    const MinkVector sv{0.1, 1, 0, 0};
    CHECK(square(sv) * square(s.witness) >= inner(sv, s.witness) * inner(sv, s.witness) - 1e-12);

    const MinkVector null{1, 0, 1, 0};
    const auto l = strict_inverted_cs_holds(null, 1000, 3);
    REQUIRE_FALSE(l.holds);
    CHECK(std::abs(inner(l.witness, null)) < 1e-9);
    // not a multiple of the null vector itself
    const Vec w = l.witness.components(), n = null.components();
    CHECK((w - n * (w.dot(n) / n.squaredNorm())).norm() > 1e-6);
}

TEST_CASE("reversed triangle inequality")
{
    const Metric m(4);
    const auto eq = reversed_triangle_check({1, 0, 0, 0}, {1, 0, 0, 0}, m);
    CHECK(eq.holds);
    CHECK(eq.slack == doctest::Approx(0.0).epsilon(1e-15));

    const auto r = reversed_triangle_check({2, 1, 0, 0}, {2, -1, 0, 0}, m);
    CHECK(r.holds);
    CHECK(r.slack == doctest::Approx(4.0 - 2.0 * std::sqrt(3.0)).epsilon(1e-14));

    CHECK_THROWS_AS(reversed_triangle_check({1, 0, 0, 0}, {-1, 0, 0, 0}, m), PreconditionError);
    CHECK_THROWS_AS(reversed_triangle_check({1, 0, 0, 0}, {0, 1, 0, 0}, m), PreconditionError);
}

TEST_CASE("affine combinations")
{
    const Event p{1, 2, 3}, q{-1, 0, 5};
    const Event a = affine_combination({p, q}, {1.0, 0.0});
    CHECK((a - p).is_zero());
    const Event mid = affine_combination({p, q}, {0.5, 0.5});
    CHECK((mid - (p + 0.5 * (q - p))).is_zero());
    const Event x = affine_combination({p, q}, {2.0, -1.0}, 0);
    const Event y = affine_combination({p, q}, {2.0, -1.0}, 1);
    CHECK((x - (p + (p - q))).components().norm() < 1e-14);
    CHECK((x - y).components().norm() < 1e-14);
    CHECK_THROWS_AS(affine_combination({p, q}, {1.0, 1.0}), PreconditionError);
}

TEST_CASE("affine frames")
{
    const Event o{1, -1, 2};
    const AffineFrame f(o, {MinkVector{1, 1, 0}, MinkVector{0, 1, 0}, MinkVector{0, 1, 1}});
    CHECK(frame_coords(f, o).norm() == 0.0);
    CHECK((frame_point(f, Vec::Unit(3, 1)) - (o + MinkVector{0, 1, 0})).is_zero());

    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    for (int i = 0; i < 100; ++i) {
        const Event p{g(rng), g(rng), g(rng)};
        CHECK((frame_point(f, frame_coords(f, p)) - p).components().norm() < 1e-12);
    }
    CHECK_THROWS_AS(AffineFrame(o, {MinkVector{1, 0, 0}, MinkVector{2, 0, 0}, MinkVector{0, 0, 1}}),
                    PreconditionError);
}

TEST_CASE("affine independence")
{
    const Event o{0, 0, 0};
    CHECK(affinely_independent({o, Event{1, 0, 0}, Event{0, 1, 0}}));
    CHECK_FALSE(affinely_independent({o, Event{1, 1, 1}, Event{2, 2, 2}}));

    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    for (int i = 0; i < 50; ++i) {
        std::vector<Event> pts;
        for (int k = 0; k < 3; ++k)
            pts.push_back(Event{g(rng), g(rng), g(rng)});
        if (i % 2)
            pts.push_back(affine_combination({pts[0], pts[1], pts[2]}, {0.2, 0.3, 0.5}));
        const bool ref = affinely_independent(pts, 0);
        CHECK(ref == (i % 2 == 0));
        for (std::size_t b = 1; b < pts.size(); ++b)
            CHECK(affinely_independent(pts, b) == ref);
    }
}

TEST_CASE("hyperplanes")
{
    const Hyperplane h(MinkVector{1, 0, 0}, Event{2, 0, 0});
    CHECK(h.contains(Event{2, 5, -3}));
    CHECK_FALSE(h.contains(Event{2.5, 0, 0}));
    CHECK_FALSE(h.degenerate());
    CHECK(Hyperplane(MinkVector{1, 1, 0}, Event{0, 0, 0}).degenerate());
}
