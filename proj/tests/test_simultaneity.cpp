#include "minklab/simultaneity.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace minklab;

TEST_CASE("line meets light cone")
{
    const auto two = line_cone_intersect(WorldLine(Event{0, 2}, MinkVector{1, 0}), Event::origin(2));
    REQUIRE(two.size() == 2);
    CHECK((two[0] - Event{-2, 2}).is_zero());
    CHECK((two[1] - Event{2, 2}).is_zero());

    const auto one = line_cone_intersect(WorldLine(Event{0, 2}, MinkVector{1, 1}), Event::origin(2));
    REQUIRE(one.size() == 1);
    CHECK(std::abs(square(one[0] - Event::origin(2))) < 1e-14);

    const auto none = line_cone_intersect(WorldLine(Event{0, 0, 1}, MinkVector{1, 1, 0}), Event::origin(3));
    CHECK(none.empty());

    CHECK_THROWS_AS(line_cone_intersect(WorldLine(Event{1, 1}, MinkVector{1, 0}), Event::origin(2)),
                    PreconditionError);
}

TEST_CASE("canonical lines")
{
    const WorldLine a(Event{1, 2, 0}, MinkVector{2, 1, 0});
    const WorldLine b(Event{1, 2, 0} + 3.0 * MinkVector{2, 1, 0}, MinkVector{-4, -2, 0});
    CHECK(a.same_line(b));
    CHECK(square(a.canonical().direction()) == doctest::Approx(1.0));
    CHECK_FALSE(a.same_line(WorldLine(Event{1, 2.5, 0}, MinkVector{2, 1, 0})));
}

TEST_CASE("radar simultaneity")
{
    const auto axis = radar_simultaneous_event(WorldLine(Event::origin(4), MinkVector{1, 0, 0, 0}),
                                               Event{0, 5, 0, 0});
    CHECK(axis.q.coordinates().norm() < 1e-14);
    CHECK(axis.q_minus[0] == doctest::Approx(-5));
    CHECK(axis.q_plus[0] == doctest::Approx(5));

    std::mt19937_64 rng(4);
    std::normal_distribution<double> g;
    for (int k = 0; k < 50; ++k) {
        const MinkVector v{2.0 + std::abs(g(rng)), 0.5 * g(rng), 0.5 * g(rng), 0.5 * g(rng)};
        if (square(v) <= 0.1)
            continue;
        const WorldLine l(Event{g(rng), g(rng), g(rng), g(rng)}, v);
        const Event p{g(rng), g(rng), g(rng), g(rng)};
        const auto r = radar_simultaneous_event(l, p);
        CHECK(std::abs(inner(r.q - p, v)) < 1e-10 * std::max(1.0, std::sqrt((r.q - p).euclidean_norm2())));
        CHECK(l.contains(r.q, 1e-9));
        for (int i = 1; i <= 10; ++i) {
            const Event q = affine_combination({r.q_minus, r.q_plus}, {1.0 - i / 11.0, i / 11.0});
            CHECK(between(q, r.q_minus, r.q_plus));
            CHECK(radar_product_residual(r, p, q) < 1e-10);
        }
    }
    CHECK_THROWS_AS(radar_simultaneous_event(WorldLine(Event::origin(2), MinkVector{1, 0}), Event{3, 0}),
                    PreconditionError);
}

TEST_CASE("mutual simultaneity")
{
    // worked pair: the lines meet at (-2, 0)
    const auto [q, q2] = mutual_simultaneity(WorldLine(Event{0, 0}, MinkVector{1, 0}),
                                             WorldLine(Event{0, 1}, MinkVector{1, 0.5}));
    CHECK((q - Event{-2, 0}).is_zero());
    CHECK((q2 - Event{-2, 0}).is_zero());

    // skew lines in n = 3: distinct feet, both orthogonal to the connecting vector
    const MinkVector v{1, 0.2, 0}, w{1, 0, 0.3};
    const auto [a, b] = mutual_simultaneity(WorldLine(Event{0, 0, 0}, v), WorldLine(Event{0, 1, 1}, w));
    CHECK_FALSE((a - b).is_zero());
    CHECK(std::abs(inner(a - b, v)) < 1e-10);
    CHECK(std::abs(inner(a - b, w)) < 1e-10);

    CHECK_THROWS_AS(mutual_simultaneity(WorldLine(Event{0, 0}, v), WorldLine(Event{0, 1}, v)), PreconditionError);
}

TEST_CASE("simultaneity hyperplanes")
{
    const WorldLine axis(Event::origin(3), MinkVector{1, 0, 0});
    const Hyperplane h = simultaneity_hyperplane(axis, Event::origin(3));
    CHECK(h.contains(Event{0, 4, -2}));
    CHECK_FALSE(h.contains(Event{0.1, 0, 0}));
    CHECK_THROWS_AS(simultaneity_hyperplane(axis, Event{0, 1, 0}), PreconditionError);

    // planes through distinct events on one line are disjoint: each event sits in exactly one
    const WorldLine l(Event{0.5, 0.1, -0.3}, MinkVector{1.3, 0.4, 0.2});
    std::vector<Hyperplane> planes;
    for (int k = -10; k <= 10; ++k)
        planes.push_back(simultaneity_hyperplane(l, l.at(k)));
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g;
    for (int i = 0; i < 100; ++i) {
        const int k = static_cast<int>(rng() % 21);
        MinkVector s{g(rng), g(rng), g(rng)};
        s = s - l.direction() * (inner(s, l.direction()) / square(l.direction()));
        const Event x = l.at(k - 10) + s;
        CHECK(simultaneity_class_index(planes, x, 1e-9) == k);
        int hits = 0;
        for (const auto& p : planes)
            hits += p.contains(x, 1e-9);
        CHECK(hits == 1);
    }
}
