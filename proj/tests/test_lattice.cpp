#include "minklab/core.hpp"
#include "minklab/lattice.hpp"

#include <doctest.h>

#include <random>

using namespace minklab;

namespace {

const auto C = SeparationMode::causal;
const auto K = SeparationMode::chronological;

// brute-force oracle straight from the definition
Region oracle_complement(const Region& s, SeparationMode m)
{
    const auto& g = s.grid();
    Region out(g);
    const auto pts = s.points();
    for (std::size_t i = 0; i < g->size(); ++i) {
        bool ok = true;
        for (const auto& p : pts)
            ok = ok && IntegerGrid::disjoint(g->point(i), p, m);
        if (ok)
            out.set(i);
    }
    return out;
}

} // namespace

TEST_CASE("exact intervals and disjointness")
{
    CHECK(IntegerGrid::interval({3, 1, 0}, {0, 0, 0}) == 8);
    CHECK(IntegerGrid::interval({1, 1, 0}, {0, 0, 0}) == 0);
    // lightlike pairs are causally related but chronologically disjoint
    CHECK_FALSE(IntegerGrid::disjoint({1, 1, 0}, {0, 0, 0}, C));
    CHECK(IntegerGrid::disjoint({1, 1, 0}, {0, 0, 0}, K));
    CHECK(IntegerGrid::disjoint({0, 2, 0}, {0, 0, 0}, C));
    CHECK_FALSE(IntegerGrid::disjoint({0, 0, 0}, {0, 0, 0}, K));
}

TEST_CASE("grid indexing")
{
    const auto g = IntegerGrid::from_extent(5, 3);
    CHECK(g->size() == 15);
    CHECK(g->extent(0) == 3);
    CHECK(g->extent(1) == 5);
    for (std::size_t i = 0; i < g->size(); ++i)
        CHECK(g->index(g->point(i)) == i);
    CHECK(g->inside({1, 2, 0}));
    CHECK_FALSE(g->inside({2, 0, 0}));
}

TEST_CASE("complements of simple sets")
{
    const auto g = IntegerGrid::centered(2, 6);
    const Region none(g), full = Region::full(g);
    CHECK(complement(none, C) == full);
    CHECK(complement(none, K) == full);
    CHECK(complement(full, C).empty());

    const GridPoint p{0, 0, 0};
    const Region pt = Region::from_points(g, {p});
    const Region cc = complement(pt, C), kc = complement(pt, K);
    for (std::size_t i = 0; i < g->size(); ++i) {
        const long long s = IntegerGrid::interval(g->point(i), p);
        CHECK(cc.test(i) == (s < 0));
        CHECK(kc.test(i) == (s <= 0 && g->point(i) != p));
    }
    CHECK(kc.count() > cc.count());
}

TEST_CASE("accelerated complement against the definition")
{
    for (int dim : {2, 3}) {
        const auto g = IntegerGrid::centered(dim, dim == 2 ? 8 : 4);
        for (unsigned long long seed = 0; seed < 40; ++seed) {
            const Region s = random_region(g, seed);
            for (auto m : {C, K}) {
                CHECK(complement(s, m) == oracle_complement(s, m));
                CHECK(complement_reference(s, m) == oracle_complement(s, m));
            }
        }
    }
}

TEST_CASE("thread count does not change results")
{
    const auto g = IntegerGrid::centered(2, 20);
    const Region s = random_region(g, 77);
    set_lattice_threads(1);
    const Region a = complement(s, C);
    set_lattice_threads(4);
    const Region b = complement(s, C);
    set_lattice_threads(0);
    CHECK(a == b);
}

TEST_CASE("large grids fall back to the plain sweep")
{
    const auto g = IntegerGrid::from_extent(121, 101);
    REQUIRE(g->size() > IntegerGrid::max_matrix_cells);
    CHECK(g->conflict_matrix(C).empty());
    const GridPoint p{3, -7, 0};
    const Region c = complement(Region::from_points(g, {p}), C);
    std::size_t expected = 0;
    for (std::size_t i = 0; i < g->size(); ++i)
        expected += IntegerGrid::interval(g->point(i), p) < 0;
    CHECK(c.count() == expected);
}

TEST_CASE("completion laws")
{
    const auto g = IntegerGrid::centered(2, 10);
    for (unsigned long long seed = 0; seed < 30; ++seed) {
        const Region s = random_region(g, seed);
        for (auto m : {C, K}) {
            const Region s1 = complement(s, m);
            CHECK(complement(complement(s1, m), m) == s1);
            const Region s2 = completion(s, m);
            CHECK(completion(s2, m) == s2);
            CHECK(s.subset_of(s2));
            CHECK(is_complete(s1, m));
        }
    }
}

TEST_CASE("diamonds")
{
    const auto g = IntegerGrid::centered(2, 8);
    const GridPoint p{0, 0, 0}, q{4, 0, 0};
    CHECK(diamond(g, p, p, false) == Region::from_points(g, {p}));
    CHECK(diamond(g, p, p, true).empty());

    const Region closed = diamond(g, p, q, false);
    CHECK(closed.count() == 13); // 1 + 3 + 5 + 3 + 1
    CHECK(is_complete(closed, C));
    CHECK(completion(Region::from_points(g, {p, q}), C) == closed);

    // chronologically the equator corners (lightlike to both tips) are not generated
    Region no_equator = closed;
    no_equator.set(g->index({2, 2, 0}), false);
    no_equator.set(g->index({2, -2, 0}), false);
    CHECK(completion(Region::from_points(g, {p, q}), K) == no_equator);

    // open diamonds: complete in both modes on the integer grid
    const Region open = diamond(g, {0, 0, 0}, {6, 0, 0}, true);
    CHECK(is_complete(open, C));
    CHECK(is_complete(open, K));
}

TEST_CASE("meet and join")
{
    const auto g = IntegerGrid::centered(2, 10);
    const Region s = random_region(g, 3);
    CHECK(join(Region(g), s, C) == completion(s, C));

    const Region d1 = diamond(g, {-6, -5, 0}, {-2, -5, 0}, false);
    const Region d2 = diamond(g, {-6, 5, 0}, {-2, 5, 0}, false);
    CHECK(meet(d1, d2, C).empty());

    // in 1+1 the union of two causally disjoint diamonds is already complete ...
    const Region l = diamond(g, {-2, -3, 0}, {2, -3, 0}, false);
    const Region r = diamond(g, {-2, 3, 0}, {2, 3, 0}, false);
    CHECK(join(l, r, C) == (l | r));
    // ... while a timelike pair generates everything in between
    const Region lo = diamond(g, {-6, 0, 0}, {-4, 0, 0}, false);
    const Region hi = diamond(g, {4, 0, 0}, {6, 0, 0}, false);
    CHECK(join(lo, hi, C) == diamond(g, {-6, 0, 0}, {6, 0, 0}, false));
}

TEST_CASE("De Morgan and order reversal")
{
    const auto g = IntegerGrid::centered(2, 10);
    for (auto m : {C, K}) {
        std::vector<Region> fam;
        for (unsigned long long seed = 0; seed < 20; ++seed)
            fam.push_back(completion(random_region(g, 100 + seed), m));
        CHECK(de_morgan_check(fam, m).empty());

        const Region s = completion(random_region(g, 5), m);
        const Region sp = complement(s, m);
        CHECK(de_morgan_check({s, sp}, m).empty());
        CHECK(meet(s, sp, m).empty());
        CHECK(join(s, sp, m) == Region::full(g));
    }
    const Region small = diamond(g, {0, 0, 0}, {2, 0, 0}, false);
    const Region big = diamond(g, {-2, 0, 0}, {4, 0, 0}, false);
    REQUIRE(small.subset_of(big));
    CHECK(complement(big, C).subset_of(complement(small, C)));
}

TEST_CASE("orthomodularity")
{
    const auto g = IntegerGrid::centered(2, 10);
    const Region d = diamond(g, {0, 0, 0}, {4, 0, 0}, false);
    CHECK(orthomodularity_check(d, d, C).holds);

    const auto g41 = IntegerGrid::centered(2, 20);
    const Fig2Report r = fig2_counterexample(g41);
    CHECK(r.causal_fails);
    CHECK(r.witness_size > 0);
    CHECK(r.witness == ((r.b & r.a_join_b_prime).minus(r.a)));
    CHECK(r.a.subset_of(r.b));
    CHECK(is_complete(r.a, C));
    CHECK(is_complete(r.b, C));
    CHECK(r.chronological_holds);
    CHECK(r.chronological_witness_size == 0);

    // the counterexample survives refinement
    const Fig2Report fine = fig2_counterexample(IntegerGrid::centered(2, 40));
    CHECK(fine.scale == 2);
    CHECK(fine.witness_size > 0);

    CHECK_THROWS_AS(fig2_counterexample(IntegerGrid::centered(2, 10)), PreconditionError);
}

TEST_CASE("property suites on a 41 x 41 grid")
{
    const auto g = IntegerGrid::centered(2, 20);
    for (auto m : {C, K}) {
        const auto rep = lattice_property_suite(m, 2, g, 200);
        for (const auto& c : rep.checks) {
            INFO(to_string(m) << " " << c.name << ": " << c.detail);
            CHECK((c.passed || c.informational));
        }
        CHECK(rep.passed());
    }
}

TEST_CASE("three-dimensional grid")
{
    const auto g = IntegerGrid::centered(3, 3);
    const GridPoint p{-2, 0, 0}, q{2, 0, 0};
    const Region d = diamond(g, p, q, false);
    CHECK(completion(Region::from_points(g, {p, q}), C) == d);
    for (unsigned long long seed = 0; seed < 10; ++seed) {
        const Region s = random_region(g, seed);
        CHECK(complement(complement(complement(s, K), K), K) == complement(s, K));
    }
}

TEST_CASE("Galilean chronological complement")
{
    const auto g = IntegerGrid::from_extent(7, 5);
    const GridPoint p{1, 2, 0};
    const Region c = galilei_chron_complement(Region::from_points(g, {p}));
    for (std::size_t i = 0; i < g->size(); ++i)
        CHECK(c.test(i) == (g->point(i)[0] == 1 && g->point(i) != p));

    const Region sub = Region::from_points(g, {{0, -3, 0}, {0, 1, 0}});
    CHECK(galilei_chron_completion(sub) == sub);

    // nothing is simultaneous with two distinct times
    const Region two = Region::from_points(g, {{0, 0, 0}, {1, 0, 0}});
    CHECK(galilei_chron_complement(two).empty());
    CHECK(galilei_chron_completion(two) == Region::full(g));
}

TEST_CASE("region serialization")
{
    const auto g = IntegerGrid::from_extent(9, 7);
    const Region r = random_region(g, 4);
    const Region back = region_from_json(region_to_json(r));
    CHECK(back.points() == r.points());
    CHECK(back.grid()->lo() == g->lo());
    CHECK(back.grid()->hi() == g->hi());

    const std::string pbm = region_to_pbm(Region::from_points(g, {{3, -4, 0}}));
    CHECK(pbm.rfind("P1\n9 7\n", 0) == 0);
    // top row is the latest time, leftmost column the smallest x
    CHECK(pbm.substr(7, 2) == "1 ");
}
