#include "minklab/lattice.hpp"
#include "minklab/core.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <random>
#include <sstream>
#include <thread>

namespace minklab {

std::string to_string(SeparationMode m) { return m == SeparationMode::causal ? "causal" : "chronological"; }

// ---------------------------------------------------------------------------
IntegerGrid::IntegerGrid(int dim, GridPoint lo, GridPoint hi) : dim_(dim), lo_(lo), hi_(hi)
{
    if (dim != 2 && dim != 3)
        throw PreconditionError("IntegerGrid: dimension must be 2 or 3");
    if (dim == 2)
        lo_[2] = hi_[2] = 0;
    size_ = 1;
    for (int a = 0; a < 3; ++a) {
        if (hi_[a] < lo_[a])
            throw PreconditionError("IntegerGrid: empty extent");
        size_ *= static_cast<std::size_t>(hi_[a] - lo_[a] + 1);
    }
}

std::shared_ptr<const IntegerGrid> IntegerGrid::make(int dim, GridPoint lo, GridPoint hi)
{
    return std::shared_ptr<const IntegerGrid>(new IntegerGrid(dim, lo, hi));
}

std::shared_ptr<const IntegerGrid> IntegerGrid::centered(int dim, int half)
{
    if (half < 0)
        throw PreconditionError("IntegerGrid: negative half extent");
    return make(dim, {-half, -half, -half}, {half, half, half});
}

std::shared_ptr<const IntegerGrid> IntegerGrid::from_extent(int width, int height)
{
    if (width < 1 || height < 1)
        throw PreconditionError("IntegerGrid: extents must be positive");
    // odd extents are centred on the origin; even ones lean to the negative side
    const int xlo = -(width / 2), tlo = -(height / 2);
    return make(2, {tlo, xlo, 0}, {tlo + height - 1, xlo + width - 1, 0});
}

bool IntegerGrid::inside(const GridPoint& p) const
{
    for (int a = 0; a < dim_; ++a)
        if (p[a] < lo_[a] || p[a] > hi_[a])
            return false;
    return true;
}

std::size_t IntegerGrid::index(const GridPoint& p) const
{
    std::size_t i = 0;
    for (int a = 0; a < dim_; ++a)
        i = i * static_cast<std::size_t>(extent(a)) + static_cast<std::size_t>(p[a] - lo_[a]);
    return i;
}

GridPoint IntegerGrid::point(std::size_t i) const
{
    GridPoint p{0, 0, 0};
    for (int a = dim_ - 1; a >= 0; --a) {
        const std::size_t e = static_cast<std::size_t>(extent(a));
        p[a] = lo_[a] + static_cast<int>(i % e);
        i /= e;
    }
    return p;
}

long long IntegerGrid::interval(const GridPoint& a, const GridPoint& b)
{
    const long long dt = a[0] - b[0], dx = a[1] - b[1], dy = a[2] - b[2];
    return dt * dt - dx * dx - dy * dy;
}

bool IntegerGrid::disjoint(const GridPoint& a, const GridPoint& b, SeparationMode m)
{
    const long long s = interval(a, b);
    if (m == SeparationMode::causal)
        return s < 0;
    return s <= 0 && a != b;
}

int IntegerGrid::boundary_distance(const GridPoint& p) const
{
    int d = std::numeric_limits<int>::max();
    for (int a = 0; a < dim_; ++a)
        d = std::min({d, p[a] - lo_[a], hi_[a] - p[a]});
    return d;
}

int IntegerGrid::diameter() const
{
    int d = 0;
    for (int a = 0; a < dim_; ++a)
        d = std::max(d, extent(a));
    return d;
}

const std::vector<std::uint64_t>& IntegerGrid::conflict_matrix(SeparationMode m) const
{
    const int k = m == SeparationMode::causal ? 0 : 1;
    std::call_once(once_[k], [&] {
        if (size_ > max_matrix_cells)
            return;
        const std::size_t W = words();
        std::vector<std::uint64_t> mat(size_ * W, 0);
        for (std::size_t y = 0; y < size_; ++y) {
            const GridPoint py = point(y);
            std::uint64_t* row = mat.data() + y * W;
            for (std::size_t s = 0; s < size_; ++s)
                if (!disjoint(py, point(s), m))
                    row[s >> 6] |= std::uint64_t{1} << (s & 63);
        }
        conflict_[k] = std::move(mat);
    });
    return conflict_[k];
}

// ---------------------------------------------------------------------------
Region::Region(GridPtr grid) : grid_(std::move(grid))
{
    if (!grid_)
        throw PreconditionError("Region: null grid");
    bits_.assign(grid_->words(), 0);
}

Region Region::full(GridPtr grid)
{
    Region r(std::move(grid));
    std::fill(r.bits_.begin(), r.bits_.end(), ~std::uint64_t{0});
    r.mask_tail();
    return r;
}

Region Region::from_points(GridPtr grid, const std::vector<GridPoint>& pts)
{
    Region r(std::move(grid));
    for (const auto& p : pts) {
        if (!r.grid_->inside(p))
            throw PreconditionError("Region::from_points: point outside the grid");
        r.insert(p);
    }
    return r;
}

void Region::set(std::size_t i, bool on)
{
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (on)
        bits_[i >> 6] |= bit;
    else
        bits_[i >> 6] &= ~bit;
}

void Region::mask_tail()
{
    const std::size_t rem = grid_->size() & 63;
    if (rem && !bits_.empty())
        bits_.back() &= (std::uint64_t{1} << rem) - 1;
}

std::size_t Region::count() const
{
    std::size_t n = 0;
    for (auto w : bits_)
        n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

bool Region::empty() const
{
    return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
}

std::vector<GridPoint> Region::points() const
{
    std::vector<GridPoint> out;
    for (std::size_t w = 0; w < bits_.size(); ++w) {
        std::uint64_t b = bits_[w];
        while (b) {
            const int k = std::countr_zero(b);
            out.push_back(grid_->point(w * 64 + static_cast<std::size_t>(k)));
            b &= b - 1;
        }
    }
    return out;
}

void Region::same_grid(const Region& o) const
{
    if (grid_ != o.grid_)
        throw PreconditionError("Region: operands live on different grids");
}

Region Region::operator&(const Region& o) const
{
    same_grid(o);
    Region r(grid_);
    for (std::size_t i = 0; i < bits_.size(); ++i)
        r.bits_[i] = bits_[i] & o.bits_[i];
    return r;
}

Region Region::operator|(const Region& o) const
{
    same_grid(o);
    Region r(grid_);
    for (std::size_t i = 0; i < bits_.size(); ++i)
        r.bits_[i] = bits_[i] | o.bits_[i];
    return r;
}

Region Region::minus(const Region& o) const
{
    same_grid(o);
    Region r(grid_);
    for (std::size_t i = 0; i < bits_.size(); ++i)
        r.bits_[i] = bits_[i] & ~o.bits_[i];
    return r;
}

Region Region::set_complement() const
{
    Region r(grid_);
    for (std::size_t i = 0; i < bits_.size(); ++i)
        r.bits_[i] = ~bits_[i];
    r.mask_tail();
    return r;
}

bool Region::operator==(const Region& o) const
{
    same_grid(o);
    return bits_ == o.bits_;
}

bool Region::subset_of(const Region& o) const
{
    same_grid(o);
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i] & ~o.bits_[i])
            return false;
    return true;
}

bool Region::near_boundary(int margin) const
{
    for (const auto& p : points())
        if (grid_->boundary_distance(p) < margin)
            return true;
    return false;
}

// ---------------------------------------------------------------------------
namespace {

std::atomic<int> g_threads{0};

int env_threads()
{
    static const int n = [] {
        if (const char* s = std::getenv("MINKLAB_THREADS")) {
            const int v = std::atoi(s);
            if (v > 0)
                return v;
        }
        const unsigned h = std::thread::hardware_concurrency();
        return h ? static_cast<int>(h) : 1;
    }();
    return n;
}

// Runs f(begin_word, end_word) over disjoint word ranges; each output word has one writer.
template <class F>
void parallel_words(std::size_t nwords, std::size_t work, F&& f)
{
    const int t = std::min<int>(lattice_threads(), static_cast<int>(nwords));
    if (t <= 1 || work < (1u << 18)) {
        f(std::size_t{0}, nwords);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (nwords + t - 1) / t;
    for (int k = 0; k < t; ++k) {
        const std::size_t b = k * chunk, e = std::min(nwords, b + chunk);
        if (b < e)
            pool.emplace_back([&f, b, e] { f(b, e); });
    }
    for (auto& th : pool)
        th.join();
}

} // namespace

int lattice_threads()
{
    const int n = g_threads.load();
    return n > 0 ? n : env_threads();
}

void set_lattice_threads(int n) { g_threads.store(std::max(0, n)); }

Region complement_reference(const Region& s, SeparationMode m)
{
    const auto& g = s.grid();
    const auto pts = s.points();
    Region out(g);
    for (std::size_t y = 0; y < g->size(); ++y) {
        const GridPoint py = g->point(y);
        bool ok = true;
        for (const auto& p : pts)
            if (!IntegerGrid::disjoint(py, p, m)) {
                ok = false;
                break;
            }
        if (ok)
            out.set(y);
    }
    return out;
}

Region complement(const Region& s, SeparationMode m)
{
    const auto& g = s.grid();
    if (s.empty())
        return Region::full(g);
    const auto& mat = g->conflict_matrix(m);
    if (mat.empty())
        return complement_reference(s, m);

    const std::size_t W = g->words(), N = g->size();
    std::vector<std::size_t> nz;
    for (std::size_t w = 0; w < W; ++w)
        if (s.bits()[w])
            nz.push_back(w);

    Region out(g);
    auto& ob = out.bits();
    const auto& sb = s.bits();
    parallel_words(W, N * nz.size(), [&](std::size_t wb, std::size_t we) {
        for (std::size_t w = wb; w < we; ++w) {
            std::uint64_t word = 0;
            const std::size_t ye = std::min(N, (w + 1) * 64);
            for (std::size_t y = w * 64; y < ye; ++y) {
                const std::uint64_t* row = mat.data() + y * W;
                bool ok = true;
                for (std::size_t k : nz)
                    if (row[k] & sb[k]) {
                        ok = false;
                        break;
                    }
                if (ok)
                    word |= std::uint64_t{1} << (y & 63);
            }
            ob[w] = word;
        }
    });
    return out;
}

Region completion(const Region& s, SeparationMode m) { return complement(complement(s, m), m); }

bool is_complete(const Region& s, SeparationMode m) { return completion(s, m) == s; }

Region meet(const Region& a, const Region& b, SeparationMode m)
{
    if (a.grid() != b.grid())
        throw PreconditionError("meet: grid mismatch");
    // the intersection of complete sets is complete; general inputs are completed first
    return completion(a, m) & completion(b, m);
}

Region join(const Region& a, const Region& b, SeparationMode m)
{
    if (a.grid() != b.grid())
        throw PreconditionError("join: grid mismatch");
    return complement(complement(a, m) & complement(b, m), m);
}

Region diamond(const GridPtr& g, const GridPoint& p, const GridPoint& q, bool open)
{
    // x in the diamond iff x-p and q-x are both future causal (timelike if open), or p,q swapped
    auto fut = [&](const GridPoint& from, const GridPoint& to) {
        const long long s = IntegerGrid::interval(to, from);
        const int dt = to[0] - from[0];
        if (open)
            return s > 0 && dt > 0;
        return s >= 0 && dt >= 0;
    };
    Region r(g);
    for (std::size_t i = 0; i < g->size(); ++i) {
        const GridPoint x = g->point(i);
        if ((fut(p, x) && fut(x, q)) || (fut(q, x) && fut(x, p)))
            r.set(i);
    }
    return r;
}

Region null_rectangle(const GridPtr& g, int u1, int u2, int v1, int v2, bool open)
{
    if (g->dim() != 2)
        throw PreconditionError("null_rectangle: two-dimensional grids only");
    Region r(g);
    for (std::size_t i = 0; i < g->size(); ++i) {
        const GridPoint x = g->point(i);
        const int u = x[0] - x[1], v = x[0] + x[1];
        const bool in = open ? (u > u1 && u < u2 && v > v1 && v < v2) : (u >= u1 && u <= u2 && v >= v1 && v <= v2);
        if (in)
            r.set(i);
    }
    return r;
}

std::vector<DeMorganViolation> de_morgan_check(const std::vector<Region>& family, SeparationMode m)
{
    std::vector<DeMorganViolation> out;
    std::vector<Region> comp;
    comp.reserve(family.size());
    for (const auto& r : family)
        comp.push_back(complement(r, m));
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i; j < family.size(); ++j) {
            const Region& a = family[i];
            const Region& b = family[j];
            if (complement(meet(a, b, m), m) != join(comp[i], comp[j], m))
                out.push_back({i, j, "(a^b)' = a' v b'"});
            if (complement(join(a, b, m), m) != meet(comp[i], comp[j], m))
                out.push_back({i, j, "(a v b)' = a' ^ b'"});
        }
    return out;
}

OrthomodularityResult orthomodularity_check(const Region& a, const Region& b, SeparationMode m)
{
    if (!a.subset_of(b))
        throw PreconditionError("orthomodularity_check: a must be contained in b");
    if (!is_complete(a, m) || !is_complete(b, m))
        throw PreconditionError("orthomodularity_check: a and b must be complete");
    const Region rhs = meet(b, join(a, complement(b, m), m), m);
    const Region w = rhs.minus(a);
    return {rhs == a, w};
}

// ---------------------------------------------------------------------------
int fig2_min_extent() { return 41; }

Fig2Report fig2_counterexample(const GridPtr& g)
{
    if (g->dim() != 2)
        throw PreconditionError("fig2_counterexample: two-dimensional grids only");
    int half = std::numeric_limits<int>::max();
    for (int a = 0; a < 2; ++a)
        half = std::min({half, -g->lo()[a], g->hi()[a]});
    if (half < 20)
        throw PreconditionError("fig2_counterexample: grid must contain [-20,20]^2 (at least 41x41 around the origin)");

    Fig2Report rep;
    const int s = half / 20;
    rep.scale = s;

    // b' is the open diamond |u|,|v| < T; a is a small closed diamond in the left wedge
    // with its upper edge on the lightlike line v = -T bounding b'. The odd offset puts
    // a's lower corner on a half-integer vertex, which the continuum picture needs.
    const int T = 6 * s;
    const int u1 = T + 4 * s - 1, u2 = u1 + 4 * s;
    const int v1 = -T - 4 * s, v2 = -T;

    auto build = [&](SeparationMode m, Fig2Report& r) {
        const Region bp0 = null_rectangle(g, -T, T, -T, T, true);
        r.b = complement(bp0, m);
        r.b_prime = complement(r.b, m);
        r.a = null_rectangle(g, u1, u2, v1, v2, false);
        r.a_join_b_prime = join(r.a, r.b_prime, m);
        return orthomodularity_check(r.a, r.b, m);
    };

    const OrthomodularityResult causal = build(SeparationMode::causal, rep);
    rep.witness = causal.witness;
    rep.witness_size = causal.witness.count();
    rep.causal_fails = !causal.holds;
    rep.b_near_boundary = rep.b.near_boundary();

    Fig2Report chron;
    const OrthomodularityResult ch = build(SeparationMode::chronological, chron);
    rep.chronological_holds = ch.holds;
    rep.chronological_witness_size = ch.witness.count();
    return rep;
}

// ---------------------------------------------------------------------------
Region random_region(const GridPtr& g, unsigned long long seed)
{
    std::mt19937_64 rng(seed);
    const int margin = std::max(1, g->diameter() / 4);
    auto inner_point = [&] {
        GridPoint p{0, 0, 0};
        for (int a = 0; a < g->dim(); ++a) {
            int lo = g->lo()[a] + margin, hi = g->hi()[a] - margin;
            if (lo > hi)
                lo = hi = (g->lo()[a] + g->hi()[a]) / 2;
            p[a] = std::uniform_int_distribution<int>(lo, hi)(rng);
        }
        return p;
    };

    Region r(g);
    switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0: { // a few scattered events
        const int k = std::uniform_int_distribution<int>(1, 6)(rng);
        for (int i = 0; i < k; ++i)
            r.insert(inner_point());
        break;
    }
    case 1: { // union of one or two small diamonds
        const int k = std::uniform_int_distribution<int>(1, 2)(rng);
        for (int i = 0; i < k; ++i) {
            const GridPoint p = inner_point();
            GridPoint q = p;
            q[0] += std::uniform_int_distribution<int>(0, 6)(rng);
            q[1] += std::uniform_int_distribution<int>(-2, 2)(rng);
            if (!g->inside(q))
                q = p;
            r = r | diamond(g, p, q, std::uniform_int_distribution<int>(0, 1)(rng) == 1);
        }
        break;
    }
    case 2: { // a short spacelike or lightlike string of events
        GridPoint p = inner_point();
        const int k = std::uniform_int_distribution<int>(2, 8)(rng);
        const int dt = std::uniform_int_distribution<int>(0, 1)(rng);
        for (int i = 0; i < k && g->inside(p); ++i) {
            r.insert(p);
            p[0] += dt;
            p[1] += 1;
        }
        break;
    }
    default: { // sparse noise in a small box
        const GridPoint c = inner_point();
        std::bernoulli_distribution on(0.15);
        for (int dt = -3; dt <= 3; ++dt)
            for (int dx = -3; dx <= 3; ++dx) {
                GridPoint p = c;
                p[0] += dt;
                p[1] += dx;
                if (g->inside(p) && on(rng))
                    r.insert(p);
            }
        break;
    }
    }
    return r;
}

bool LatticeSuiteReport::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const LatticeCheck& c) { return c.passed || c.informational; });
}

LatticeSuiteReport lattice_property_suite(SeparationMode m, unsigned long long seed, const GridPtr& g,
                                          int random_regions)
{
    LatticeSuiteReport rep{m, {}};
    auto add = [&](std::string name, bool ok, std::size_t n, std::string detail = {}, bool info = false) {
        rep.checks.push_back({std::move(name), ok, n, std::move(detail), info});
    };
    std::mt19937_64 rng(seed);
    const std::size_t N = static_cast<std::size_t>(random_regions);

    std::vector<Region> samples;
    samples.reserve(N);
    for (std::size_t i = 0; i < N; ++i)
        samples.push_back(random_region(g, rng()));

    // accelerated complement against the plain loop
    {
        bool ok = true;
        const std::size_t k = std::min<std::size_t>(100, N);
        for (std::size_t i = 0; i < k && ok; ++i)
            ok = complement(samples[i], m) == complement_reference(samples[i], m);
        add("complement_matches_reference", ok, k);
    }

    // S''' = S', idempotence, involution, orthocomplement laws
    {
        bool triple = true, idem = true, invol = true, ortho = true, disjoint = true;
        const Region full = Region::full(g), none(g);
        for (const auto& s : samples) {
            const Region s1 = complement(s, m);
            const Region s2 = complement(s1, m);
            const Region s3 = complement(s2, m);
            triple = triple && s3 == s1;
            idem = idem && completion(s2, m) == s2;
            invol = invol && complement(complement(s1, m), m) == s1;
            ortho = ortho && (meet(s2, s3, m) == none) && (join(s2, s3, m) == full);
            disjoint = disjoint && (s & s1).empty();
        }
        add("triple_complement", triple, N);
        add("completion_idempotent", idem, N);
        add("involution", invol, N);
        add("orthocomplement_meet_join", ortho, N);
        add("complement_disjoint_from_set", disjoint, N);
    }

    // monotonicity and order reversal on nested pairs
    {
        bool mono = true, rev = true;
        for (std::size_t i = 0; i + 1 < N; i += 2) {
            const Region s1 = samples[i];
            const Region s2 = samples[i] | samples[i + 1];
            mono = mono && completion(s1, m).subset_of(completion(s2, m));
            rev = rev && complement(s2, m).subset_of(complement(s1, m));
        }
        add("completion_monotone", mono, N / 2);
        add("complement_reverses_order", rev, N / 2);
    }

    // De Morgan on complete regions
    {
        std::vector<Region> fam;
        for (std::size_t i = 0; i < std::min<std::size_t>(40, N); ++i)
            fam.push_back(i % 2 ? complement(samples[i], m) : completion(samples[i], m));
        const auto v = de_morgan_check(fam, m);
        add("de_morgan", v.empty(), fam.size() * (fam.size() + 1) / 2,
            v.empty() ? "" : std::to_string(v.size()) + " violations");
    }

    const int margin = g->diameter() / 4;
    GridPoint c{(g->lo()[0] + g->hi()[0]) / 2, (g->lo()[1] + g->hi()[1]) / 2, (g->lo()[2] + g->hi()[2]) / 2};
    if (g->dim() == 2)
        c[2] = 0;

    // atoms: single events are complete
    {
        bool ok = true;
        std::size_t n = 0;
        for (std::size_t i = 0; i < g->size(); i += 7) {
            const GridPoint p = g->point(i);
            if (g->boundary_distance(p) < margin)
                continue;
            const Region a = Region::from_points(g, {p});
            ok = ok && completion(a, m) == a;
            ++n;
        }
        add("points_are_complete_atoms", ok, n);
    }

    // {p} v {q} for timelike p, q
    GridPoint p = c, q = c;
    p[0] -= 3;
    q[0] += 3;
    const Region P = Region::from_points(g, {p}), Q = Region::from_points(g, {q});
    const Region D = join(P, Q, m);
    const Region closed = diamond(g, p, q, false);
    if (m == SeparationMode::causal) {
        add("join_of_timelike_points_is_closed_diamond", D == closed, 1);
    } else {
        // chronological completion drops the two lightlike-separated equator corners
        const Region expect = closed.minus(Region::from_points(g, {{c[0], c[1] - 3, c[2]}, {c[0], c[1] + 3, c[2]}}));
        add("join_of_timelike_points_is_diamond_without_equator", g->dim() == 2 ? D == expect : D.subset_of(closed), 1,
            "equator of the closed diamond is lightlike to both tips");
    }

    // covering property fails: complete K with {q} < K < {p} v {q}
    {
        bool found = false;
        std::string detail;
        for (const auto& r : D.points()) {
            if (r == p || r == q)
                continue;
            const Region K = join(Q, Region::from_points(g, {r}), m);
            if (K != Q && K != D && Q.subset_of(K) && K.subset_of(D)) {
                found = true;
                detail = "intermediate element with " + std::to_string(K.count()) + " events";
                break;
            }
        }
        add("covering_counterexample", found, 1, detail);
    }

    // distributivity fails: x inside the diamond
    {
        GridPoint x = c;
        const Region X = Region::from_points(g, {x});
        const Region lhs = meet(X, join(P, Q, m), m);
        const Region rhs = join(meet(X, P, m), meet(X, Q, m), m);
        add("distributivity_counterexample", lhs != rhs, 1);
    }

    // modularity fails: a = {p} <= b = diamond(p, q), c = {r}
    {
        bool found = false;
        std::string detail;
        const Region A = P;
        const Region B = completion(D, m);
        for (int dt = 0; dt <= 6 && !found; ++dt)
            for (int dx = -6; dx <= 6 && !found; ++dx) {
                GridPoint r = q;
                r[0] += dt - 2;
                r[1] += dx;
                if (!g->inside(r) || B.contains(r))
                    continue;
                const Region C = Region::from_points(g, {r});
                const Region lhs = join(A, meet(C, B, m), m);
                const Region rhs = meet(join(A, C, m), B, m);
                if (lhs != rhs) {
                    found = true;
                    detail = "a={p}, b={p}v{q}, c={r} with r offset (" + std::to_string(r[0] - q[0]) + "," +
                             std::to_string(r[1] - q[1]) + ") from q";
                }
            }
        add("modularity_counterexample", found, 1, detail);
    }

    // causally disjoint => set-disjoint; the converse fails for two timelike events
    add("set_disjoint_not_causally_disjoint", !IntegerGrid::disjoint(p, q, m) && p != q, 1);

    // orthomodularity on random nested complete pairs: experiment only
    {
        std::size_t tested = 0, fails = 0;
        for (std::size_t i = 0; i + 1 < std::min<std::size_t>(N, 200); i += 2) {
            const Region a = completion(samples[i], m);
            const Region b = join(a, samples[i + 1], m);
            ++tested;
            if (!orthomodularity_check(a, b, m).holds)
                ++fails;
        }
        add("orthomodularity_random_experiment", true, tested, std::to_string(fails) + " failures", true);
    }

    if (g->dim() == 2 && g->extent(0) >= 41 && g->extent(1) >= 41) {
        const Fig2Report f = fig2_counterexample(g);
        if (m == SeparationMode::causal)
            add("fig2_witness_nonempty", f.causal_fails && f.witness_size > 0, 1,
                "witness size " + std::to_string(f.witness_size));
        else
            add("fig2_chronological_analogue_holds", f.chronological_holds, 1,
                "witness size " + std::to_string(f.chronological_witness_size));
    }
    return rep;
}

// ---------------------------------------------------------------------------
Region galilei_chron_complement(const Region& s)
{
    const auto& g = s.grid();
    if (s.empty())
        return Region::full(g);
    const auto pts = s.points();
    const int t = pts.front()[0];
    Region out(g);
    for (const auto& p : pts)
        if (p[0] != t)
            return out; // nothing is simultaneous with two different times
    for (std::size_t i = 0; i < g->size(); ++i)
        if (g->point(i)[0] == t && !s.test(i))
            out.set(i);
    return out;
}

Region galilei_chron_completion(const Region& s) { return galilei_chron_complement(galilei_chron_complement(s)); }

// ---------------------------------------------------------------------------
std::string region_to_json(const Region& r, int indent)
{
    using nlohmann::json;
    const auto& g = r.grid();
    const int d = g->dim();
    json j;
    j["schema"] = "minklab.region";
    j["schema_version"] = 1;
    j["dim"] = d;
    j["axes"] = d == 2 ? json::array({"t", "x"}) : json::array({"t", "x", "y"});
    json lo = json::array(), hi = json::array();
    for (int a = 0; a < d; ++a) {
        lo.push_back(g->lo()[a]);
        hi.push_back(g->hi()[a]);
    }
    j["lo"] = lo;
    j["hi"] = hi;
    j["count"] = r.count();

    // rows run along the last axis; each row lists [start, length] runs
    const int last = d - 1;
    const int len = g->extent(last);
    json rows = json::array();
    for (std::size_t base = 0; base < g->size(); base += static_cast<std::size_t>(len)) {
        json runs = json::array();
        int start = -1;
        for (int k = 0; k <= len; ++k) {
            const bool on = k < len && r.test(base + static_cast<std::size_t>(k));
            if (on && start < 0)
                start = k;
            if (!on && start >= 0) {
                runs.push_back({g->lo()[last] + start, k - start});
                start = -1;
            }
        }
        if (runs.empty())
            continue;
        const GridPoint p = g->point(base);
        json at = json::array();
        for (int a = 0; a < last; ++a)
            at.push_back(p[a]);
        rows.push_back({{"at", at}, {"runs", runs}});
    }
    j["rows"] = rows;
    return j.dump(indent);
}

Region region_from_json(const std::string& text)
{
    using nlohmann::json;
    const json j = json::parse(text);
    if (j.at("schema") != "minklab.region" || j.at("schema_version") != 1)
        throw PreconditionError("region_from_json: unknown schema");
    const int d = j.at("dim");
    GridPoint lo{0, 0, 0}, hi{0, 0, 0};
    for (int a = 0; a < d; ++a) {
        lo[a] = j.at("lo").at(a);
        hi[a] = j.at("hi").at(a);
    }
    auto g = IntegerGrid::make(d, lo, hi);
    Region r(g);
    for (const auto& row : j.at("rows")) {
        GridPoint p{0, 0, 0};
        for (int a = 0; a < d - 1; ++a)
            p[a] = row.at("at").at(a);
        for (const auto& run : row.at("runs")) {
            const int s = run.at(0), n = run.at(1);
            for (int k = 0; k < n; ++k) {
                p[d - 1] = s + k;
                r.insert(p);
            }
        }
    }
    return r;
}

std::string region_to_pbm(const Region& r)
{
    const auto& g = r.grid();
    if (g->dim() != 2)
        throw PreconditionError("region_to_pbm: two-dimensional grids only");
    std::ostringstream out;
    const int W = g->extent(1), H = g->extent(0);
    out << "P1\n" << W << " " << H << "\n";
    // top row is the latest time
    for (int t = g->hi()[0]; t >= g->lo()[0]; --t) {
        for (int x = g->lo()[1]; x <= g->hi()[1]; ++x) {
            out << (r.contains({t, x, 0}) ? '1' : '0');
            out << (x < g->hi()[1] ? " " : "");
        }
        out << "\n";
    }
    return out.str();
}

} // namespace minklab
