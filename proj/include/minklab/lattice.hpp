#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace minklab {

using GridPoint = std::array<int, 3>; // (t, x, y); y unused in two dimensions

enum class SeparationMode { causal, chronological };
std::string to_string(SeparationMode m);

class Region;

/**
Finite box of integer events in 1+1 or 1+2 dimensions. Intervals between
grid events are computed in exact integer arithmetic. The grid lazily caches,
per separation mode, a bit matrix whose row y marks the events that are *not*
disjoint from y; a complement is then a row-wise AND against the region.
*/
class IntegerGrid : public std::enable_shared_from_this<IntegerGrid>
{
public:
    static std::shared_ptr<const IntegerGrid> make(int dim, GridPoint lo, GridPoint hi);
    static std::shared_ptr<const IntegerGrid> centered(int dim, int half);
    // W x H in the "--grid" sense: W spatial columns, H time rows
    static std::shared_ptr<const IntegerGrid> from_extent(int width, int height);

    int dim() const { return dim_; }
    const GridPoint& lo() const { return lo_; }
    const GridPoint& hi() const { return hi_; }
    int extent(int axis) const { return hi_[axis] - lo_[axis] + 1; }
    std::size_t size() const { return size_; }
    std::size_t words() const { return (size_ + 63) / 64; }

    bool inside(const GridPoint& p) const;
    std::size_t index(const GridPoint& p) const;
    GridPoint point(std::size_t i) const;

    static long long interval(const GridPoint& a, const GridPoint& b); // (a-b)^2, exact
    static bool disjoint(const GridPoint& a, const GridPoint& b, SeparationMode m);

    // distance (in lattice steps, sup norm) from p to the grid boundary
    int boundary_distance(const GridPoint& p) const;
    int diameter() const;

    // row-major conflict matrix, words() words per row; empty if the grid is too large
    const std::vector<std::uint64_t>& conflict_matrix(SeparationMode m) const;
    static constexpr std::size_t max_matrix_cells = 12000;

private:
    IntegerGrid(int dim, GridPoint lo, GridPoint hi);

    int dim_;
    GridPoint lo_, hi_;
    std::size_t size_;
    mutable std::once_flag once_[2];
    mutable std::vector<std::uint64_t> conflict_[2];
};

using GridPtr = std::shared_ptr<const IntegerGrid>;

class Region
{
public:
    Region() = default; // empty placeholder without a grid
    explicit Region(GridPtr grid);
    static Region full(GridPtr grid);
    static Region from_points(GridPtr grid, const std::vector<GridPoint>& pts);

    const GridPtr& grid() const { return grid_; }
    const std::vector<std::uint64_t>& bits() const { return bits_; }
    std::vector<std::uint64_t>& bits() { return bits_; }

    bool test(std::size_t i) const { return (bits_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool on = true);
    bool contains(const GridPoint& p) const { return grid_->inside(p) && test(grid_->index(p)); }
    void insert(const GridPoint& p) { set(grid_->index(p)); }

    std::size_t count() const;
    bool empty() const;
    std::vector<GridPoint> points() const;

    Region operator&(const Region& o) const;
    Region operator|(const Region& o) const;
    Region minus(const Region& o) const;
    Region set_complement() const; // plain set complement within the grid
    bool operator==(const Region& o) const;
    bool operator!=(const Region& o) const { return !(*this == o); }
    bool subset_of(const Region& o) const;

    bool near_boundary(int margin) const;
    bool near_boundary() const { return near_boundary(grid_->diameter() / 4); }

private:
    void same_grid(const Region& o) const;
    void mask_tail();

    GridPtr grid_;
    std::vector<std::uint64_t> bits_;
};

// Thread cap for complement sweeps (MINKLAB_THREADS; default hardware concurrency).
int lattice_threads();
void set_lattice_threads(int n); // 0 restores the environment default

Region complement(const Region& s, SeparationMode m);
Region complement_reference(const Region& s, SeparationMode m); // plain double loop
Region completion(const Region& s, SeparationMode m);
bool is_complete(const Region& s, SeparationMode m);
Region meet(const Region& a, const Region& b, SeparationMode m);
Region join(const Region& a, const Region& b, SeparationMode m);

Region diamond(const GridPtr& g, const GridPoint& p, const GridPoint& q, bool open);
// n = 2 only: u1 <= t-x <= u2, v1 <= t+x <= v2 (strict if open); corners may be off-grid
Region null_rectangle(const GridPtr& g, int u1, int u2, int v1, int v2, bool open);

struct DeMorganViolation
{
    std::size_t i, j;
    std::string law;
};

std::vector<DeMorganViolation> de_morgan_check(const std::vector<Region>& family, SeparationMode m);

struct OrthomodularityResult
{
    bool holds;
    Region witness; // (b meet (a join b')) minus a
};

OrthomodularityResult orthomodularity_check(const Region& a, const Region& b, SeparationMode m);

struct Fig2Report
{
    int scale = 1;
    Region a, b, b_prime, a_join_b_prime, witness;
    std::size_t witness_size = 0;
    bool causal_fails = false;          // orthomodularity fails in causal mode
    bool chronological_holds = false;   // ... and holds for the chronological analogue
    std::size_t chronological_witness_size = 0;
    bool b_near_boundary = false;
};

int fig2_min_extent();
Fig2Report fig2_counterexample(const GridPtr& g);

struct LatticeCheck
{
    std::string name;
    bool passed;
    std::size_t samples;
    std::string detail;
    bool informational = false; // experiment, not an assertion
};

struct LatticeSuiteReport
{
    SeparationMode mode;
    std::vector<LatticeCheck> checks;
    bool passed() const;
};

LatticeSuiteReport lattice_property_suite(SeparationMode m, unsigned long long seed, const GridPtr& g,
                                          int random_regions = 1000);

// Random test regions: sparse point sets, diamonds and their unions, dense noise.
Region random_region(const GridPtr& g, unsigned long long seed);

// Galilean chronological complement: disjoint iff simultaneous and distinct.
Region galilei_chron_complement(const Region& s);
Region galilei_chron_completion(const Region& s);

std::string region_to_json(const Region& r, int indent = -1);
Region region_from_json(const std::string& text);
std::string region_to_pbm(const Region& r);

} // namespace minklab
