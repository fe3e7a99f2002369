#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "emptysimplex/geometry.hpp"
#include "emptysimplex/spatial_grid.hpp"

namespace emptysimplex {

/// An M-subset (strictly increasing indices) and its degree.
struct SubsetDegree {
    std::vector<std::size_t> indices;
    std::size_t degree = 0;

    friend bool operator==(const SubsetDegree&, const SubsetDegree&) = default;
};

enum class DegreeMode { exact, local_lower_bound };

std::string_view to_string(DegreeMode mode);

struct DegreeReport {
    std::size_t degree = 0;
    SubsetDegree argmax;
    DegreeMode mode = DegreeMode::exact;
    std::uint64_t simplex_tests = 0;
    std::uint64_t subsets_examined = 0;
};

/// Largest n for which degree_of_set_exact runs, per dimension.
struct ExactCaps {
    std::size_t planar = 400;
    std::size_t spatial = 60;
    std::size_t four = 30;
    std::size_t higher = 20;

    std::size_t for_dim(int m) const noexcept {
        return m <= 2 ? planar : m == 3 ? spatial : m == 4 ? four : higher;
    }
};

/// Degree queries over one immutable point set. Assumes general position;
/// near-degenerate simplices encountered on the way raise DegenerateSimplexError.
class DegreeEngine {
public:
    explicit DegreeEngine(const PointSet& points);

    const PointSet& points() const noexcept { return *points_; }
    const SpatialGrid& grid() const noexcept { return grid_; }
    int dim() const noexcept { return points_->dim(); }

    /// True iff the simplex on these M+1 indices holds no other point of X
    /// (closed hull, vertices excluded). Only grid buckets overlapping the
    /// simplex bounding box are inspected.
    bool is_empty_simplex(std::span<const std::size_t> idx) const;

    /// Number of apexes z completing the M-subset to an empty simplex.
    std::size_t degree_of_subset(std::span<const std::size_t> idx) const;

    /// Exact deg(X) with the lexicographically smallest maximizing subset.
    DegreeReport degree_of_set_exact(const ExactCaps& caps = {}, int threads = 1) const;

    /// Max degree over the subsets counted by N_T(X). Never exceeds the exact degree.
    DegreeReport degree_lower_bound_local(double radius) const;

    /// Number of empty (M+1)-subsets, by direct enumeration.
    std::size_t count_empty_simplices() const;

    /// Degrees of all M-subsets in lexicographic subset order.
    std::vector<std::size_t> all_subset_degrees(const ExactCaps& caps = {}) const;

private:
    struct Counters {
        std::uint64_t simplex_tests = 0;
        std::uint64_t subsets = 0;
    };

    std::size_t degree_by_height_filter(std::span<const std::size_t> idx, Counters& counters) const;
    void check_subset(std::span<const std::size_t> idx, std::size_t expected) const;

    const PointSet* points_;
    SpatialGrid grid_;
};

/// Angular tables for planar sets: for every point, the other points sorted
/// counter-clockwise, and each point's rank in every such order. With them
/// the degree of a pair is a linear-time staircase count.
class PlanarAngularIndex {
public:
    explicit PlanarAngularIndex(const PointSet& points);

    std::size_t degree(std::size_t a, std::size_t b) const;

private:
    const PointSet* points_;
    std::size_t n_;
    std::vector<std::uint32_t> order_;  // n x 2(n-1): each order stored twice to avoid wrapping
    std::vector<std::uint32_t> rank_;   // n x n
    std::vector<double> xy_;            // interleaved coordinates
};

/// Visits every M-subset S (as strictly increasing indices) for which some
/// member x_i has every point of S within the closed ball B_T(x_i). Each
/// subset is visited once, from its smallest qualifying anchor.
template <class F>
void for_each_clustered_subset(const SpatialGrid& grid, double radius, F&& visit);

// Free-function conveniences; each builds a DegreeEngine internally.
bool is_empty_simplex(const PointSet& points, std::span<const std::size_t> idx);
std::size_t degree_of_subset(const PointSet& points, std::span<const std::size_t> idx);
DegreeReport degree_of_set_exact(const PointSet& points, const ExactCaps& caps = {}, int threads = 1);
DegreeReport degree_lower_bound_local(const PointSet& points, double radius);
std::size_t count_empty_simplices(const PointSet& points);

template <class F>
void for_each_clustered_subset(const SpatialGrid& grid, double radius, F&& visit) {
    const auto& pts = grid.points();
    const auto n = pts.size();
    const auto m = static_cast<std::size_t>(pts.dim());
    if (n < m || !(radius > 0.0)) return;
    const double r2 = radius * radius;
    std::vector<std::size_t> neighbours, pick(m - 1), subset(m);

    auto covers = [&](std::size_t anchor, std::span<const std::size_t> s) {
        return std::all_of(s.begin(), s.end(), [&](std::size_t j) {
            return squared_distance(pts[anchor], pts[j]) <= r2;
        });
    };

    for (std::size_t i = 0; i < n; ++i) {
        neighbours.clear();
        grid.for_each_within(pts[i], radius, [&](std::size_t j) {
            if (j != i) neighbours.push_back(j);
        });
        if (neighbours.size() + 1 < m) continue;
        std::sort(neighbours.begin(), neighbours.end());
        for (std::size_t k = 0; k + 1 < m; ++k) pick[k] = k;
        do {
            for (std::size_t k = 0; k + 1 < m; ++k) subset[k] = neighbours[pick[k]];
            subset[m - 1] = i;
            std::sort(subset.begin(), subset.end());
            bool earlier_anchor = false;
            for (auto j : subset) {
                if (j >= i) break;
                if (covers(j, subset)) {
                    earlier_anchor = true;
                    break;
                }
            }
            if (!earlier_anchor) visit(std::span<const std::size_t>(subset));
        } while (next_combination(pick, neighbours.size()));
    }
}

}  // namespace emptysimplex
