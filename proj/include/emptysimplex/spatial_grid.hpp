#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "emptysimplex/geometry.hpp"

namespace emptysimplex {

/// Uniform bucket grid over the bounding box of a point set. Buckets are
/// stored in CSR form; indices inside a bucket are increasing. The grid keeps
/// a pointer to the point set, which must outlive it.
class SpatialGrid {
public:
    /// Cell size n^(-1/M) times the bounding-box diagonal.
    explicit SpatialGrid(const PointSet& points);
    SpatialGrid(const PointSet& points, double cell_size);

    const PointSet& points() const noexcept { return *points_; }
    double cell_size() const noexcept { return cell_; }
    std::size_t cell_count() const noexcept { return start_.empty() ? 0 : start_.size() - 1; }

    /// Calls f(i) for every point whose bucket overlaps the box [lo, hi].
    /// Candidates only; the caller applies the exact test.
    template <class F>
    void for_each_candidate(PointView lo, PointView hi, F&& f) const;

    /// Calls f(i) for every point with |x_i - c| <= radius.
    template <class F>
    void for_each_within(PointView c, double radius, F&& f) const;

private:
    void build(double cell_size);
    std::size_t clamp_axis(double x, std::size_t j) const;

    const PointSet* points_;
    int dim_;
    double cell_ = 1.0;
    std::array<double, kMaxDim> origin_{};
    std::array<std::size_t, kMaxDim> extent_{};
    std::vector<std::size_t> start_;
    std::vector<std::size_t> index_;
};

inline std::size_t SpatialGrid::clamp_axis(double x, std::size_t j) const {
    const double t = std::floor((x - origin_[j]) / cell_);
    if (!(t > 0.0)) return 0;
    const auto c = static_cast<std::size_t>(t);
    return c >= extent_[j] ? extent_[j] - 1 : c;
}

template <class F>
void SpatialGrid::for_each_candidate(PointView lo, PointView hi, F&& f) const {
    if (points_->empty()) return;
    const auto d = static_cast<std::size_t>(dim_);
    std::array<std::size_t, kMaxDim> a{}, b{}, cur{};
    for (std::size_t j = 0; j < d; ++j) {
        a[j] = clamp_axis(lo[j], j);
        b[j] = clamp_axis(hi[j], j);
        cur[j] = a[j];
    }
    for (;;) {
        std::size_t flat = 0;
        for (std::size_t j = 0; j < d; ++j) flat = flat * extent_[j] + cur[j];
        for (std::size_t k = start_[flat]; k < start_[flat + 1]; ++k) f(index_[k]);
        std::size_t j = d;
        while (j > 0) {
            --j;
            if (cur[j] < b[j]) {
                ++cur[j];
                break;
            }
            cur[j] = a[j];
            if (j == 0) return;
        }
    }
}

template <class F>
void SpatialGrid::for_each_within(PointView c, double radius, F&& f) const {
    const auto d = static_cast<std::size_t>(dim_);
    std::array<double, kMaxDim> lo{}, hi{};
    for (std::size_t j = 0; j < d; ++j) {
        lo[j] = c[j] - radius;
        hi[j] = c[j] + radius;
    }
    const double r2 = radius * radius;
    for_each_candidate(PointView(lo.data(), d), PointView(hi.data(), d), [&](std::size_t i) {
        if (squared_distance((*points_)[i], c) <= r2) f(i);
    });
}

}  // namespace emptysimplex
