#include "emptysimplex/spatial_grid.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace emptysimplex {

namespace {

constexpr std::size_t kMaxCells = std::size_t{1} << 22;

}  // namespace

SpatialGrid::SpatialGrid(const PointSet& points) : points_(&points), dim_(points.dim()) {
    const auto n = points.size();
    double diag2 = 0.0;
    if (n > 0) {
        for (int j = 0; j < dim_; ++j) {
            double lo = points[0][j], hi = lo;
            for (std::size_t i = 1; i < n; ++i) {
                lo = std::min(lo, points[i][j]);
                hi = std::max(hi, points[i][j]);
            }
            diag2 += (hi - lo) * (hi - lo);
        }
    }
    const double diag = std::sqrt(diag2);
    const double cell = n > 0 ? std::pow(static_cast<double>(n), -1.0 / dim_) * diag : 1.0;
    build(cell > 0.0 ? cell : 1.0);
}

SpatialGrid::SpatialGrid(const PointSet& points, double cell_size) : points_(&points), dim_(points.dim()) {
    if (!(cell_size > 0.0)) throw std::invalid_argument("grid cell size must be positive");
    build(cell_size);
}

void SpatialGrid::build(double cell_size) {
    const auto& pts = *points_;
    const auto n = pts.size();
    const auto d = static_cast<std::size_t>(dim_);
    std::array<double, kMaxDim> hi{};
    for (std::size_t j = 0; j < d; ++j) {
        origin_[j] = n ? pts[0][j] : 0.0;
        hi[j] = origin_[j];
        for (std::size_t i = 1; i < n; ++i) {
            origin_[j] = std::min(origin_[j], pts[i][j]);
            hi[j] = std::max(hi[j], pts[i][j]);
        }
    }
    // Grow the cell until the bucket count is bounded.
    cell_ = cell_size;
    for (;;) {
        std::size_t total = 1;
        bool overflow = false;
        for (std::size_t j = 0; j < d; ++j) {
            const double cells = std::floor((hi[j] - origin_[j]) / cell_) + 1.0;
            extent_[j] = static_cast<std::size_t>(std::min(cells, 1e9));
            if (static_cast<double>(total) * static_cast<double>(extent_[j]) > static_cast<double>(kMaxCells))
                overflow = true;
            total *= extent_[j];
        }
        if (!overflow) break;
        cell_ *= 2.0;
    }
    std::size_t total = 1;
    for (std::size_t j = 0; j < d; ++j) total *= extent_[j];

    std::vector<std::size_t> cell_of(n);
    start_.assign(total + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t flat = 0;
        for (std::size_t j = 0; j < d; ++j) flat = flat * extent_[j] + clamp_axis(pts[i][j], j);
        cell_of[i] = flat;
        ++start_[flat + 1];
    }
    for (std::size_t c = 0; c < total; ++c) start_[c + 1] += start_[c];
    index_.resize(n);
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < n; ++i) index_[fill[cell_of[i]]++] = i;
}

}  // namespace emptysimplex
