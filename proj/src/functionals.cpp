#include "emptysimplex/functionals.hpp"

#include <cmath>
#include <stdexcept>

namespace emptysimplex {

namespace {

void require_radius(double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("cluster radius T must be positive");
}

}  // namespace

std::size_t n_t(const DegreeEngine& engine, double radius) {
    require_radius(radius);
    std::size_t count = 0;
    for_each_clustered_subset(engine.grid(), radius, [&](std::span<const std::size_t>) { ++count; });
    return count;
}

std::size_t n_t(const PointSet& points, double radius) {
    require_radius(radius);
    const SpatialGrid grid(points);
    std::size_t count = 0;
    for_each_clustered_subset(grid, radius, [&](std::span<const std::size_t>) { ++count; });
    return count;
}

FunctionalValue f_t_k(const DegreeEngine& engine, double radius, int k) {
    require_radius(radius);
    if (k < 0) throw std::invalid_argument("moment order k must be nonnegative");
    FunctionalValue out{radius, k, 0.0, 0};
    for_each_clustered_subset(engine.grid(), radius, [&](std::span<const std::size_t> subset) {
        ++out.subsets;
        out.value += k == 0 ? 1.0 : std::pow(static_cast<double>(engine.degree_of_subset(subset)), k);
    });
    return out;
}

FunctionalValue f_t_k(const PointSet& points, double radius, int k) {
    return f_t_k(DegreeEngine(points), radius, k);
}

}  // namespace emptysimplex
