#include "emptysimplex/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace emptysimplex {

namespace {

void require_dim(int dim) {
    if (dim < 1 || dim > kMaxDim)
        throw DimensionError("dimension " + std::to_string(dim) + " outside [1, " +
                             std::to_string(kMaxDim) + "]");
}

void require_simplex_shape(std::span<const PointView> vertices) {
    if (vertices.empty()) throw DimensionError("simplex without vertices");
    const auto dim = vertices.size() - 1;
    require_dim(static_cast<int>(dim));
    for (const auto& v : vertices)
        if (v.size() != dim)
            throw DimensionError("simplex vertex of dimension " + std::to_string(v.size()) +
                                 ", expected " + std::to_string(dim));
}

}  // namespace

PointSet::PointSet(int dim) : dim_(dim) { require_dim(dim); }

PointSet::PointSet(int dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
    require_dim(dim);
    if (coords_.size() % static_cast<std::size_t>(dim) != 0)
        throw DimensionError("coordinate count is not a multiple of the dimension");
}

PointSet::PointSet(int dim, std::initializer_list<Point> points) : dim_(dim) {
    require_dim(dim);
    reserve(points.size());
    for (const auto& p : points) push_back(p);
}

void PointSet::push_back(PointView p) {
    if (p.size() != static_cast<std::size_t>(dim_))
        throw DimensionError("point of dimension " + std::to_string(p.size()) + " added to a " +
                             std::to_string(dim_) + "-dimensional set");
    coords_.insert(coords_.end(), p.begin(), p.end());
}

SimplexVertices::SimplexVertices(int dim, std::initializer_list<Point> vertices) : dim_(dim) {
    require_dim(dim);
    if (vertices.size() != static_cast<std::size_t>(dim) + 1)
        throw DimensionError("a simplex in R^" + std::to_string(dim) + " needs " +
                             std::to_string(dim + 1) + " vertices");
    for (const auto& v : vertices) {
        if (v.size() != static_cast<std::size_t>(dim)) throw DimensionError("vertex dimension mismatch");
        coords_.insert(coords_.end(), v.begin(), v.end());
    }
    rebuild_views();
}

SimplexVertices::SimplexVertices(const PointSet& points, std::span<const std::size_t> indices)
    : dim_(points.dim()) {
    if (indices.size() != static_cast<std::size_t>(dim_) + 1)
        throw DimensionError("simplex index tuple has wrong length");
    for (auto i : indices) {
        auto p = points[i];
        coords_.insert(coords_.end(), p.begin(), p.end());
    }
    rebuild_views();
}

SimplexVertices::SimplexVertices(const SimplexVertices& other) : dim_(other.dim_), coords_(other.coords_) {
    rebuild_views();
}

SimplexVertices& SimplexVertices::operator=(const SimplexVertices& other) {
    if (this != &other) {
        dim_ = other.dim_;
        coords_ = other.coords_;
        rebuild_views();
    }
    return *this;
}

void SimplexVertices::rebuild_views() {
    views_.clear();
    const auto d = static_cast<std::size_t>(dim_);
    for (std::size_t i = 0; i <= d; ++i) views_.emplace_back(coords_.data() + i * d, d);
}

double determinant_inplace(std::span<double> a, int n) {
    if (n == 1) return a[0];
    if (n == 2) return a[0] * a[3] - a[1] * a[2];
    if (n == 3)
        return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
               a[2] * (a[3] * a[7] - a[4] * a[6]);
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
        if (a[pivot * n + col] == 0.0) return 0.0;
        if (pivot != col) {
            for (int c = 0; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
            det = -det;
        }
        const double diag = a[col * n + col];
        det *= diag;
        for (int r = col + 1; r < n; ++r) {
            const double f = a[r * n + col] / diag;
            for (int c = col + 1; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
        }
    }
    return det;
}

namespace {

EdgeDeterminant edge_determinant_unchecked(std::span<const PointView> v) {
    const int n = static_cast<int>(v.size()) - 1;
    std::array<double, kMaxDim * kMaxDim> m{};
    double scale = 1.0;
    for (int i = 0; i < n; ++i) {
        double norm2 = 0.0;
        for (int j = 0; j < n; ++j) {
            const double e = v[i + 1][j] - v[0][j];
            m[i * n + j] = e;
            norm2 += e * e;
        }
        scale *= std::sqrt(norm2);
    }
    return {determinant_inplace(std::span<double>(m.data(), static_cast<std::size_t>(n * n)), n), scale};
}

}  // namespace

EdgeDeterminant edge_determinant(std::span<const PointView> vertices) {
    require_simplex_shape(vertices);
    return edge_determinant_unchecked(vertices);
}

double normalized_orientation_det(std::span<const PointView> vertices) {
    require_simplex_shape(vertices);
    auto [det, scale] = edge_determinant_unchecked(vertices);
    if (scale == 0.0) return 0.0;
    return det / scale;
}

int orientation(std::span<const PointView> vertices) {
    const double d = normalized_orientation_det(vertices);
    if (std::abs(d) <= kDegeneracyTolerance) return 0;
    return d > 0 ? 1 : -1;
}

int orientation(const SimplexVertices& simplex) { return orientation(simplex.views()); }

double simplex_volume(std::span<const PointView> vertices) {
    require_simplex_shape(vertices);
    const int n = static_cast<int>(vertices.size()) - 1;
    auto [det, scale] = edge_determinant_unchecked(vertices);
    if (scale == 0.0 || std::abs(det) <= kDegeneracyTolerance * scale) return 0.0;
    return std::abs(det) / factorial(n);
}

double simplex_volume(const SimplexVertices& simplex) { return simplex_volume(simplex.views()); }

bool contains_strictly(std::span<const PointView> simplex, PointView p) {
    require_simplex_shape(simplex);
    if (p.size() != simplex.size() - 1) throw DimensionError("query point dimension mismatch");
    const int base = orientation(simplex);
    if (base == 0) throw DegenerateSimplexError("containment query on a degenerate simplex");
    for (const auto& v : simplex)
        if (std::equal(v.begin(), v.end(), p.begin())) return false;

    std::array<PointView, kMaxDim + 1> replaced{};
    std::copy(simplex.begin(), simplex.end(), replaced.begin());
    const auto count = simplex.size();
    for (std::size_t i = 0; i < count; ++i) {
        const auto saved = replaced[i];
        replaced[i] = p;
        const int s = orientation(std::span<const PointView>(replaced.data(), count));
        replaced[i] = saved;
        if (s == -base) return false;
    }
    return true;
}

bool contains_strictly(const SimplexVertices& simplex, PointView p) {
    return contains_strictly(simplex.views(), p);
}

bool general_position(const PointSet& points) {
    const auto n = points.size();
    const auto k = static_cast<std::size_t>(points.dim()) + 1;
    if (n < k) return true;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    std::array<PointView, kMaxDim + 1> v{};
    do {
        for (std::size_t i = 0; i < k; ++i) v[i] = points[idx[i]];
        if (orientation(std::span<const PointView>(v.data(), k)) == 0) return false;
    } while (next_combination(idx, n));
    return true;
}

double unit_ball_volume(int m) {
    if (m < 1) throw DimensionError("unit ball volume needs M >= 1");
    return std::pow(std::numbers::pi, 0.5 * m) / std::tgamma(0.5 * m + 1.0);
}

double unit_sphere_measure(int m) { return m * unit_ball_volume(m); }

double binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (long long i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return std::round(r);
}

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

double squared_distance(PointView a, PointView b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        s += d * d;
    }
    return s;
}

double distance(PointView a, PointView b) { return std::sqrt(squared_distance(a, b)); }

double diameter(const PointSet& points) {
    double best = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            best = std::max(best, squared_distance(points[i], points[j]));
    return std::sqrt(best);
}

double min_pairwise_distance(const PointSet& points) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            best = std::min(best, squared_distance(points[i], points[j]));
    return std::sqrt(best);
}

bool next_combination(std::span<std::size_t> idx, std::size_t n) {
    const auto k = idx.size();
    if (k == 0) return false;
    std::size_t i = k;
    while (i > 0) {
        --i;
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace emptysimplex
