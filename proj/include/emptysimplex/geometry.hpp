#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "emptysimplex/errors.hpp"

namespace emptysimplex {

/// Largest ambient dimension supported by the fixed-size predicate kernels.
inline constexpr int kMaxDim = 8;

/// Determinants whose magnitude, divided by the product of the edge lengths,
/// falls at or below this value are treated as zero.
inline constexpr double kDegeneracyTolerance = 1e-12;

using Point = std::vector<double>;
using PointView = std::span<const double>;

/// An ordered collection of points in R^M, stored row-major.
class PointSet {
public:
    explicit PointSet(int dim);
    PointSet(int dim, std::vector<double> coords);
    PointSet(int dim, std::initializer_list<Point> points);

    int dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return coords_.size() / static_cast<std::size_t>(dim_); }
    bool empty() const noexcept { return coords_.empty(); }

    PointView operator[](std::size_t i) const noexcept {
        return {coords_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
    }

    void push_back(PointView p);
    void reserve(std::size_t n) { coords_.reserve(n * static_cast<std::size_t>(dim_)); }

    const std::vector<double>& coords() const noexcept { return coords_; }

private:
    int dim_;
    std::vector<double> coords_;
};

/// M+1 vertices of a (possibly degenerate) simplex in R^M.
class SimplexVertices {
public:
    SimplexVertices(int dim, std::initializer_list<Point> vertices);
    SimplexVertices(const PointSet& points, std::span<const std::size_t> indices);

    int dim() const noexcept { return dim_; }
    std::span<const PointView> views() const noexcept { return views_; }

    SimplexVertices(const SimplexVertices&);
    SimplexVertices& operator=(const SimplexVertices&);
    SimplexVertices(SimplexVertices&&) noexcept = default;
    SimplexVertices& operator=(SimplexVertices&&) noexcept = default;

private:
    void rebuild_views();

    int dim_;
    std::vector<double> coords_;
    std::vector<PointView> views_;
};

/// Determinant of a dense n x n row-major matrix (n <= kMaxDim); the input is
/// overwritten by its LU factors.
double determinant_inplace(std::span<double> matrix, int n);

/// Edge-matrix determinant det[v_1 - v_0, ..., v_M - v_0] together with the
/// product of the edge lengths.
struct EdgeDeterminant {
    double det;
    double scale;
};
EdgeDeterminant edge_determinant(std::span<const PointView> vertices);

/// Determinant of the edge matrix (v_i - v_0) divided by the product of the
/// edge lengths; lies in [-1, 1] and is 0 for repeated vertices.
double normalized_orientation_det(std::span<const PointView> vertices);

/// Sign of the edge-matrix determinant, with the degeneracy tolerance applied.
int orientation(std::span<const PointView> vertices);
int orientation(const SimplexVertices& simplex);

double simplex_volume(std::span<const PointView> vertices);
double simplex_volume(const SimplexVertices& simplex);

/// True iff p lies in the closed simplex and is not one of its vertices.
/// Throws DegenerateSimplexError for a flat simplex.
bool contains_strictly(std::span<const PointView> simplex, PointView p);
bool contains_strictly(const SimplexVertices& simplex, PointView p);

/// True iff no M+1 points of X are affinely dependent.
bool general_position(const PointSet& points);

/// Volume of the unit M-ball.
double unit_ball_volume(int m);
/// (M-1)-dimensional measure of the unit sphere in R^M.
double unit_sphere_measure(int m);

double binomial(long long n, long long k);
double factorial(int n);

double distance(PointView a, PointView b);
double squared_distance(PointView a, PointView b);

/// Diameter of the point set (max pairwise distance); 0 for fewer than two points.
double diameter(const PointSet& points);
/// Smallest pairwise distance; +inf for fewer than two points.
double min_pairwise_distance(const PointSet& points);

/// Advance `idx` (strictly increasing, values < n) to the next combination in
/// lexicographic order. Returns false after the last one.
bool next_combination(std::span<std::size_t> idx, std::size_t n);

}  // namespace emptysimplex
