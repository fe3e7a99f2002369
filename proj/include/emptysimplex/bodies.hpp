#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "emptysimplex/geometry.hpp"
#include "emptysimplex/random.hpp"

namespace emptysimplex {

struct Ball {
    Point center;
    double radius;
};

/// Axis-aligned box [lo, hi].
struct Box {
    Point lo;
    Point hi;
};

/// Axis-aligned ellipsoid with the given semi-axes.
struct Ellipsoid {
    Point center;
    Point semi_axes;
};

/// Intersection of halfspaces normals[i] . x <= offsets[i]; must be bounded.
struct HPolytope {
    std::vector<Point> normals;
    std::vector<double> offsets;
};

struct BoundingBox {
    Point lo;
    Point hi;

    double volume() const;
};

/// A Monte Carlo or exact measurement; stderr is 0 for closed forms.
struct Estimate {
    double value = 0.0;
    double stderr = 0.0;
    bool exact = true;
};

enum class BodyKind { ball, box, ellipsoid, h_polytope };

/// A convex body W: compact, convex, nonempty interior. Immutable.
class ConvexBody {
public:
    using Shape = std::variant<Ball, Box, Ellipsoid, HPolytope>;

    static ConvexBody ball(int dim, double radius, Point center = {});
    static ConvexBody box(Point lo, Point hi);
    static ConvexBody unit_cube(int dim);
    static ConvexBody ellipsoid(Point semi_axes, Point center = {});
    /// Volume of an H-polytope is estimated by Monte Carlo at construction
    /// using `volume_samples` draws from the stream `volume_seed`.
    static ConvexBody h_polytope(std::vector<Point> normals, std::vector<double> offsets,
                                 std::size_t volume_samples = std::size_t{1} << 20,
                                 Seed volume_seed = {0x766f6c756d65ULL, 0});

    int dim() const noexcept { return dim_; }
    BodyKind kind() const noexcept { return static_cast<BodyKind>(shape_.index()); }
    const Shape& shape() const noexcept { return shape_; }

    /// Closed membership; `tol` enlarges the body by an absolute slack.
    bool contains(PointView p, double tol = 0.0) const;

    const Estimate& volume() const noexcept { return volume_; }
    const BoundingBox& bounding_box() const noexcept { return bbox_; }

    /// Reference centre: centre of ball/ellipsoid/box, vertex centroid of a polytope.
    const Point& center() const noexcept { return center_; }
    /// Radius of the largest ball about center() contained in the body.
    double inradius() const noexcept { return inradius_; }
    double diameter() const noexcept { return diameter_; }

    /// Closed-form H^{M-1} measure of the projection onto u^perp, if available.
    std::optional<double> exact_shadow_area(PointView u) const;

    /// Polytope vertices (empty for smooth bodies).
    const std::vector<Point>& vertices() const noexcept { return vertices_; }

    std::string describe() const;

    /// Draws one uniform point of W into `out`.
    template <class Rng>
    void sample_point(Rng& rng, std::span<double> out) const;

private:
    ConvexBody(int dim, Shape shape) : dim_(dim), shape_(std::move(shape)) {
        if (dim < 2) throw DimensionError("convex bodies need dimension >= 2");
    }

    int dim_;
    Shape shape_;
    Estimate volume_;
    BoundingBox bbox_;
    Point center_;
    double inradius_ = 0.0;
    double diameter_ = 0.0;
    std::vector<Point> vertices_;
};

bool membership(const ConvexBody& body, PointView p);

Estimate volume(const ConvexBody& body);

/// Hit-or-miss volume estimate from the bounding box, for any body kind.
Estimate estimate_volume_mc(const ConvexBody& body, std::size_t samples, Seed seed);

/// H^{M-1}(W | u^perp). Closed form for ball, box and ellipsoid; otherwise a
/// Monte Carlo projection estimate with `samples` draws.
Estimate shadow_area(const ConvexBody& body, PointView u, std::size_t samples = std::size_t{1} << 18,
                     Seed seed = {});

/// n i.i.d. uniform points of W, deterministic in `seed`.
PointSet sample_uniform(const ConvexBody& body, std::size_t n, Seed seed);
/// Same, drawing from an existing engine.
PointSet sample_uniform(const ConvexBody& body, std::size_t n, Engine& rng);

/// Occupancy counts of the axis-aligned cubes of side `mesh`, anchored at the
/// bounding-box corner, that lie entirely inside W. Cells are listed in
/// row-major order of their multi-index.
std::vector<std::size_t> grid_cell_counts(const PointSet& points, const ConvexBody& body, double mesh);

}  // namespace emptysimplex

#include "emptysimplex/bodies_sampling.ipp"
