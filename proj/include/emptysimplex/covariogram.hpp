#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "emptysimplex/bodies.hpp"
#include "emptysimplex/geometry.hpp"
#include "emptysimplex/random.hpp"

namespace emptysimplex {

/// The argument (y_1, ..., y_{M-1}) of the generalized covariogram
///   g_W(y) = Vol(W ∩ (y_1 + W) ∩ ... ∩ (y_{M-1} + W)).
class CovariogramQuery {
public:
    CovariogramQuery(int dim, std::vector<Point> args);

    /// (y, 0, ..., 0).
    static CovariogramQuery single(PointView y);
    static CovariogramQuery zero(int dim);

    int dim() const noexcept { return dim_; }
    const std::vector<Point>& args() const noexcept { return args_; }

    /// The only nonzero argument, or the zero vector; nullopt if several are nonzero.
    std::optional<Point> single_argument() const;

private:
    int dim_;
    std::vector<Point> args_;
};

/// Monte Carlo estimate of g_W(q): Vol(W) times the fraction of uniform
/// x in W with x - y_i in W for every i.
Estimate covariogram_mc(const ConvexBody& body, const CovariogramQuery& q, std::size_t samples, Seed seed);

/// Exact covariogram of a box with the given edge lengths: product over axes
/// of the interval-intersection lengths.
double covariogram_box_exact(std::span<const double> extents, const CovariogramQuery& q);

/// Area of the intersection of two radius-R discs whose centres are |y| apart.
double covariogram_disc_exact(double radius, PointView y);

/// Volume of the intersection of two radius-R balls at centre distance d (M = 2 or 3).
double ball_overlap_volume(int dim, double radius, double d);

/// Closed form when one is known: boxes for any query; balls and ellipsoids
/// (M = 2, 3) for single-argument queries.
std::optional<double> covariogram_exact(const ConvexBody& body, const CovariogramQuery& q);

/// Geometric step sequence r_j = first * 2^-j, j = 0 .. count-1.
struct StepSchedule {
    double first = 0.0;
    int count = 7;

    std::vector<double> steps() const;
};

/// r_0 = 0.05 * inradius, seven halvings.
StepSchedule default_step_schedule(const ConvexBody& body);

/// Sampling controls for bodies without a closed-form covariogram.
struct McOptions {
    std::size_t samples = std::size_t{1} << 16;
    Seed seed{};
    int threads = 1;
};

/// g_W^u(r) = g_W(r u, 0, ..., 0) sampled on a step schedule.
struct DirectionalProfile {
    Point direction;
    std::vector<double> radii;    // decreasing
    std::vector<double> values;   // g_W^u at each radius
    double right_derivative = 0.0;
    double stderr = 0.0;
    double lipschitz = 0.0;       // largest difference quotient over the samples, including r = 0
    bool exact = true;
};

DirectionalProfile directional_profile(const ConvexBody& body, PointView u, const StepSchedule& schedule,
                                       const McOptions& mc = {});

/// Extrapolated (g_W^u)'(0+). Closed-form bodies use the two smallest steps;
/// Monte Carlo uses the two largest with common random numbers.
double right_derivative_at_zero(const ConvexBody& body, PointView u, const StepSchedule& schedule,
                                const McOptions& mc = {});

/// V_u(W) = -2 (g_W^u)'(0+).
double directional_variation(const ConvexBody& body, PointView u, const StepSchedule& schedule,
                             const McOptions& mc = {});
double directional_variation(const ConvexBody& body, PointView u);

/// Equally spaced angles for M = 2, a Fibonacci lattice for M = 3, and a
/// fixed pseudo-random set of normalized Gaussians above that.
std::vector<Point> quadrature_directions(int dim, std::size_t count);

/// Default quadrature size: 256 angles in the plane, 512 directions otherwise.
std::size_t default_direction_count(int dim);

struct PerimeterEstimate {
    double value = 0.0;
    double stderr = 0.0;
    std::vector<DirectionalProfile> profiles;
};

/// Per(W) = -(1 / kappa_{M-1}) * integral over the sphere of (g_W^u)'(0+),
/// with equal quadrature weights omega_M / #directions.
PerimeterEstimate perimeter_via_covariogram(const ConvexBody& body, std::span<const Point> directions,
                                            const StepSchedule& schedule, const McOptions& mc = {});
PerimeterEstimate perimeter_via_covariogram(const ConvexBody& body, std::size_t direction_count,
                                            const StepSchedule& schedule, const McOptions& mc = {});
PerimeterEstimate perimeter_via_covariogram(const ConvexBody& body);

}  // namespace emptysimplex
