#include "emptysimplex/covariogram.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "emptysimplex/parallel.hpp"

namespace emptysimplex {

namespace {

double norm(PointView v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

void require_unit(PointView u, int dim) {
    if (u.size() != static_cast<std::size_t>(dim)) throw DimensionError("direction dimension mismatch");
    if (std::abs(norm(u) - 1.0) > 1e-9) throw std::invalid_argument("direction must be a unit vector");
}

// Combines the sampling error of a fraction with the error of a Monte Carlo volume.
double scaled_stderr(const Estimate& vol, double fraction, double fraction_stderr) {
    return std::sqrt(vol.value * vol.value * fraction_stderr * fraction_stderr +
                     fraction * fraction * vol.stderr * vol.stderr);
}

}  // namespace

CovariogramQuery::CovariogramQuery(int dim, std::vector<Point> args) : dim_(dim), args_(std::move(args)) {
    if (dim < 2) throw DimensionError("covariogram queries need M >= 2");
    if (args_.size() != static_cast<std::size_t>(dim) - 1)
        throw DimensionError("covariogram query needs M-1 = " + std::to_string(dim - 1) + " vectors, got " +
                             std::to_string(args_.size()));
    for (const auto& y : args_)
        if (y.size() != static_cast<std::size_t>(dim)) throw DimensionError("covariogram argument dimension mismatch");
}

CovariogramQuery CovariogramQuery::single(PointView y) {
    const int dim = static_cast<int>(y.size());
    std::vector<Point> args(static_cast<std::size_t>(std::max(dim - 1, 0)), Point(y.size(), 0.0));
    if (!args.empty()) args[0].assign(y.begin(), y.end());
    return {dim, std::move(args)};
}

CovariogramQuery CovariogramQuery::zero(int dim) {
    return {dim, std::vector<Point>(static_cast<std::size_t>(dim - 1), Point(static_cast<std::size_t>(dim), 0.0))};
}

std::optional<Point> CovariogramQuery::single_argument() const {
    std::optional<Point> found;
    for (const auto& y : args_) {
        if (std::all_of(y.begin(), y.end(), [](double x) { return x == 0.0; })) continue;
        if (found) return std::nullopt;
        found = y;
    }
    if (!found) found = Point(static_cast<std::size_t>(dim_), 0.0);
    return found;
}

Estimate covariogram_mc(const ConvexBody& body, const CovariogramQuery& q, std::size_t samples, Seed seed) {
    if (samples == 0) throw std::invalid_argument("covariogram estimate needs at least one sample");
    if (q.dim() != body.dim()) throw DimensionError("query and body dimensions differ");
    auto rng = make_engine(seed);
    const auto d = static_cast<std::size_t>(body.dim());
    std::array<double, kMaxDim> x{}, shifted{};
    std::size_t hits = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        body.sample_point(rng, std::span<double>(x.data(), d));
        bool all = true;
        for (const auto& y : q.args()) {
            for (std::size_t j = 0; j < d; ++j) shifted[j] = x[j] - y[j];
            if (!body.contains(PointView(shifted.data(), d))) {
                all = false;
                break;
            }
        }
        if (all) ++hits;
    }
    const auto& vol = body.volume();
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    const double sp = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
    return {vol.value * p, scaled_stderr(vol, p, sp), false};
}

double covariogram_box_exact(std::span<const double> extents, const CovariogramQuery& q) {
    if (extents.size() != static_cast<std::size_t>(q.dim())) throw DimensionError("box extents and query differ");
    double g = 1.0;
    for (std::size_t j = 0; j < extents.size(); ++j) {
        double lo = 0.0, hi = 0.0;
        for (const auto& y : q.args()) {
            lo = std::min(lo, y[j]);
            hi = std::max(hi, y[j]);
        }
        g *= std::max(0.0, extents[j] + lo - hi);
    }
    return g;
}

double ball_overlap_volume(int dim, double radius, double d) {
    d = std::abs(d);
    if (d >= 2.0 * radius) return 0.0;
    if (dim == 2)
        return 2.0 * radius * radius * std::acos(d / (2.0 * radius)) - 0.5 * d * std::sqrt(4.0 * radius * radius - d * d);
    if (dim == 3) return std::numbers::pi * (4.0 * radius + d) * (2.0 * radius - d) * (2.0 * radius - d) / 12.0;
    throw DimensionError("closed-form ball overlap implemented for M = 2, 3 only");
}

double covariogram_disc_exact(double radius, PointView y) {
    if (y.size() != 2) throw DimensionError("disc covariogram is planar");
    return ball_overlap_volume(2, radius, norm(y));
}

std::optional<double> covariogram_exact(const ConvexBody& body, const CovariogramQuery& q) {
    if (q.dim() != body.dim()) throw DimensionError("query and body dimensions differ");
    if (const auto* b = std::get_if<Box>(&body.shape())) {
        Point extents(b->lo.size());
        for (std::size_t j = 0; j < extents.size(); ++j) extents[j] = b->hi[j] - b->lo[j];
        return covariogram_box_exact(extents, q);
    }
    if (body.dim() > 3) return std::nullopt;
    const auto y = q.single_argument();
    if (!y) return std::nullopt;
    if (const auto* b = std::get_if<Ball>(&body.shape())) return ball_overlap_volume(body.dim(), b->radius, norm(*y));
    if (const auto* e = std::get_if<Ellipsoid>(&body.shape())) {
        // Linear image of the unit ball: g_E(y) = det(A) g_B(A^-1 y).
        double det = 1.0, d2 = 0.0;
        for (std::size_t j = 0; j < y->size(); ++j) {
            det *= e->semi_axes[j];
            const double t = (*y)[j] / e->semi_axes[j];
            d2 += t * t;
        }
        return det * ball_overlap_volume(body.dim(), 1.0, std::sqrt(d2));
    }
    return std::nullopt;
}

std::vector<double> StepSchedule::steps() const {
    if (!(first > 0.0) || count < 2) throw std::invalid_argument("step schedule needs r_0 > 0 and at least two steps");
    std::vector<double> r(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) r[static_cast<std::size_t>(j)] = std::ldexp(first, -j);
    return r;
}

StepSchedule default_step_schedule(const ConvexBody& body) { return {0.05 * body.inradius(), 7}; }

DirectionalProfile directional_profile(const ConvexBody& body, PointView u, const StepSchedule& schedule,
                                       const McOptions& mc) {
    require_unit(u, body.dim());
    const auto radii = schedule.steps();
    for (std::size_t j = 1; j < radii.size(); ++j)
        if (!(radii[j] < radii[j - 1])) throw std::invalid_argument("steps must be strictly decreasing");

    DirectionalProfile prof;
    prof.direction.assign(u.begin(), u.end());
    prof.radii = radii;
    const auto d = static_cast<std::size_t>(body.dim());
    const auto& vol = body.volume();
    const auto m = radii.size();
    prof.values.resize(m);

    Point y(d);
    auto shift_query = [&](double r) {
        for (std::size_t j = 0; j < d; ++j) y[j] = r * u[j];
        return CovariogramQuery::single(y);
    };

    if (covariogram_exact(body, shift_query(radii[0]))) {
        prof.exact = true;
        for (std::size_t j = 0; j < m; ++j) prof.values[j] = *covariogram_exact(body, shift_query(radii[j]));
        const double d_small = (prof.values[m - 1] - vol.value) / radii[m - 1];
        const double d_next = (prof.values[m - 2] - vol.value) / radii[m - 2];
        prof.right_derivative = 2.0 * d_small - d_next;
    } else {
        // Common random numbers: every step reuses the same uniform x in W.
        prof.exact = false;
        if (mc.samples < 2) throw std::invalid_argument("Monte Carlo derivative needs at least two samples");
        auto rng = make_engine(mc.seed);
        std::array<double, kMaxDim> x{}, shifted{};
        std::vector<std::size_t> hits(m, 0);
        double sum = 0.0, sum2 = 0.0;
        for (std::size_t s = 0; s < mc.samples; ++s) {
            body.sample_point(rng, std::span<double>(x.data(), d));
            std::array<double, 2> miss{};
            for (std::size_t j = 0; j < m; ++j) {
                for (std::size_t k = 0; k < d; ++k) shifted[k] = x[k] - radii[j] * u[k];
                const bool in = body.contains(PointView(shifted.data(), d));
                hits[j] += in ? 1 : 0;
                if (j < 2) miss[j] = in ? 0.0 : 1.0;
            }
            const double v = -(2.0 * miss[1] / radii[1] - miss[0] / radii[0]);
            sum += v;
            sum2 += v * v;
        }
        const double ns = static_cast<double>(mc.samples);
        for (std::size_t j = 0; j < m; ++j) prof.values[j] = vol.value * static_cast<double>(hits[j]) / ns;
        const double mean = sum / ns;
        const double var = std::max(0.0, (sum2 - ns * mean * mean) / (ns - 1.0));
        prof.right_derivative = vol.value * mean;
        prof.stderr = scaled_stderr(vol, mean, std::sqrt(var / ns));
    }

    double lip = (vol.value - prof.values.front()) / radii.front();
    double prev_r = 0.0, prev_g = vol.value;
    for (std::size_t j = m; j-- > 0;) {
        lip = std::max(lip, std::abs(prof.values[j] - prev_g) / (radii[j] - prev_r));
        prev_r = radii[j];
        prev_g = prof.values[j];
    }
    prof.lipschitz = lip;
    return prof;
}

double right_derivative_at_zero(const ConvexBody& body, PointView u, const StepSchedule& schedule,
                                const McOptions& mc) {
    return directional_profile(body, u, schedule, mc).right_derivative;
}

double directional_variation(const ConvexBody& body, PointView u, const StepSchedule& schedule, const McOptions& mc) {
    return -2.0 * right_derivative_at_zero(body, u, schedule, mc);
}

double directional_variation(const ConvexBody& body, PointView u) {
    return directional_variation(body, u, default_step_schedule(body));
}

std::size_t default_direction_count(int dim) { return dim == 2 ? 256 : 512; }

std::vector<Point> quadrature_directions(int dim, std::size_t count) {
    if (dim < 2) throw DimensionError("directions need M >= 2");
    if (count == 0) throw std::invalid_argument("need at least one direction");
    std::vector<Point> dirs;
    dirs.reserve(count);
    if (dim == 2) {
        for (std::size_t i = 0; i < count; ++i) {
            const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(count);
            dirs.push_back({std::cos(t), std::sin(t)});
        }
    } else if (dim == 3) {
        const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
        for (std::size_t i = 0; i < count; ++i) {
            const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(count);
            const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double phi = golden * static_cast<double>(i);
            dirs.push_back({rho * std::cos(phi), rho * std::sin(phi), z});
        }
    } else {
        auto rng = make_engine({0x646972656374ULL, static_cast<std::uint64_t>(dim)});
        std::normal_distribution<double> gauss;
        while (dirs.size() < count) {
            Point v(static_cast<std::size_t>(dim));
            for (auto& x : v) x = gauss(rng);
            const double n = norm(v);
            if (n == 0.0) continue;
            for (auto& x : v) x /= n;
            dirs.push_back(std::move(v));
        }
    }
    return dirs;
}

PerimeterEstimate perimeter_via_covariogram(const ConvexBody& body, std::span<const Point> directions,
                                            const StepSchedule& schedule, const McOptions& mc) {
    if (directions.empty()) throw std::invalid_argument("perimeter quadrature needs at least one direction");
    PerimeterEstimate out;
    out.profiles.resize(directions.size());
    parallel_for(directions.size(), mc.threads, [&](std::size_t i) {
        McOptions local = mc;
        local.seed = derive(mc.seed, {0x706572ULL, i});
        out.profiles[i] = directional_profile(body, directions[i], schedule, local);
    });
    const int m = body.dim();
    const double weight = unit_sphere_measure(m) / static_cast<double>(directions.size());
    const double scale = -weight / unit_ball_volume(m - 1);
    double sum = 0.0, var = 0.0;
    for (const auto& p : out.profiles) {
        sum += p.right_derivative;
        var += p.stderr * p.stderr;
    }
    out.value = scale * sum;
    out.stderr = std::abs(scale) * std::sqrt(var);
    return out;
}

PerimeterEstimate perimeter_via_covariogram(const ConvexBody& body, std::size_t direction_count,
                                            const StepSchedule& schedule, const McOptions& mc) {
    const auto dirs = quadrature_directions(body.dim(), direction_count);
    return perimeter_via_covariogram(body, dirs, schedule, mc);
}

PerimeterEstimate perimeter_via_covariogram(const ConvexBody& body) {
    return perimeter_via_covariogram(body, default_direction_count(body.dim()), default_step_schedule(body));
}

}  // namespace emptysimplex
