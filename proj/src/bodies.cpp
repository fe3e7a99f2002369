#include "emptysimplex/bodies.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace emptysimplex {

namespace detail {

void throw_sampling_failure(std::size_t attempts) {
    std::ostringstream msg;
    msg << "rejection sampling: no point accepted in " << attempts
        << " consecutive draws (acceptance ratio below " << kMinAcceptance << ")";
    throw SamplingError(msg.str());
}

}  // namespace detail

namespace {

void require_point_dim(const ConvexBody& body, PointView p) {
    if (p.size() != static_cast<std::size_t>(body.dim()))
        throw DimensionError("point of dimension " + std::to_string(p.size()) + " tested against a " +
                             std::to_string(body.dim()) + "-dimensional body");
}

Point zeros_if_empty(Point center, int dim) {
    if (center.empty()) center.assign(static_cast<std::size_t>(dim), 0.0);
    if (center.size() != static_cast<std::size_t>(dim)) throw DimensionError("centre dimension mismatch");
    return center;
}

// Solves A x = b (n x n, row-major) by Gaussian elimination; false if singular.
bool solve_linear(std::vector<double> a, std::vector<double> b, int n, std::vector<double>& x) {
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
        if (std::abs(a[pivot * n + col]) < 1e-14) return false;
        if (pivot != col) {
            for (int c = 0; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
            std::swap(b[col], b[pivot]);
        }
        for (int r = col + 1; r < n; ++r) {
            const double f = a[r * n + col] / a[col * n + col];
            for (int c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
            b[r] -= f * b[col];
        }
    }
    x.assign(static_cast<std::size_t>(n), 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < n; ++c) s -= a[r * n + c] * x[c];
        x[r] = s / a[r * n + r];
    }
    return true;
}

double dot(PointView a, PointView b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
    return s;
}

double norm(PointView a) { return std::sqrt(dot(a, a)); }

// Vertices of {x : normals.x <= offsets} by enumerating M-subsets of facets.
std::vector<Point> polytope_vertices(const HPolytope& p, int dim) {
    const auto m = p.normals.size();
    std::vector<Point> out;
    if (m < static_cast<std::size_t>(dim)) return out;
    std::vector<std::size_t> idx(static_cast<std::size_t>(dim));
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::vector<double> x;
    do {
        std::vector<double> a, b;
        for (auto i : idx) {
            a.insert(a.end(), p.normals[i].begin(), p.normals[i].end());
            b.push_back(p.offsets[i]);
        }
        if (!solve_linear(a, b, dim, x)) continue;
        bool feasible = true;
        for (std::size_t i = 0; i < m && feasible; ++i)
            feasible = dot(p.normals[i], x) <= p.offsets[i] + 1e-9 * (1.0 + std::abs(p.offsets[i]));
        if (!feasible) continue;
        const bool seen = std::any_of(out.begin(), out.end(), [&](const Point& v) {
            return squared_distance(v, x) < 1e-20;
        });
        if (!seen) out.push_back(x);
    } while (next_combination(idx, m));
    return out;
}

std::string join(const Point& p) {
    std::ostringstream s;
    s << '[';
    for (std::size_t i = 0; i < p.size(); ++i) s << (i ? "," : "") << p[i];
    s << ']';
    return s.str();
}

}  // namespace

double BoundingBox::volume() const {
    double v = 1.0;
    for (std::size_t j = 0; j < lo.size(); ++j) v *= hi[j] - lo[j];
    return v;
}

ConvexBody ConvexBody::ball(int dim, double radius, Point center) {
    if (!(radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
    center = zeros_if_empty(std::move(center), dim);
    ConvexBody b(dim, Ball{center, radius});
    b.volume_ = {unit_ball_volume(dim) * std::pow(radius, dim), 0.0, true};
    b.bbox_.lo = center;
    b.bbox_.hi = center;
    for (int j = 0; j < dim; ++j) {
        b.bbox_.lo[j] -= radius;
        b.bbox_.hi[j] += radius;
    }
    b.center_ = center;
    b.inradius_ = radius;
    b.diameter_ = 2.0 * radius;
    return b;
}

ConvexBody ConvexBody::box(Point lo, Point hi) {
    if (lo.size() != hi.size() || lo.empty()) throw DimensionError("box corners must share a dimension");
    const int dim = static_cast<int>(lo.size());
    double vol = 1.0, inr = std::numeric_limits<double>::infinity(), diag2 = 0.0;
    Point c(lo.size());
    for (std::size_t j = 0; j < lo.size(); ++j) {
        const double a = hi[j] - lo[j];
        if (!(a > 0.0)) throw std::invalid_argument("box extents must be positive");
        vol *= a;
        inr = std::min(inr, 0.5 * a);
        diag2 += a * a;
        c[j] = 0.5 * (lo[j] + hi[j]);
    }
    ConvexBody b(dim, Box{lo, hi});
    b.volume_ = {vol, 0.0, true};
    b.bbox_ = {lo, hi};
    b.center_ = c;
    b.inradius_ = inr;
    b.diameter_ = std::sqrt(diag2);
    return b;
}

ConvexBody ConvexBody::unit_cube(int dim) {
    return box(Point(static_cast<std::size_t>(dim), 0.0), Point(static_cast<std::size_t>(dim), 1.0));
}

ConvexBody ConvexBody::ellipsoid(Point semi_axes, Point center) {
    const int dim = static_cast<int>(semi_axes.size());
    center = zeros_if_empty(std::move(center), dim);
    double prod = 1.0;
    for (double s : semi_axes) {
        if (!(s > 0.0)) throw std::invalid_argument("ellipsoid semi-axes must be positive");
        prod *= s;
    }
    ConvexBody b(dim, Ellipsoid{center, semi_axes});
    b.volume_ = {unit_ball_volume(dim) * prod, 0.0, true};
    b.bbox_.lo = center;
    b.bbox_.hi = center;
    for (int j = 0; j < dim; ++j) {
        b.bbox_.lo[j] -= semi_axes[j];
        b.bbox_.hi[j] += semi_axes[j];
    }
    b.center_ = center;
    b.inradius_ = *std::min_element(semi_axes.begin(), semi_axes.end());
    b.diameter_ = 2.0 * *std::max_element(semi_axes.begin(), semi_axes.end());
    return b;
}

ConvexBody ConvexBody::h_polytope(std::vector<Point> normals, std::vector<double> offsets,
                                  std::size_t volume_samples, Seed volume_seed) {
    if (normals.empty() || normals.size() != offsets.size())
        throw std::invalid_argument("h-polytope needs matching, nonempty normal and offset lists");
    const int dim = static_cast<int>(normals.front().size());
    for (const auto& a : normals)
        if (a.size() != static_cast<std::size_t>(dim)) throw DimensionError("halfspace normal dimension mismatch");
    HPolytope shape{std::move(normals), std::move(offsets)};
    auto verts = polytope_vertices(shape, dim);
    if (verts.size() < static_cast<std::size_t>(dim) + 1)
        throw std::invalid_argument("h-polytope is empty, flat or unbounded");

    ConvexBody b(dim, std::move(shape));
    const auto& hp = std::get<HPolytope>(b.shape_);
    b.bbox_.lo = verts.front();
    b.bbox_.hi = verts.front();
    Point c(static_cast<std::size_t>(dim), 0.0);
    for (const auto& v : verts)
        for (int j = 0; j < dim; ++j) {
            b.bbox_.lo[j] = std::min(b.bbox_.lo[j], v[j]);
            b.bbox_.hi[j] = std::max(b.bbox_.hi[j], v[j]);
            c[j] += v[j] / static_cast<double>(verts.size());
        }
    for (const auto& a : hp.normals)
        if (norm(a) == 0.0) throw std::invalid_argument("zero halfspace normal");
    // Every axis ray must leave the body. Necessary for boundedness, not sufficient.
    for (int j = 0; j < dim; ++j)
        for (double sgn : {-1.0, 1.0}) {
            const bool blocked = std::any_of(hp.normals.begin(), hp.normals.end(),
                                             [&](const Point& a) { return sgn * a[j] > 0.0; });
            if (!blocked) throw std::invalid_argument("h-polytope is unbounded");
        }
    b.center_ = c;
    double inr = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < hp.normals.size(); ++i)
        inr = std::min(inr, (hp.offsets[i] - dot(hp.normals[i], c)) / norm(hp.normals[i]));
    if (!(inr > 0.0)) throw std::invalid_argument("h-polytope has empty interior");
    b.inradius_ = inr;
    double d2 = 0.0;
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j) d2 = std::max(d2, squared_distance(verts[i], verts[j]));
    b.diameter_ = std::sqrt(d2);
    b.vertices_ = std::move(verts);
    b.volume_ = estimate_volume_mc(b, volume_samples, volume_seed);
    if (b.volume_.value / b.bbox_.volume() < detail::kMinAcceptance)
        throw SamplingError("h-polytope fills less than 1e-6 of its bounding box; rejection sampling refused");
    return b;
}

bool ConvexBody::contains(PointView p, double tol) const {
    require_point_dim(*this, p);
    return std::visit(
        [&](const auto& s) -> bool {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, Ball>) {
                const double r = s.radius + tol;
                return squared_distance(p, s.center) <= r * r;
            } else if constexpr (std::is_same_v<S, Box>) {
                for (std::size_t j = 0; j < p.size(); ++j)
                    if (p[j] < s.lo[j] - tol || p[j] > s.hi[j] + tol) return false;
                return true;
            } else if constexpr (std::is_same_v<S, Ellipsoid>) {
                double q = 0.0;
                for (std::size_t j = 0; j < p.size(); ++j) {
                    const double t = (p[j] - s.center[j]) / (s.semi_axes[j] + tol);
                    q += t * t;
                }
                return q <= 1.0;
            } else {
                for (std::size_t i = 0; i < s.normals.size(); ++i)
                    if (dot(s.normals[i], p) > s.offsets[i] + tol * norm(s.normals[i])) return false;
                return true;
            }
        },
        shape_);
}

std::optional<double> ConvexBody::exact_shadow_area(PointView u) const {
    const int m = dim_;
    return std::visit(
        [&](const auto& s) -> std::optional<double> {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, Ball>) {
                return unit_ball_volume(m - 1) * std::pow(s.radius, m - 1);
            } else if constexpr (std::is_same_v<S, Box>) {
                double total = 0.0;
                for (int j = 0; j < m; ++j) {
                    double face = 1.0;
                    for (int i = 0; i < m; ++i)
                        if (i != j) face *= s.hi[i] - s.lo[i];
                    total += std::abs(u[j]) * face;
                }
                return total;
            } else if constexpr (std::is_same_v<S, Ellipsoid>) {
                double prod = 1.0, q = 0.0;
                for (int j = 0; j < m; ++j) {
                    prod *= s.semi_axes[j];
                    q += u[j] * u[j] / (s.semi_axes[j] * s.semi_axes[j]);
                }
                return unit_ball_volume(m - 1) * prod * std::sqrt(q);
            } else {
                return std::nullopt;
            }
        },
        shape_);
}

std::string ConvexBody::describe() const {
    return std::visit(
        [](const auto& s) -> std::string {
            using S = std::decay_t<decltype(s)>;
            std::ostringstream o;
            if constexpr (std::is_same_v<S, Ball>) {
                o << "ball(radius=" << s.radius << ",center=" << join(s.center) << ")";
            } else if constexpr (std::is_same_v<S, Box>) {
                o << "box(lo=" << join(s.lo) << ",hi=" << join(s.hi) << ")";
            } else if constexpr (std::is_same_v<S, Ellipsoid>) {
                o << "ellipsoid(semi_axes=" << join(s.semi_axes) << ",center=" << join(s.center) << ")";
            } else {
                o << "h_polytope(" << s.normals.size() << " halfspaces)";
            }
            return o.str();
        },
        shape_);
}

bool membership(const ConvexBody& body, PointView p) { return body.contains(p); }

Estimate volume(const ConvexBody& body) { return body.volume(); }

Estimate estimate_volume_mc(const ConvexBody& body, std::size_t samples, Seed seed) {
    if (samples == 0) throw std::invalid_argument("volume estimate needs at least one sample");
    auto rng = make_engine(seed);
    std::uniform_real_distribution<double> unif;
    const auto& bb = body.bounding_box();
    const auto d = static_cast<std::size_t>(body.dim());
    std::array<double, kMaxDim> x{};
    std::size_t hits = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        for (std::size_t j = 0; j < d; ++j) x[j] = bb.lo[j] + (bb.hi[j] - bb.lo[j]) * unif(rng);
        if (body.contains(PointView(x.data(), d))) ++hits;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    const double bv = bb.volume();
    return {bv * p, bv * std::sqrt(p * (1.0 - p) / static_cast<double>(samples)), false};
}

namespace {

// Orthonormal basis of u^perp via Gram-Schmidt on the canonical vectors.
std::vector<Point> complement_basis(PointView u) {
    const auto d = u.size();
    std::vector<Point> basis;
    for (std::size_t k = 0; k < d && basis.size() + 1 < d; ++k) {
        Point v(d, 0.0);
        v[k] = 1.0;
        auto project_out = [&](PointView w) {
            const double c = dot(v, w);
            for (std::size_t j = 0; j < d; ++j) v[j] -= c * w[j];
        };
        project_out(u);
        for (const auto& b : basis) project_out(b);
        const double n = norm(v);
        if (n < 1e-8) continue;
        for (auto& x : v) x /= n;
        basis.push_back(std::move(v));
    }
    return basis;
}

// Whether the line q + t u meets the polytope.
bool line_hits_polytope(const HPolytope& p, PointView q, PointView u) {
    double tmin = -std::numeric_limits<double>::infinity();
    double tmax = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.normals.size(); ++i) {
        const double au = dot(p.normals[i], u);
        const double slack = p.offsets[i] - dot(p.normals[i], q);
        if (std::abs(au) < 1e-15) {
            if (slack < 0.0) return false;
        } else if (au > 0.0) {
            tmax = std::min(tmax, slack / au);
        } else {
            tmin = std::max(tmin, slack / au);
        }
        if (tmin > tmax) return false;
    }
    return true;
}

}  // namespace

Estimate shadow_area(const ConvexBody& body, PointView u, std::size_t samples, Seed seed) {
    require_point_dim(body, u);
    if (std::abs(norm(u) - 1.0) > 1e-9) throw std::invalid_argument("shadow direction must be a unit vector");
    if (auto exact = body.exact_shadow_area(u)) return {*exact, 0.0, true};
    if (samples == 0) throw std::invalid_argument("shadow estimate needs at least one sample");

    const auto& poly = std::get<HPolytope>(body.shape());
    const auto basis = complement_basis(u);
    const auto k = basis.size();
    Point plo(k, std::numeric_limits<double>::infinity());
    Point phi(k, -std::numeric_limits<double>::infinity());
    for (const auto& v : body.vertices())
        for (std::size_t i = 0; i < k; ++i) {
            const double c = dot(v, basis[i]);
            plo[i] = std::min(plo[i], c);
            phi[i] = std::max(phi[i], c);
        }
    double area = 1.0;
    for (std::size_t i = 0; i < k; ++i) area *= phi[i] - plo[i];

    auto rng = make_engine(seed);
    std::uniform_real_distribution<double> unif;
    const auto d = static_cast<std::size_t>(body.dim());
    Point q(d);
    std::size_t hits = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        std::fill(q.begin(), q.end(), 0.0);
        for (std::size_t i = 0; i < k; ++i) {
            const double c = plo[i] + (phi[i] - plo[i]) * unif(rng);
            for (std::size_t j = 0; j < d; ++j) q[j] += c * basis[i][j];
        }
        if (line_hits_polytope(poly, q, u)) ++hits;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    return {area * p, area * std::sqrt(p * (1.0 - p) / static_cast<double>(samples)), false};
}

PointSet sample_uniform(const ConvexBody& body, std::size_t n, Engine& rng) {
    PointSet out(body.dim());
    out.reserve(n);
    std::array<double, kMaxDim> x{};
    const auto d = static_cast<std::size_t>(body.dim());
    for (std::size_t i = 0; i < n; ++i) {
        body.sample_point(rng, std::span<double>(x.data(), d));
        out.push_back(PointView(x.data(), d));
    }
    return out;
}

PointSet sample_uniform(const ConvexBody& body, std::size_t n, Seed seed) {
    auto rng = make_engine(seed);
    return sample_uniform(body, n, rng);
}

std::vector<std::size_t> grid_cell_counts(const PointSet& points, const ConvexBody& body, double mesh) {
    if (!(mesh > 0.0)) throw std::invalid_argument("grid mesh must be positive");
    if (!points.empty() && points.dim() != body.dim()) throw DimensionError("point set and body dimensions differ");
    const auto d = static_cast<std::size_t>(body.dim());
    const auto& bb = body.bounding_box();
    std::vector<std::size_t> cells_per_axis(d);
    std::size_t total = 1;
    for (std::size_t j = 0; j < d; ++j) {
        cells_per_axis[j] = static_cast<std::size_t>(std::floor((bb.hi[j] - bb.lo[j]) / mesh + 1e-9));
        total *= cells_per_axis[j];
    }
    const double tol = 1e-12 * std::max(1.0, body.diameter());

    // Flat cell index -> position in the output list, or npos if not contained.
    constexpr auto npos = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> slot(total, npos);
    std::size_t contained = 0;
    std::vector<std::size_t> multi(d, 0);
    Point corner(d);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        for (std::size_t j = d; j-- > 0;) {
            multi[j] = rem % cells_per_axis[j];
            rem /= cells_per_axis[j];
        }
        bool inside = true;
        for (std::size_t mask = 0; mask < (std::size_t{1} << d) && inside; ++mask) {
            for (std::size_t j = 0; j < d; ++j)
                corner[j] = bb.lo[j] + static_cast<double>(multi[j] + ((mask >> j) & 1U)) * mesh;
            inside = body.contains(corner, tol);
        }
        if (inside) slot[flat] = contained++;
    }

    std::vector<std::size_t> counts(contained, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto p = points[i];
        std::size_t flat = 0;
        bool in_range = true;
        for (std::size_t j = 0; j < d && in_range; ++j) {
            const double t = std::floor((p[j] - bb.lo[j]) / mesh);
            if (t < 0.0 || t >= static_cast<double>(cells_per_axis[j])) {
                in_range = false;
            } else {
                flat = flat * cells_per_axis[j] + static_cast<std::size_t>(t);
            }
        }
        if (in_range && slot[flat] != npos) ++counts[slot[flat]];
    }
    return counts;
}

}  // namespace emptysimplex
