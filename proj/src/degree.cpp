#include "emptysimplex/degree.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "emptysimplex/parallel.hpp"

namespace emptysimplex {

std::string_view to_string(DegreeMode mode) {
    return mode == DegreeMode::exact ? "exact" : "local";
}

namespace {

bool lex_less(std::span<const std::size_t> a, std::span<const std::size_t> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Keeps the larger degree; on ties the lexicographically smaller subset.
void offer(SubsetDegree& best, bool& have, std::span<const std::size_t> idx, std::size_t degree) {
    if (!have || degree > best.degree || (degree == best.degree && lex_less(idx, best.indices))) {
        best.indices.assign(idx.begin(), idx.end());
        best.degree = degree;
        have = true;
    }
}

}  // namespace

DegreeEngine::DegreeEngine(const PointSet& points) : points_(&points), grid_(points) {
    if (points.dim() < 2) throw DimensionError("degree computations need M >= 2");
}

void DegreeEngine::check_subset(std::span<const std::size_t> idx, std::size_t expected) const {
    if (idx.size() != expected)
        throw std::invalid_argument("expected " + std::to_string(expected) + " indices, got " +
                                    std::to_string(idx.size()));
    const auto n = points_->size();
    for (std::size_t k = 0; k < idx.size(); ++k) {
        if (idx[k] >= n) throw std::out_of_range("point index " + std::to_string(idx[k]) + " out of range");
        for (std::size_t l = 0; l < k; ++l)
            if (idx[l] == idx[k]) throw std::invalid_argument("repeated point index");
    }
}

bool DegreeEngine::is_empty_simplex(std::span<const std::size_t> idx) const {
    const auto m = static_cast<std::size_t>(dim());
    check_subset(idx, m + 1);
    const auto& pts = *points_;
    std::array<PointView, kMaxDim + 1> v{};
    std::array<double, kMaxDim> lo{}, hi{};
    for (std::size_t j = 0; j < m; ++j) {
        lo[j] = std::numeric_limits<double>::infinity();
        hi[j] = -lo[j];
    }
    for (std::size_t k = 0; k <= m; ++k) {
        v[k] = pts[idx[k]];
        for (std::size_t j = 0; j < m; ++j) {
            lo[j] = std::min(lo[j], v[k][j]);
            hi[j] = std::max(hi[j], v[k][j]);
        }
    }
    const std::span<const PointView> simplex(v.data(), m + 1);
    if (orientation(simplex) == 0) throw DegenerateSimplexError("emptiness query on a degenerate simplex");

    bool empty = true;
    grid_.for_each_candidate(PointView(lo.data(), m), PointView(hi.data(), m), [&](std::size_t c) {
        if (!empty || std::find(idx.begin(), idx.end(), c) != idx.end()) return;
        if (contains_strictly(simplex, pts[c])) empty = false;
    });
    return empty;
}

// Apexes on one side of the base hyperplane are processed by increasing
// distance from it. A point inside simplex(S + z) lies strictly closer to the
// base than z, and any such point's own simplex contains an empty apex, so z
// only needs to be tested against the empty apexes already found.
std::size_t DegreeEngine::degree_by_height_filter(std::span<const std::size_t> idx, Counters& counters) const {
    const auto& pts = *points_;
    const auto m = static_cast<std::size_t>(dim());
    const auto n = pts.size();
    ++counters.subsets;

    std::array<PointView, kMaxDim + 1> v{};
    for (std::size_t k = 0; k < m; ++k) v[k] = pts[idx[k]];
    const std::span<const PointView> simplex(v.data(), m + 1);

    struct Apex {
        double height;
        std::size_t index;
    };
    std::vector<Apex> sides[2];
    for (std::size_t z = 0; z < n; ++z) {
        if (std::find(idx.begin(), idx.end(), z) != idx.end()) continue;
        v[m] = pts[z];
        const auto [det, scale] = edge_determinant(simplex);
        if (scale == 0.0 || std::abs(det) <= kDegeneracyTolerance * scale)
            throw DegenerateSimplexError("point set is not in general position");
        sides[det > 0 ? 0 : 1].push_back({std::abs(det), z});
    }

    std::size_t degree = 0;
    std::vector<std::size_t> empty_apexes;
    for (int s = 0; s < 2; ++s) {
        auto& side = sides[s];
        const int sign = s == 0 ? 1 : -1;
        std::sort(side.begin(), side.end(), [](const Apex& a, const Apex& b) { return a.height < b.height; });
        empty_apexes.clear();
        for (const auto& apex : side) {
            v[m] = pts[apex.index];
            bool blocked = false;
            for (auto e : empty_apexes) {
                bool inside = true;
                for (std::size_t j = 0; j < m && inside; ++j) {
                    const auto saved = v[j];
                    v[j] = pts[e];
                    inside = orientation(simplex) != -sign;
                    v[j] = saved;
                    ++counters.simplex_tests;
                }
                if (inside) {
                    blocked = true;
                    break;
                }
            }
            if (!blocked) {
                empty_apexes.push_back(apex.index);
                ++degree;
            }
        }
    }
    return degree;
}

std::size_t DegreeEngine::degree_of_subset(std::span<const std::size_t> idx) const {
    check_subset(idx, static_cast<std::size_t>(dim()));
    Counters c;
    return degree_by_height_filter(idx, c);
}

DegreeReport DegreeEngine::degree_of_set_exact(const ExactCaps& caps, int threads) const {
    const auto& pts = *points_;
    const auto n = pts.size();
    const auto m = static_cast<std::size_t>(dim());
    const auto cap = caps.for_dim(dim());
    if (n > cap)
        throw ExactCapExceeded("exact degree capped at n <= " + std::to_string(cap) + " for M = " +
                               std::to_string(m) + " (got n = " + std::to_string(n) +
                               "); use the local lower-bound mode");
    DegreeReport report;
    report.mode = DegreeMode::exact;
    if (n < m + 1) {
        for (std::size_t k = 0; k < std::min(n, m); ++k) report.argmax.indices.push_back(k);
        return report;
    }

    struct Partial {
        SubsetDegree best;
        bool have = false;
        Counters counters;
    };
    std::vector<Partial> partial(n);

    if (m == 2) {
        const PlanarAngularIndex index(pts);
        parallel_for(n, threads, [&](std::size_t a) {
            auto& p = partial[a];
            std::array<std::size_t, 2> pair{a, 0};
            for (std::size_t b = a + 1; b < n; ++b) {
                pair[1] = b;
                const auto d = index.degree(a, b);
                ++p.counters.subsets;
                p.counters.simplex_tests += n - 2;
                offer(p.best, p.have, pair, d);
            }
        });
    } else {
        parallel_for(n, threads, [&](std::size_t a) {
            auto& p = partial[a];
            if (n - a < m) return;
            std::vector<std::size_t> rest(m - 1), subset(m);
            for (std::size_t k = 0; k + 1 < m; ++k) rest[k] = k;
            const auto tail = n - a - 1;
            do {
                subset[0] = a;
                for (std::size_t k = 0; k + 1 < m; ++k) subset[k + 1] = a + 1 + rest[k];
                offer(p.best, p.have, subset, degree_by_height_filter(subset, p.counters));
            } while (next_combination(rest, tail));
        });
    }

    bool have = false;
    for (const auto& p : partial) {
        report.simplex_tests += p.counters.simplex_tests;
        report.subsets_examined += p.counters.subsets;
        if (p.have) offer(report.argmax, have, p.best.indices, p.best.degree);
    }
    report.degree = report.argmax.degree;
    return report;
}

DegreeReport DegreeEngine::degree_lower_bound_local(double radius) const {
    if (!(radius > 0.0)) throw std::invalid_argument("local degree radius must be positive");
    DegreeReport report;
    report.mode = DegreeMode::local_lower_bound;
    Counters counters;
    bool have = false;
    for_each_clustered_subset(grid_, radius, [&](std::span<const std::size_t> subset) {
        offer(report.argmax, have, subset, degree_by_height_filter(subset, counters));
    });
    report.degree = report.argmax.degree;
    report.simplex_tests = counters.simplex_tests;
    report.subsets_examined = counters.subsets;
    return report;
}

std::size_t DegreeEngine::count_empty_simplices() const {
    const auto n = points_->size();
    const auto k = static_cast<std::size_t>(dim()) + 1;
    if (n < k) return 0;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    std::size_t count = 0;
    do {
        if (is_empty_simplex(idx)) ++count;
    } while (next_combination(idx, n));
    return count;
}

std::vector<std::size_t> DegreeEngine::all_subset_degrees(const ExactCaps& caps) const {
    const auto& pts = *points_;
    const auto n = pts.size();
    const auto m = static_cast<std::size_t>(dim());
    if (n > caps.for_dim(dim())) throw ExactCapExceeded("all_subset_degrees: point set above the exact cap");
    std::vector<std::size_t> out;
    if (n < m) return out;
    if (m == 2) {
        const PlanarAngularIndex index(pts);
        out.reserve(n * (n - 1) / 2);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b) out.push_back(index.degree(a, b));
        return out;
    }
    std::vector<std::size_t> idx(m);
    for (std::size_t i = 0; i < m; ++i) idx[i] = i;
    Counters c;
    do {
        out.push_back(degree_by_height_filter(idx, c));
    } while (next_combination(idx, n));
    return out;
}

PlanarAngularIndex::PlanarAngularIndex(const PointSet& points) : points_(&points), n_(points.size()) {
    if (points.dim() != 2) throw DimensionError("angular index is planar only");
    const auto n = n_;
    if (n < 2) return;
    const auto m = n - 1;
    order_.resize(n * 2 * m);
    rank_.assign(n * n, 0);
    xy_.resize(2 * n);
    for (std::size_t p = 0; p < n; ++p) {
        xy_[2 * p] = points[p][0];
        xy_[2 * p + 1] = points[p][1];
    }
    std::vector<std::uint32_t> others;
    others.reserve(m);
    for (std::size_t a = 0; a < n; ++a) {
        const double ax = points[a][0], ay = points[a][1];
        others.clear();
        for (std::size_t p = 0; p < n; ++p)
            if (p != a) others.push_back(static_cast<std::uint32_t>(p));
        auto upper = [&](std::uint32_t p) {
            const double dx = points[p][0] - ax, dy = points[p][1] - ay;
            return dy > 0.0 || (dy == 0.0 && dx > 0.0);
        };
        std::sort(others.begin(), others.end(), [&](std::uint32_t p, std::uint32_t q) {
            const bool up = upper(p), uq = upper(q);
            if (up != uq) return up;
            const double px = points[p][0] - ax, py = points[p][1] - ay;
            const double qx = points[q][0] - ax, qy = points[q][1] - ay;
            return px * qy - py * qx > 0.0;
        });
        for (std::size_t k = 0; k < m; ++k) {
            order_[a * 2 * m + k] = order_[a * 2 * m + m + k] = others[k];
            rank_[a * n + others[k]] = static_cast<std::uint32_t>(k);
        }
    }
}

// Apexes left of a->b in counter-clockwise order around a have increasing
// angle at a; their clockwise offset from a around b orders the angle at b.
// z spans an empty triangle iff no earlier apex has a smaller offset.
std::size_t PlanarAngularIndex::degree(std::size_t a, std::size_t b) const {
    const auto n = n_;
    const auto m = n - 1;
    if (n < 3) return 0;
    const std::uint32_t* ord = order_.data() + a * 2 * m;
    const std::uint32_t* rank_b = rank_.data() + b * n;
    const std::size_t k = rank_[a * n + b];
    const auto a_at_b = static_cast<std::ptrdiff_t>(rank_b[a]);
    const auto wrap = static_cast<std::ptrdiff_t>(m);
    const double* xy = xy_.data();
    const double ax = xy[2 * a], ay = xy[2 * a + 1];
    const double ex = xy[2 * b] - ax, ey = xy[2 * b + 1] - ay;
    auto cross = [&](std::uint32_t p) { return ex * (xy[2 * p + 1] - ay) - ey * (xy[2 * p] - ax); };

    std::size_t degree = 0;
    std::ptrdiff_t best = wrap;
    for (std::size_t i = k + 1; i < k + m; ++i) {
        const auto p = ord[i];
        if (!(cross(p) > 0.0)) break;
        auto off = a_at_b - static_cast<std::ptrdiff_t>(rank_b[p]);
        if (off < 0) off += wrap;
        if (off < best) {
            best = off;
            ++degree;
        }
    }
    best = wrap;
    for (std::size_t i = k + m - 1; i > k; --i) {
        const auto p = ord[i];
        if (!(cross(p) < 0.0)) break;
        auto off = static_cast<std::ptrdiff_t>(rank_b[p]) - a_at_b;
        if (off < 0) off += wrap;
        if (off < best) {
            best = off;
            ++degree;
        }
    }
    return degree;
}

bool is_empty_simplex(const PointSet& points, std::span<const std::size_t> idx) {
    return DegreeEngine(points).is_empty_simplex(idx);
}

std::size_t degree_of_subset(const PointSet& points, std::span<const std::size_t> idx) {
    return DegreeEngine(points).degree_of_subset(idx);
}

DegreeReport degree_of_set_exact(const PointSet& points, const ExactCaps& caps, int threads) {
    return DegreeEngine(points).degree_of_set_exact(caps, threads);
}

DegreeReport degree_lower_bound_local(const PointSet& points, double radius) {
    return DegreeEngine(points).degree_lower_bound_local(radius);
}

std::size_t count_empty_simplices(const PointSet& points) { return DegreeEngine(points).count_empty_simplices(); }

}  // namespace emptysimplex
