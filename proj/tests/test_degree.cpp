#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "emptysimplex/bodies.hpp"
#include "emptysimplex/degree.hpp"
#include "oracles.hpp"

using namespace emptysimplex;

namespace {

const PointSet kSquare(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});

PointSet random_set(int dim, std::size_t n, std::uint64_t seed) {
    return sample_uniform(ConvexBody::unit_cube(dim), n, Seed{seed, 0});
}

PointSet affine_image(const PointSet& pts, std::mt19937_64& rng) {
    const auto m = static_cast<std::size_t>(pts.dim());
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<double> a(m * m), b(m);
    for (auto& x : a) x = u(rng);
    for (std::size_t i = 0; i < m; ++i) a[i * m + i] += 5.0;  // keep the map well conditioned
    for (auto& x : b) x = u(rng);
    PointSet out(pts.dim());
    Point q(m);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t r = 0; r < m; ++r) {
            q[r] = b[r];
            for (std::size_t c = 0; c < m; ++c) q[r] += a[r * m + c] * pts[i][c];
        }
        out.push_back(q);
    }
    return out;
}

}  // namespace

TEST(IsEmptySimplex, Examples) {
    const PointSet tri(2, {{0, 0}, {4, 0}, {0, 4}});
    const std::vector<std::size_t> all{0, 1, 2};
    EXPECT_TRUE(is_empty_simplex(tri, all));

    const PointSet with_centroid(2, {{0, 0}, {3, 0}, {0, 3}, {1, 1}});
    EXPECT_FALSE(is_empty_simplex(with_centroid, all));

    oracle::for_each_subset(4, 3, [&](const std::vector<std::size_t>& s) {
        EXPECT_TRUE(is_empty_simplex(kSquare, s));
        EXPECT_TRUE(oracle::empty_simplex(kSquare, s));
    });
}

TEST(IsEmptySimplex, BoundaryPointViolatesEmptiness) {
    const PointSet pts(2, {{0, 0}, {2, 0}, {0, 2}, {1, 0.5}, {1, 0}});
    const std::vector<std::size_t> tri{0, 1, 2};
    EXPECT_FALSE(is_empty_simplex(pts, tri));
}

TEST(IsEmptySimplex, DegenerateSimplexThrows) {
    const PointSet pts(2, {{0, 0}, {1, 0}, {2, 0}, {5, 5}});
    const std::vector<std::size_t> flat{0, 1, 2};
    EXPECT_THROW(is_empty_simplex(pts, flat), DegenerateSimplexError);
}

TEST(DegreeOfSubset, Examples) {
    const PointSet three(2, {{0, 0}, {1, 0}, {0.3, 0.8}});
    const std::vector<std::size_t> pair{0, 1};
    EXPECT_EQ(degree_of_subset(three, pair), 1u);

    oracle::for_each_subset(4, 2, [&](const std::vector<std::size_t>& s) { EXPECT_EQ(degree_of_subset(kSquare, s), 2u); });

    const PointSet centred(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0.5, 0.5}});
    EXPECT_EQ(degree_of_subset(centred, pair), oracle::subset_degree(centred, pair));
}

TEST(DegreeOfSubset, TetrahedronSubsets) {
    const PointSet tet(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    oracle::for_each_subset(4, 3, [&](const std::vector<std::size_t>& s) { EXPECT_EQ(degree_of_subset(tet, s), 1u); });
}

TEST(DegreeOfSetExact, Examples) {
    EXPECT_EQ(degree_of_set_exact(PointSet(2, {{0, 0}, {1, 0}, {0.2, 0.9}})).degree, 1u);
    EXPECT_EQ(degree_of_set_exact(PointSet(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).degree, 1u);
    const auto sq = degree_of_set_exact(kSquare);
    EXPECT_EQ(sq.degree, 2u);
    EXPECT_EQ(sq.argmax.indices, (std::vector<std::size_t>{0, 1}));  // lexicographically first tie
    const auto pts = random_set(2, 30, 30);
    EXPECT_EQ(degree_of_set_exact(pts).degree, oracle::set_degree(pts));
}

TEST(DegreeOfSetExact, CapExceeded) {
    ExactCaps caps;
    caps.planar = 10;
    EXPECT_THROW(degree_of_set_exact(random_set(2, 11, 1), caps), ExactCapExceeded);
    EXPECT_NO_THROW(degree_of_set_exact(random_set(2, 10, 1), caps));
}

TEST(DegreeOfSetExact, ArgmaxIsSmallestMaximizer) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto pts = random_set(2 + static_cast<int>(seed % 2), 12, seed);
        const DegreeEngine engine(pts);
        const auto all = engine.all_subset_degrees();
        const auto report = engine.degree_of_set_exact();
        const auto first = std::max_element(all.begin(), all.end());
        ASSERT_EQ(report.degree, *first);
        std::vector<std::size_t> idx(static_cast<std::size_t>(pts.dim()));
        std::iota(idx.begin(), idx.end(), 0);
        for (auto k = first - all.begin(); k > 0; --k) next_combination(idx, pts.size());
        EXPECT_EQ(report.argmax.indices, idx);
    }
}

TEST(DegreeOfSetExact, ThreadCountDoesNotChangeReport) {
    const auto pts = random_set(3, 22, 77);
    const DegreeEngine engine(pts);
    const auto one = engine.degree_of_set_exact({}, 1);
    const auto four = engine.degree_of_set_exact({}, 4);
    EXPECT_EQ(one.degree, four.degree);
    EXPECT_EQ(one.argmax, four.argmax);
}

TEST(DegreeOfSetExact, AllSubsetDegreesMatchOracle) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const int dim = 2 + static_cast<int>(seed % 3);
        const auto pts = random_set(dim, dim == 4 ? 10 : 14, 500 + seed);
        EXPECT_EQ(DegreeEngine(pts).all_subset_degrees(), oracle::all_degrees(pts)) << "dim " << dim;
    }
}

TEST(DegreeLowerBoundLocal, Examples) {
    const auto pts = random_set(2, 30, 31);
    const auto exact = degree_of_set_exact(pts).degree;
    EXPECT_EQ(degree_lower_bound_local(pts, diameter(pts)).degree, exact);
    const auto none = degree_lower_bound_local(pts, 0.5 * min_pairwise_distance(pts));
    EXPECT_EQ(none.degree, 0u);
    EXPECT_EQ(none.subsets_examined, 0u);
    const double t = 1.0 / 30.0;
    const auto local = degree_lower_bound_local(pts, t).degree;
    EXPECT_LE(local, exact);
    EXPECT_EQ(local, oracle::local_degree(pts, t));
}

TEST(DegreeLowerBoundLocal, MonotoneInRadius) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto pts = random_set(2 + static_cast<int>(seed % 2), 25, 900 + seed);
        const DegreeEngine engine(pts);
        std::size_t prev = 0;
        for (double t : {0.02, 0.05, 0.1, 0.2, 0.4, 2.0}) {
            const auto d = engine.degree_lower_bound_local(t).degree;
            EXPECT_GE(d, prev);
            prev = d;
        }
    }
}

TEST(CountEmptySimplices, Examples) {
    EXPECT_EQ(count_empty_simplices(PointSet(2, {{0, 0}, {1, 0}, {0.2, 0.9}})), 1u);
    EXPECT_EQ(count_empty_simplices(kSquare), 4u);
    const auto pts = random_set(2, 15, 15);
    EXPECT_EQ(count_empty_simplices(pts), oracle::empty_simplex_count(pts));
}

TEST(Properties, DegreeSumIdentityAndUpperBound) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const int dim = 2 + static_cast<int>(seed % 3);
        const std::size_t n = static_cast<std::size_t>(dim) + 1 + seed % 12;
        const auto pts = random_set(dim, n, 1000 + seed);
        const DegreeEngine engine(pts);
        const auto all = engine.all_subset_degrees();
        const auto sum = std::accumulate(all.begin(), all.end(), std::size_t{0});
        EXPECT_EQ(sum, static_cast<std::size_t>(dim + 1) * engine.count_empty_simplices());
        EXPECT_LE(engine.degree_of_set_exact().degree, n - static_cast<std::size_t>(dim));
    }
}

TEST(Properties, AffineInvariance) {
    std::mt19937_64 rng(55);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const int dim = 2 + static_cast<int>(seed % 2);
        const auto pts = random_set(dim, 16, 2000 + seed);
        const auto image = affine_image(pts, rng);
        EXPECT_EQ(DegreeEngine(pts).all_subset_degrees(), DegreeEngine(image).all_subset_degrees());
    }
}

TEST(Properties, PlanarIndexAgreesWithHeightFilter) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto pts = random_set(2, 60, 3000 + seed);
        const DegreeEngine engine(pts);
        const PlanarAngularIndex index(pts);
        for (std::size_t a = 0; a < pts.size(); a += 7)
            for (std::size_t b = a + 1; b < pts.size(); b += 3) {
                const std::vector<std::size_t> pair{a, b};
                ASSERT_EQ(index.degree(a, b), engine.degree_of_subset(pair));
            }
    }
}

TEST(Properties, PermutingPointsPermutesNothingObservable) {
    const auto pts = random_set(2, 40, 4000);
    std::vector<std::size_t> perm(pts.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), std::mt19937_64(4));
    PointSet shuffled(2);
    for (auto i : perm) shuffled.push_back(pts[i]);
    EXPECT_EQ(degree_of_set_exact(pts).degree, degree_of_set_exact(shuffled).degree);
    EXPECT_EQ(count_empty_simplices(pts), count_empty_simplices(shuffled));
}
