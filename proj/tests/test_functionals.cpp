#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "emptysimplex/bodies.hpp"
#include "emptysimplex/functionals.hpp"
#include "oracles.hpp"

using namespace emptysimplex;

TEST(NT, Examples) {
    const auto pts = sample_uniform(ConvexBody::unit_cube(2), 25, Seed{1, 0});
    EXPECT_EQ(n_t(pts, diameter(pts)), 300u);
    EXPECT_EQ(n_t(pts, 0.99 * min_pairwise_distance(pts)), 0u);
    EXPECT_EQ(n_t(PointSet(2, {{0, 0}, {0.5, 0}, {3, 0}}), 1.0), 1u);
    EXPECT_THROW(n_t(pts, 0.0), std::invalid_argument);
}

TEST(NT, ClosedBallIncludesExactDistance) {
    EXPECT_EQ(n_t(PointSet(2, {{0, 0}, {0.25, 0}}), 0.25), 1u);
}

TEST(NT, MatchesDoubleLoopOracle) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const int dim = 2 + static_cast<int>(seed % 3);
        const std::size_t n = 10 + seed % 51;
        const auto pts = sample_uniform(ConvexBody::unit_cube(dim), n, Seed{seed, 1});
        for (double t : {0.05, 0.15, 0.3, 0.6}) EXPECT_EQ(n_t(pts, t), oracle::n_t(pts, t)) << seed << " " << t;
    }
}

TEST(FTK, Examples) {
    const auto pts = sample_uniform(ConvexBody::unit_cube(2), 30, Seed{2, 0});
    const DegreeEngine engine(pts);
    EXPECT_EQ(f_t_k(engine, 0.2, 0).value, static_cast<double>(n_t(engine, 0.2)));

    const PointSet simplex(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    EXPECT_EQ(f_t_k(simplex, 10.0, 1).value, 4.0);
    EXPECT_EQ(f_t_k(simplex, 10.0, 3).value, 4.0);
    EXPECT_THROW(f_t_k(simplex, 1.0, -1), std::invalid_argument);
}

TEST(FTK, MatchesOracleWeights) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto pts = sample_uniform(ConvexBody::unit_cube(2), 20, Seed{seed, 2});
        const double t = 0.25;
        double expected = 0.0;
        oracle::for_each_subset(pts.size(), 2, [&](const std::vector<std::size_t>& s) {
            if (oracle::clustered(pts, s, t)) expected += std::pow(oracle::subset_degree(pts, s), 2);
        });
        EXPECT_EQ(f_t_k(pts, t, 2).value, expected);
    }
}

TEST(Properties, DefiningInequalityAndMonotonicity) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const int dim = 2 + static_cast<int>(seed % 2);
        const auto pts = sample_uniform(ConvexBody::unit_cube(dim), 40, Seed{seed, 3});
        const DegreeEngine engine(pts);
        const auto deg = static_cast<double>(engine.degree_of_set_exact().degree);
        double prev_n = 0.0;
        std::vector<double> prev_f(4, 0.0);
        for (double t : {0.03, 0.08, 0.15, 0.3, 0.7}) {
            const auto n = static_cast<double>(n_t(engine, t));
            EXPECT_GE(n, prev_n);
            prev_n = n;
            for (int k = 0; k < 4; ++k) {
                const double f = f_t_k(engine, t, k).value;
                EXPECT_LE(f, n * std::pow(deg, k));
                EXPECT_GE(f, prev_f[static_cast<std::size_t>(k)]);
                prev_f[static_cast<std::size_t>(k)] = f;
            }
        }
    }
}

TEST(Properties, PointOrderIrrelevant) {
    const auto pts = sample_uniform(ConvexBody::unit_cube(2), 50, Seed{9, 0});
    std::vector<std::size_t> perm(pts.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), std::mt19937_64(9));
    PointSet shuffled(2);
    for (auto i : perm) shuffled.push_back(pts[i]);
    EXPECT_EQ(n_t(pts, 0.1), n_t(shuffled, 0.1));
    EXPECT_EQ(f_t_k(pts, 0.1, 2).value, f_t_k(shuffled, 0.1, 2).value);
}
