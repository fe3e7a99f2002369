#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "emptysimplex/config.hpp"
#include "emptysimplex/csv.hpp"
#include "emptysimplex/experiments.hpp"
#include "emptysimplex/stats.hpp"

using namespace emptysimplex;

namespace {

ExperimentConfig square_config(std::vector<std::size_t> grid, std::size_t trials, std::uint64_t seed = 1) {
    ExperimentConfig cfg;
    cfg.n_grid = std::move(grid);
    cfg.trials = trials;
    cfg.seed = seed;
    return cfg;
}

bool same_rows(const ExperimentResult& a, const ExperimentResult& b) {
    if (a.rows.size() != b.rows.size()) return false;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        const auto &x = a.rows[i], &y = b.rows[i];
        auto same = [](double p, double q) { return p == q || (std::isnan(p) && std::isnan(q)); };
        if (x.experiment != y.experiment || x.n != y.n || x.k != y.k || !same(x.t, y.t) ||
            x.estimate != y.estimate || x.stderr != y.stderr || !same(x.bound_lower, y.bound_lower) ||
            !same(x.bound_upper, y.bound_upper) || x.trials != y.trials || x.seed != y.seed)
            return false;
    }
    return true;
}

}  // namespace

TEST(Config, ParsesAllKeys) {
    const auto cfg = parse_config(R"({
        "body": {"kind": "box", "lo": [0, 0], "hi": [2, 1]},
        "dim": 2, "n_grid": [10, 20], "trials": 7, "k_list": [0, 1, 2],
        "t_rule": "inverse_root", "rho": 0.1, "k_rule": "paper", "degree_mode": "local",
        "seed": 99, "output": "out.csv", "threads": 2, "threshold": 3,
        "mecke_function": "pairwise_cutoff", "integral_samples": 1000, "density": "uniform"})");
    EXPECT_EQ(cfg.body.volume().value, 2.0);
    EXPECT_EQ(cfg.n_grid, (std::vector<std::size_t>{10, 20}));
    EXPECT_EQ(cfg.trials, 7u);
    EXPECT_EQ(cfg.k_list, (std::vector<int>{0, 1, 2}));
    EXPECT_EQ(cfg.rho_value(), 0.1);
    EXPECT_EQ(cfg.degree_mode, DegreeMode::local_lower_bound);
    EXPECT_EQ(cfg.seed, 99u);
    EXPECT_EQ(cfg.output, "out.csv");
    EXPECT_EQ(cfg.threshold, 3u);
    EXPECT_EQ(cfg.mecke_function, MeckeFunction::pairwise_cutoff);
    EXPECT_NEAR(cfg.k_rule.threshold(100, 2), 6.0 * std::log(100.0), 1e-12);
    EXPECT_NEAR(cfg.t_rule.radius(400, 2), 1.0 / 400.0, 1e-15);
}

TEST(Config, RejectsUnknownAndInconsistentKeys) {
    EXPECT_THROW(parse_config(R"({"trails": 3})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"body": {"kind": "ball", "radius": 1, "colour": 2}})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"body": {"kind": "unit_cube", "dim": 3}, "dim": 2})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"trials": 0})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"t_rule": -1})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"density": "gaussian"})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"degree_mode": "approximate"})"), ConfigError);
    EXPECT_THROW(parse_config("{not json"), ConfigError);
}

TEST(Config, BodyKinds) {
    EXPECT_EQ(parse_body(R"({"kind": "unit_cube", "dim": 3})").dim(), 3);
    EXPECT_NEAR(parse_body(R"({"kind": "ball", "dim": 2, "radius": 2})").volume().value, 4.0 * M_PI, 1e-12);
    EXPECT_EQ(parse_body(R"({"kind": "ellipsoid", "semi_axes": [1, 2, 3]})").kind(), BodyKind::ellipsoid);
    EXPECT_EQ(parse_body(R"({"kind": "h_polytope", "normals": [[-1, 0], [0, -1], [1, 1]], "offsets": [0, 0, 1]})")
                  .kind(),
              BodyKind::h_polytope);
    EXPECT_THROW(parse_body(R"({"kind": "torus"})"), ConfigError);
    EXPECT_THROW(parse_body(R"({"kind": "ball", "dim": 2, "radius": -1})"), ConfigError);
}

TEST(Csv, RowFormat) {
    ResultRow r;
    r.experiment = "x.mean";
    r.dim = 2;
    r.n = 10;
    r.t = 0.1;
    r.estimate = 1.0 / 3.0;
    r.trials = 5;
    r.seed = 7;
    std::ostringstream out;
    write_result_header(out);
    write_result_rows(out, std::vector<ResultRow>{r});
    EXPECT_EQ(out.str(),
              "experiment,M,n,k,T,estimate,stderr,bound_lower,bound_upper,trials,seed,elapsed_ms\n"
              "x.mean,2,10,,0.1,0.333333333333,0,,,5,7,0\n");
}

TEST(Csv, PointsRoundTrip) {
    const PointSet pts(3, {{0.125, -2, 3.5}, {1e-3, 4, 5}});
    std::stringstream io;
    write_points(io, pts);
    EXPECT_EQ(read_points(io).coords(), pts.coords());
    std::stringstream ragged("1,2\n3\n");
    EXPECT_THROW(read_points(ragged), DimensionError);
}

TEST(Stats, PoissonAndTv) {
    EXPECT_NEAR(poisson_pmf(0, 1.0), std::exp(-1.0), 1e-15);
    EXPECT_NEAR(poisson_pmf(3, 1.0), std::exp(-1.0) / 6.0, 1e-15);
    std::vector<double> pmf;
    for (std::size_t j = 0; j < 30; ++j) pmf.push_back(poisson_pmf(j, 1.0));
    EXPECT_NEAR(tv_distance_to_poisson(pmf, 1.0), 0.0, 1e-12);
    EXPECT_NEAR(tv_distance_to_poisson(std::vector<double>{1.0}, 1.0), 1.0 - std::exp(-1.0), 1e-15);
    const auto s = summarize(std::vector<double>{1, 2, 3, 4});
    EXPECT_DOUBLE_EQ(s.mean, 2.5);
    EXPECT_NEAR(s.stderr, std::sqrt(5.0 / 3.0 / 4.0), 1e-15);
}

TEST(ExpectedNT, BracketAndAudit) {
    auto cfg = square_config({500}, 50);
    const auto res = estimate_expected_n_t(cfg);
    const auto& mean = res.row("mean", 500);
    EXPECT_NEAR(mean.bound_lower, M_PI * 124750.0 / 250000.0, 1e-9);
    EXPECT_NEAR(mean.bound_upper, 2.0 * mean.bound_lower, 1e-9);
    EXPECT_NEAR(mean.bound_lower, 1.566, 2e-3);
    EXPECT_EQ(res.row("binom_n_M", 500).estimate, 124750.0);
    EXPECT_EQ(res.row("T", 500).estimate, 0.002);
    EXPECT_NEAR(res.row("K_n", 500).estimate, 6.0 * std::log(500.0), 1e-12);
    EXPECT_NEAR(res.row("kappa_M", 500).estimate, M_PI, 1e-15);
}

TEST(ExpectedNT, DegenerateNEqualsM) {
    const auto res = estimate_expected_n_t(square_config({2}, 30));
    const double m = res.row("mean", 2).estimate;
    EXPECT_GE(m, 0.0);
    EXPECT_LE(m, 1.0);
    // T = 1/2 for n = 2: the pair qualifies iff its distance is at most 1/2.
}

TEST(ExpectedNT, StderrScalesWithTrials) {
    const double a = estimate_expected_n_t(square_config({200}, 1000, 3)).row("mean", 200).stderr;
    const double b = estimate_expected_n_t(square_config({200}, 2000, 3)).row("mean", 200).stderr;
    EXPECT_NEAR(a / b, std::sqrt(2.0), 0.2 * std::sqrt(2.0));
}

TEST(Reproducibility, ThreadCountInvariant) {
    auto cfg = square_config({60, 120}, 40, 5);
    cfg.k_list = {0, 1, 2};
    for (auto name : experiment_names()) {
        auto c = cfg;
        if (name == "poisson_grid") c.n_grid = {400};
        c.integral_samples = 20000;
        c.threads = 1;
        const auto one = run_experiment(name, c);
        c.threads = 3;
        const auto three = run_experiment(name, c);
        EXPECT_TRUE(same_rows(one, three)) << name;
        EXPECT_TRUE(same_rows(one, run_experiment(name, c))) << name;
    }
}

TEST(ConditionalDegree, KZeroAndUpperBound) {
    auto cfg = square_config({50}, 40);
    cfg.k_list = {0, 1};
    cfg.rho = 0.25;
    const auto res = conditional_degree_experiment(cfg);
    EXPECT_EQ(res.row("mean_pow", 50, 0).estimate, 1.0);
    EXPECT_EQ(res.row("mean_pow", 50, 0).bound_lower, 1.0);
    EXPECT_EQ(res.row("consistency_violations", 50).estimate, 0.0);
    EXPECT_NEAR(res.row("mean_pow", 50, 1).bound_lower, 50 * 0.25 * (1 - std::exp(-0.25)), 1e-12);
}

TEST(ConditionalDegree, PinnedPointsPlacement) {
    auto cfg = square_config({100}, 1);
    const auto pins = pinned_points(cfg, 100);
    ASSERT_EQ(pins.size(), 2u);
    EXPECT_EQ(pins[0][0], 0.5);
    EXPECT_EQ(pins[0][1], 0.5);
    EXPECT_NEAR(pins[1][0], 0.505, 1e-15);
    cfg.rho = 1e-4;
    EXPECT_THROW(pinned_points(cfg, 100), ConfigError);
    cfg.body = ConvexBody::box({0, 0}, {1e-3, 1e-3});
    cfg.rho = 1.0;
    EXPECT_THROW(pinned_points(cfg, 4), ConfigError);  // offset leaves the body
}

TEST(MomentDeg, JensenAndPositiveRatio) {
    auto cfg = square_config({20, 40}, 30);
    cfg.k_list = {1, 2, 3};
    const auto res = estimate_moment_deg(cfg);
    for (std::size_t n : {20, 40}) {
        EXPECT_GT(res.row("r_n", n).estimate, 0.0);
        EXPECT_EQ(res.row("local_mode", n).estimate, 0.0);
        EXPECT_EQ(res.row("consistency_violations", n).estimate, 0.0);
        for (int k : {1, 2, 3})
            EXPECT_GE(res.row("mean_pow", n, k).estimate, res.row("jensen_baseline", n, k).estimate * (1 - 1e-12));
    }
}

TEST(MomentDeg, SwitchesToLocalAboveCap) {
    auto cfg = square_config({30}, 5);
    cfg.caps.planar = 20;
    const auto res = estimate_moment_deg(cfg);
    EXPECT_EQ(res.row("local_mode", 30).estimate, 1.0);
    EXPECT_FALSE(res.warnings.empty());
}

TEST(MarkovTail, ColumnsAndMonotonicity) {
    const auto res = markov_tail_check(square_config({300}, 200));
    EXPECT_NEAR(res.row("K_n", 300).estimate, 6.0 * std::log(300.0), 1e-12);
    EXPECT_EQ(res.row("consistency_violations", 300).estimate, 0.0);
    const auto& p = res.row("p_n2t_ge_ln_n", 300);
    EXPECT_LE(p.estimate, p.bound_upper + 3.0 * p.stderr);
}

TEST(PoissonGrid, EmptySampleAndMeanCount) {
    const auto empty = poisson_grid_experiment(square_config({0}, 3));
    EXPECT_NEAR(empty.row("tv", 0).estimate, 1.0 - std::exp(-1.0), 1e-12);
    EXPECT_EQ(empty.row("mean_count", 0).estimate, 0.0);
    EXPECT_FALSE(empty.warnings.empty());

    const auto res = poisson_grid_experiment(square_config({2500}, 4));
    const auto& mean = res.row("mean_count", 2500);
    EXPECT_LE(std::abs(mean.estimate - 1.0), 3.0 * mean.stderr + 1e-12);
    EXPECT_EQ(res.row("cells", 2500).estimate, 2500.0);
}

TEST(PoissonGrid, DiscUsesVolumeScaledMesh) {
    auto cfg = square_config({3000}, 2);
    cfg.body = ConvexBody::ball(2, 1.0);
    const auto res = poisson_grid_experiment(cfg);
    EXPECT_NEAR(res.row("mesh", 3000).estimate, std::sqrt(M_PI / 3000.0), 1e-15);
    EXPECT_LT(res.row("tv", 3000).estimate, 0.1);
}

TEST(ConvergenceProbe, TrivialThresholds) {
    auto cfg = square_config({12}, 20);
    cfg.threshold = 10;  // n - M
    EXPECT_EQ(convergence_probe(cfg).row("p_deg_le_t", 12).estimate, 1.0);
    cfg.threshold = 0;
    EXPECT_EQ(convergence_probe(cfg).row("p_deg_le_t", 12).estimate, 0.0);
    cfg.degree_mode = DegreeMode::local_lower_bound;
    EXPECT_THROW(convergence_probe(cfg), ConfigError);
}

TEST(MeckeCheck, ConstantFunctions) {
    auto cfg = square_config({30}, 5);
    cfg.mecke_function = MeckeFunction::constant_one;
    auto res = mecke_check(cfg);
    EXPECT_EQ(res.row("lhs", 30).estimate, 435.0);
    EXPECT_EQ(res.row("rhs", 30).estimate, 435.0);
    EXPECT_EQ(res.row("difference", 30).estimate, 0.0);
    cfg.mecke_function = MeckeFunction::zero;
    res = mecke_check(cfg);
    EXPECT_EQ(res.row("lhs", 30).estimate, 0.0);
    EXPECT_EQ(res.row("rhs", 30).estimate, 0.0);
}

TEST(MeckeCheck, PairwiseCutoffInThreeDimensions) {
    auto cfg = square_config({40}, 400, 8);
    cfg.body = ConvexBody::unit_cube(3);
    cfg.dim = 3;
    cfg.t_rule = {TRule::Kind::fixed, 0.15};
    cfg.mecke_function = MeckeFunction::pairwise_cutoff;
    cfg.integral_samples = 400000;
    const auto res = mecke_check(cfg);
    const auto& d = res.row("difference", 40);
    EXPECT_LE(std::abs(d.estimate), 3.0 * d.stderr);
}

TEST(Experiments, UnknownNameAndSmallN) {
    EXPECT_THROW(run_experiment("nope", ExperimentConfig{}), ConfigError);
    EXPECT_THROW(estimate_moment_deg(square_config({2}, 1)), ConfigError);
}
