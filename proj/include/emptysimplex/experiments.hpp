#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emptysimplex/bodies.hpp"
#include "emptysimplex/degree.hpp"

namespace emptysimplex {

/// T as a function of n: n^(-1/(M-1)), optionally scaled, or a fixed radius.
struct TRule {
    enum class Kind { inverse_root, fixed } kind = Kind::inverse_root;
    double value = 1.0;  // scale for inverse_root, radius for fixed

    double radius(std::size_t n, int dim) const;
};

/// K_n = factor * ln n; the default factor is 2(M+1).
struct KRule {
    std::optional<double> factor;  // nullopt means 2(M+1)

    double threshold(std::size_t n, int dim) const;
};

enum class MeckeFunction { constant_one, zero, n_t_indicator, pairwise_cutoff };

std::string_view to_string(MeckeFunction f);
MeckeFunction parse_mecke_function(std::string_view name);

struct ExperimentConfig {
    ConvexBody body = ConvexBody::unit_cube(2);
    int dim = 2;
    std::vector<std::size_t> n_grid{100};
    std::size_t trials = 100;
    std::vector<int> k_list{1};
    TRule t_rule;
    std::optional<double> rho;  // defaults to half the inradius
    KRule k_rule;
    DegreeMode degree_mode = DegreeMode::exact;
    std::uint64_t seed = 1;
    std::string output;
    int threads = 1;
    std::size_t threshold = 5;
    MeckeFunction mecke_function = MeckeFunction::n_t_indicator;
    std::size_t integral_samples = 1'000'000;
    std::string density = "uniform";
    ExactCaps caps;

    double rho_value() const { return rho.value_or(0.5 * body.inradius()); }
    /// Throws ConfigError on inconsistent settings.
    void validate() const;
};

/// One CSV line. Columns that do not apply hold NaN and are written empty.
struct ResultRow {
    std::string experiment;  // "<experiment>.<quantity>"
    int dim = 0;
    std::size_t n = 0;
    int k = -1;
    double t = 0.0;
    double estimate = 0.0;
    double stderr = 0.0;
    double bound_lower;
    double bound_upper;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    double elapsed_ms = 0.0;

    ResultRow();
};

struct ExperimentResult {
    std::string name;
    std::vector<ResultRow> rows;
    std::vector<std::string> warnings;

    /// The row with this quantity, n and (if k >= 0) k; throws if absent.
    const ResultRow& row(std::string_view quantity, std::size_t n, int k = -1) const&;
    // On a temporary the row is returned by value so it cannot dangle.
    ResultRow row(std::string_view quantity, std::size_t n, int k = -1) && { return row(quantity, n, k); }
    std::vector<const ResultRow*> rows_for(std::string_view quantity) const&;
    std::vector<const ResultRow*> rows_for(std::string_view quantity) && = delete;
};

/// Bracket for E[N_T]: lower = kappa_M^(M-1) C(n,M) T^(M(M-1)) Vol(W), upper = M * lower.
double n_t_lower_bracket(int dim, std::size_t n, double t, double vol);
double n_t_upper_bracket(int dim, std::size_t n, double t, double vol);

/// Lower bound on E[deg(x_1..x_M; zeta)^k].
double conditional_degree_bound(int dim, std::size_t n, int k, double rho, double vol);

/// The pinned M-subset: the body centre plus offsets of n^(-1/(M-1))/2 along
/// the first M-1 coordinate axes.
PointSet pinned_points(const ExperimentConfig& cfg, std::size_t n);

ExperimentResult estimate_expected_n_t(const ExperimentConfig& cfg);
ExperimentResult conditional_degree_experiment(const ExperimentConfig& cfg);
ExperimentResult estimate_moment_deg(const ExperimentConfig& cfg);
ExperimentResult markov_tail_check(const ExperimentConfig& cfg);
ExperimentResult poisson_grid_experiment(const ExperimentConfig& cfg);
ExperimentResult convergence_probe(const ExperimentConfig& cfg);
ExperimentResult mecke_check(const ExperimentConfig& cfg);

std::vector<std::string_view> experiment_names();
/// Dispatch by name ("expected_n_t", "conditional_degree", ...).
ExperimentResult run_experiment(std::string_view name, const ExperimentConfig& cfg);

}  // namespace emptysimplex
