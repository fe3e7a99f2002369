#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace emptysimplex {

struct MeanStderr {
    double mean = 0.0;
    double stderr = 0.0;
};

/// Sample mean and standard error (sample variance / count), summed in index order.
MeanStderr summarize(std::span<const double> values);

/// Standard error of a proportion p estimated from `count` Bernoulli trials.
double proportion_stderr(double p, std::size_t count);

double poisson_pmf(std::size_t j, double rate);

/// Empirical pmf of the counts, index j = number of cells holding j points.
std::vector<double> empirical_pmf(std::span<const std::size_t> counts);

/// Total-variation distance between an empirical pmf and Poisson(rate),
/// including the Poisson mass beyond the empirical support.
double tv_distance_to_poisson(std::span<const double> pmf, double rate);

}  // namespace emptysimplex
