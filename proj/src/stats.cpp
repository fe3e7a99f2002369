#include "emptysimplex/stats.hpp"

#include <algorithm>
#include <cmath>

namespace emptysimplex {

MeanStderr summarize(std::span<const double> values) {
    MeanStderr out;
    if (values.empty()) return out;
    double sum = 0.0;
    for (double v : values) sum += v;
    const auto n = static_cast<double>(values.size());
    out.mean = sum / n;
    if (values.size() < 2) return out;
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.stderr = std::sqrt(ss / (n - 1.0) / n);
    return out;
}

double proportion_stderr(double p, std::size_t count) {
    if (count == 0) return 0.0;
    return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(count));
}

double poisson_pmf(std::size_t j, double rate) {
    return std::exp(static_cast<double>(j) * std::log(rate) - rate - std::lgamma(static_cast<double>(j) + 1.0));
}

std::vector<double> empirical_pmf(std::span<const std::size_t> counts) {
    if (counts.empty()) return {};
    const auto top = *std::max_element(counts.begin(), counts.end());
    std::vector<double> pmf(top + 1, 0.0);
    for (auto c : counts) pmf[c] += 1.0;
    for (auto& p : pmf) p /= static_cast<double>(counts.size());
    return pmf;
}

double tv_distance_to_poisson(std::span<const double> pmf, double rate) {
    double diff = 0.0, covered = 0.0;
    for (std::size_t j = 0; j < pmf.size(); ++j) {
        const double q = poisson_pmf(j, rate);
        covered += q;
        diff += std::abs(pmf[j] - q);
    }
    diff += std::max(0.0, 1.0 - covered);
    return 0.5 * diff;
}

}  // namespace emptysimplex
