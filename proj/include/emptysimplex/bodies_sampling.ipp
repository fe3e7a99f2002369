// Template definitions for ConvexBody::sample_point; included from bodies.hpp.
#pragma once

#include <cmath>
#include <random>

namespace emptysimplex {

namespace detail {

inline constexpr double kMinAcceptance = 1e-6;
inline constexpr std::size_t kAcceptanceProbe = 1'000'000;

[[noreturn]] void throw_sampling_failure(std::size_t attempts);

template <class Rng>
void sample_unit_ball(Rng& rng, std::span<double> out) {
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unif;
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (auto& x : out) {
            x = gauss(rng);
            norm2 += x * x;
        }
    } while (norm2 == 0.0);
    const double r = std::pow(unif(rng), 1.0 / static_cast<double>(out.size())) / std::sqrt(norm2);
    for (auto& x : out) x *= r;
}

}  // namespace detail

template <class Rng>
void ConvexBody::sample_point(Rng& rng, std::span<double> out) const {
    std::uniform_real_distribution<double> unif;
    const auto d = static_cast<std::size_t>(dim_);
    if (const auto* b = std::get_if<Ball>(&shape_)) {
        detail::sample_unit_ball(rng, out);
        for (std::size_t j = 0; j < d; ++j) out[j] = b->center[j] + b->radius * out[j];
    } else if (const auto* bx = std::get_if<Box>(&shape_)) {
        for (std::size_t j = 0; j < d; ++j) out[j] = bx->lo[j] + (bx->hi[j] - bx->lo[j]) * unif(rng);
    } else if (const auto* e = std::get_if<Ellipsoid>(&shape_)) {
        detail::sample_unit_ball(rng, out);
        for (std::size_t j = 0; j < d; ++j) out[j] = e->center[j] + e->semi_axes[j] * out[j];
    } else {
        std::size_t attempts = 0;
        for (;;) {
            for (std::size_t j = 0; j < d; ++j) out[j] = bbox_.lo[j] + (bbox_.hi[j] - bbox_.lo[j]) * unif(rng);
            ++attempts;
            if (contains(out)) return;
            if (attempts >= detail::kAcceptanceProbe) detail::throw_sampling_failure(attempts);
        }
    }
}

}  // namespace emptysimplex
