#pragma once

#include <cstddef>

#include "emptysimplex/degree.hpp"
#include "emptysimplex/geometry.hpp"

namespace emptysimplex {

/// A value of N_T (k = 0) or F_T^(k) together with the number of clustered
/// subsets that contributed to it.
struct FunctionalValue {
    double radius = 0.0;
    int k = 0;
    double value = 0.0;
    std::size_t subsets = 0;
};

/// N_T(X): number of M-subsets lying in the closed T-ball about one of their members.
std::size_t n_t(const PointSet& points, double radius);
std::size_t n_t(const DegreeEngine& engine, double radius);

/// F_T^(k)(X): the same subsets, each weighted by deg(subset; X)^k.
FunctionalValue f_t_k(const PointSet& points, double radius, int k);
FunctionalValue f_t_k(const DegreeEngine& engine, double radius, int k);

}  // namespace emptysimplex
