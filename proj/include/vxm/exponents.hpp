#pragma once

#include <cstdint>
#include <vector>

#include "vxm/geometry.hpp"

namespace vxm {

/// Variable exponent p(·) sampled on a grid, together with its value at
/// infinity (used for radii > 1 and far-field estimates, which a finite grid
/// cannot extrapolate on its own).
///
/// Construction validates 1 < p_- <= p(x) <= p_+ < inf on member cells and
/// p_infinity > 1; violations throw std::domain_error.
struct ExponentField {
    std::vector<double> values;
    double p_infinity = 2.0;

    double operator[](std::int64_t i) const { return values[static_cast<std::size_t>(i)]; }
    double at(const Grid& grid, const Point& p) const;
    double min_on(const Grid& grid) const;
    double max_on(const Grid& grid) const;
};

ExponentField make_exponent(const Grid& grid, const std::function<double(Point)>& p, double p_infinity);
ExponentField constant_exponent(const Grid& grid, double p);

struct ExponentReport {
    double p_minus = 0.0;
    double p_plus = 0.0;
    double log_holder_constant = 0.0; // sup |p(x)-p(y)| * (-ln|x-y|), 0 < |x-y| <= 1/2
    double decay_constant = 0.0;      // sup |p(x)-p(inf)| * ln(2+|x|)
    std::int64_t sampled_pairs = 0;   // 0 when the pair sup was exhaustive
};

/// Structural constants of p: range, local log-regularity and decay toward
/// p(inf). The pair sup is exhaustive on coarse grids and switches to seeded
/// random sampling (plus all adjacent pairs, which dominate for jumps) once
/// the pair count exceeds ~4e6.
ExponentReport analyze_exponents(const ExponentField& p, const Grid& grid, std::uint64_t seed = 0x5eed);

// Pointwise conjugate p/(p-1); an involution up to rounding.
ExponentField conjugate(const ExponentField& p, const Grid& grid);

/// Pointwise q with 1/q(x) = 1/p(x) - alpha/n. Requires 0 < alpha < n and
/// p_+ < n/alpha; violations throw with the offending bound named.
ExponentField sobolev_exponent(const ExponentField& p, const Grid& grid, double alpha, int n);

/// Scaling exponent of the norm of a ball indicator: n/p(x) for r <= 1,
/// n/p(inf) for r > 1. The split at r = 1 is exact, no smoothing.
double ball_scale_exponent(const ExponentField& p, const Grid& grid, const Point& x, double r);

} // namespace vxm
