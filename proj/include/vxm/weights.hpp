#pragma once

#include <vector>

#include "vxm/exponents.hpp"
#include "vxm/geometry.hpp"
#include "vxm/lebesgue.hpp"

namespace vxm {

/// Discretization of "sup over balls": a center subsample of Ω crossed with
/// a geometric radius ladder r_k = r_min * ratio^k <= r_max.
struct BallFamily {
    std::vector<Point> centers;
    std::vector<double> radii;

    /// Geometric ladder with the given ratio (default 2^{1/4}) and every
    /// center_stride-th member cell as center.
    static BallFamily geometric(const Grid& grid, double r_min, double r_max,
                                double ratio = 1.189207115002721, std::int64_t center_stride = 1);

    static std::vector<double> radius_ladder(double r_min, double r_max, double ratio);
};

struct WeightClassReport {
    double constant = 0.0;
    Ball argmax;
    std::vector<std::pair<double, double>> radius_profile; // (r, sup over centers)
    std::int64_t skipped_balls = 0;                        // truncated balls with < 4 cells
};

/// Weight-class constant: max over the family of
///   |B(x,r)|^{1/p(x)-1/q(x)-1} ||ω χ_B̃||_{q(·)} ||ω^{-1} χ_B̃||_{p'(·)}
/// with |B| the full ball measure and x the ball center. q = p gives the
/// single-exponent class constant.
WeightClassReport apq_constant(const ScalarField& omega, const ExponentField& p, const ExponentField& q,
                               const Grid& grid, const BallFamily& balls);

/// Pointwise reciprocal 1/ω. The class constant of (1/ω, q', p') equals that
/// of (ω, p, q) ball-by-ball; tests assert this identity.
ScalarField duality_image(const ScalarField& omega, const Grid& grid);

} // namespace vxm
