#pragma once

#include <vector>

#include "vxm/exponents.hpp"
#include "vxm/geometry.hpp"
#include "vxm/weights.hpp"

namespace vxm {

/// Grid transform result. `values` is defined on every cell (0 outside Ω);
/// maximal-type operators also record the radius attaining the sup per point,
/// so optima sitting at the edge of the radius ladder can be spotted.
struct OperatorOutput {
    ScalarField values;
    std::vector<double> argmax_radius; // empty for potential-type operators
};

struct BmoReport {
    double bmo_norm = 0.0;
    double bmo_pw_norm = 0.0; // norm-quotient variant at exponent p with weight ω
    double ratio = 0.0;       // bmo_pw_norm / bmo_norm, 0 when bmo_norm == 0
};

/// Fractional maximal operator of order alpha in [0, n):
///   sup over the family radii of |B(x,r)|^{alpha/n - 1} ∫_{B̃(x,r)} |f|.
/// alpha = 0 is the Hardy-Littlewood maximal operator. The sup runs over the
/// shared radius ladder, not a continuum.
OperatorOutput frac_maximal(const ScalarField& f, double alpha, const Grid& grid, const BallFamily& balls);

/// Riesz potential ∫_Ω |x-y|^{alpha-n} f(y) dy, 0 < alpha < n, by midpoint
/// quadrature with the singular self-cell replaced by the analytic integral
/// of the kernel over the equal-measure ball (1D: 2(h/2)^α/α; 2D: 2πρ^α/α,
/// ρ = h/√π). Direct O(N²) summation with a precomputed kernel table.
OperatorOutput riesz_potential(const ScalarField& f, double alpha, const Grid& grid);

/// Sharp maximal function: sup over radii of |B|^{-1} ∫_{B̃} |f - f_{B̃}|,
/// where the ball mean f_{B̃} is |B̃|-normalized. Radii whose truncated ball
/// holds fewer than 2 cells are skipped.
OperatorOutput sharp_maximal(const ScalarField& f, const Grid& grid, const BallFamily& balls);

/// Maximal commutator sup_r |B(x,r)|^{-1} ∫_{B̃} |b(x)-b(y)| |f(y)| dy.
OperatorOutput maximal_commutator(const ScalarField& b, const ScalarField& f, const Grid& grid,
                                  const BallFamily& balls);

/// Commutator of the Riesz potential: ∫ (b(x)-b(y)) f(y) |x-y|^{alpha-n} dy.
/// Same quadrature as riesz_potential; the self-cell term vanishes.
OperatorOutput riesz_commutator(const ScalarField& b, const ScalarField& f, double alpha, const Grid& grid);

/// Commutator with the maximal operator: M(bf) - b·M(f), both maximal
/// evaluations over the same family.
OperatorOutput maximal_op_commutator(const ScalarField& b, const ScalarField& f, const Grid& grid,
                                     const BallFamily& balls);

/// Mean-oscillation norm over the family (|B|-normalized integral, |B̃|-
/// normalized mean) and its weighted norm-quotient counterpart
///   ||(b - b_{B̃}) χ_B̃||_{p(·),ω} / ||χ_B̃||_{p(·),ω}.
BmoReport bmo_norms(const ScalarField& b, const ExponentField& p, const ScalarField& omega,
                    const Grid& grid, const BallFamily& balls);

} // namespace vxm
