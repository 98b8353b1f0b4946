#pragma once

#include <optional>
#include <vector>

#include "vxm/exponents.hpp"
#include "vxm/geometry.hpp"

namespace vxm {

struct NormResult {
    double value = 0.0;             // the Luxemburg norm
    double modular_at_value = 0.0;  // achieved modular of f/value, ~1 for f != 0
    int bisection_iterations = 0;
};

/// Modular ∫_region |f(x)|^{p(x)} dx by midpoint rule.
double modular(const ScalarField& f, const ExponentField& p, const Grid& grid, const Region& region);

/// Luxemburg norm inf{η > 0 : modular(f/η) <= 1} over a region, by bisection
/// on the monotone modular to 1e-10 relative tolerance. When a weight is
/// given the norm of f·ω is taken, which is the weighted-space norm.
///
/// The field is zero-extended outside the region. Returns 0 immediately for
/// an identically zero (weighted) restriction; throws std::runtime_error if
/// bracket expansion fails after 200 doublings.
NormResult luxemburg_norm(const ScalarField& f, const ExponentField& p, const Grid& grid,
                          const Region& region, const ScalarField* weight = nullptr);

// Convenience: norm over all of Ω.
NormResult luxemburg_norm(const ScalarField& f, const ExponentField& p, const Grid& grid,
                          const ScalarField* weight = nullptr);

/// Lower bound for the norm via duality: max over dictionary entries g of
/// |∫ f g| after normalizing g to unit conjugate norm. Zero-only entries are
/// skipped; throws std::invalid_argument if all are skipped.
double dual_pairing_lower_bound(const ScalarField& f, const ExponentField& p, const Grid& grid,
                                const std::vector<ScalarField>& dictionary);

} // namespace vxm
