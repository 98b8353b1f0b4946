#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vxm/exponents.hpp"
#include "vxm/geometry.hpp"
#include "vxm/morrey.hpp"

namespace vxm {

using RadialFunction = std::function<double(double)>;

/// Discretization of (0, ∞): strictly increasing positive nodes plus a
/// power-law tail extrapolated beyond the last node. The tail exponent is
/// fitted from the last two integrand values; a fitted exponent >= -1 with a
/// positive integrand marks the integral divergent (+inf, never a crash).
struct RadialGrid {
    std::vector<double> nodes;
    double tail_cutoff = 0.0; // informational; extrapolation starts at nodes.back()
    bool power_tail = true;

    static RadialGrid geometric(double r_min, double r_max, int nodes_per_decade);
};

/// Weighted Hardy integral ∫_t^∞ g(s) w(s) ds, with the factor (1 + ln(s/t))
/// inserted when log_factor is set. Trapezoid over nodes >= t plus the tail
/// rule. Returns +inf when the fitted tail is non-integrable.
double hardy_operator(const RadialFunction& g, const RadialFunction& w, double t, bool log_factor,
                      const RadialGrid& rg);

/// Supremal operator: max over grid nodes s in (0, t] of u(s) g(s).
double supremal_operator(const RadialFunction& u, const RadialFunction& g, double t, const RadialGrid& rg);

struct ConditionReport {
    double constant = 0.0;
    bool divergent = false;
    double argmax_t = 0.0;
    std::vector<std::pair<double, double>> profile;
    std::int64_t skipped_nodes = 0;
    std::string numerator_exponent;   // which exponent field the numerator norm used
    std::string denominator_exponent; // and the denominator norm
};

/// Boundedness constant for the weighted Hardy inequality on non-decreasing
/// functions: sup_t v2(t) ∫_t^∞ w(s) ds / (running sup of v1). Without the
/// log factor the inner sup runs right of s; with it, left of s, and the
/// integrand carries (1 + ln(s/t)).
ConditionReport hardy_condition_constant(const RadialFunction& v1, const RadialFunction& v2,
                                         const RadialFunction& w, bool log_factor, const RadialGrid& rg);

/// Boundedness constant of the supremal operator between weighted sup-norm
/// spaces: sup_t v2(t) · max_{s <= t} u(s) / (sup of v1 up to s). The running
/// sup of v1 must stay in (0, ∞) on every prefix.
ConditionReport supremal_condition_constant(const RadialFunction& u, const RadialFunction& v1,
                                            const RadialFunction& v2, const RadialGrid& rg);

/// The integral growth conditions linking a source shape φ1 and target shape
/// φ2 through weight norms over truncated balls. Kind tokens follow the
/// config interface:
///   qhs1sh  — sup-form, norms at p/p, no log
///   qhs1shk — sup-form with (1 + ln(t/r))
///   H1v     — integral form, numerator norm at p, denominator at q
///   H1vk    — H1v with (1 + ln(s/t))
///   rv_prime— integral from a fixed γ, norms at q/q (finiteness check)
///   rv      — integral form, norms at q/q
///   rv4     — rv_prime with the log factor
///   rv5     — rv with the log factor
enum class ZygmundKind { qhs1sh, qhs1shk, H1v, H1vk, rv_prime, rv, rv4, rv5 };

ZygmundKind zygmund_kind_from_string(const std::string& name);
std::string to_string(ZygmundKind kind);

/// Evaluate the condition constant at center x. For the "<= C φ2" kinds the
/// constant is sup over nodes t of LHS(t)/φ2(x,t); for the fixed-γ kinds it
/// is the integral value at each γ (max over the supplied list, default
/// {0.1, 1, 10}), with γ snapped to the first node >= γ. The essential
/// inf/sup surrogates are running min/max scans over the node ladder.
/// Truncated balls with no cells drop their node with a warning count.
ConditionReport zygmund_condition(ZygmundKind kind, const ShapeFunction& phi1, const ShapeFunction& phi2,
                                  const ExponentField& p, const ExponentField& q, const ScalarField& omega,
                                  const Grid& grid, const Point& x, const RadialGrid& rg,
                                  const std::vector<double>& gammas = {});

} // namespace vxm
