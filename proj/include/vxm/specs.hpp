#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "vxm/exponents.hpp"
#include "vxm/geometry.hpp"
#include "vxm/hardy.hpp"
#include "vxm/morrey.hpp"
#include "vxm/weights.hpp"

namespace vxm {

using Json = nlohmann::json;

// Config-driven constructors. Every family is a closed-form expression of
// the cell center, so the same spec resamples exactly on refined grids.

Grid parse_grid(const Json& spec);

// Exponent families: constant, affine, sin, step, clamped_log. Optional
// "p_inf" (defaults to the family's natural far-field value).
ExponentField parse_exponent(const Json& spec, const Grid& grid);

// Weight families: one, abs_power, exp.
ScalarField parse_weight(const Json& spec, const Grid& grid);

// Symbol families for the commutator: constant, sign, linear, log_abs, sin.
ScalarField parse_symbol(const Json& spec, const Grid& grid);

// Shape families: one, power, power_log, lambda (classical Morrey scale).
ShapeFunction parse_shape(const Json& spec, const ExponentField& p, const Grid& grid);

BallFamily parse_balls(const Json& spec, const Grid& grid);

RadialGrid parse_radial(const Json& spec);

/// Grid-independent descriptor of one seeded test function, so refinement
/// studies resample the identical function.
struct TestFunction {
    std::string family; // indicator | step | power_bump | gaussian
    Point center;       // reference point of the profile
    double width = 1.0;
    double amplitude = 1.0;
    double amplitude2 = 0.0; // second level of a step
    double exponent = 0.0;   // power-bump singularity order

    ScalarField sample_on(const Grid& grid) const;
};

/// Draw `count` test functions from the named families, supported inside the
/// core half of the extent. Power-bump orders stay below n/p_plus - 1e-3 so
/// every draw is integrable in the configured space.
std::vector<TestFunction> seeded_test_functions(const Json& spec, const Grid& grid, double p_plus,
                                                std::uint64_t seed);

} // namespace vxm
