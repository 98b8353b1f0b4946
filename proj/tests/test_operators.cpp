#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>

#include "vxm/lebesgue.hpp"
#include "vxm/operators.hpp"

using namespace vxm;

namespace {

// grid whose cell centers include the integers/zero: centers at lo + k h
Grid centered_line(double half_width, double h) {
    return Grid::line(-half_width - 0.5 * h, half_width + 0.5 * h, h);
}

ScalarField indicator(const Grid& grid, double a, double b) {
    return sample(grid, [a, b](Point p) { return p.x > a && p.x < b ? 1.0 : 0.0; });
}

BallFamily radii_only(std::vector<double> radii) {
    BallFamily f;
    f.radii = std::move(radii);
    return f;
}

std::vector<double> dense_radii(double lo, double hi, int count) {
    std::vector<double> out;
    for (int k = 0; k < count; ++k) out.push_back(lo + (hi - lo) * k / (count - 1));
    return out;
}

double value_at(const Grid& grid, const ScalarField& field, double x) {
    const std::int64_t i = grid.cell_at({x, 0.0});
    REQUIRE(i >= 0);
    return field[i];
}

} // namespace

TEST_CASE("Hardy-Littlewood maximal operator on an indicator") {
    const Grid grid = centered_line(4.0, 1e-3);
    const ScalarField f = indicator(grid, -1.0, 1.0);
    const BallFamily balls = radii_only(dense_radii(0.25, 4.0, 200));
    const OperatorOutput mf = frac_maximal(f, 0.0, grid, balls);

    CHECK(value_at(grid, mf.values, 0.0) == doctest::Approx(1.0).epsilon(1e-2));

    // brute-force oracle at x = 2: averages (1 - x + r)/(2r) of the overlap
    double oracle = 0.0;
    for (double r = 0.25; r <= 4.0; r += 1e-4) {
        const double overlap = std::max(0.0, std::min(1.0, 2.0 + r) - std::max(-1.0, 2.0 - r));
        oracle = std::max(oracle, overlap / (2.0 * r));
    }
    CHECK(oracle == doctest::Approx(1.0 / 3.0).epsilon(1e-3));
    CHECK(value_at(grid, mf.values, 2.0) == doctest::Approx(oracle).epsilon(1e-2));

    // the argmax radius diagnostic points at r = x + 1 = 3
    const std::int64_t i2 = grid.cell_at({2.0, 0.0});
    CHECK(mf.argmax_radius[static_cast<std::size_t>(i2)] == doctest::Approx(3.0).epsilon(0.02));
}

TEST_CASE("fractional maximal operator, order one half") {
    const Grid grid = centered_line(4.0, 1e-3);
    const ScalarField f = indicator(grid, -1.0, 1.0);
    const BallFamily balls = radii_only(dense_radii(0.25, 4.0, 400));
    const OperatorOutput mf = frac_maximal(f, 0.5, grid, balls);

    double oracle = 0.0; // sup_r (2r)^{-1/2} * min(2r, 2)
    for (double r = 0.25; r <= 4.0; r += 1e-4)
        oracle = std::max(oracle, std::min(2.0 * r, 2.0) / std::sqrt(2.0 * r));
    CHECK(oracle == doctest::Approx(std::sqrt(2.0)).epsilon(1e-3));
    CHECK(value_at(grid, mf.values, 0.0) == doctest::Approx(oracle).epsilon(1e-2));

    CHECK_THROWS_AS(frac_maximal(f, 1.5, grid, balls), std::invalid_argument);
    CHECK_THROWS_AS(frac_maximal(f, 0.0, grid, BallFamily{}), std::invalid_argument);
}

TEST_CASE("Riesz potential closed forms") {
    {
        const Grid grid = centered_line(2.0, 1e-3);
        const ScalarField f = indicator(grid, -1.0, 1.0);
        const OperatorOutput pot = riesz_potential(f, 0.5, grid);
        CHECK(value_at(grid, pot.values, 0.0) == doctest::Approx(4.0).epsilon(1e-2));
    }
    {
        const Grid grid = centered_line(4.0, 1e-3);
        const ScalarField f = indicator(grid, -1.0, 1.0);
        const OperatorOutput pot = riesz_potential(f, 0.5, grid);
        CHECK(value_at(grid, pot.values, 3.0) == doctest::Approx(4.0 - 2.0 * std::sqrt(2.0)).epsilon(1e-2));

        const OperatorOutput zero = riesz_potential(sample(grid, [](Point) { return 0.0; }), 0.5, grid);
        for (const std::int64_t i : grid.member_cells()) CHECK(zero.values[i] == 0.0);
    }
    const Grid grid = centered_line(1.0, 0.01);
    CHECK_THROWS_AS(riesz_potential(indicator(grid, -1.0, 1.0), 1.0, grid), std::invalid_argument);
}

TEST_CASE("sharp maximal function") {
    const Grid grid = centered_line(2.0, 1e-3);
    const BallFamily balls = radii_only(dense_radii(0.25, 2.0, 100));

    const OperatorOutput flat = sharp_maximal(sample(grid, [](Point) { return 3.7; }), grid, balls);
    for (const std::int64_t i : grid.member_cells()) CHECK(flat.values[i] == doctest::Approx(0.0));

    const ScalarField sign = sample(grid, [](Point p) { return p.x < 0.0 ? -1.0 : 1.0; });
    CHECK(value_at(grid, sharp_maximal(sign, grid, balls).values, 0.0) == doctest::Approx(1.0).epsilon(1e-2));

    const ScalarField linear = sample(grid, [](Point p) { return p.x; });
    // mean oscillation of x over (-r, r) is r/2, increasing in r
    CHECK(value_at(grid, sharp_maximal(linear, grid, balls).values, 0.0) == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("maximal commutator") {
    const Grid grid = centered_line(2.0, 1e-3);
    const ScalarField sign = sample(grid, [](Point p) { return p.x < 0.0 ? -1.0 : 1.0; });
    const BallFamily balls = radii_only(dense_radii(0.05, 4.0, 400));

    const ScalarField c = sample(grid, [](Point) { return 2.0; });
    const ScalarField one = sample(grid, [](Point) { return 1.0; });
    const OperatorOutput null = maximal_commutator(c, one, grid, balls);
    for (const std::int64_t i : grid.member_cells()) CHECK(null.values[i] == 0.0);

    // b = sign, f = 1, x = 1: optimum r = 3, integral 2|(-2,0)| over |B| = 6
    CHECK(value_at(grid, maximal_commutator(sign, one, grid, balls).values, 1.0) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-2));

    const ScalarField f = indicator(grid, -1.0, 1.0);
    CHECK(value_at(grid, maximal_commutator(sign, f, grid, balls).values, 1.0) ==
          doctest::Approx(0.5).epsilon(1e-2));
}

TEST_CASE("Riesz commutator") {
    const Grid grid = centered_line(2.0, 1e-3);
    const ScalarField sign = sample(grid, [](Point p) { return p.x < 0.0 ? -1.0 : 1.0; });

    const ScalarField c = sample(grid, [](Point) { return -1.3; });
    const ScalarField f = indicator(grid, 0.0, 1.0);
    const OperatorOutput null = riesz_commutator(c, f, 0.5, grid);
    for (const std::int64_t i : grid.member_cells()) CHECK(null.values[i] == 0.0);

    // closed form: ∫_0^1 (-2)(1+y)^{-1/2} dy = 4 - 4 sqrt(2)
    CHECK(value_at(grid, riesz_commutator(sign, f, 0.5, grid).values, -1.0) ==
          doctest::Approx(4.0 - 4.0 * std::sqrt(2.0)).epsilon(1e-2));

    // odd symbol vanishing at 0 against an even function
    const ScalarField odd = sample(grid, [](Point p) { return p.x; });
    const ScalarField even = indicator(grid, -1.0, 1.0);
    CHECK(std::abs(value_at(grid, riesz_commutator(odd, even, 0.5, grid).values, 0.0)) <= 1e-6);
}

TEST_CASE("commutator with the maximal operator") {
    const Grid grid = centered_line(2.0, 1e-3);
    const BallFamily balls = radii_only(dense_radii(0.05, 4.0, 200));
    const ScalarField f = indicator(grid, 0.0, 1.0);

    const ScalarField c = sample(grid, [](Point) { return 2.5; });
    const OperatorOutput null = maximal_op_commutator(c, f, grid, balls);
    for (const std::int64_t i : grid.member_cells()) CHECK(std::abs(null.values[i]) <= 1e-12);

    const OperatorOutput zero = maximal_op_commutator(c, sample(grid, [](Point) { return 0.0; }), grid, balls);
    for (const std::int64_t i : grid.member_cells()) CHECK(zero.values[i] == 0.0);

    const ScalarField sign = sample(grid, [](Point p) { return p.x < 0.0 ? -1.0 : 1.0; });
    const OperatorOutput comm = maximal_op_commutator(sign, f, grid, balls);
    CHECK(std::abs(value_at(grid, comm.values, 0.5)) <= 1e-2);
    CHECK(std::abs(value_at(grid, comm.values, -0.5)) > 0.1);
}

TEST_CASE("oscillation norms") {
    const Grid grid = centered_line(2.0, 2e-3);
    const ExponentField two = constant_exponent(grid, 2.0);
    const ScalarField one = sample(grid, [](Point) { return 1.0; });

    BallFamily balls;
    balls.centers = {{0.0, 0.0}, {-1.0, 0.0}, {1.0, 0.0}};
    balls.radii = BallFamily::radius_ladder(0.25, 2.0, std::pow(2.0, 0.125));
    balls.radii.push_back(2.0);

    const BmoReport flat = bmo_norms(sample(grid, [](Point) { return 5.0; }), two, one, grid, balls);
    CHECK(flat.bmo_norm == 0.0);
    CHECK(flat.bmo_pw_norm == 0.0);

    const ScalarField sign = sample(grid, [](Point p) { return p.x < 0.0 ? -1.0 : 1.0; });
    const BmoReport bs = bmo_norms(sign, two, one, grid, balls);
    CHECK(bs.bmo_norm == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(bs.bmo_pw_norm == doctest::Approx(1.0).epsilon(1e-2));

    const ScalarField linear = sample(grid, [](Point p) { return p.x; });
    CHECK(bmo_norms(linear, two, one, grid, balls).bmo_norm == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("pointwise domination of the fractional maximal by the potential") {
    const Grid grid = centered_line(2.0, 2e-3);
    const BallFamily balls = radii_only(dense_radii(0.05, 4.0, 60));
    for (const double alpha : {0.125, 0.25}) {
        for (const auto& [a, b] : std::vector<std::pair<double, double>>{{-1.0, 1.0}, {0.2, 0.9}}) {
            const ScalarField f = indicator(grid, a, b);
            const OperatorOutput mf = frac_maximal(f, alpha, grid, balls);
            const OperatorOutput pot = riesz_potential(f, alpha, grid);
            for (const std::int64_t i : grid.member_cells())
                CHECK(mf.values[i] <= 1.01 * pot.values[i] + 1e-12);
        }
    }
}

TEST_CASE("maximal operator is sublinear; sharp maximal is dominated") {
    const Grid grid = centered_line(2.0, 5e-3);
    const BallFamily balls = radii_only(dense_radii(0.05, 4.0, 60));
    const ScalarField f = indicator(grid, -1.0, 0.5);
    const ScalarField g = sample(grid, [](Point p) { return std::cos(2.0 * p.x); });
    ScalarField fg = f;
    for (std::size_t i = 0; i < fg.values.size(); ++i) fg.values[i] += g.values[i];

    const OperatorOutput mf = frac_maximal(f, 0.0, grid, balls);
    const OperatorOutput mg = frac_maximal(g, 0.0, grid, balls);
    const OperatorOutput mfg = frac_maximal(fg, 0.0, grid, balls);
    const OperatorOutput sharp = sharp_maximal(fg, grid, balls);
    for (const std::int64_t i : grid.member_cells()) {
        CHECK(mfg.values[i] <= mf.values[i] + mg.values[i] + 1e-12);
        CHECK(sharp.values[i] <= 2.0 * mfg.values[i] + 1e-12);
    }
}

TEST_CASE("Riesz commutator is additive in the symbol") {
    const Grid grid = centered_line(1.0, 5e-3);
    const ScalarField b1 = sample(grid, [](Point p) { return std::sin(p.x); });
    const ScalarField b2 = sample(grid, [](Point p) { return p.x < 0.3 ? -1.0 : 2.0; });
    ScalarField b12 = b1;
    for (std::size_t i = 0; i < b12.values.size(); ++i) b12.values[i] += b2.values[i];
    const ScalarField f = indicator(grid, -0.5, 0.5);

    const OperatorOutput c1 = riesz_commutator(b1, f, 0.25, grid);
    const OperatorOutput c2 = riesz_commutator(b2, f, 0.25, grid);
    const OperatorOutput c12 = riesz_commutator(b12, f, 0.25, grid);
    for (const std::int64_t i : grid.member_cells())
        CHECK(c12.values[i] == doctest::Approx(c1.values[i] + c2.values[i]).epsilon(1e-10));
}

TEST_CASE("2D Riesz potential and maximal operator") {
    const double h = 0.02;
    const Grid grid = Grid::box({-2.0 - 0.5 * h, -2.0 - 0.5 * h}, {2.0 + 0.5 * h, 2.0 + 0.5 * h}, h);
    const ScalarField disc = sample(grid, [](Point p) { return p.x * p.x + p.y * p.y < 1.0 ? 1.0 : 0.0; });

    // ∫_{|y|<1} |y|^{-1} dy = 2π
    const OperatorOutput pot = riesz_potential(disc, 1.0, grid);
    const std::int64_t center = grid.cell_at({0.0, 0.0});
    CHECK(pot.values[center] == doctest::Approx(2.0 * std::numbers::pi).epsilon(0.01));

    const BallFamily balls = radii_only({0.25, 0.5, 0.75, 1.0});
    const OperatorOutput mf = frac_maximal(disc, 0.0, grid, balls);
    CHECK(mf.values[center] == doctest::Approx(1.0).epsilon(0.02));

    // α = 1: sup_r (π r²)^{-1/2} · π min(r,1)², maximized at r = 1
    const OperatorOutput m1 = frac_maximal(disc, 1.0, grid, balls);
    CHECK(m1.values[center] == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(0.02));
}

TEST_CASE("oscillation norm-quotient stays in a band across symbols") {
    const Grid grid = centered_line(2.0, 5e-3);
    const ExponentField two = constant_exponent(grid, 2.0);
    const ScalarField one = sample(grid, [](Point) { return 1.0; });
    BallFamily balls;
    balls.centers = {{0.0, 0.0}, {-0.8, 0.0}, {0.8, 0.0}};
    balls.radii = BallFamily::radius_ladder(0.1, 2.0, std::pow(2.0, 0.25));

    double lo = 1e300, hi = 0.0;
    for (int k = 0; k < 6; ++k) {
        const ScalarField b = sample(grid, [k](Point p) {
            switch (k) {
                case 0: return p.x < 0.0 ? -1.0 : 1.0;
                case 1: return p.x;
                case 2: return std::sin(2.0 * p.x);
                case 3: return std::log(std::max(std::abs(p.x), 1e-3));
                case 4: return std::abs(p.x);
                default: return p.x < 0.5 ? 0.0 : 2.0;
            }
        });
        const BmoReport report = bmo_norms(b, two, one, grid, balls);
        REQUIRE(report.bmo_norm > 0.0);
        lo = std::min(lo, report.ratio);
        hi = std::max(hi, report.ratio);
    }
    CHECK(hi / lo <= 100.0);
}
