#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "vxm/lebesgue.hpp"

using namespace vxm;

namespace {

ScalarField indicator(const Grid& grid, double a, double b) {
    return sample(grid, [a, b](Point p) { return p.x > a && p.x < b ? 1.0 : 0.0; });
}

// independent scalar root of the step-exponent norm equation 1/η² + 1/η³ = 1:
// dense scan for the sign change, then bisection
double step_norm_oracle() {
    const auto g = [](double eta) { return 1.0 / (eta * eta) + 1.0 / (eta * eta * eta) - 1.0; };
    double lo = 1.0, hi = 0.0;
    for (double eta = 1.0; eta < 2.0; eta += 1e-4) {
        if (g(eta) > 0.0 && g(eta + 1e-4) <= 0.0) {
            lo = eta;
            hi = eta + 1e-4;
            break;
        }
    }
    for (int k = 0; k < 80; ++k) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("modular examples") {
    const Grid grid = Grid::line(-2.0, 2.0, 1e-3);
    const ScalarField f = indicator(grid, -1.0, 1.0);
    const ExponentField two = constant_exponent(grid, 2.0);
    CHECK(modular(f, two, grid, full_region(grid)) == doctest::Approx(2.0).epsilon(1.1e-3));

    const ExponentField step = make_exponent(grid, [](Point p) { return p.x > 0.0 ? 3.0 : 2.0; }, 3.0);
    CHECK(modular(f, step, grid, full_region(grid)) == doctest::Approx(2.0).epsilon(1.1e-3));

    ScalarField doubled = indicator(grid, 0.0, 1.0);
    for (auto& v : doubled.values) v *= 2.0;
    const ExponentField three = constant_exponent(grid, 3.0);
    CHECK(modular(doubled, three, grid, full_region(grid)) == doctest::Approx(8.0).epsilon(1.1e-3));
}

TEST_CASE("Luxemburg norm: constant exponent closed form") {
    const Grid grid = Grid::line(-2.0, 2.0, 1e-3);
    const ScalarField f = indicator(grid, -1.0, 1.0);
    const ExponentField two = constant_exponent(grid, 2.0);
    const NormResult norm = luxemburg_norm(f, two, grid);
    CHECK(norm.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-3));
    CHECK(norm.modular_at_value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("Luxemburg norm: step exponent against the scalar-root oracle") {
    const Grid grid = Grid::line(-2.0, 2.0, 1e-4);
    const ScalarField f = indicator(grid, -1.0, 1.0);
    const ExponentField step = make_exponent(grid, [](Point p) { return p.x > 0.0 ? 3.0 : 2.0; }, 3.0);
    const double oracle = step_norm_oracle(); // 1.324717...
    CHECK(oracle == doctest::Approx(1.3247179572).epsilon(1e-6));
    CHECK(luxemburg_norm(f, step, grid).value == doctest::Approx(oracle).epsilon(1e-4));
}

TEST_CASE("Luxemburg norm of zero is zero") {
    const Grid grid = Grid::line(-2.0, 2.0, 0.01);
    const ExponentField two = constant_exponent(grid, 2.0);
    const NormResult norm = luxemburg_norm(sample(grid, [](Point) { return 0.0; }), two, grid);
    CHECK(norm.value == 0.0);
    CHECK(norm.modular_at_value == 0.0);
}

TEST_CASE("norm axioms on seeded random fields") {
    const Grid grid = Grid::line(-2.0, 2.0, 0.02);
    const ExponentField p = make_exponent(grid, [](Point x) { return 2.0 + std::sin(2.0 * x.x) / 3.0; }, 2.0);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);

    for (int trial = 0; trial < 100; ++trial) {
        ScalarField f, g;
        f.values.resize(static_cast<std::size_t>(grid.cell_count()));
        g.values.resize(static_cast<std::size_t>(grid.cell_count()));
        for (auto& v : f.values) v = uni(rng);
        for (auto& v : g.values) v = uni(rng);
        const double c = 4.0 * uni(rng);

        const double nf = luxemburg_norm(f, p, grid).value;
        const double ng = luxemburg_norm(g, p, grid).value;

        ScalarField cf = f;
        for (auto& v : cf.values) v *= c;
        CHECK(luxemburg_norm(cf, p, grid).value == doctest::Approx(std::abs(c) * nf).epsilon(1e-9));

        ScalarField fg = f;
        for (std::size_t i = 0; i < fg.values.size(); ++i) fg.values[i] += g.values[i];
        CHECK(luxemburg_norm(fg, p, grid).value <= nf + ng + 1e-9 * (nf + ng));

        // unit modular
        ScalarField unit = f;
        for (auto& v : unit.values) v /= nf;
        const double m = modular(unit, p, grid, full_region(grid));
        CHECK(m == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("constant-exponent agreement with the integral norm") {
    const Grid grid = Grid::line(-2.0, 2.0, 0.01);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (const double p0 : {1.5, 2.0, 3.7}) {
        const ExponentField p = constant_exponent(grid, p0);
        ScalarField f;
        f.values.resize(static_cast<std::size_t>(grid.cell_count()));
        for (auto& v : f.values) v = uni(rng);
        double integral = 0.0;
        for (const std::int64_t i : grid.member_cells()) integral += std::pow(std::abs(f[i]), p0);
        integral *= grid.cell_measure();
        CHECK(luxemburg_norm(f, p, grid).value == doctest::Approx(std::pow(integral, 1.0 / p0)).epsilon(1e-9));
    }
}

TEST_CASE("weighted norm is the norm of f times the weight") {
    const Grid grid = Grid::line(-2.0, 2.0, 0.01);
    const ExponentField p = make_exponent(grid, [](Point x) { return 2.0 + std::cos(x.x) / 4.0; }, 2.0);
    const ScalarField f = indicator(grid, -1.0, 0.5);
    const ScalarField omega = sample(grid, [](Point x) { return std::exp(0.3 * x.x); });

    ScalarField fw = f;
    for (std::size_t i = 0; i < fw.values.size(); ++i) fw.values[i] *= omega.values[i];
    CHECK(luxemburg_norm(f, p, grid, &omega).value ==
          doctest::Approx(luxemburg_norm(fw, p, grid).value).epsilon(1e-12));

    ScalarField bad = omega;
    bad[3] = 0.0;
    CHECK_THROWS_AS(luxemburg_norm(f, p, grid, &bad), std::domain_error);
}

TEST_CASE("indicator norms over truncated balls track the scale exponent") {
    // band check for the ball-indicator estimate on a log-regular exponent
    const Grid grid = Grid::line(-8.0, 8.0, 0.004);
    const ExponentField p = make_exponent(grid, [](Point x) { return 2.0 + std::sin(x.x) / 4.0; }, 2.0);
    const Point x{0.17, 0.0};
    double lo = 1e300, hi = 0.0;
    for (double r = 0.05; r <= 50.0; r *= 1.35) {
        const Region tb = ball_region(grid, Ball{x, r});
        const ScalarField chi = sample(grid, [](Point) { return 1.0; });
        const double ratio = luxemburg_norm(chi, p, grid, tb).value / std::pow(r, ball_scale_exponent(p, grid, x, r));
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    CHECK(hi / lo <= 10.0);
}

TEST_CASE("dual pairing lower bound") {
    const Grid grid = Grid::line(-2.0, 2.0, 1e-3);
    const ExponentField two = constant_exponent(grid, 2.0);
    const ScalarField f = indicator(grid, -1.0, 1.0);

    // the matching dictionary entry attains the norm
    CHECK(dual_pairing_lower_bound(f, two, grid, {indicator(grid, -1.0, 1.0)}) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-3));

    // disjoint support pairs to zero
    CHECK(dual_pairing_lower_bound(f, two, grid, {indicator(grid, 1.0, 2.0)}) == 0.0);

    // random dictionaries stay within the duality bound
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    std::vector<ScalarField> dictionary;
    for (int k = 0; k < 50; ++k) {
        double a = uni(rng), b = uni(rng);
        if (a > b) std::swap(a, b);
        dictionary.push_back(indicator(grid, a, b));
    }
    const double bound = dual_pairing_lower_bound(f, two, grid, dictionary);
    const double norm = luxemburg_norm(f, two, grid).value;
    CHECK(bound > 0.0);
    CHECK(bound <= 2.0 * norm);

    CHECK_THROWS_AS(dual_pairing_lower_bound(f, two, grid, {sample(grid, [](Point) { return 0.0; })}),
                    std::invalid_argument);
}
