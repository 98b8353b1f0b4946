#include "vxm/morrey.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vxm/lebesgue.hpp"

namespace vxm {

double ShapeFunction::operator()(const Point& x, double r) const {
    const double v = eval(x, r);
    if (!(v > 0.0)) throw std::domain_error("shape function must be strictly positive");
    return v;
}

ShapeFunction constant_shape(double value) {
    return {[value](Point, double) { return value; }};
}

ShapeFunction power_shape(double exponent) {
    return {[exponent](Point, double r) { return std::pow(r, exponent); }};
}

ShapeFunction power_log_shape(double exponent, double log_power) {
    return {[exponent, log_power](Point, double r) {
        return std::pow(r, exponent) * std::pow(1.0 + std::abs(std::log(r)), log_power);
    }};
}

ShapeFunction shape_from_lambda(const ExponentField& p, const ScalarField& lambda, const Grid& grid) {
    const auto n = static_cast<double>(grid.dim());
    for (const std::int64_t i : grid.member_cells())
        if (lambda[i] < 0.0 || lambda[i] > n)
            throw std::invalid_argument("lambda must take values in [0, n]");
    // p and lambda are captured by value; the grid must outlive the shape
    return {[p, lambda, &grid, n](Point x, double r) {
        const std::int64_t i = grid.cell_at(x);
        if (i < 0) throw std::domain_error("point outside grid extent");
        const double theta = r <= 1.0 ? n / p[i] : n / p.p_infinity;
        return std::pow(r, lambda[i] / p[i] - theta);
    }};
}

MorreyNorm morrey_norm(const ScalarField& f, const ExponentField& p, const ShapeFunction& phi,
                       const Grid& grid, const BallFamily& balls, const ScalarField* weight) {
    if (balls.centers.empty() || balls.radii.empty()) throw std::invalid_argument("empty ball family");
    MorreyNorm result;
    for (const Point& x : balls.centers) {
        for (const double r : balls.radii) {
            const Region tb = ball_region(grid, Ball{x, r});
            if (tb.empty()) continue;
            const double local = luxemburg_norm(f, p, grid, tb, weight).value;
            double normalizer = phi(x, r);
            if (weight) {
                const double wnorm = luxemburg_norm(*weight, p, grid, tb).value;
                if (wnorm == 0.0) continue;
                normalizer *= wnorm;
            } else {
                normalizer *= std::pow(r, ball_scale_exponent(p, grid, x, r));
            }
            const double quotient = local / normalizer;
            result.profile.emplace_back(Ball{x, r}, quotient);
            if (quotient > result.value) {
                result.value = quotient;
                result.argmax = Ball{x, r};
            }
        }
    }
    return result;
}

MorreyEvaluator::MorreyEvaluator(const ExponentField& p, const ShapeFunction& phi, const Grid& grid,
                                 const BallFamily& balls, const ScalarField* weight)
    : p_(p), grid_(grid), weight_(weight) {
    if (balls.centers.empty() || balls.radii.empty()) throw std::invalid_argument("empty ball family");
    for (const Point& x : balls.centers) {
        for (const double r : balls.radii) {
            Entry entry;
            entry.region = ball_region(grid, Ball{x, r});
            if (entry.region.empty()) continue;
            entry.normalizer = phi(x, r);
            if (weight) {
                const double wnorm = luxemburg_norm(*weight, p, grid, entry.region).value;
                if (wnorm == 0.0) continue;
                entry.normalizer *= wnorm;
            } else {
                entry.normalizer *= std::pow(r, ball_scale_exponent(p, grid, x, r));
            }
            entries_.push_back(std::move(entry));
        }
    }
    if (entries_.empty()) throw std::invalid_argument("ball family has no usable balls");
}

double MorreyEvaluator::norm(const ScalarField& f) const {
    double best = 0.0;
    for (const Entry& entry : entries_)
        best = std::max(best, luxemburg_norm(f, p_, grid_, entry.region, weight_).value / entry.normalizer);
    return best;
}

VanishingProfile vanishing_modulus(const ScalarField& f, const ExponentField& p, const ShapeFunction& phi,
                                   const ScalarField& omega, const Grid& grid,
                                   const std::vector<Point>& centers, const std::vector<double>& radii) {
    if (centers.empty() || radii.empty()) throw std::invalid_argument("empty center or radius list");
    for (std::size_t k = 1; k < radii.size(); ++k)
        if (!(radii[k] < radii[k - 1])) throw std::invalid_argument("radius list must be strictly decreasing");

    VanishingProfile profile;
    profile.radii = radii;
    profile.modulus.reserve(radii.size());
    for (const double t : radii) {
        double sup = 0.0;
        for (const Point& x : centers) {
            const Region tb = ball_region(grid, Ball{x, t});
            if (tb.empty()) continue;
            const double wnorm = luxemburg_norm(omega, p, grid, tb).value;
            if (wnorm == 0.0) continue;
            const double local = luxemburg_norm(f, p, grid, tb, &omega).value;
            sup = std::max(sup, local / (phi(x, t) * wnorm));
        }
        profile.modulus.push_back(sup);
    }
    profile.vanishing_verdict = profile.modulus.back() <= 0.1 * profile.modulus.front();
    return profile;
}

std::pair<double, double> nontriviality_conditions(const ShapeFunction& phi, const ExponentField& p,
                                                   const ScalarField& omega, const Grid& grid,
                                                   const std::vector<Point>& centers,
                                                   const std::vector<double>& radii) {
    if (centers.empty() || radii.empty()) throw std::invalid_argument("empty center or radius list");
    double at_smallest = 0.0;
    double sup = 0.0;
    double smallest_radius = radii.front();
    for (const double t : radii) {
        double inf_norm = std::numeric_limits<double>::infinity();
        double inf_phi = std::numeric_limits<double>::infinity();
        for (const Point& x : centers) {
            const Region tb = ball_region(grid, Ball{x, t});
            if (!tb.empty()) inf_norm = std::min(inf_norm, luxemburg_norm(omega, p, grid, tb).value);
            inf_phi = std::min(inf_phi, phi(x, t));
        }
        if (!std::isfinite(inf_norm) || inf_norm == 0.0) continue;
        const double quantity = 1.0 / (inf_norm * inf_phi);
        sup = std::max(sup, quantity);
        if (t <= smallest_radius) {
            smallest_radius = t;
            at_smallest = quantity;
        }
    }
    return {at_smallest, sup};
}

namespace {

// cells of the untruncated ball within the grid extent (mask ignored)
std::vector<std::int64_t> extent_ball_cells(const Grid& grid, const Ball& ball) {
    std::vector<std::int64_t> cells;
    if (grid.dim() == 1) {
        auto [first, last] = interval_cells(grid, ball.center.x - ball.radius, ball.center.x + ball.radius);
        for (std::int64_t i = first; i <= last; ++i) cells.push_back(i);
        return cells;
    }
    const double r2 = ball.radius * ball.radius;
    for (std::int64_t i = 0; i < grid.cell_count(); ++i) {
        const Point c = grid.cell_center(i);
        const double dx = c.x - ball.center.x;
        const double dy = c.y - ball.center.y;
        if (dx * dx + dy * dy < r2) cells.push_back(i);
    }
    return cells;
}

} // namespace

double measure_morrey_norm(const ScalarField& f, const ExponentField& p, double lambda,
                           const ScalarField& omega, const Grid& grid, const BallFamily& balls) {
    if (lambda < 0.0 || lambda >= static_cast<double>(grid.dim()))
        throw std::invalid_argument("lambda must lie in [0, n)");
    if (balls.centers.empty() || balls.radii.empty()) throw std::invalid_argument("empty ball family");
    for (std::int64_t i = 0; i < grid.cell_count(); ++i)
        if (!(omega[i] > 0.0)) throw std::domain_error("weight must be strictly positive");

    struct BallData {
        std::vector<std::int64_t> cells;
        double scale = 0.0; // t^lambda / mu(B)
    };
    std::vector<BallData> data;
    bool any_f = false;
    for (const Point& x : balls.centers) {
        for (const double t : balls.radii) {
            BallData bd;
            bd.cells = extent_ball_cells(grid, Ball{x, t});
            if (bd.cells.empty()) continue;
            double mu = 0.0;
            for (const std::int64_t i : bd.cells) mu += std::pow(omega[i], p[i]);
            mu *= grid.cell_measure();
            if (!(mu > 0.0)) continue;
            bd.scale = std::pow(t, lambda) / mu;
            for (const std::int64_t i : bd.cells)
                if (f[i] != 0.0) any_f = true;
            data.push_back(std::move(bd));
        }
    }
    if (data.empty()) throw std::invalid_argument("no usable balls in family");
    if (!any_f) return 0.0;

    const auto sup_modular = [&](double eta) {
        double sup = 0.0;
        for (const BallData& bd : data) {
            double sum = 0.0;
            for (const std::int64_t i : bd.cells)
                sum += std::pow(std::abs(f[i]) / eta, p[i]) * std::pow(omega[i], p[i]);
            sup = std::max(sup, bd.scale * sum * grid.cell_measure());
            if (sup > 1.0) return sup; // bisection only needs the sign
        }
        return sup;
    };

    double lo = 1.0, hi = 1.0;
    int expansions = 0;
    while (sup_modular(hi) > 1.0) {
        hi *= 2.0;
        if (++expansions > 200) throw std::runtime_error("measure-Morrey bracket expansion failed");
    }
    while (sup_modular(lo) < 1.0 && expansions <= 200) {
        lo *= 0.5;
        if (++expansions > 200) break; // f vanishes on every usable ball fast enough
    }
    constexpr double rel_tol = 1e-10;
    int iterations = 0;
    while ((hi - lo) > rel_tol * hi && iterations < 200) {
        const double mid = 0.5 * (lo + hi);
        if (sup_modular(mid) > 1.0)
            lo = mid;
        else
            hi = mid;
        ++iterations;
    }
    return hi;
}

} // namespace vxm
