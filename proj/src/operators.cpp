#include "vxm/operators.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

#include "vxm/lebesgue.hpp"
#include "vxm/parallel.hpp"

namespace vxm {

namespace {

void check_field(const ScalarField& f, const Grid& grid, const char* name) {
    if (f.size() != grid.cell_count())
        throw std::invalid_argument(std::string(name) + " size does not match grid");
}

OperatorOutput make_output(const Grid& grid, bool with_radii) {
    OperatorOutput out;
    out.values.values.assign(static_cast<std::size_t>(grid.cell_count()), 0.0);
    if (with_radii) out.argmax_radius.assign(static_cast<std::size_t>(grid.cell_count()), 0.0);
    return out;
}

// Kernel |x-y|^{alpha-n} tabulated over cell offsets, plus the analytic
// self-cell integral (already divided by the cell measure so that callers
// can treat every cell uniformly as kernel * f * h^n).
struct KernelTable {
    std::vector<double> by_offset; // 1D: index |i-j|; 2D: index |di| + |dj|*nx
    double self = 0.0;

    static KernelTable build(const Grid& grid, double alpha) {
        KernelTable table;
        const double h = grid.spacing();
        const auto n = static_cast<double>(grid.dim());
        if (grid.dim() == 1) {
            table.by_offset.resize(static_cast<std::size_t>(grid.cells_x()));
            for (std::int64_t d = 1; d < grid.cells_x(); ++d)
                table.by_offset[static_cast<std::size_t>(d)] = std::pow(static_cast<double>(d) * h, alpha - n);
            table.self = 2.0 * std::pow(0.5 * h, alpha) / alpha / h;
        } else {
            const std::int64_t nx = grid.cells_x(), ny = grid.cells_y();
            table.by_offset.resize(static_cast<std::size_t>(nx * ny));
            for (std::int64_t dy = 0; dy < ny; ++dy)
                for (std::int64_t dx = 0; dx < nx; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    const double d = h * std::sqrt(static_cast<double>(dx * dx + dy * dy));
                    table.by_offset[static_cast<std::size_t>(dy * nx + dx)] = std::pow(d, alpha - n);
                }
            const double rho = h / std::sqrt(std::numbers::pi);
            table.self = 2.0 * std::numbers::pi * std::pow(rho, alpha) / alpha / (h * h);
        }
        return table;
    }

    double at(const Grid& grid, std::int64_t i, std::int64_t j) const {
        if (grid.dim() == 1) return by_offset[static_cast<std::size_t>(std::abs(i - j))];
        const std::int64_t nx = grid.cells_x();
        const std::int64_t dx = std::abs(i % nx - j % nx);
        const std::int64_t dy = std::abs(i / nx - j / nx);
        return by_offset[static_cast<std::size_t>(dy * nx + dx)];
    }
};

} // namespace

OperatorOutput frac_maximal(const ScalarField& f, double alpha, const Grid& grid, const BallFamily& balls) {
    check_field(f, grid, "f");
    if (alpha < 0.0 || alpha >= static_cast<double>(grid.dim()))
        throw std::invalid_argument("fractional order must lie in [0, n)");
    if (balls.radii.empty()) throw std::invalid_argument("empty radius ladder");

    const auto n = static_cast<double>(grid.dim());
    OperatorOutput out = make_output(grid, true);
    const auto& members = grid.member_cells();

    if (grid.dim() == 1) {
        ScalarField absf;
        absf.values.resize(f.values.size());
        for (std::size_t i = 0; i < f.values.size(); ++i) absf.values[i] = std::abs(f.values[i]);
        const std::vector<double> prefix = member_prefix_sums(grid, absf);
        parallel_for(static_cast<std::int64_t>(members.size()), [&](std::int64_t k) {
            const std::int64_t i = members[static_cast<std::size_t>(k)];
            const double x = grid.cell_center(i).x;
            double best = 0.0, best_r = balls.radii.front();
            for (const double r : balls.radii) {
                auto [first, last] = interval_cells(grid, x - r, x + r);
                if (first > last) continue;
                const double mass = prefix[static_cast<std::size_t>(last) + 1] - prefix[static_cast<std::size_t>(first)];
                const double value = std::pow(ball_measure(1, r), alpha / n - 1.0) * mass;
                if (value > best) {
                    best = value;
                    best_r = r;
                }
            }
            out.values[i] = best;
            out.argmax_radius[static_cast<std::size_t>(i)] = best_r;
        });
        return out;
    }

    parallel_for(static_cast<std::int64_t>(members.size()), [&](std::int64_t k) {
        const std::int64_t i = members[static_cast<std::size_t>(k)];
        const Point x = grid.cell_center(i);
        double best = 0.0, best_r = balls.radii.front();
        for (const double r : balls.radii) {
            const Region tb = ball_region(grid, Ball{x, r});
            if (tb.empty()) continue;
            double mass = 0.0;
            for (const std::int64_t j : tb.cells) mass += std::abs(f[j]);
            mass *= grid.cell_measure();
            const double value = std::pow(ball_measure(2, r), alpha / n - 1.0) * mass;
            if (value > best) {
                best = value;
                best_r = r;
            }
        }
        out.values[i] = best;
        out.argmax_radius[static_cast<std::size_t>(i)] = best_r;
    });
    return out;
}

OperatorOutput riesz_potential(const ScalarField& f, double alpha, const Grid& grid) {
    check_field(f, grid, "f");
    if (!(alpha > 0.0) || !(alpha < static_cast<double>(grid.dim())))
        throw std::invalid_argument("potential order must lie in (0, n)");

    const KernelTable kernel = KernelTable::build(grid, alpha);
    const auto& members = grid.member_cells();
    OperatorOutput out = make_output(grid, false);
    parallel_for(static_cast<std::int64_t>(members.size()), [&](std::int64_t k) {
        const std::int64_t i = members[static_cast<std::size_t>(k)];
        double sum = 0.0;
        for (const std::int64_t j : members) sum += (i == j ? kernel.self : kernel.at(grid, i, j)) * f[j];
        out.values[i] = sum * grid.cell_measure();
    });
    return out;
}

OperatorOutput sharp_maximal(const ScalarField& f, const Grid& grid, const BallFamily& balls) {
    check_field(f, grid, "f");
    if (balls.radii.empty()) throw std::invalid_argument("empty radius ladder");

    const auto& members = grid.member_cells();
    OperatorOutput out = make_output(grid, true);
    parallel_for(static_cast<std::int64_t>(members.size()), [&](std::int64_t k) {
        const std::int64_t i = members[static_cast<std::size_t>(k)];
        const Point x = grid.cell_center(i);
        double best = 0.0, best_r = balls.radii.front();
        for (const double r : balls.radii) {
            const Region tb = ball_region(grid, Ball{x, r});
            if (tb.count() < 2) continue;
            double mean = 0.0;
            for (const std::int64_t j : tb.cells) mean += f[j];
            mean /= static_cast<double>(tb.count());
            double osc = 0.0;
            for (const std::int64_t j : tb.cells) osc += std::abs(f[j] - mean);
            osc *= grid.cell_measure() / ball_measure(grid.dim(), r);
            if (osc > best) {
                best = osc;
                best_r = r;
            }
        }
        out.values[i] = best;
        out.argmax_radius[static_cast<std::size_t>(i)] = best_r;
    });
    return out;
}

OperatorOutput maximal_commutator(const ScalarField& b, const ScalarField& f, const Grid& grid,
                                  const BallFamily& balls) {
    check_field(b, grid, "b");
    check_field(f, grid, "f");
    if (balls.radii.empty()) throw std::invalid_argument("empty radius ladder");

    const auto& members = grid.member_cells();
    OperatorOutput out = make_output(grid, true);
    parallel_for(static_cast<std::int64_t>(members.size()), [&](std::int64_t k) {
        const std::int64_t i = members[static_cast<std::size_t>(k)];
        const Point x = grid.cell_center(i);
        const double bx = b[i];
        double best = 0.0, best_r = balls.radii.front();
        for (const double r : balls.radii) {
            const Region tb = ball_region(grid, Ball{x, r});
            if (tb.empty()) continue;
            double sum = 0.0;
            for (const std::int64_t j : tb.cells) sum += std::abs(bx - b[j]) * std::abs(f[j]);
            const double value = sum * grid.cell_measure() / ball_measure(grid.dim(), r);
            if (value > best) {
                best = value;
                best_r = r;
            }
        }
        out.values[i] = best;
        out.argmax_radius[static_cast<std::size_t>(i)] = best_r;
    });
    return out;
}

OperatorOutput riesz_commutator(const ScalarField& b, const ScalarField& f, double alpha, const Grid& grid) {
    check_field(b, grid, "b");
    check_field(f, grid, "f");
    if (!(alpha > 0.0) || !(alpha < static_cast<double>(grid.dim())))
        throw std::invalid_argument("potential order must lie in (0, n)");

    const KernelTable kernel = KernelTable::build(grid, alpha);
    const auto& members = grid.member_cells();
    OperatorOutput out = make_output(grid, false);
    parallel_for(static_cast<std::int64_t>(members.size()), [&](std::int64_t k) {
        const std::int64_t i = members[static_cast<std::size_t>(k)];
        const double bx = b[i];
        double sum = 0.0;
        for (const std::int64_t j : members) {
            if (i == j) continue; // b(x)-b(x) = 0
            sum += (bx - b[j]) * f[j] * kernel.at(grid, i, j);
        }
        out.values[i] = sum * grid.cell_measure();
    });
    return out;
}

OperatorOutput maximal_op_commutator(const ScalarField& b, const ScalarField& f, const Grid& grid,
                                     const BallFamily& balls) {
    check_field(b, grid, "b");
    check_field(f, grid, "f");
    ScalarField bf;
    bf.values.resize(f.values.size());
    for (std::size_t i = 0; i < f.values.size(); ++i) bf.values[i] = b.values[i] * f.values[i];
    const OperatorOutput m_bf = frac_maximal(bf, 0.0, grid, balls);
    const OperatorOutput m_f = frac_maximal(f, 0.0, grid, balls);
    OperatorOutput out = make_output(grid, false);
    for (const std::int64_t i : grid.member_cells())
        out.values[i] = m_bf.values[i] - b[i] * m_f.values[i];
    return out;
}

BmoReport bmo_norms(const ScalarField& b, const ExponentField& p, const ScalarField& omega,
                    const Grid& grid, const BallFamily& balls) {
    check_field(b, grid, "b");
    check_field(omega, grid, "omega");
    if (balls.centers.empty() || balls.radii.empty()) throw std::invalid_argument("empty ball family");

    BmoReport report;
    ScalarField deviation;
    deviation.values.assign(b.values.size(), 0.0);
    ScalarField ones;
    ones.values.assign(b.values.size(), 1.0);
    for (const Point& x : balls.centers) {
        for (const double r : balls.radii) {
            const Region tb = ball_region(grid, Ball{x, r});
            if (tb.count() < 2) continue;
            double mean = 0.0;
            for (const std::int64_t j : tb.cells) mean += b[j];
            mean /= static_cast<double>(tb.count());

            double osc = 0.0;
            for (const std::int64_t j : tb.cells) osc += std::abs(b[j] - mean);
            osc *= grid.cell_measure() / ball_measure(grid.dim(), r);
            report.bmo_norm = std::max(report.bmo_norm, osc);

            for (const std::int64_t j : tb.cells) deviation[j] = b[j] - mean;
            const double num = luxemburg_norm(deviation, p, grid, tb, &omega).value;
            const double den = luxemburg_norm(ones, p, grid, tb, &omega).value;
            if (den > 0.0) report.bmo_pw_norm = std::max(report.bmo_pw_norm, num / den);
            for (const std::int64_t j : tb.cells) deviation[j] = 0.0;
        }
    }
    if (report.bmo_norm > 0.0) report.ratio = report.bmo_pw_norm / report.bmo_norm;
    return report;
}

} // namespace vxm
