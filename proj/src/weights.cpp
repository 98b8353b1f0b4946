#include "vxm/weights.hpp"

#include <cmath>
#include <stdexcept>

namespace vxm {

std::vector<double> BallFamily::radius_ladder(double r_min, double r_max, double ratio) {
    if (!(r_min > 0.0) || r_max < r_min) throw std::invalid_argument("need 0 < r_min <= r_max");
    if (!(ratio > 1.0) || ratio > 2.0) throw std::invalid_argument("radius ratio must lie in (1, 2]");
    std::vector<double> radii;
    for (double r = r_min; r <= r_max * (1.0 + 1e-12); r *= ratio) radii.push_back(r);
    return radii;
}

BallFamily BallFamily::geometric(const Grid& grid, double r_min, double r_max,
                                 double ratio, std::int64_t center_stride) {
    if (center_stride < 1) throw std::invalid_argument("center stride must be >= 1");
    BallFamily family;
    family.radii = radius_ladder(r_min, r_max, ratio);
    const auto& members = grid.member_cells();
    for (std::size_t k = 0; k < members.size(); k += static_cast<std::size_t>(center_stride))
        family.centers.push_back(grid.cell_center(members[k]));
    return family;
}

WeightClassReport apq_constant(const ScalarField& omega, const ExponentField& p, const ExponentField& q,
                               const Grid& grid, const BallFamily& balls) {
    if (balls.centers.empty() || balls.radii.empty())
        throw std::invalid_argument("empty ball family");
    for (const std::int64_t i : grid.member_cells())
        if (!(omega[i] > 0.0)) throw std::domain_error("weight must be strictly positive on the domain");

    const ExponentField p_conj = conjugate(p, grid);
    const ScalarField omega_inv = duality_image(omega, grid);

    WeightClassReport report;
    report.radius_profile.reserve(balls.radii.size());
    for (const double r : balls.radii) {
        double radius_sup = 0.0;
        for (const Point& x : balls.centers) {
            const Region tb = ball_region(grid, Ball{x, r});
            if (tb.count() < 4) {
                ++report.skipped_balls;
                continue;
            }
            const double exponent = 1.0 / p.at(grid, x) - 1.0 / q.at(grid, x) - 1.0;
            const double term = std::pow(ball_measure(grid.dim(), r), exponent) *
                                luxemburg_norm(omega, q, grid, tb).value *
                                luxemburg_norm(omega_inv, p_conj, grid, tb).value;
            radius_sup = std::max(radius_sup, term);
            if (term > report.constant) {
                report.constant = term;
                report.argmax = Ball{x, r};
            }
        }
        report.radius_profile.emplace_back(r, radius_sup);
    }
    return report;
}

ScalarField duality_image(const ScalarField& omega, const Grid& grid) {
    ScalarField out;
    out.values.resize(omega.values.size());
    for (const std::int64_t i : grid.member_cells())
        if (!(omega[i] > 0.0)) throw std::domain_error("weight must be strictly positive on the domain");
    for (std::size_t i = 0; i < omega.values.size(); ++i)
        out.values[i] = omega.values[i] != 0.0 ? 1.0 / omega.values[i] : 0.0;
    return out;
}

} // namespace vxm
