#include "vxm/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace vxm {

namespace {

void validate(const ExponentField& p, const Grid& grid) {
    if (static_cast<std::int64_t>(p.values.size()) != grid.cell_count())
        throw std::invalid_argument("exponent field size does not match grid");
    if (!(p.p_infinity > 1.0)) throw std::domain_error("p(inf) must exceed 1");
    for (const std::int64_t i : grid.member_cells()) {
        const double v = p[i];
        if (!std::isfinite(v) || v <= 1.0)
            throw std::domain_error("exponent must satisfy 1 < p(x) < inf on the domain");
    }
}

} // namespace

double ExponentField::at(const Grid& grid, const Point& p) const {
    const std::int64_t i = grid.cell_at(p);
    if (i < 0) throw std::domain_error("point outside grid extent");
    return values[static_cast<std::size_t>(i)];
}

double ExponentField::min_on(const Grid& grid) const {
    double m = values[static_cast<std::size_t>(grid.member_cells().front())];
    for (const std::int64_t i : grid.member_cells()) m = std::min(m, (*this)[i]);
    return m;
}

double ExponentField::max_on(const Grid& grid) const {
    double m = values[static_cast<std::size_t>(grid.member_cells().front())];
    for (const std::int64_t i : grid.member_cells()) m = std::max(m, (*this)[i]);
    return m;
}

ExponentField make_exponent(const Grid& grid, const std::function<double(Point)>& p, double p_infinity) {
    ExponentField field;
    field.values.resize(static_cast<std::size_t>(grid.cell_count()));
    for (std::int64_t i = 0; i < grid.cell_count(); ++i) field.values[static_cast<std::size_t>(i)] = p(grid.cell_center(i));
    field.p_infinity = p_infinity;
    validate(field, grid);
    return field;
}

ExponentField constant_exponent(const Grid& grid, double p) {
    return make_exponent(grid, [p](Point) { return p; }, p);
}

ExponentReport analyze_exponents(const ExponentField& p, const Grid& grid, std::uint64_t seed) {
    validate(p, grid);
    const auto& members = grid.member_cells();
    const auto m = static_cast<std::int64_t>(members.size());

    ExponentReport report;
    report.p_minus = p.min_on(grid);
    report.p_plus = p.max_on(grid);

    const auto pair_value = [&](std::int64_t a, std::int64_t b) {
        const double d = distance(grid.cell_center(a), grid.cell_center(b));
        if (d <= 0.0 || d > 0.5) return 0.0;
        return std::abs(p[a] - p[b]) * (-std::log(d));
    };

    double log_holder = 0.0;
    if (m * m <= 4'000'000) {
        for (std::int64_t i = 0; i < m; ++i)
            for (std::int64_t j = i + 1; j < m; ++j)
                log_holder = std::max(log_holder, pair_value(members[i], members[j]));
    } else {
        // adjacent pairs carry the worst ratios for discontinuous exponents
        for (std::int64_t i = 0; i + 1 < m; ++i)
            log_holder = std::max(log_holder, pair_value(members[i], members[i + 1]));
        if (grid.dim() == 2) {
            for (const std::int64_t i : members) {
                const std::int64_t up = i + grid.cells_x();
                if (up < grid.cell_count() && grid.is_member(up))
                    log_holder = std::max(log_holder, pair_value(i, up));
            }
        }
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::int64_t> pick(0, m - 1);
        constexpr std::int64_t samples = 1'000'000;
        for (std::int64_t k = 0; k < samples; ++k) {
            const std::int64_t a = members[static_cast<std::size_t>(pick(rng))];
            const std::int64_t b = members[static_cast<std::size_t>(pick(rng))];
            if (a != b) log_holder = std::max(log_holder, pair_value(a, b));
        }
        report.sampled_pairs = samples;
    }
    report.log_holder_constant = log_holder;

    double decay = 0.0;
    for (const std::int64_t i : members) {
        const Point c = grid.cell_center(i);
        const double radius = grid.dim() == 2 ? std::hypot(c.x, c.y) : std::abs(c.x);
        decay = std::max(decay, std::abs(p[i] - p.p_infinity) * std::log(2.0 + radius));
    }
    report.decay_constant = decay;
    return report;
}

ExponentField conjugate(const ExponentField& p, const Grid& grid) {
    validate(p, grid);
    ExponentField out;
    out.values.resize(p.values.size());
    for (std::size_t i = 0; i < p.values.size(); ++i) {
        const double v = p.values[i];
        if (v == 1.0) throw std::domain_error("conjugate undefined at p = 1");
        out.values[i] = v / (v - 1.0);
    }
    out.p_infinity = p.p_infinity / (p.p_infinity - 1.0);
    return out;
}

ExponentField sobolev_exponent(const ExponentField& p, const Grid& grid, double alpha, int n) {
    validate(p, grid);
    if (!(alpha > 0.0) || !(alpha < static_cast<double>(n)))
        throw std::invalid_argument("alpha must lie in (0, n)");
    const double p_plus = p.max_on(grid);
    const double bound = static_cast<double>(n) / alpha;
    if (p_plus >= bound)
        throw std::domain_error("p_plus = " + std::to_string(p_plus) +
                                " violates p_plus < n/alpha = " + std::to_string(bound));
    ExponentField out;
    out.values.resize(p.values.size());
    for (std::size_t i = 0; i < p.values.size(); ++i)
        out.values[i] = 1.0 / (1.0 / p.values[i] - alpha / static_cast<double>(n));
    out.p_infinity = 1.0 / (1.0 / p.p_infinity - alpha / static_cast<double>(n));
    return out;
}

double ball_scale_exponent(const ExponentField& p, const Grid& grid, const Point& x, double r) {
    if (r <= 0.0) throw std::invalid_argument("radius must be positive");
    const auto n = static_cast<double>(grid.dim());
    return r <= 1.0 ? n / p.at(grid, x) : n / p.p_infinity;
}

} // namespace vxm
