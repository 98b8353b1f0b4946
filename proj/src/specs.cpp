#include "vxm/specs.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace vxm {

namespace {

double get_or(const Json& spec, const char* key, double fallback) {
    return spec.contains(key) ? spec.at(key).get<double>() : fallback;
}

std::string kind_of(const Json& spec) {
    if (!spec.is_object() || !spec.contains("kind"))
        throw std::invalid_argument("spec must be an object with a \"kind\"");
    return spec.at("kind").get<std::string>();
}

double radial_distance(const Grid& grid, const Point& c, const Point& x0) {
    return grid.dim() == 2 ? std::hypot(c.x - x0.x, c.y - x0.y) : std::abs(c.x - x0.x);
}

} // namespace

Grid parse_grid(const Json& spec) {
    const int dim = spec.contains("dim") ? spec.at("dim").get<int>() : 1;
    const double h = spec.at("h").get<double>();
    const auto& extent = spec.at("extent");
    if (dim == 1) {
        Grid grid = Grid::line(extent.at(0).at(0).get<double>(), extent.at(0).at(1).get<double>(), h);
        if (spec.contains("mask")) {
            std::vector<std::pair<double, double>> intervals;
            for (const auto& iv : spec.at("mask")) intervals.emplace_back(iv.at(0).get<double>(), iv.at(1).get<double>());
            grid.restrict_membership([intervals](Point p) {
                for (const auto& [a, b] : intervals)
                    if (p.x > a && p.x < b) return true;
                return false;
            });
        }
        return grid;
    }
    if (dim == 2) {
        Point lo{extent.at(0).at(0).get<double>(), extent.at(1).at(0).get<double>()};
        Point hi{extent.at(0).at(1).get<double>(), extent.at(1).at(1).get<double>()};
        Grid grid = Grid::box(lo, hi, h);
        if (spec.contains("mask")) {
            std::vector<std::array<double, 4>> boxes;
            for (const auto& bx : spec.at("mask"))
                boxes.push_back({bx.at(0).get<double>(), bx.at(1).get<double>(),
                                 bx.at(2).get<double>(), bx.at(3).get<double>()});
            grid.restrict_membership([boxes](Point p) {
                for (const auto& b : boxes)
                    if (p.x > b[0] && p.x < b[1] && p.y > b[2] && p.y < b[3]) return true;
                return false;
            });
        }
        return grid;
    }
    throw std::invalid_argument("grid dim must be 1 or 2");
}

ExponentField parse_exponent(const Json& spec, const Grid& grid) {
    const std::string kind = kind_of(spec);
    if (kind == "constant") {
        const double v = spec.at("value").get<double>();
        return make_exponent(grid, [v](Point) { return v; }, get_or(spec, "p_inf", v));
    }
    if (kind == "affine") {
        const double base = spec.at("base").get<double>();
        const double slope = spec.at("slope").get<double>();
        return make_exponent(grid, [base, slope](Point p) { return base + slope * p.x; },
                             get_or(spec, "p_inf", base));
    }
    if (kind == "sin") {
        const double base = spec.at("base").get<double>();
        const double amp = spec.at("amplitude").get<double>();
        const double freq = get_or(spec, "frequency", 1.0);
        return make_exponent(grid, [base, amp, freq](Point p) { return base + amp * std::sin(freq * (p.x + p.y)); },
                             get_or(spec, "p_inf", base));
    }
    if (kind == "step") {
        const double left = spec.at("left").get<double>();
        const double right = spec.at("right").get<double>();
        const double at = get_or(spec, "at", 0.0);
        return make_exponent(grid, [left, right, at](Point p) { return p.x < at ? left : right; },
                             get_or(spec, "p_inf", right));
    }
    if (kind == "clamped_log") {
        const double base = spec.at("base").get<double>();
        const double amp = spec.at("amplitude").get<double>();
        return make_exponent(grid,
                             [base, amp](Point p) {
                                 const double r = std::hypot(p.x, p.y);
                                 return base + amp / std::log(std::numbers::e + r);
                             },
                             get_or(spec, "p_inf", base));
    }
    throw std::invalid_argument("unknown exponent kind: " + kind);
}

ScalarField parse_weight(const Json& spec, const Grid& grid) {
    const std::string kind = kind_of(spec);
    if (kind == "one") return sample(grid, [](Point) { return 1.0; });
    if (kind == "abs_power") {
        const double e = spec.at("exponent").get<double>();
        return sample(grid, [e](Point p) { return std::pow(std::hypot(p.x, p.y), e); });
    }
    if (kind == "exp") {
        const double rate = spec.at("rate").get<double>();
        return sample(grid, [rate](Point p) { return std::exp(rate * (p.x + p.y)); });
    }
    throw std::invalid_argument("unknown weight kind: " + kind);
}

ScalarField parse_symbol(const Json& spec, const Grid& grid) {
    const std::string kind = kind_of(spec);
    if (kind == "constant") {
        const double v = spec.at("value").get<double>();
        return sample(grid, [v](Point) { return v; });
    }
    if (kind == "sign") {
        const double at = get_or(spec, "at", 0.0);
        return sample(grid, [at](Point p) { return p.x < at ? -1.0 : 1.0; });
    }
    if (kind == "linear") {
        const double slope = get_or(spec, "slope", 1.0);
        return sample(grid, [slope](Point p) { return slope * p.x; });
    }
    if (kind == "log_abs") {
        const double floor = grid.spacing() / 4.0; // keep the sample finite at cell scale
        return sample(grid, [floor](Point p) { return std::log(std::max(std::hypot(p.x, p.y), floor)); });
    }
    if (kind == "sin") {
        const double freq = get_or(spec, "frequency", 1.0);
        const double amp = get_or(spec, "amplitude", 1.0);
        return sample(grid, [freq, amp](Point p) { return amp * std::sin(freq * (p.x + p.y)); });
    }
    throw std::invalid_argument("unknown symbol kind: " + kind);
}

ShapeFunction parse_shape(const Json& spec, const ExponentField& p, const Grid& grid) {
    const std::string kind = kind_of(spec);
    if (kind == "one") return constant_shape(1.0);
    if (kind == "power") return power_shape(spec.at("exponent").get<double>());
    if (kind == "power_log")
        return power_log_shape(spec.at("exponent").get<double>(), get_or(spec, "log_power", 1.0));
    if (kind == "lambda") {
        const Json& lspec = spec.at("lambda");
        ScalarField lambda = lspec.is_number()
                                 ? sample(grid, [v = lspec.get<double>()](Point) { return v; })
                                 : parse_weight(lspec, grid);
        return shape_from_lambda(p, lambda, grid);
    }
    throw std::invalid_argument("unknown shape kind: " + kind);
}

BallFamily parse_balls(const Json& spec, const Grid& grid) {
    const double r_min = spec.at("r_min").get<double>();
    const double r_max = spec.at("r_max").get<double>();
    const double ratio = get_or(spec, "ratio", 1.189207115002721);
    BallFamily family;
    family.radii = BallFamily::radius_ladder(r_min, r_max, ratio);
    if (spec.contains("centers")) {
        for (const auto& c : spec.at("centers")) {
            Point p;
            if (c.is_number()) {
                p.x = c.get<double>();
            } else {
                p.x = c.at(0).get<double>();
                p.y = c.at(1).get<double>();
            }
            family.centers.push_back(p);
        }
    } else if (spec.contains("center_count")) {
        // evenly spread member-cell centers
        const auto count = std::max<std::int64_t>(1, spec.at("center_count").get<std::int64_t>());
        const auto& members = grid.member_cells();
        const auto stride = std::max<std::int64_t>(1, static_cast<std::int64_t>(members.size()) / count);
        for (std::size_t k = 0; k < members.size(); k += static_cast<std::size_t>(stride))
            family.centers.push_back(grid.cell_center(members[k]));
    } else {
        const auto stride = static_cast<std::int64_t>(get_or(spec, "center_stride", 1.0));
        return BallFamily::geometric(grid, r_min, r_max, ratio, stride);
    }
    return family;
}

RadialGrid parse_radial(const Json& spec) {
    RadialGrid rg = RadialGrid::geometric(spec.at("r_min").get<double>(), spec.at("r_max").get<double>(),
                                          spec.contains("per_decade") ? spec.at("per_decade").get<int>() : 64);
    if (spec.contains("power_tail")) rg.power_tail = spec.at("power_tail").get<bool>();
    return rg;
}

ScalarField TestFunction::sample_on(const Grid& grid) const {
    if (family == "indicator")
        return sample(grid, [this, &grid](Point p) { return radial_distance(grid, p, center) < width ? amplitude : 0.0; });
    if (family == "step")
        return sample(grid, [this, &grid](Point p) {
            const double d = radial_distance(grid, p, center);
            if (d >= width) return 0.0;
            return p.x < center.x ? amplitude : amplitude2;
        });
    if (family == "power_bump")
        return sample(grid, [this, &grid](Point p) {
            const double d = radial_distance(grid, p, center);
            if (d >= width) return 0.0;
            return amplitude * std::pow(std::max(d, 1e-9), -exponent);
        });
    if (family == "gaussian")
        return sample(grid, [this, &grid](Point p) {
            const double d = radial_distance(grid, p, center);
            return amplitude * std::exp(-0.5 * d * d / (width * width));
        });
    throw std::invalid_argument("unknown test-function family: " + family);
}

std::vector<TestFunction> seeded_test_functions(const Json& spec, const Grid& grid, double p_plus,
                                                std::uint64_t seed) {
    const auto count = spec.contains("count") ? spec.at("count").get<std::int64_t>() : 50;
    std::vector<std::string> families;
    if (spec.contains("families"))
        for (const auto& f : spec.at("families")) families.push_back(f.get<std::string>());
    else
        families = {"indicator", "step", "power_bump", "gaussian"};

    // supports inside the core half of the extent, so extent-doubling studies
    // keep the identical functions
    const double cx = 0.5 * (grid.lower().x + grid.upper().x);
    const double cy = grid.dim() == 2 ? 0.5 * (grid.lower().y + grid.upper().y) : 0.0;
    const double half = 0.25 * (grid.upper().x - grid.lower().x);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double beta_cap = std::max(0.0, static_cast<double>(grid.dim()) / p_plus - 1e-3);

    std::vector<TestFunction> out;
    out.reserve(static_cast<std::size_t>(count));
    for (std::int64_t k = 0; k < count; ++k) {
        TestFunction tf;
        tf.family = families[static_cast<std::size_t>(k) % families.size()];
        tf.center.x = cx + (2.0 * uni(rng) - 1.0) * 0.5 * half;
        tf.center.y = grid.dim() == 2 ? cy + (2.0 * uni(rng) - 1.0) * 0.5 * half : 0.0;
        tf.width = half * (0.1 + 0.8 * uni(rng));
        tf.amplitude = 0.2 + 2.0 * uni(rng);
        tf.amplitude2 = -1.0 + 2.0 * uni(rng);
        tf.exponent = tf.family == "power_bump" ? 0.9 * beta_cap * uni(rng) : 0.0;
        out.push_back(tf);
    }
    return out;
}

} // namespace vxm
