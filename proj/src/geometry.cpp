#include "vxm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vxm {

double distance(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

Grid::Grid(int dim, Point lo, Point hi, double h) : dim_(dim), h_(h), lo_(lo), hi_(hi) {
    if (h <= 0.0) throw std::invalid_argument("grid spacing must be positive");
    if (hi.x <= lo.x || (dim == 2 && hi.y <= lo.y))
        throw std::invalid_argument("grid extent must be nonempty");
    nx_ = static_cast<int>(std::lround((hi.x - lo.x) / h));
    ny_ = dim == 2 ? static_cast<int>(std::lround((hi.y - lo.y) / h)) : 1;
    if (nx_ < 1 || ny_ < 1) throw std::invalid_argument("extent shorter than one cell");
    cell_measure_ = dim == 2 ? h * h : h;
    member_.assign(static_cast<std::size_t>(nx_) * ny_, 1);
    rebuild_member_list();
}

Grid Grid::line(double lo, double hi, double h) { return Grid(1, {lo, 0.0}, {hi, 0.0}, h); }

Grid Grid::box(Point lo, Point hi, double h) { return Grid(2, lo, hi, h); }

void Grid::rebuild_member_list() {
    members_.clear();
    for (std::int64_t i = 0; i < cell_count(); ++i)
        if (member_[static_cast<std::size_t>(i)]) members_.push_back(i);
    member_count_ = static_cast<std::int64_t>(members_.size());
    if (member_count_ == 0) throw std::invalid_argument("grid has no member cells");
}

void Grid::restrict_membership(const std::function<bool(Point)>& inside) {
    for (std::int64_t i = 0; i < cell_count(); ++i)
        if (member_[static_cast<std::size_t>(i)] && !inside(cell_center(i)))
            member_[static_cast<std::size_t>(i)] = 0;
    rebuild_member_list();
}

Point Grid::cell_center(std::int64_t index) const {
    const std::int64_t ix = index % nx_;
    const std::int64_t iy = index / nx_;
    Point p;
    p.x = lo_.x + (static_cast<double>(ix) + 0.5) * h_;
    p.y = dim_ == 2 ? lo_.y + (static_cast<double>(iy) + 0.5) * h_ : 0.0;
    return p;
}

std::int64_t Grid::cell_at(const Point& p) const {
    const auto ix = static_cast<std::int64_t>(std::floor((p.x - lo_.x) / h_));
    if (ix < 0 || ix >= nx_) return -1;
    std::int64_t iy = 0;
    if (dim_ == 2) {
        iy = static_cast<std::int64_t>(std::floor((p.y - lo_.y) / h_));
        if (iy < 0 || iy >= ny_) return -1;
    }
    return iy * nx_ + ix;
}

bool Grid::contains(const Point& p) const {
    const std::int64_t i = cell_at(p);
    return i >= 0 && is_member(i);
}

ScalarField sample(const Grid& grid, const std::function<double(Point)>& f) {
    ScalarField out;
    out.values.resize(static_cast<std::size_t>(grid.cell_count()));
    for (std::int64_t i = 0; i < grid.cell_count(); ++i) out[i] = f(grid.cell_center(i));
    return out;
}

double ball_measure(int dim, double radius) {
    return dim == 2 ? std::numbers::pi * radius * radius : 2.0 * radius;
}

std::pair<std::int64_t, std::int64_t> interval_cells(const Grid& grid, double a, double b) {
    // centers at lo + (i + 1/2) h; strict inclusion on both ends
    const double h = grid.spacing();
    const double lo = grid.lower().x;
    const std::int64_t nx = grid.cells_x();
    const auto center = [&](std::int64_t i) { return lo + (static_cast<double>(i) + 0.5) * h; };

    auto first = static_cast<std::int64_t>(std::ceil((a - lo) / h - 0.5));
    first = std::max<std::int64_t>(0, std::min(first, nx));
    // float-safe nudge: the rounded endpoints must satisfy the strict predicate
    while (first < nx && center(first) <= a) ++first;
    while (first > 0 && center(first - 1) > a) --first;

    auto last = static_cast<std::int64_t>(std::floor((b - lo) / h - 0.5));
    last = std::max<std::int64_t>(-1, std::min(last, nx - 1));
    while (last >= 0 && center(last) >= b) --last;
    while (last + 1 < nx && center(last + 1) < b) ++last;

    return {first, last};
}

Region ball_region(const Grid& grid, const Ball& ball) {
    if (ball.radius <= 0.0) throw std::invalid_argument("ball radius must be positive");
    if (!grid.contains(ball.center)) throw std::domain_error("ball center lies outside the domain");

    Region region;
    if (grid.dim() == 1) {
        auto [first, last] = interval_cells(grid, ball.center.x - ball.radius, ball.center.x + ball.radius);
        for (std::int64_t i = first; i <= last; ++i)
            if (grid.is_member(i)) region.cells.push_back(i);
        return region;
    }

    const double h = grid.spacing();
    const double r2 = ball.radius * ball.radius;
    const auto ix0 = static_cast<std::int64_t>(std::floor((ball.center.x - ball.radius - grid.lower().x) / h)) - 1;
    const auto ix1 = static_cast<std::int64_t>(std::ceil((ball.center.x + ball.radius - grid.lower().x) / h)) + 1;
    const auto iy0 = static_cast<std::int64_t>(std::floor((ball.center.y - ball.radius - grid.lower().y) / h)) - 1;
    const auto iy1 = static_cast<std::int64_t>(std::ceil((ball.center.y + ball.radius - grid.lower().y) / h)) + 1;
    for (std::int64_t iy = std::max<std::int64_t>(iy0, 0); iy <= std::min<std::int64_t>(iy1, grid.cells_y() - 1); ++iy) {
        for (std::int64_t ix = std::max<std::int64_t>(ix0, 0); ix <= std::min<std::int64_t>(ix1, grid.cells_x() - 1); ++ix) {
            const std::int64_t i = iy * grid.cells_x() + ix;
            if (!grid.is_member(i)) continue;
            const Point c = grid.cell_center(i);
            const double dx = c.x - ball.center.x;
            const double dy = c.y - ball.center.y;
            if (dx * dx + dy * dy < r2) region.cells.push_back(i);
        }
    }
    return region;
}

Region full_region(const Grid& grid) {
    Region region;
    region.cells = grid.member_cells();
    return region;
}

double integrate(const Grid& grid, const ScalarField& field, const Region& region) {
    if (field.size() != grid.cell_count())
        throw std::invalid_argument("field size does not match grid");
    double sum = 0.0;
    for (const std::int64_t i : region.cells) sum += field[i];
    const double result = sum * grid.cell_measure();
    if (!std::isfinite(result)) throw std::runtime_error("non-finite integrand");
    return result;
}

std::vector<double> member_prefix_sums(const Grid& grid, const ScalarField& field) {
    std::vector<double> sums(static_cast<std::size_t>(grid.cell_count()) + 1, 0.0);
    for (std::int64_t i = 0; i < grid.cell_count(); ++i) {
        const double v = grid.is_member(i) ? field[i] : 0.0;
        sums[static_cast<std::size_t>(i) + 1] = sums[static_cast<std::size_t>(i)] + v * grid.spacing();
    }
    return sums;
}

} // namespace vxm
