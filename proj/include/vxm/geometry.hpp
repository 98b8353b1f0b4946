#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace vxm {

// Point in R^n, n <= 2. For 1D grids y is 0 and ignored.
struct Point {
    double x = 0.0;
    double y = 0.0;
};

double distance(const Point& a, const Point& b);

// Open ball B(x,r). The truncated ball B(x,r) ∩ Ω is obtained via ball_region().
struct Ball {
    Point center;
    double radius = 0.0;
};

/// Uniform discretization of an open set Ω ⊆ R^n (n = 1 or 2).
///
/// Cells are axis-aligned squares of side `h` covering the extent; the
/// membership mask selects which cells belong to Ω, so non-rectangular
/// domains (finite unions of boxes) are expressible. Immutable after
/// construction; all queries are const and safe to run concurrently.
class Grid {
public:
    static Grid line(double lo, double hi, double h);
    static Grid box(Point lo, Point hi, double h);

    // Restrict membership to cells whose centers satisfy the predicate.
    // Throws std::invalid_argument if no member cell remains.
    void restrict_membership(const std::function<bool(Point)>& inside);

    int dim() const { return dim_; }
    double spacing() const { return h_; }
    double cell_measure() const { return cell_measure_; }
    int cells_x() const { return nx_; }
    int cells_y() const { return ny_; }
    std::int64_t cell_count() const { return static_cast<std::int64_t>(nx_) * ny_; }
    Point lower() const { return lo_; }
    Point upper() const { return hi_; }

    Point cell_center(std::int64_t index) const;
    bool is_member(std::int64_t index) const { return member_[static_cast<std::size_t>(index)] != 0; }
    std::int64_t member_count() const { return member_count_; }

    // Index of the cell containing p, or -1 if p is outside the extent.
    std::int64_t cell_at(const Point& p) const;
    // True when p lies in a member cell.
    bool contains(const Point& p) const;

    const std::vector<std::int64_t>& member_cells() const { return members_; }

private:
    Grid(int dim, Point lo, Point hi, double h);
    void rebuild_member_list();

    int dim_;
    double h_;
    double cell_measure_;
    Point lo_, hi_;
    int nx_, ny_;
    std::vector<std::uint8_t> member_;
    std::vector<std::int64_t> members_;
    std::int64_t member_count_ = 0;
};

// Real-valued function sampled at cell centers (f, b and weights ω all use
// this role; weight positivity is checked by the consumers that need it).
struct ScalarField {
    std::vector<double> values;

    double operator[](std::int64_t i) const { return values[static_cast<std::size_t>(i)]; }
    double& operator[](std::int64_t i) { return values[static_cast<std::size_t>(i)]; }
    std::int64_t size() const { return static_cast<std::int64_t>(values.size()); }
};

ScalarField sample(const Grid& grid, const std::function<double(Point)>& f);

// Set of cell indices within a grid; measure = count * h^n.
struct Region {
    std::vector<std::int64_t> cells;

    bool empty() const { return cells.empty(); }
    std::int64_t count() const { return static_cast<std::int64_t>(cells.size()); }
    double measure(const Grid& grid) const { return static_cast<double>(cells.size()) * grid.cell_measure(); }
};

// Full (untruncated) ball measure: 2r in 1D, pi r^2 in 2D. Operator
// normalizers use this, not |B ∩ Ω|.
double ball_measure(int dim, double radius);

/// Member cells whose centers lie strictly inside the ball.
/// Throws std::domain_error if the center is outside Ω and
/// std::invalid_argument if radius <= 0.
Region ball_region(const Grid& grid, const Ball& ball);

// Region covering all of Ω.
Region full_region(const Grid& grid);

/// Midpoint-rule integral h^n · Σ_{cells} field(center). Empty regions
/// integrate to 0; a non-finite result throws std::runtime_error.
double integrate(const Grid& grid, const ScalarField& field, const Region& region);

// 1D fast path used by the maximal operators: member-masked prefix sums.
// sums[i] = h · Σ_{j<i, j member} values[j].
std::vector<double> member_prefix_sums(const Grid& grid, const ScalarField& field);

// Index range [first, last] of cells with center strictly inside (a, b),
// clamped to the grid; first > last means empty. 1D grids only.
std::pair<std::int64_t, std::int64_t> interval_cells(const Grid& grid, double a, double b);

} // namespace vxm
