#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "vxm/exponents.hpp"
#include "vxm/geometry.hpp"
#include "vxm/weights.hpp"

namespace vxm {

/// Morrey-norm shape function φ(x,r), strictly positive wherever evaluated.
struct ShapeFunction {
    std::function<double(Point, double)> eval;

    double operator()(const Point& x, double r) const;
};

ShapeFunction constant_shape(double value = 1.0);
ShapeFunction power_shape(double exponent);                       // r^exponent
ShapeFunction power_log_shape(double exponent, double log_power); // r^e (1+|ln r|)^k

/// Shape recovering the classical-parameter Morrey scale: φ(x,r) =
/// r^{λ(x)/p(x) - θ(x,r)} with θ the ball-indicator norm exponent, so the
/// unweighted normalizer φ(x,r) r^{θ} collapses to r^{λ(x)/p(x)} and the
/// family norm reduces to sup t^{-λ/p} ||f χ_B̃||. λ values must lie in [0, n].
ShapeFunction shape_from_lambda(const ExponentField& p, const ScalarField& lambda, const Grid& grid);

struct MorreyNorm {
    double value = 0.0;
    Ball argmax;
    std::vector<std::pair<Ball, double>> profile; // normalized local norm per (x, r)
};

/// Generalized (weighted) Morrey norm over the family:
///   with weight:  max ||f ω χ_B̃||_{p(·)} / (φ(x,r) ||ω χ_B̃||_{p(·)})
///   without:      max ||f χ_B̃||_{p(·)} / (φ(x,r) r^{θ(x,r)}).
MorreyNorm morrey_norm(const ScalarField& f, const ExponentField& p, const ShapeFunction& phi,
                       const Grid& grid, const BallFamily& balls, const ScalarField* weight = nullptr);

/// Norm-only Morrey evaluator with regions and normalizers precomputed once,
/// for sweeps that take the same family norm of many fields.
class MorreyEvaluator {
public:
    MorreyEvaluator(const ExponentField& p, const ShapeFunction& phi, const Grid& grid,
                    const BallFamily& balls, const ScalarField* weight = nullptr);

    double norm(const ScalarField& f) const;

private:
    const ExponentField& p_;
    const Grid& grid_;
    const ScalarField* weight_;
    struct Entry {
        Region region;
        double normalizer;
    };
    std::vector<Entry> entries_;
};

struct VanishingProfile {
    std::vector<double> radii;   // decreasing
    std::vector<double> modulus; // sup over centers of the normalized local norm
    bool vanishing_verdict = false; // last modulus <= 0.1 * first (reported, not asserted)
};

/// Small-radius modulus of the weighted Morrey quotient: for each radius t,
/// sup over centers of ||f ω χ_B̃(x,t)||_{p(·)} / (φ(x,t) ||ω χ_B̃(x,t)||_{p(·)}).
VanishingProfile vanishing_modulus(const ScalarField& f, const ExponentField& p, const ShapeFunction& phi,
                                   const ScalarField& omega, const Grid& grid,
                                   const std::vector<Point>& centers, const std::vector<double>& radii);

/// Nontriviality quantities of the vanishing space: per radius t,
/// 1 / (inf_x ||ω χ_B̃(x,t)||_{p(·)} · inf_x φ(x,t)). Returns (value at the
/// smallest radius, sup over all radii); the caller judges the conditions.
std::pair<double, double> nontriviality_conditions(const ShapeFunction& phi, const ExponentField& p,
                                                   const ScalarField& omega, const Grid& grid,
                                                   const std::vector<Point>& centers,
                                                   const std::vector<double>& radii);

/// Morrey norm with respect to the measure dμ = ω(y)^{p(y)} dy:
///   inf{η > 0 : sup over balls (t^λ / μ(B(x,t))) ∫_{B(x,t)} (|f|/η)^{p(y)} dμ <= 1}
/// by bisection on η. Balls are taken untruncated within the grid extent
/// (the membership mask is ignored here), matching the full-space setting.
double measure_morrey_norm(const ScalarField& f, const ExponentField& p, double lambda,
                           const ScalarField& omega, const Grid& grid, const BallFamily& balls);

} // namespace vxm
