#include "vxm/lebesgue.hpp"

#include <cmath>
#include <stdexcept>

namespace vxm {

double modular(const ScalarField& f, const ExponentField& p, const Grid& grid, const Region& region) {
    double sum = 0.0;
    for (const std::int64_t i : region.cells) sum += std::pow(std::abs(f[i]), p[i]);
    const double result = sum * grid.cell_measure();
    if (std::isnan(result)) throw std::runtime_error("non-finite modular");
    return result;
}

namespace {

// modular of (|g| * scale)^{p} over region cells; monotone increasing in scale
double scaled_modular(const std::vector<double>& absg, const std::vector<double>& pexp,
                      double cell_measure, double inv_eta) {
    double sum = 0.0;
    for (std::size_t i = 0; i < absg.size(); ++i) sum += std::pow(absg[i] * inv_eta, pexp[i]);
    return sum * cell_measure;
}

} // namespace

NormResult luxemburg_norm(const ScalarField& f, const ExponentField& p, const Grid& grid,
                          const Region& region, const ScalarField* weight) {
    if (f.size() != grid.cell_count())
        throw std::invalid_argument("field size does not match grid");

    std::vector<double> absg, pexp;
    absg.reserve(region.cells.size());
    pexp.reserve(region.cells.size());
    for (const std::int64_t i : region.cells) {
        double v = f[i];
        if (weight) {
            const double w = (*weight)[i];
            if (!(w > 0.0)) throw std::domain_error("weight must be strictly positive");
            v *= w;
        }
        if (!std::isfinite(v)) throw std::runtime_error("non-finite field value in norm");
        if (v != 0.0) {
            absg.push_back(std::abs(v));
            pexp.push_back(p[i]);
        }
    }

    NormResult result;
    if (absg.empty()) return result; // ||0|| = 0, no bracket needed

    double p_minus = pexp.front(), p_plus = pexp.front();
    for (const double q : pexp) {
        p_minus = std::min(p_minus, q);
        p_plus = std::max(p_plus, q);
    }

    const double cm = grid.cell_measure();
    const double m0 = scaled_modular(absg, pexp, cm, 1.0);
    if (!std::isfinite(m0)) throw std::runtime_error("modular overflow at unit scale");
    const double eta0 = std::pow(m0, 1.0 / p_minus) + std::pow(m0, 1.0 / p_plus);

    double lo = 0.5 * eta0;
    double hi = 2.0 * eta0;
    int expansions = 0;
    while (scaled_modular(absg, pexp, cm, 1.0 / hi) > 1.0) {
        hi *= 2.0;
        if (++expansions > 200) throw std::runtime_error("Luxemburg bracket expansion failed");
    }
    while (scaled_modular(absg, pexp, cm, 1.0 / lo) < 1.0) {
        lo *= 0.5;
        if (++expansions > 200) throw std::runtime_error("Luxemburg bracket expansion failed");
    }

    constexpr double rel_tol = 1e-10;
    int iterations = 0;
    while ((hi - lo) > rel_tol * hi && iterations < 200) {
        const double mid = 0.5 * (lo + hi);
        if (scaled_modular(absg, pexp, cm, 1.0 / mid) > 1.0)
            lo = mid;
        else
            hi = mid;
        ++iterations;
    }

    result.value = hi; // the smallest eta seen with modular <= 1
    result.modular_at_value = scaled_modular(absg, pexp, cm, 1.0 / hi);
    result.bisection_iterations = iterations;
    return result;
}

NormResult luxemburg_norm(const ScalarField& f, const ExponentField& p, const Grid& grid,
                          const ScalarField* weight) {
    return luxemburg_norm(f, p, grid, full_region(grid), weight);
}

double dual_pairing_lower_bound(const ScalarField& f, const ExponentField& p, const Grid& grid,
                                const std::vector<ScalarField>& dictionary) {
    if (dictionary.empty()) throw std::invalid_argument("empty dual dictionary");
    const ExponentField pc = conjugate(p, grid);
    const Region all = full_region(grid);

    double best = 0.0;
    bool any = false;
    for (const ScalarField& g : dictionary) {
        const NormResult gn = luxemburg_norm(g, pc, grid, all);
        if (gn.value == 0.0) continue; // zero-only entry
        any = true;
        double pairing = 0.0;
        for (const std::int64_t i : all.cells) pairing += f[i] * g[i];
        pairing = std::abs(pairing) * grid.cell_measure() / gn.value;
        best = std::max(best, pairing);
    }
    if (!any) throw std::invalid_argument("dual dictionary contains only zero fields");
    return best;
}

} // namespace vxm
