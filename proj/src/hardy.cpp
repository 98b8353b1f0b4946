#include "vxm/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vxm/lebesgue.hpp"
#include "vxm/parallel.hpp"

namespace vxm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Fitted local power of the base integrand from its last two samples.
// Returns false when no meaningful fit exists (flat zero tail).
bool fit_tail_exponent(double s0, double g0, double s1, double g1, double& beta) {
    if (g1 <= 0.0) return false; // zero tail
    if (g0 <= 0.0) {
        beta = 0.0; // integrand switched on at the edge: treat as non-decaying
        return true;
    }
    beta = std::log(g1 / g0) / std::log(s1 / s0);
    return true;
}

// ∫_{s1}^∞ g1 (s/s1)^beta ds, optionally with the (1 + ln(s/t)) factor.
// +inf when beta >= -1.
double power_tail(double g1, double s1, double beta, bool log_factor, double t) {
    if (g1 <= 0.0) return 0.0;
    if (beta >= -1.0 - 1e-12) return kInf;
    const double decay = -1.0 - beta;
    if (!log_factor) return g1 * s1 / decay;
    return g1 * s1 * ((1.0 + std::log(s1 / t)) / decay + 1.0 / (decay * decay));
}

} // namespace

RadialGrid RadialGrid::geometric(double r_min, double r_max, int nodes_per_decade) {
    if (!(r_min > 0.0) || !(r_max > r_min)) throw std::invalid_argument("need 0 < r_min < r_max");
    if (nodes_per_decade < 2) throw std::invalid_argument("need at least 2 nodes per decade");
    RadialGrid rg;
    const double step = std::pow(10.0, 1.0 / nodes_per_decade);
    for (double r = r_min; r <= r_max * (1.0 + 1e-12); r *= step) rg.nodes.push_back(r);
    rg.tail_cutoff = rg.nodes.back();
    return rg;
}

double hardy_operator(const RadialFunction& g, const RadialFunction& w, double t, bool log_factor,
                      const RadialGrid& rg) {
    if (!(t > 0.0)) throw std::invalid_argument("lower limit must be positive");
    if (rg.nodes.size() < 2) throw std::invalid_argument("radial grid needs at least 2 nodes");

    const auto base = [&](double s) { return g(s) * w(s); };
    const auto factor = [&](double s) { return log_factor ? 1.0 + std::log(s / t) : 1.0; };

    std::vector<double> pts;
    pts.push_back(t);
    for (const double s : rg.nodes)
        if (s > t) pts.push_back(s);

    double integral = 0.0;
    double prev_s = pts.front();
    double prev_f = base(prev_s) * factor(prev_s);
    for (std::size_t k = 1; k < pts.size(); ++k) {
        const double s = pts[k];
        const double f = base(s) * factor(s);
        integral += 0.5 * (s - prev_s) * (prev_f + f);
        prev_s = s;
        prev_f = f;
    }

    if (rg.power_tail) {
        const std::size_t n = rg.nodes.size();
        const double s_end = std::max(t, rg.nodes.back());
        double beta;
        if (fit_tail_exponent(rg.nodes[n - 2], base(rg.nodes[n - 2]), rg.nodes[n - 1], base(rg.nodes[n - 1]), beta))
            integral += power_tail(base(s_end), s_end, beta, log_factor, t);
    }
    return integral;
}

double supremal_operator(const RadialFunction& u, const RadialFunction& g, double t, const RadialGrid& rg) {
    if (!(t > 0.0)) throw std::invalid_argument("upper limit must be positive");
    double best = -kInf;
    bool any = false;
    for (const double s : rg.nodes) {
        if (s > t) break;
        best = std::max(best, u(s) * g(s));
        any = true;
    }
    if (!any) throw std::invalid_argument("no radial nodes below the evaluation point");
    return best;
}

ConditionReport hardy_condition_constant(const RadialFunction& v1, const RadialFunction& v2,
                                         const RadialFunction& w, bool log_factor, const RadialGrid& rg) {
    const std::size_t n = rg.nodes.size();
    if (n < 2) throw std::invalid_argument("radial grid needs at least 2 nodes");

    std::vector<double> v1v(n), v2v(n), wv(n);
    for (std::size_t i = 0; i < n; ++i) {
        v1v[i] = v1(rg.nodes[i]);
        v2v[i] = v2(rg.nodes[i]);
        wv[i] = w(rg.nodes[i]);
        if (!std::isfinite(v1v[i])) throw std::domain_error("v1 must be finite on the grid");
    }

    // inner normalizer: running sup of v1 from the right (plain) or left (log)
    std::vector<double> inner(n);
    if (!log_factor) {
        double running = 0.0;
        for (std::size_t i = n; i-- > 0;) {
            running = std::max(running, v1v[i]);
            inner[i] = running;
        }
    } else {
        double running = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            running = std::max(running, v1v[i]);
            inner[i] = running;
        }
    }

    ConditionReport report;
    std::vector<double> integrand(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (inner[i] > 0.0) {
            integrand[i] = wv[i] / inner[i];
        } else if (wv[i] == 0.0) {
            integrand[i] = 0.0;
        } else {
            report.divergent = true;
            report.constant = kInf;
            return report;
        }
    }

    double beta = 0.0;
    const bool has_tail = rg.power_tail &&
        fit_tail_exponent(rg.nodes[n - 2], integrand[n - 2], rg.nodes[n - 1], integrand[n - 1], beta);

    report.profile.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double t = rg.nodes[j];
        double integral = 0.0;
        for (std::size_t i = j; i + 1 < n; ++i) {
            const double fa = integrand[i] * (log_factor ? 1.0 + std::log(rg.nodes[i] / t) : 1.0);
            const double fb = integrand[i + 1] * (log_factor ? 1.0 + std::log(rg.nodes[i + 1] / t) : 1.0);
            integral += 0.5 * (rg.nodes[i + 1] - rg.nodes[i]) * (fa + fb);
        }
        if (has_tail) integral += power_tail(integrand[n - 1], rg.nodes[n - 1], beta, log_factor, t);
        const double value = v2v[j] * integral;
        report.profile.emplace_back(t, value);
        if (std::isinf(value)) report.divergent = true;
        if (value > report.constant) {
            report.constant = value;
            report.argmax_t = t;
        }
    }
    return report;
}

ConditionReport supremal_condition_constant(const RadialFunction& u, const RadialFunction& v1,
                                            const RadialFunction& v2, const RadialGrid& rg) {
    const std::size_t n = rg.nodes.size();
    if (n == 0) throw std::invalid_argument("empty radial grid");

    ConditionReport report;
    double v1_running = 0.0;
    double ratio_running = 0.0;
    report.profile.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = rg.nodes[i];
        v1_running = std::max(v1_running, v1(s));
        if (!(v1_running > 0.0) || !std::isfinite(v1_running))
            throw std::domain_error("running sup of v1 must stay in (0, inf)");
        ratio_running = std::max(ratio_running, u(s) / v1_running);
        const double value = v2(s) * ratio_running;
        report.profile.emplace_back(s, value);
        if (value > report.constant) {
            report.constant = value;
            report.argmax_t = s;
        }
    }
    return report;
}

ZygmundKind zygmund_kind_from_string(const std::string& name) {
    if (name == "qhs1sh") return ZygmundKind::qhs1sh;
    if (name == "qhs1shk") return ZygmundKind::qhs1shk;
    if (name == "H1v") return ZygmundKind::H1v;
    if (name == "H1vk") return ZygmundKind::H1vk;
    if (name == "rv_prime") return ZygmundKind::rv_prime;
    if (name == "rv") return ZygmundKind::rv;
    if (name == "rv4") return ZygmundKind::rv4;
    if (name == "rv5") return ZygmundKind::rv5;
    throw std::invalid_argument("unknown condition kind: " + name);
}

std::string to_string(ZygmundKind kind) {
    switch (kind) {
        case ZygmundKind::qhs1sh: return "qhs1sh";
        case ZygmundKind::qhs1shk: return "qhs1shk";
        case ZygmundKind::H1v: return "H1v";
        case ZygmundKind::H1vk: return "H1vk";
        case ZygmundKind::rv_prime: return "rv_prime";
        case ZygmundKind::rv: return "rv";
        case ZygmundKind::rv4: return "rv4";
        case ZygmundKind::rv5: return "rv5";
    }
    throw std::invalid_argument("unknown condition kind");
}

ConditionReport zygmund_condition(ZygmundKind kind, const ShapeFunction& phi1, const ShapeFunction& phi2,
                                  const ExponentField& p, const ExponentField& q, const ScalarField& omega,
                                  const Grid& grid, const Point& x, const RadialGrid& rg,
                                  const std::vector<double>& gammas) {
    const bool log_factor = kind == ZygmundKind::qhs1shk || kind == ZygmundKind::H1vk ||
                            kind == ZygmundKind::rv4 || kind == ZygmundKind::rv5;
    const bool sup_form = kind == ZygmundKind::qhs1sh || kind == ZygmundKind::qhs1shk;
    const bool gamma_form = kind == ZygmundKind::rv_prime || kind == ZygmundKind::rv4;
    const bool numerator_p = kind == ZygmundKind::qhs1sh || kind == ZygmundKind::qhs1shk ||
                             kind == ZygmundKind::H1v || kind == ZygmundKind::H1vk;
    const bool denominator_p = sup_form;

    ConditionReport report;
    report.numerator_exponent = numerator_p ? "p" : "q";
    report.denominator_exponent = denominator_p ? "p" : "q";

    // one shared pass over the ladder: weight norms at both exponents
    std::vector<double> nodes, num_norm, den_norm;
    nodes.reserve(rg.nodes.size());
    for (const double r : rg.nodes) {
        const Region tb = ball_region(grid, Ball{x, r});
        if (tb.empty()) {
            ++report.skipped_nodes;
            continue;
        }
        const double norm_p = luxemburg_norm(omega, p, grid, tb).value;
        const double norm_q = (&q == &p) ? norm_p : luxemburg_norm(omega, q, grid, tb).value;
        nodes.push_back(r);
        num_norm.push_back(numerator_p ? norm_p : norm_q);
        den_norm.push_back(denominator_p ? norm_p : norm_q);
    }
    const std::size_t n = nodes.size();
    if (n < 2) throw std::invalid_argument("too few usable radial nodes");

    // essential inf surrogate: running min from the right of φ1 ||ω||_num
    std::vector<double> essinf(n);
    double running = kInf;
    for (std::size_t i = n; i-- > 0;) {
        running = std::min(running, phi1(x, nodes[i]) * num_norm[i]);
        essinf[i] = running;
    }

    if (sup_form) {
        for (std::size_t j = 0; j < n; ++j) {
            double lhs = 0.0;
            for (std::size_t i = j + 1; i < n; ++i) {
                const double factor = log_factor ? 1.0 + std::log(nodes[i] / nodes[j]) : 1.0;
                lhs = std::max(lhs, factor * essinf[i] / den_norm[i]);
            }
            const double value = lhs / phi2(x, nodes[j]);
            report.profile.emplace_back(nodes[j], value);
            if (value > report.constant) {
                report.constant = value;
                report.argmax_t = nodes[j];
            }
        }
        return report;
    }

    std::vector<double> integrand(n);
    for (std::size_t i = 0; i < n; ++i) integrand[i] = essinf[i] / (den_norm[i] * nodes[i]);
    double beta = 0.0;
    const bool has_tail = rg.power_tail &&
        fit_tail_exponent(nodes[n - 2], integrand[n - 2], nodes[n - 1], integrand[n - 1], beta);

    const auto integral_from = [&](std::size_t j) {
        const double t = nodes[j];
        double integral = 0.0;
        for (std::size_t i = j; i + 1 < n; ++i) {
            const double fa = integrand[i] * (log_factor ? 1.0 + std::log(nodes[i] / t) : 1.0);
            const double fb = integrand[i + 1] * (log_factor ? 1.0 + std::log(nodes[i + 1] / t) : 1.0);
            integral += 0.5 * (nodes[i + 1] - nodes[i]) * (fa + fb);
        }
        if (has_tail) integral += power_tail(integrand[n - 1], nodes[n - 1], beta, log_factor, t);
        return integral;
    };

    if (gamma_form) {
        const std::vector<double> gamma_list = gammas.empty() ? std::vector<double>{0.1, 1.0, 10.0} : gammas;
        for (const double gamma : gamma_list) {
            if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
            // snap to the first usable node >= gamma
            std::size_t j = 0;
            while (j < n && nodes[j] < gamma) ++j;
            if (j >= n) j = n - 1;
            const double value = integral_from(j);
            report.profile.emplace_back(gamma, value);
            if (std::isinf(value)) report.divergent = true;
            if (value > report.constant) {
                report.constant = value;
                report.argmax_t = gamma;
            }
        }
        return report;
    }

    for (std::size_t j = 0; j < n; ++j) {
        const double value = integral_from(j) / phi2(x, nodes[j]);
        report.profile.emplace_back(nodes[j], value);
        if (std::isinf(value)) report.divergent = true;
        if (value > report.constant) {
            report.constant = value;
            report.argmax_t = nodes[j];
        }
    }
    return report;
}

} // namespace vxm
