#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "vxm/lebesgue.hpp"
#include "vxm/operators.hpp"
#include "vxm/parallel.hpp"
#include "vxm/specs.hpp"
#include "vxm/study.hpp"

namespace {

using vxm::Json;

Json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw vxm::ConfigError("cannot open config: " + path);
    Json cfg;
    in >> cfg;
    return cfg;
}

void emit(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw vxm::ConfigError("cannot open output path: " + out_path);
    out << payload << "\n";
}

vxm::RadialFunction parse_radial_function(const Json& spec) {
    const std::string kind = spec.at("kind").get<std::string>();
    if (kind == "constant") {
        const double v = spec.at("value").get<double>();
        return [v](double) { return v; };
    }
    if (kind == "power") {
        const double e = spec.at("exponent").get<double>();
        return [e](double s) { return std::pow(s, e); };
    }
    if (kind == "power_capped") {
        const double e = spec.at("exponent").get<double>();
        const double cap = spec.at("cap").get<double>();
        return [e, cap](double s) { return std::min(std::pow(s, e), cap); };
    }
    throw vxm::ConfigError("unknown radial function kind: " + kind);
}

Json condition_report_json(const vxm::ConditionReport& report) {
    Json j;
    j["constant"] = std::isinf(report.constant) ? Json("inf") : Json(report.constant);
    j["divergent"] = report.divergent;
    j["argmax_t"] = report.argmax_t;
    j["skipped_nodes"] = report.skipped_nodes;
    if (!report.numerator_exponent.empty()) {
        j["numerator_exponent"] = report.numerator_exponent;
        j["denominator_exponent"] = report.denominator_exponent;
    }
    Json profile = Json::array();
    for (const auto& [t, v] : report.profile)
        profile.push_back(Json{{"t", t}, {"value", std::isinf(v) ? Json("inf") : Json(v)}});
    j["profile"] = profile;
    return j;
}

int run_norm(const Json& cfg, const std::string& out) {
    const vxm::Grid grid = vxm::parse_grid(cfg.at("grid"));
    const vxm::ExponentField p = vxm::parse_exponent(cfg.at("p"), grid);
    vxm::TestFunction tf;
    const Json& fspec = cfg.at("f");
    tf.family = fspec.at("kind").get<std::string>();
    if (fspec.contains("center")) tf.center.x = fspec.at("center").get<double>();
    if (fspec.contains("width")) tf.width = fspec.at("width").get<double>();
    if (fspec.contains("amplitude")) tf.amplitude = fspec.at("amplitude").get<double>();
    if (fspec.contains("amplitude2")) tf.amplitude2 = fspec.at("amplitude2").get<double>();
    if (fspec.contains("exponent")) tf.exponent = fspec.at("exponent").get<double>();
    const vxm::ScalarField f = tf.sample_on(grid);

    vxm::NormResult result;
    if (cfg.contains("weight")) {
        const vxm::ScalarField omega = vxm::parse_weight(cfg.at("weight"), grid);
        result = vxm::luxemburg_norm(f, p, grid, &omega);
    } else {
        result = vxm::luxemburg_norm(f, p, grid);
    }
    emit(Json{{"value", result.value},
              {"modular_at_value", result.modular_at_value},
              {"bisection_iterations", result.bisection_iterations}}
             .dump(2),
         out);
    return 0;
}

int run_operator(const Json& cfg, const std::string& out) {
    const vxm::Grid grid = vxm::parse_grid(cfg.at("grid"));
    const std::string name = cfg.at("operator").get<std::string>();
    vxm::TestFunction tf;
    const Json& fspec = cfg.at("f");
    tf.family = fspec.at("kind").get<std::string>();
    if (fspec.contains("center")) tf.center.x = fspec.at("center").get<double>();
    if (fspec.contains("width")) tf.width = fspec.at("width").get<double>();
    if (fspec.contains("amplitude")) tf.amplitude = fspec.at("amplitude").get<double>();
    const vxm::ScalarField f = tf.sample_on(grid);
    const double alpha = cfg.contains("alpha") ? cfg.at("alpha").get<double>() : 0.0;

    vxm::BallFamily balls;
    if (cfg.contains("balls")) balls = vxm::parse_balls(cfg.at("balls"), grid);
    vxm::ScalarField b;
    if (cfg.contains("b")) b = vxm::parse_symbol(cfg.at("b"), grid);

    vxm::OperatorOutput result;
    if (name == "maximal")
        result = vxm::frac_maximal(f, 0.0, grid, balls);
    else if (name == "frac_maximal")
        result = vxm::frac_maximal(f, alpha, grid, balls);
    else if (name == "riesz")
        result = vxm::riesz_potential(f, alpha, grid);
    else if (name == "maximal_commutator")
        result = vxm::maximal_commutator(b, f, grid, balls);
    else if (name == "riesz_commutator")
        result = vxm::riesz_commutator(b, f, alpha, grid);
    else if (name == "maximal_op_commutator")
        result = vxm::maximal_op_commutator(b, f, grid, balls);
    else
        throw vxm::ConfigError("unknown operator: " + name);

    Json j;
    j["operator"] = name;
    double sup = 0.0;
    for (const std::int64_t i : grid.member_cells()) sup = std::max(sup, std::abs(result.values[i]));
    j["sup_abs"] = sup;
    if (cfg.contains("eval_points")) {
        Json values = Json::array();
        for (const auto& pt : cfg.at("eval_points")) {
            vxm::Point x;
            x.x = pt.is_number() ? pt.get<double>() : pt.at(0).get<double>();
            if (!pt.is_number() && pt.size() > 1) x.y = pt.at(1).get<double>();
            const std::int64_t i = grid.cell_at(x);
            if (i < 0) throw vxm::ConfigError("eval point outside extent");
            values.push_back(Json{{"x", x.x}, {"value", result.values[i]}});
        }
        j["values"] = values;
    }
    emit(j.dump(2), out);
    return 0;
}

int run_weights(const Json& cfg, const std::string& out) {
    const vxm::Grid grid = vxm::parse_grid(cfg.at("grid"));
    const vxm::ExponentField p = vxm::parse_exponent(cfg.at("p"), grid);
    const vxm::ExponentField q = cfg.contains("q") ? vxm::parse_exponent(cfg.at("q"), grid) : p;
    const vxm::ScalarField omega = vxm::parse_weight(cfg.at("weight"), grid);
    const vxm::BallFamily balls = vxm::parse_balls(cfg.at("balls"), grid);
    const vxm::WeightClassReport report = vxm::apq_constant(omega, p, q, grid, balls);
    Json profile = Json::array();
    for (const auto& [r, v] : report.radius_profile) profile.push_back(Json{{"r", r}, {"sup", v}});
    emit(Json{{"constant", report.constant},
              {"argmax", Json{{"x", report.argmax.center.x}, {"r", report.argmax.radius}}},
              {"skipped_balls", report.skipped_balls},
              {"radius_profile", profile}}
             .dump(2),
         out);
    return 0;
}

int run_bmo(const Json& cfg, const std::string& out) {
    const vxm::Grid grid = vxm::parse_grid(cfg.at("grid"));
    const vxm::ExponentField p = vxm::parse_exponent(cfg.at("p"), grid);
    const vxm::ScalarField omega = cfg.contains("weight")
                                       ? vxm::parse_weight(cfg.at("weight"), grid)
                                       : vxm::sample(grid, [](vxm::Point) { return 1.0; });
    const vxm::ScalarField b = vxm::parse_symbol(cfg.at("b"), grid);
    const vxm::BallFamily balls = vxm::parse_balls(cfg.at("balls"), grid);
    const vxm::BmoReport report = vxm::bmo_norms(b, p, omega, grid, balls);
    emit(Json{{"bmo_norm", report.bmo_norm}, {"bmo_pw_norm", report.bmo_pw_norm}, {"ratio", report.ratio}}.dump(2),
         out);
    return 0;
}

int run_condition(const Json& cfg, const std::string& out) {
    const std::string kind = cfg.at("kind").get<std::string>();
    const vxm::RadialGrid rg = vxm::parse_radial(cfg.at("radial"));

    if (kind == "hardy_B" || kind == "hardy_B_log") {
        const auto v1 = parse_radial_function(cfg.at("v1"));
        const auto v2 = parse_radial_function(cfg.at("v2"));
        const auto w = parse_radial_function(cfg.at("w"));
        const vxm::ConditionReport report = vxm::hardy_condition_constant(v1, v2, w, kind == "hardy_B_log", rg);
        emit(condition_report_json(report).dump(2), out);
        return 0;
    }
    if (kind == "supremal") {
        const auto u = parse_radial_function(cfg.at("u"));
        const auto v1 = parse_radial_function(cfg.at("v1"));
        const auto v2 = parse_radial_function(cfg.at("v2"));
        const vxm::ConditionReport report = vxm::supremal_condition_constant(u, v1, v2, rg);
        emit(condition_report_json(report).dump(2), out);
        return 0;
    }

    const vxm::ZygmundKind zkind = vxm::zygmund_kind_from_string(kind);
    const vxm::Grid grid = vxm::parse_grid(cfg.at("grid"));
    const vxm::ExponentField p = vxm::parse_exponent(cfg.at("p"), grid);
    const vxm::ExponentField q = cfg.contains("q") ? vxm::parse_exponent(cfg.at("q"), grid) : p;
    const vxm::ScalarField omega = vxm::parse_weight(cfg.at("weight"), grid);
    const vxm::ShapeFunction phi1 = vxm::parse_shape(cfg.at("phi1"), p, grid);
    const vxm::ShapeFunction phi2 = vxm::parse_shape(cfg.at("phi2"), q, grid);
    vxm::Point x;
    if (cfg.contains("x")) x.x = cfg.at("x").get<double>();
    std::vector<double> gammas;
    if (cfg.contains("gammas"))
        for (const auto& g : cfg.at("gammas")) gammas.push_back(g.get<double>());
    const vxm::ConditionReport report =
        vxm::zygmund_condition(zkind, phi1, phi2, p, q, omega, grid, x, rg, gammas);
    emit(condition_report_json(report).dump(2), out);
    return 0;
}

int run_study(const std::function<vxm::StudyReport(const Json&)>& study, const Json& cfg,
              const std::string& out, const std::string& format) {
    const vxm::StudyReport report = study(cfg);
    emit(format == "csv" ? report.to_csv() : report.to_json().dump(2), out);
    if (report.assertion_failed()) return 3;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"variable-exponent Morrey/Lebesgue norm and operator toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_path, format = "json";
    int refine = -1, threads = 0;
    long long seed = -1;
    app.add_option("--config", config_path, "structured JSON config")->required();
    app.add_option("--out", out_path, "report output path (default stdout)");
    app.add_option("--format", format, "report format: json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--refine", refine, "refinement levels override");
    app.add_option("--seed", seed, "seed override");
    app.add_option("--threads", threads, "worker threads (0 = hardware)");

    const std::vector<std::pair<std::string, std::string>> subcommands = {
        {"norm", "Luxemburg norm of a configured function"},
        {"operator", "apply a grid operator and report values"},
        {"weights", "weight-class constant over a ball family"},
        {"bmo", "oscillation norms of a symbol"},
        {"condition", "integral/sup condition constants"},
        {"study-bounded", "operator boundedness study"},
        {"study-local", "local estimate check"},
        {"study-bmo-necessity", "commutator oscillation necessity test"},
        {"study-vanishing", "vanishing preservation study"},
    };
    for (const auto& [name, desc] : subcommands) app.add_subcommand(name, desc)->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        vxm::set_default_threads(threads);
        Json cfg = load_config(config_path);
        if (refine >= 0) cfg["refine"] = refine;
        if (seed >= 0) cfg["seed"] = seed;

        const std::string sub = app.get_subcommands().front()->get_name();
        if (sub == "norm") return run_norm(cfg, out_path);
        if (sub == "operator") return run_operator(cfg, out_path);
        if (sub == "weights") return run_weights(cfg, out_path);
        if (sub == "bmo") return run_bmo(cfg, out_path);
        if (sub == "condition") return run_condition(cfg, out_path);
        if (sub == "study-bounded") return run_study(vxm::run_boundedness_study, cfg, out_path, format);
        if (sub == "study-local") return run_study(vxm::run_local_estimate_check, cfg, out_path, format);
        if (sub == "study-bmo-necessity") return run_study(vxm::run_bmo_necessity_test, cfg, out_path, format);
        if (sub == "study-vanishing") return run_study(vxm::run_vanishing_study, cfg, out_path, format);
        std::cerr << "unknown subcommand\n";
        return 1;
    } catch (const vxm::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 2;
    } catch (const vxm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 2;
    }
}
