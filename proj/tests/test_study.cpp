#include <doctest.h>

#include <cmath>

#include "vxm/study.hpp"

using namespace vxm;

namespace {

Json small_bounded_cfg() {
    return Json{
        {"grid", {{"dim", 1}, {"h", 1.0 / 128.0}, {"extent", {{-4.0, 4.0}}}}},
        {"p", {{"kind", "constant"}, {"value", 2.0}}},
        {"alpha", 0.25},
        {"weight", {{"kind", "one"}}},
        {"operator", "riesz"},
        {"mode", "lebesgue"},
        {"functions", {{"count", 6}, {"seed", 99}}},
        {"balls", {{"r_min", 0.125}, {"r_max", 2.0}, {"center_count", 9}}},
        {"refine", 0},
        {"seed", 99},
    };
}

} // namespace

TEST_CASE("boundedness study produces finite ratios and a full report") {
    const StudyReport report = run_boundedness_study(small_bounded_cfg());
    CHECK(report.sup_ratio > 0.0);
    CHECK(std::isfinite(report.sup_ratio));
    CHECK(report.results.size() == 6);
    for (const Json& row : report.results) {
        CHECK(row.contains("source_norm"));
        CHECK(row.contains("target_norm"));
        CHECK(row.contains("ratio"));
    }
    CHECK(report.condition_constants.contains("apq"));
    CHECK(report.verdict == "ok");

    const Json j = report.to_json();
    for (const char* key :
         {"config_echo", "results", "sup_ratio", "fitted_C", "condition_constants", "stability", "runtime_s"})
        CHECK(j.contains(key));
    CHECK(j["stability"].contains("levels"));
    CHECK(j["stability"].contains("drift_pct"));

    const std::string csv = report.to_csv();
    CHECK(csv.find("source_norm") != std::string::npos);
    CHECK(csv.find("# sup_ratio=") != std::string::npos);
}

TEST_CASE("study reports are deterministic for a fixed seed") {
    Json cfg = small_bounded_cfg();
    Json a = run_boundedness_study(cfg).to_json();
    Json b = run_boundedness_study(cfg).to_json();
    a.erase("runtime_s");
    b.erase("runtime_s");
    CHECK(a.dump() == b.dump());
}

TEST_CASE("constant symbol nullifies the commutator study") {
    Json cfg = small_bounded_cfg();
    cfg["operator"] = "riesz_commutator";
    cfg["b"] = Json{{"kind", "constant"}, {"value", 3.0}};
    const StudyReport report = run_boundedness_study(cfg);
    CHECK(report.sup_ratio == 0.0);
    for (const Json& row : report.results) CHECK(row.at("target_norm").get<double>() == 0.0);
}

TEST_CASE("config errors are raised before compute") {
    Json cfg = small_bounded_cfg();
    cfg["p"] = Json{{"kind", "constant"}, {"value", 5.0}}; // p_plus >= n/alpha = 4
    CHECK_THROWS_AS(run_boundedness_study(cfg), ConfigError);

    Json bad_op = small_bounded_cfg();
    bad_op["operator"] = "identity";
    CHECK_THROWS_AS(run_boundedness_study(bad_op), ConfigError);
}

TEST_CASE("local estimate study fits a finite constant") {
    const Json cfg{
        {"grid", {{"dim", 1}, {"h", 1.0 / 128.0}, {"extent", {{-4.0, 4.0}}}}},
        {"p", {{"kind", "constant"}, {"value", 2.0}}},
        {"alpha", 0.25},
        {"weight", {{"kind", "one"}}},
        {"operator", "riesz"},
        {"functions", {{"count", 3}, {"seed", 5}}},
        {"centers", {0.0}},
        {"t_values", {0.25, 0.5, 1.0}},
        {"radial", {{"r_min", 0.0625}, {"r_max", 2.0}, {"per_decade", 32}}},
        {"refine", 0},
        {"seed", 5},
    };
    const StudyReport report = run_local_estimate_check(cfg);
    CHECK(report.fitted_C.is_number());
    CHECK(report.fitted_C.get<double>() > 0.0);
    CHECK(std::isfinite(report.fitted_C.get<double>()));
    CHECK(report.results.size() == 9);
}

TEST_CASE("oscillation necessity study") {
    Json cfg{
        {"grid", {{"dim", 1}, {"h", 1.0 / 128.0}, {"extent", {{-4.0, 4.0}}}}},
        {"p", {{"kind", "constant"}, {"value", 2.0}}},
        {"alpha", 0.25},
        {"weight", {{"kind", "one"}}},
        {"b", {{"kind", "sign"}}},
        {"balls", {{"r_min", 0.25}, {"r_max", 1.0}, {"centers", {0.0, 0.5, -0.5}}}},
        {"refine", 0},
        {"seed", 3},
    };
    const StudyReport report = run_bmo_necessity_test(cfg);
    CHECK(report.sup_ratio > 0.0);
    CHECK(std::isfinite(report.sup_ratio));

    cfg["b"] = Json{{"kind", "constant"}, {"value", 2.0}};
    const StudyReport flat = run_bmo_necessity_test(cfg);
    CHECK(flat.sup_ratio == 0.0);
    for (const Json& row : flat.results) CHECK(row.at("oscillation").get<double>() <= 1e-12);
}

TEST_CASE("enlarging the function family never decreases the sup ratio") {
    Json small = small_bounded_cfg();
    small["functions"] = Json{{"count", 3}, {"seed", 99}};
    Json large = small_bounded_cfg();
    large["functions"] = Json{{"count", 6}, {"seed", 99}};
    CHECK(run_boundedness_study(large).sup_ratio >= run_boundedness_study(small).sup_ratio - 1e-12);
}

TEST_CASE("vanishing study: flat source shape reports hypothesis unmet") {
    const Json cfg{
        {"grid", {{"dim", 1}, {"h", 1.0 / 256.0}, {"extent", {{-4.0, 4.0}}}}},
        {"p", {{"kind", "constant"}, {"value", 2.0}}},
        {"alpha", 0.25},
        {"weight", {{"kind", "one"}}},
        {"operator", "riesz"},
        {"phi1", {{"kind", "one"}}},
        {"phi2", {{"kind", "one"}}},
        {"functions", {{"count", 2}, {"seed", 7}, {"families", {"indicator"}}}},
        {"radial", {{"r_min", 0.05}, {"r_max", 2.0}, {"per_decade", 16}}},
        {"radii", {{"r_min", 0.03125}, {"r_max", 1.0}}},
        {"centers", {0.0, 0.5, -0.5}},
        {"seed", 7},
    };
    const StudyReport report = run_vanishing_study(cfg);
    CHECK(report.verdict == "hypothesis unmet");
}
