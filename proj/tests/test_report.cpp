#include <doctest.h>

#include <fstream>
#include <sstream>

#include "calibrix/field_view.hpp"
#include "calibrix/ms_energy.hpp"
#include "calibrix/report.hpp"

using namespace calibrix;

namespace {

nlohmann::ordered_json scrub_timing(nlohmann::ordered_json j) {
    j.erase("timing");
    for (auto& [k, v] : j["conditions"].items()) v.erase("wall_time_s");
    return j;
}

nlohmann::ordered_json small_model_envelope(unsigned seed) {
    RunConfig cfg;
    cfg.command = "verify-model";
    cfg.kind = "opposite";
    cfg.x0 = 1.0;
    cfg.eps = 0.025;
    cfg.delta = "0.02";
    cfg.seed = seed;

    const ModelParams p = derive_model_params(1.0, 0.025, 0.02);
    VerifyOptions opt;
    opt.seed = seed;
    opt.identity_samples = 50;
    opt.bound_samples = 1000;
    opt.graph_samples = 50;
    opt.plane_points_d = 16;
    opt.axis_points_d = 5;
    opt.box_plane_points = 2;
    const VerificationReport rep = verify_field(make_view(ModelField::from(p)), opt);
    return make_envelope(cfg, to_json(p), rep);
}

}  // namespace

TEST_CASE("config files round-trip losslessly") {
    RunConfig cfg;
    cfg.command = "verify-general";
    cfg.kind = "shifted";
    cfg.x0 = 1.25;
    cfg.eps = 0.0123456789012345678;
    cfg.delta = "0.001";
    cfg.coeffs = {1.0, 0.3333333333333333, -2.0};
    cfg.lambda_override = 31.0;
    cfg.tol["slice_d"] = 1e-8;
    cfg.seed = 77;
    cfg.out = "report.json";
    cfg.format = "json";
    cfg.eps_list = {0.01, 0.5};
    cfg.grid_n = 128;
    cfg.zeta_scale = 0.75;
    cfg.figure = 3;
    cfg.at = 1.0000000000000002;

    const RunConfig back = load_config(save_config(cfg));
    CHECK(back == cfg);
    // a second round trip is byte-identical
    CHECK(save_config(back) == save_config(cfg));
}

TEST_CASE("tolerance overrides") {
    std::map<std::string, double> ov{{"slice_d", 1e-7}, {"jump_e", 1e-6}};
    const Tolerances t = apply_tolerances(ov);
    CHECK(t.slice_d == 1e-7);
    CHECK(t.jump_e == 1e-6);
    CHECK(t.div_flux == 1e-6);
    CHECK_THROWS_AS(apply_tolerances({{"bogus", 1.0}}), ConstraintViolation);
}

TEST_CASE("envelope carries the schema-required structure") {
    const nlohmann::ordered_json env = small_model_envelope(1);

    std::ifstream f(std::string(CALIBRIX_SOURCE_DIR) + "/schema/report.schema.json");
    REQUIRE(f.good());
    const nlohmann::json schema = nlohmann::json::parse(f);

    for (const auto& key : schema["required"])
        CHECK(env.contains(key.get<std::string>()));
    for (const auto& key : schema["properties"]["conditions"]["required"])
        CHECK(env["conditions"].contains(key.get<std::string>()));
    for (auto& [name, cond] : env["conditions"].items()) {
        for (const auto& key :
             schema["properties"]["conditions"]["additionalProperties"]["required"])
            CHECK(cond.contains(key.get<std::string>()));
    }
    CHECK(env["tool"]["name"] == "calibrix");
    CHECK(env["verdict"] == "CALIBRATION_VERIFIED");
}

TEST_CASE("reports are byte-identical modulo the timing block") {
    const auto a = scrub_timing(small_model_envelope(9));
    const auto b = scrub_timing(small_model_envelope(9));
    CHECK(a.dump(2) == b.dump(2));
    const auto c = scrub_timing(small_model_envelope(10));
    CHECK(a.dump(2) != c.dump(2));  // the seed is part of the report
}

TEST_CASE("golden report file stays stable") {
    const std::string path =
        std::string(CALIBRIX_SOURCE_DIR) + "/tests/golden/model_report.json";
    std::ifstream f(path);
    REQUIRE_MESSAGE(f.good(), "golden file missing: ", path);
    const nlohmann::ordered_json golden = nlohmann::ordered_json::parse(f);
    const auto current = scrub_timing(small_model_envelope(1));
    CHECK(current.dump(2) == golden.dump(2));
}

TEST_CASE("section data agrees with the classifier") {
    const ModelField field = ModelField::from(derive_model_params(1.0, 0.025, 0.02));
    const FigureData fig = figure_data(field, 1, 1.0);
    REQUIRE(!fig.rows.empty());
    for (std::size_t i = 0; i < fig.rows.size(); i += 37) {
        const auto& row = fig.rows[i];
        const double y = row[1], zlo = row[2], zhi = row[3];
        const Region inside = field.classify(1.0, y, 0.5 * (zlo + zhi));
        CHECK(static_cast<double>(inside) + 1.0 == row[0]);
        // just below the lower boundary is a different region
        CHECK(field.classify(1.0, y, zlo - 1e-9) != inside);
    }

    const FigureData arrows = figure_data(field, 2, 1.0);
    for (const auto& row : arrows.rows)
        CHECK(field.classify(row[0], row[1], 1.0) == Region::A1);

    CHECK_THROWS_AS(figure_data(field, 9, 1.0), ConstraintViolation);
}

TEST_CASE("figure rendering") {
    const ModelField field = ModelField::from(derive_model_params(1.0, 0.025, 0.02));
    const FigureData fig = figure_data(field, 4, 1.0);
    const std::string csv = render_csv(fig);
    CHECK(csv.rfind("theta,xi,eta\n", 0) == 0);
    const std::string svg = render_svg(fig, 4);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("<line") != std::string::npos);
}

TEST_CASE("sweep csv format") {
    const std::string csv = sweep_csv({{0.01, 0.0204, 0.0107, 0.0097}});
    CHECK(csv.rfind("eps,ms_w,ms_psi,margin\n", 0) == 0);
    CHECK(csv.find("0.0204") != std::string::npos);
}

TEST_CASE("command exit codes") {
    RunConfig bad;
    bad.command = "verify-model";
    bad.kind = "opposite";
    bad.x0 = 1.0;
    bad.eps = 0.2;  // violates the eps bound
    bad.delta = "0.01";
    bad.out = "/dev/null";
    CHECK(run_command(bad) == 2);

    RunConfig sweep;
    sweep.command = "counterexample";
    sweep.eps_list = {0.05};
    sweep.grid_n = 64;
    sweep.out = "/dev/null";
    CHECK(run_command(sweep) == 0);

    RunConfig unknown;
    unknown.command = "nope";
    CHECK(run_command(unknown) == 2);
}
