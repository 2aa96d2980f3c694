#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "calibrix/report.hpp"

namespace {

using calibrix::RunConfig;

// Tolerance overrides arrive as --tol.<name> flags.
void add_tolerance_flags(CLI::App* app, std::map<std::string, double>& tol) {
    for (const char* name : {"div_flux", "iface_flux", "iface_order", "bound_b",
                             "graph_c", "slice_d", "jump_e"}) {
        app->add_option_function<double>(
            std::string("--tol.") + name,
            [&tol, name = std::string(name)](double v) { tol[name] = v; },
            "tolerance override");
    }
}

void add_common(CLI::App* app, RunConfig& cfg, std::string& config_path) {
    app->add_option("--config", config_path, "flat key=value config file");
    app->add_option("--seed", cfg.seed, "sampling seed");
    app->add_option("--out", cfg.out, "output path (default stdout)");
    app->add_option("--format", cfg.format, "json|csv|svg");
    add_tolerance_flags(app, cfg.tol);
}

void merge_config_file(const std::string& path, RunConfig& cfg,
                       const RunConfig& defaults, const RunConfig& parsed) {
    // File values apply only where the CLI left the default in place.
    std::ifstream f(path);
    if (!f) throw calibrix::ConstraintViolation("cannot read config file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    RunConfig file_cfg = calibrix::load_config(ss.str());
    const std::string cmd = cfg.command;
    cfg = file_cfg;
    cfg.command = cmd;

    if (parsed.kind != defaults.kind) cfg.kind = parsed.kind;
    if (parsed.x0 != defaults.x0) cfg.x0 = parsed.x0;
    if (parsed.eps) cfg.eps = parsed.eps;
    if (parsed.delta != defaults.delta) cfg.delta = parsed.delta;
    if (!parsed.coeffs.empty()) cfg.coeffs = parsed.coeffs;
    if (parsed.lambda_override) cfg.lambda_override = parsed.lambda_override;
    if (parsed.mu_override) cfg.mu_override = parsed.mu_override;
    if (parsed.a_override) cfg.a_override = parsed.a_override;
    for (const auto& [k, v] : parsed.tol) cfg.tol[k] = v;
    if (parsed.seed != defaults.seed) cfg.seed = parsed.seed;
    if (!parsed.out.empty()) cfg.out = parsed.out;
    if (parsed.format != defaults.format) cfg.format = parsed.format;
    if (parsed.eps_list != defaults.eps_list) cfg.eps_list = parsed.eps_list;
    if (parsed.grid_n != defaults.grid_n) cfg.grid_n = parsed.grid_n;
    if (parsed.zeta_scale != defaults.zeta_scale) cfg.zeta_scale = parsed.zeta_scale;
    if (parsed.figure != defaults.figure) cfg.figure = parsed.figure;
    if (parsed.at) cfg.at = parsed.at;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"calibrix: explicit calibration fields for piecewise-harmonic "
                 "free-discontinuity minimizers, verified numerically"};
    app.require_subcommand(1);

    RunConfig cfg;
    const RunConfig defaults;
    std::string config_path;

    auto* verify = app.add_subcommand("verify", "verify a calibration field");
    verify->require_subcommand(1);

    auto* model = verify->add_subcommand("model", "piecewise-linear model candidates");
    model->add_option("--kind", cfg.kind, "opposite|shifted");
    model->add_option("--x0", cfg.x0, "expansion point abscissa");
    model->add_option_function<double>(
        "--eps", [&](double v) { cfg.eps = v; }, "tube scale");
    model->add_option("--delta", cfg.delta, "rectangle half-height or 'auto'");
    add_common(model, cfg, config_path);
    model->callback([&] { cfg.command = "verify-model"; });

    auto* general = verify->add_subcommand("general", "harmonic-input candidates");
    general->add_option("--kind", cfg.kind, "opposite|shifted");
    general->add_option_function<std::string>(
        "--coeffs",
        [&](std::string s) {
            cfg.coeffs.clear();
            std::stringstream ss(s);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) cfg.coeffs.push_back(std::stod(item));
        },
        "comma-separated a0,...,aN of u = sum a_n Re((x+iy)^n)");
    general->add_option_function<double>(
        "--eps", [&](double v) { cfg.eps = v; }, "tube scale override");
    general->add_option("--delta", cfg.delta, "chart half-width or 'auto'");
    general->add_option_function<double>(
        "--lambda", [&](double v) { cfg.lambda_override = v; }, "band reciprocal scale");
    general->add_option_function<double>(
        "--mu", [&](double v) { cfg.mu_override = v; }, "vertical band flux");
    general->add_option_function<double>(
        "--a", [&](double v) { cfg.a_override = v; }, "characteristic-circle center");
    add_common(general, cfg, config_path);
    general->callback([&] { cfg.command = "verify-general"; });

    auto* counter = app.add_subcommand("counterexample",
                                       "energy comparison at the origin");
    counter->add_option_function<std::string>(
        "--eps-list",
        [&](std::string s) {
            cfg.eps_list.clear();
            std::stringstream ss(s);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) cfg.eps_list.push_back(std::stod(item));
        },
        "comma-separated scales");
    counter->add_option("--n", cfg.grid_n, "grid resolution");
    counter->add_option("--zeta-scale", cfg.zeta_scale, "competitor band height scale");
    add_common(counter, cfg, config_path);
    counter->callback([&] { cfg.command = "counterexample"; });

    auto* section = app.add_subcommand("section", "figure data export");
    section->add_option("--figure", cfg.figure, "1..4")->check(CLI::Range(1, 4));
    section->add_option("--kind", cfg.kind, "opposite|shifted");
    section->add_option("--x0", cfg.x0, "expansion point abscissa");
    section->add_option_function<double>(
        "--eps", [&](double v) { cfg.eps = v; }, "tube scale");
    section->add_option("--delta", cfg.delta, "half-height or 'auto'");
    section->add_option_function<double>(
        "--at", [&](double v) { cfg.at = v; }, "section coordinate");
    add_common(section, cfg, config_path);
    section->callback([&] { cfg.command = "section"; });

    try {
        app.parse(argc, argv);
        if (!config_path.empty()) {
            RunConfig parsed = cfg;
            merge_config_file(config_path, cfg, defaults, parsed);
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const calibrix::ConstraintViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return calibrix::run_command(cfg);
}
