#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "calibrix/general_field.hpp"
#include "calibrix/model_field.hpp"
#include "calibrix/params.hpp"
#include "calibrix/verifier.hpp"

namespace calibrix {

inline constexpr const char* kToolVersion = "1.0.0";

/// Flat run configuration shared by the CLI, the config file format, and the
/// report echo. Unset optionals mean "derive automatically".
struct RunConfig {
    std::string command;  // verify-model | verify-general | counterexample | section
    std::string kind = "opposite";
    double x0 = 1.0;
    std::optional<double> eps;
    std::string delta = "auto";  // "auto" or a number
    std::vector<double> coeffs;
    std::optional<double> lambda_override;
    std::optional<double> mu_override;
    std::optional<double> a_override;
    std::map<std::string, double> tol;  // by tolerance name
    unsigned seed = 1;
    std::string out;             // output path; empty = stdout
    std::string format = "json"; // json | csv | svg (figures)
    std::vector<double> eps_list{0.01, 0.02, 0.05, 0.1, 0.2, 0.4, 0.8};
    int grid_n = 256;
    double zeta_scale = 1.0;
    int figure = 1;
    std::optional<double> at;

    bool operator==(const RunConfig&) const = default;
};

/// Flat key=value config format; round-trips losslessly (17 significant
/// digits on floating-point values).
std::string save_config(const RunConfig& cfg);
RunConfig load_config(const std::string& text);

/// Resolves the delta field ("auto" or literal) against a model kind.
double resolve_delta(const RunConfig& cfg);

nlohmann::ordered_json to_json(const ModelParams& p);
nlohmann::ordered_json to_json(const ShiftedParams& p);
nlohmann::ordered_json to_json(const GeneralParams& p);
nlohmann::ordered_json to_json(const VerificationReport& r);
nlohmann::ordered_json config_echo(const RunConfig& cfg);

/// Applies named tolerance overrides onto defaults.
Tolerances apply_tolerances(const std::map<std::string, double>& overrides);

/// Full report envelope; verdict is VERIFIED iff all six conditions pass.
nlohmann::ordered_json make_envelope(const RunConfig& cfg,
                                     nlohmann::ordered_json derived,
                                     const VerificationReport& rep);

// ------------------------------------------------------------- figures

struct FigureData {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// Plot-ready section data for the model constructions:
///   1: region bands in (y, z) at fixed x        (columns region,y,z_lo,z_hi)
///   2: tube field arrows in (x, y) at fixed z   (columns x,y,phi_x,phi_y)
///   3: flux-band boundaries in (y, z) at fixed x
///   4: tube boundary circle through (x, eps)    (columns theta,xi,eta)
FigureData figure_data(const ModelField& field, int figure, double at);

std::string render_csv(const FigureData& d);
std::string render_svg(const FigureData& d, int figure);

std::string sweep_csv(const std::vector<struct SweepRow>& rows);

// ------------------------------------------------------------- commands

struct RunOutcome {
    int exit_code = 0;
    std::string text;        // what goes to the output path / stdout
    std::string diagnostics; // human-oriented stderr lines
};

RunOutcome cmd_verify_model(const RunConfig& cfg);
RunOutcome cmd_verify_general(const RunConfig& cfg);
RunOutcome cmd_counterexample(const RunConfig& cfg);
RunOutcome cmd_section(const RunConfig& cfg);

/// Dispatch on cfg.command; writes cfg.out (or stdout when empty).
int run_command(const RunConfig& cfg);

}  // namespace calibrix
