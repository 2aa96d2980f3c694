#include "calibrix/report.hpp"

#include <cstdio>
#include <sstream>

#include "calibrix/ms_energy.hpp"

namespace calibrix {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string join17(const std::vector<double>& vs) {
    std::string s;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) s += ",";
        s += fmt17(vs[i]);
    }
    return s;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

}  // namespace

std::string save_config(const RunConfig& c) {
    std::ostringstream os;
    os << "command=" << c.command << "\n";
    os << "kind=" << c.kind << "\n";
    os << "x0=" << fmt17(c.x0) << "\n";
    if (c.eps) os << "eps=" << fmt17(*c.eps) << "\n";
    os << "delta=" << c.delta << "\n";
    if (!c.coeffs.empty()) os << "coeffs=" << join17(c.coeffs) << "\n";
    if (c.lambda_override) os << "lambda=" << fmt17(*c.lambda_override) << "\n";
    if (c.mu_override) os << "mu=" << fmt17(*c.mu_override) << "\n";
    if (c.a_override) os << "a=" << fmt17(*c.a_override) << "\n";
    for (const auto& [k, v] : c.tol) os << "tol." << k << "=" << fmt17(v) << "\n";
    os << "seed=" << c.seed << "\n";
    if (!c.out.empty()) os << "out=" << c.out << "\n";
    os << "format=" << c.format << "\n";
    os << "eps_list=" << join17(c.eps_list) << "\n";
    os << "grid_n=" << c.grid_n << "\n";
    os << "zeta_scale=" << fmt17(c.zeta_scale) << "\n";
    os << "figure=" << c.figure << "\n";
    if (c.at) os << "at=" << fmt17(*c.at) << "\n";
    return os.str();
}

RunConfig load_config(const std::string& text) {
    RunConfig c;
    c.eps_list.clear();
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = line.substr(0, eq), val = line.substr(eq + 1);
        if (key == "command") c.command = val;
        else if (key == "kind") c.kind = val;
        else if (key == "x0") c.x0 = std::stod(val);
        else if (key == "eps") c.eps = std::stod(val);
        else if (key == "delta") c.delta = val;
        else if (key == "coeffs") c.coeffs = parse_list(val);
        else if (key == "lambda") c.lambda_override = std::stod(val);
        else if (key == "mu") c.mu_override = std::stod(val);
        else if (key == "a") c.a_override = std::stod(val);
        else if (key.rfind("tol.", 0) == 0) c.tol[key.substr(4)] = std::stod(val);
        else if (key == "seed") c.seed = static_cast<unsigned>(std::stoul(val));
        else if (key == "out") c.out = val;
        else if (key == "format") c.format = val;
        else if (key == "eps_list") c.eps_list = parse_list(val);
        else if (key == "grid_n") c.grid_n = std::stoi(val);
        else if (key == "zeta_scale") c.zeta_scale = std::stod(val);
        else if (key == "figure") c.figure = std::stoi(val);
        else if (key == "at") c.at = std::stod(val);
    }
    if (c.eps_list.empty()) c.eps_list = RunConfig{}.eps_list;
    return c;
}

double resolve_delta(const RunConfig& cfg) {
    const double eps = cfg.eps.value_or(cfg.kind == "shifted" ? 0.02 : 0.025);
    if (cfg.delta == "auto")
        return cfg.kind == "shifted" ? auto_delta_shifted(cfg.x0, eps)
                                     : auto_delta_model(cfg.x0, eps);
    return std::stod(cfg.delta);
}

namespace {

nlohmann::ordered_json margins_json(const std::map<std::string, double>& m) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, v] : m) j[k] = v;
    return j;
}

}  // namespace

nlohmann::ordered_json to_json(const ModelParams& p) {
    return {{"x0", p.x0},       {"eps", p.eps},     {"delta", p.delta},
            {"h", p.h},         {"lambda", p.lambda}, {"kappa", p.kappa},
            {"b", p.b},         {"constraint_margins", margins_json(p.constraint_margins)}};
}

nlohmann::ordered_json to_json(const ShiftedParams& p) {
    return {{"x0", p.x0},       {"eps", p.eps},     {"delta", p.delta},
            {"h", p.h},         {"lambda", p.lambda}, {"kappa", p.kappa},
            {"b", p.b},         {"constraint_margins", margins_json(p.constraint_margins)}};
}

nlohmann::ordered_json to_json(const GeneralParams& p) {
    return {{"u0", p.u0},   {"eps", p.eps}, {"delta", p.delta}, {"h", p.h},
            {"lambda", p.lambda}, {"a", p.a}, {"mu", p.mu},     {"sign", p.sign}};
}

nlohmann::ordered_json to_json(const VerificationReport& r) {
    nlohmann::ordered_json conditions = nlohmann::ordered_json::object();
    for (const auto& [name, c] : r.conditions) {
        nlohmann::ordered_json e = {
            {"pass", c.pass},
            {"worst_residual", c.worst_residual},
            {"worst_point", {c.worst_point.x, c.worst_point.y, c.worst_point.z}},
            {"samples", c.samples},
            {"tolerance", c.tolerance},
            {"wall_time_s", c.wall_time_s}};
        if (!c.extras.empty()) {
            nlohmann::ordered_json ex = nlohmann::ordered_json::object();
            for (const auto& [k, v] : c.extras) ex[k] = v;
            e["extras"] = ex;
        }
        conditions[name] = e;
    }
    return {{"seed", r.seed},
            {"conditions", conditions},
            {"verdict", r.verdict()},
            {"total_wall_s", r.total_wall_s}};
}

nlohmann::ordered_json config_echo(const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["command"] = cfg.command;
    j["kind"] = cfg.kind;
    j["x0"] = cfg.x0;
    if (cfg.eps) j["eps"] = *cfg.eps;
    j["delta"] = cfg.delta;
    if (!cfg.coeffs.empty()) j["coeffs"] = cfg.coeffs;
    if (cfg.lambda_override) j["lambda"] = *cfg.lambda_override;
    if (cfg.mu_override) j["mu"] = *cfg.mu_override;
    if (cfg.a_override) j["a"] = *cfg.a_override;
    if (!cfg.tol.empty()) {
        nlohmann::ordered_json t = nlohmann::ordered_json::object();
        for (const auto& [k, v] : cfg.tol) t[k] = v;
        j["tol"] = t;
    }
    j["seed"] = cfg.seed;
    j["format"] = cfg.format;
    return j;
}

Tolerances apply_tolerances(const std::map<std::string, double>& overrides) {
    Tolerances t;
    for (const auto& [k, v] : overrides) {
        if (k == "div_flux") t.div_flux = v;
        else if (k == "iface_flux") t.iface_flux = v;
        else if (k == "iface_order") t.iface_order = v;
        else if (k == "bound_b") t.bound_b = v;
        else if (k == "graph_c") t.graph_c = v;
        else if (k == "slice_d") t.slice_d = v;
        else if (k == "jump_e") t.jump_e = v;
        else throw ConstraintViolation("unknown tolerance name: " + k);
    }
    return t;
}

nlohmann::ordered_json make_envelope(const RunConfig& cfg,
                                     nlohmann::ordered_json derived,
                                     const VerificationReport& rep) {
    nlohmann::ordered_json j;
    j["tool"] = {{"name", "calibrix"}, {"version", kToolVersion}};
    j["config"] = config_echo(cfg);
    j["derived_params"] = std::move(derived);
    nlohmann::ordered_json v = to_json(rep);
    j["seed"] = v["seed"];
    j["conditions"] = v["conditions"];
    j["verdict"] = v["verdict"];
    j["timing"] = {{"total_s", rep.total_wall_s}};
    return j;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string s = "eps,ms_w,ms_psi,margin\n";
    for (const auto& r : rows) {
        s += fmt17(r.eps);
        s += ",";
        s += fmt17(r.ms_w);
        s += ",";
        s += fmt17(r.ms_psi);
        s += ",";
        s += fmt17(r.margin);
        s += "\n";
    }
    return s;
}

}  // namespace calibrix
