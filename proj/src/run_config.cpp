// run_config.cpp — RunConfig validation and JSON mapping

#include "qbm/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "qbm/errors.hpp"

namespace qbm::cli {

using nlohmann::json;

namespace {

const char* kind_name(StateKind k) {
    switch (k) {
        case StateKind::vacuum: return "vacuum";
        case StateKind::coherent: return "coherent";
        case StateKind::squeezed: return "squeezed";
    }
    return "?";
}

StateKind parse_kind(const std::string& s) {
    if (s == "vacuum") return StateKind::vacuum;
    if (s == "coherent") return StateKind::coherent;
    if (s == "squeezed") return StateKind::squeezed;
    throw DomainError("unknown state kind '" + s + "' (expected vacuum|coherent|squeezed)");
}

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) throw DomainError(std::string(name) + " must be finite");
}

double get_number(const json& j, const std::string& key) {
    if (!j.is_number()) throw DomainError("config key '" + key + "' must be a number");
    return j.get<double>();
}

std::size_t get_count(const json& j, const std::string& key) {
    if (!j.is_number_integer() && !j.is_number_unsigned())
        throw DomainError("config key '" + key + "' must be a non-negative integer");
    const auto v = j.get<long long>();
    if (v < 0) throw DomainError("config key '" + key + "' must be a non-negative integer");
    return static_cast<std::size_t>(v);
}

std::string get_string(const json& j, const std::string& key) {
    if (!j.is_string()) throw DomainError("config key '" + key + "' must be a string");
    return j.get<std::string>();
}

}  // namespace

GaussianState InitialStateSpec::build() const {
    const std::complex<double> alpha{alpha_re, alpha_im};
    switch (kind) {
        case StateKind::vacuum: return make_vacuum();
        case StateKind::coherent: return make_coherent(alpha);
        case StateKind::squeezed: return make_squeezed(alpha, squeeze_from_sigma2(sigma2), phi);
    }
    return make_vacuum();
}

void RunConfig::validate() const {
    params.validate();
    require_finite(state.alpha_re, "alpha_re");
    require_finite(state.alpha_im, "alpha_im");
    require_finite(state.phi, "phi");
    if (state.kind == StateKind::squeezed && !(state.sigma2 > 0.0 && state.sigma2 <= 1.0))
        throw DomainError("sigma2 must lie in (0, 1]");
    if (!(tau_max > 0.0) || !std::isfinite(tau_max)) throw DomainError("tau_max must be finite and > 0");
    if (n_steps < 2) throw DomainError("steps must be >= 2");
    for (double t : taus)
        if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("every tau must be finite and >= 0");
    if (extents) {
        GridSpec{extents->x_min, extents->x_max, extents->y_min, extents->y_max, nx, ny}.validate();
    }
    if (!(grid_sigmas > 0.0) || !std::isfinite(grid_sigmas)) throw DomainError("grid_sigmas must be > 0");
    if (nx < 1 || ny < 1) throw DomainError("nx and ny must be >= 1");
    if (!(tol > 0.0) || !std::isfinite(tol)) throw DomainError("tol must be finite and > 0");
    if (classify_samples < 2) throw DomainError("classify_samples must be >= 2");
}

GridSpec RunConfig::grid_for(const GaussianState& s) const {
    if (extents) return GridSpec{extents->x_min, extents->x_max, extents->y_min, extents->y_max, nx, ny};
    GridSpec g = GridSpec::covering(s, grid_sigmas, nx);
    g.ny = ny;
    return g;
}

json to_json(const RunConfig& cfg) {
    json j;
    j["g"] = cfg.params.g;
    j["r"] = cfg.params.r;
    j["kt_over_wc"] = cfg.params.kt_over_wc;
    j["state"] = kind_name(cfg.state.kind);
    j["alpha_re"] = cfg.state.alpha_re;
    j["alpha_im"] = cfg.state.alpha_im;
    j["sigma2"] = cfg.state.sigma2;
    j["phi"] = cfg.state.phi;
    j["tau_max"] = cfg.tau_max;
    j["steps"] = cfg.n_steps;
    j["taus"] = format_tau_list(cfg.taus);
    if (cfg.extents) {
        j["x_min"] = cfg.extents->x_min;
        j["x_max"] = cfg.extents->x_max;
        j["y_min"] = cfg.extents->y_min;
        j["y_max"] = cfg.extents->y_max;
    }
    j["grid_sigmas"] = cfg.grid_sigmas;
    j["nx"] = cfg.nx;
    j["ny"] = cfg.ny;
    j["out"] = cfg.out;
    j["format"] = cfg.format == OutputFormat::csv ? "csv" : "json";
    j["tol"] = cfg.tol;
    j["frame"] = cfg.frame == Frame::rotating ? "rotating" : "lab";
    j["dynamics"] = cfg.dynamics == Dynamics::markovian ? "markovian" : "non_markovian";
    j["classify_samples"] = cfg.classify_samples;
    return j;
}

RunConfig from_json(const json& j, RunConfig cfg) {
    if (!j.is_object()) throw DomainError("config must be a JSON object");
    if (j.contains("kt_over_wc") && j.contains("wc_over_2pikt"))
        throw DomainError("config: kt_over_wc and wc_over_2pikt are mutually exclusive");

    const std::set<std::string> extent_keys{"x_min", "x_max", "y_min", "y_max"};
    std::size_t extent_count = 0;
    GridExtents ext = cfg.extents.value_or(GridExtents{0.0, 0.0, 0.0, 0.0});

    for (const auto& [key, value] : j.items()) {
        if (value.is_object() || value.is_array())
            throw DomainError("config key '" + key + "' must be a scalar");
        if (key == "g") cfg.params.g = get_number(value, key);
        else if (key == "r") cfg.params.r = get_number(value, key);
        else if (key == "kt_over_wc") cfg.params.kt_over_wc = get_number(value, key);
        else if (key == "wc_over_2pikt")
            cfg.params.kt_over_wc = PhysicalParams::kt_from_wc_over_2pikt(get_number(value, key));
        else if (key == "state") cfg.state.kind = parse_kind(get_string(value, key));
        else if (key == "alpha_re") cfg.state.alpha_re = get_number(value, key);
        else if (key == "alpha_im") cfg.state.alpha_im = get_number(value, key);
        else if (key == "sigma2") cfg.state.sigma2 = get_number(value, key);
        else if (key == "s") cfg.state.sigma2 = std::exp(-2.0 * get_number(value, key));
        else if (key == "phi") cfg.state.phi = get_number(value, key);
        else if (key == "tau_max") cfg.tau_max = get_number(value, key);
        else if (key == "steps") cfg.n_steps = get_count(value, key);
        else if (key == "taus") cfg.taus = parse_tau_list(get_string(value, key));
        else if (extent_keys.contains(key)) {
            const double v = get_number(value, key);
            if (key == "x_min") ext.x_min = v;
            else if (key == "x_max") ext.x_max = v;
            else if (key == "y_min") ext.y_min = v;
            else ext.y_max = v;
            ++extent_count;
        }
        else if (key == "grid_sigmas") cfg.grid_sigmas = get_number(value, key);
        else if (key == "nx") cfg.nx = get_count(value, key);
        else if (key == "ny") cfg.ny = get_count(value, key);
        else if (key == "out") cfg.out = get_string(value, key);
        else if (key == "format") {
            const auto f = get_string(value, key);
            if (f == "csv") cfg.format = OutputFormat::csv;
            else if (f == "json") cfg.format = OutputFormat::json;
            else throw DomainError("format must be csv or json");
        }
        else if (key == "tol") cfg.tol = get_number(value, key);
        else if (key == "frame") {
            const auto f = get_string(value, key);
            if (f == "rotating") cfg.frame = Frame::rotating;
            else if (f == "lab") cfg.frame = Frame::lab;
            else throw DomainError("frame must be rotating or lab");
        }
        else if (key == "dynamics") {
            const auto d = get_string(value, key);
            if (d == "non_markovian") cfg.dynamics = Dynamics::non_markovian;
            else if (d == "markovian") cfg.dynamics = Dynamics::markovian;
            else throw DomainError("dynamics must be non_markovian or markovian");
        }
        else if (key == "classify_samples") cfg.classify_samples = get_count(value, key);
        else throw DomainError("unknown config key '" + key + "'");
    }
    if (extent_count != 0) {
        if (extent_count != 4 && !cfg.extents)
            throw DomainError("config: x_min, x_max, y_min and y_max must be given together");
        cfg.extents = ext;
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw DomainError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    return from_json(j, std::move(base));
}

std::vector<double> parse_tau_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        const auto last = item.find_last_not_of(" \t");
        const std::string token = item.substr(first, last - first + 1);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
        if (ec != std::errc{} || ptr != token.data() + token.size())
            throw DomainError("cannot parse tau value '" + token + "'");
        out.push_back(v);
    }
    return out;
}

std::string format_tau_list(const std::vector<double>& taus) {
    std::string out;
    for (std::size_t i = 0; i < taus.size(); ++i) {
        if (i) out += ',';
        out += format_double(taus[i]);
    }
    return out;
}

std::string format_double(double v) {
    if (v == 0.0) return "0";  // drop the sign of negative zero
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace qbm::cli
