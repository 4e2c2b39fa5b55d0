// commands.cpp — coeffs / moments / wigner / classify

#include "qbm/commands.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <utility>

#include "qbm/errors.hpp"

namespace qbm::cli {

using nlohmann::json;

namespace {

constexpr const char* kVersion = "qbm 1.0.0";

std::vector<double> uniform_grid(double tau_max, std::size_t n) {
    std::vector<double> out(n);
    const double step = tau_max / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) out[i] = i + 1 == n ? tau_max : step * static_cast<double>(i);
    return out;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    return os;
}

void finish(std::ofstream& os, const std::string& path) {
    os.flush();
    if (!os) throw IoError("write to '" + path + "' failed");
}

// Writes `body` to cfg.out, or to `fallback` when no path is configured.
template <typename Body>
std::vector<std::string> emit(const std::string& path, std::ostream& fallback, Body&& body) {
    if (path.empty()) {
        body(fallback);
        return {};
    }
    auto os = open_out(path);
    body(os);
    finish(os, path);
    return {path};
}

void csv_row(std::ostream& os, std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first) os << ',';
        os << format_double(v);
        first = false;
    }
    os << '\n';
}

json intervals_json(const std::vector<Interval>& iv) {
    json arr = json::array();
    for (const auto& [a, b] : iv) arr.push_back({a, b});
    return arr;
}

const char* frame_name(Frame f) { return f == Frame::rotating ? "rotating" : "lab"; }

}  // namespace

std::vector<std::string> cmd_coeffs(const RunConfig& cfg, std::ostream& fallback) {
    cfg.validate();
    const auto samples = sample_coefficients(cfg.params, uniform_grid(cfg.tau_max, cfg.n_steps), cfg.tol);

    return emit(cfg.out, fallback, [&](std::ostream& os) {
        if (cfg.format == OutputFormat::csv) {
            os << "tau,delta,gamma,big_gamma,delta_gamma\n";
            for (const auto& s : samples) csv_row(os, {s.tau, s.delta, s.gamma, s.big_gamma, s.delta_gamma});
        } else {
            json rows = json::array();
            for (const auto& s : samples) rows.push_back({s.tau, s.delta, s.gamma, s.big_gamma, s.delta_gamma});
            json doc{{"version", kVersion},
                     {"config", to_json(cfg)},
                     {"columns", {"tau", "delta", "gamma", "big_gamma", "delta_gamma"}},
                     {"rows", rows}};
            os << doc.dump(1) << '\n';
        }
    });
}

std::vector<std::string> cmd_moments(const RunConfig& cfg, std::ostream& fallback) {
    cfg.validate();
    const GaussianState s0 = cfg.state.build();
    const Trajectory traj =
        evolve_trajectory(s0, cfg.params, cfg.tau_max, cfg.n_steps, {cfg.frame, cfg.dynamics, cfg.tol});

    std::vector<std::pair<double, double>> n_samples;
    n_samples.reserve(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) n_samples.emplace_back(traj.times[i], traj.n_mean[i]);
    const auto period = oscillation_period(n_samples);

    json summary{{"version", kVersion},
                 {"frame", frame_name(cfg.frame)},
                 {"squeezing_intervals_x", intervals_json(detect_squeezing_intervals(traj, Axis::x))},
                 {"squeezing_intervals_y", intervals_json(detect_squeezing_intervals(traj, Axis::y))},
                 {"oscillation_period", period ? json(*period) : json(nullptr)}};

    const auto columns = {"tau", "n_mean", "var_x", "var_y", "cov_xy", "mean_x", "mean_y"};
    if (cfg.format == OutputFormat::json) {
        json rows = json::array();
        for (std::size_t i = 0; i < traj.size(); ++i) {
            const auto& s = traj.states[i];
            rows.push_back({traj.times[i], traj.n_mean[i], s.cov.xx, s.cov.yy, s.cov.xy, s.mean[0], s.mean[1]});
        }
        json doc = summary;
        doc["config"] = to_json(cfg);
        doc["columns"] = columns;
        doc["rows"] = rows;
        return emit(cfg.out, fallback, [&](std::ostream& os) { os << doc.dump(1) << '\n'; });
    }

    auto written = emit(cfg.out, fallback, [&](std::ostream& os) {
        os << "tau,n_mean,var_x,var_y,cov_xy,mean_x,mean_y\n";
        for (std::size_t i = 0; i < traj.size(); ++i) {
            const auto& s = traj.states[i];
            csv_row(os, {traj.times[i], traj.n_mean[i], s.cov.xx, s.cov.yy, s.cov.xy, s.mean[0], s.mean[1]});
        }
    });
    if (!cfg.out.empty()) {
        const std::string path = cfg.out + ".summary.json";
        auto os = open_out(path);
        summary["config"] = to_json(cfg);
        os << summary.dump(1) << '\n';
        finish(os, path);
        written.push_back(path);
    }
    return written;
}

void write_grid_csv(const WignerGrid& grid, std::ostream& os) {
    const auto& g = grid.spec;
    os << "# " << format_double(g.x_min) << ',' << format_double(g.x_max) << ',' << format_double(g.y_min)
       << ',' << format_double(g.y_max) << ',' << g.nx << ',' << g.ny << '\n';
    for (std::size_t j = 0; j < g.ny; ++j) {
        for (std::size_t i = 0; i < g.nx; ++i) {
            if (i) os << ',';
            os << format_double(grid.at(i, j));
        }
        os << '\n';
    }
}

json grid_to_json(const WignerGrid& grid, double tau) {
    const auto& g = grid.spec;
    json rows = json::array();
    for (std::size_t j = 0; j < g.ny; ++j) {
        json row = json::array();
        for (std::size_t i = 0; i < g.nx; ++i) row.push_back(grid.at(i, j));
        rows.push_back(std::move(row));
    }
    return json{{"version", kVersion}, {"tau", tau},      {"x_min", g.x_min}, {"x_max", g.x_max},
                {"y_min", g.y_min},    {"y_max", g.y_max}, {"nx", g.nx},       {"ny", g.ny},
                {"values", rows}};
}

WignerGrid read_grid_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("# ", 0) != 0) throw DomainError("grid csv: missing header");
    std::stringstream header(line.substr(2));
    WignerGrid grid;
    char comma = 0;
    header >> grid.spec.x_min >> comma >> grid.spec.x_max >> comma >> grid.spec.y_min >> comma >>
        grid.spec.y_max >> comma >> grid.spec.nx >> comma >> grid.spec.ny;
    if (!header) throw DomainError("grid csv: malformed header");
    grid.spec.validate();
    grid.values.reserve(grid.spec.nx * grid.spec.ny);
    for (std::size_t j = 0; j < grid.spec.ny; ++j) {
        if (!std::getline(is, line)) throw DomainError("grid csv: too few rows");
        const auto row = parse_tau_list(line);
        if (row.size() != grid.spec.nx) throw DomainError("grid csv: row has wrong length");
        grid.values.insert(grid.values.end(), row.begin(), row.end());
    }
    return grid;
}

std::vector<std::string> cmd_wigner(const RunConfig& cfg) {
    cfg.validate();
    const GaussianState s0 = cfg.state.build();
    const std::string prefix = cfg.out.empty() ? "wigner" : cfg.out;
    const char* ext = cfg.format == OutputFormat::csv ? ".csv" : ".json";

    std::vector<std::string> written;
    for (double tau : cfg.taus) {
        GaussianState s = propagate(s0, cfg.params, tau, cfg.dynamics, cfg.tol);
        if (cfg.frame == Frame::rotating) s = to_rotating_frame(s, cfg.params, tau);
        const WignerGrid grid = wigner_gaussian(s, cfg.grid_for(s));

        const std::string path = prefix + "_tau" + format_double(tau) + ext;
        auto os = open_out(path);
        if (cfg.format == OutputFormat::csv)
            write_grid_csv(grid, os);
        else
            os << grid_to_json(grid, tau).dump() << '\n';
        finish(os, path);
        written.push_back(path);
    }
    return written;
}

std::vector<std::string> cmd_classify(const RunConfig& cfg, std::ostream& fallback) {
    cfg.validate();
    const auto cls = classify_lindblad(cfg.params, cfg.tau_max, cfg.classify_samples);
    json doc{{"version", kVersion},
             {"is_lindblad_type", cls.is_lindblad_type},
             {"delta_plus_gamma_negative", intervals_json(cls.plus_negative)},
             {"delta_minus_gamma_negative", intervals_json(cls.minus_negative)},
             {"tau_max", cfg.tau_max},
             {"n_samples", cfg.classify_samples},
             {"config", to_json(cfg)}};
    return emit(cfg.out, fallback, [&](std::ostream& os) { os << doc.dump(1) << '\n'; });
}

}  // namespace qbm::cli
