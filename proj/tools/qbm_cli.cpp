// qbm — command-line front end for the quantum Brownian motion simulator
//
//   qbm [global flags] coeffs|moments|wigner|classify
//
// Flags override --config values, which override built-in defaults.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qbm/commands.hpp"
#include "qbm/errors.hpp"

using namespace qbm;
using namespace qbm::cli;

namespace {

struct Flags {
    std::optional<double> g, r, kt_over_wc, wc_over_2pikt, tau_max, sigma2, phi, alpha_re, alpha_im, tol,
        grid_sigmas;
    std::optional<std::size_t> steps, nx, ny, samples;
    std::optional<std::string> out, format, config, state, taus, frame, extent;
    bool markovian{false};
    bool dump_config{false};
};

RunConfig resolve(const Flags& f) {
    RunConfig cfg;
    if (f.config) cfg = load_config_file(*f.config, cfg);

    nlohmann::json overrides = nlohmann::json::object();
    auto put = [&](const char* key, const auto& opt) {
        if (opt) overrides[key] = *opt;
    };
    put("g", f.g);
    put("r", f.r);
    put("tau_max", f.tau_max);
    put("sigma2", f.sigma2);
    put("phi", f.phi);
    put("alpha_re", f.alpha_re);
    put("alpha_im", f.alpha_im);
    put("tol", f.tol);
    put("grid_sigmas", f.grid_sigmas);
    put("steps", f.steps);
    put("nx", f.nx);
    put("ny", f.ny);
    put("classify_samples", f.samples);
    put("out", f.out);
    put("format", f.format);
    put("state", f.state);
    put("taus", f.taus);
    put("frame", f.frame);
    if (f.markovian) overrides["dynamics"] = "markovian";
    if (f.kt_over_wc) overrides["kt_over_wc"] = *f.kt_over_wc;
    if (f.wc_over_2pikt) overrides["wc_over_2pikt"] = *f.wc_over_2pikt;
    if (f.extent) {
        const auto e = parse_tau_list(*f.extent);
        if (e.size() != 4) throw DomainError("--extent expects x_min,x_max,y_min,y_max");
        overrides["x_min"] = e[0];
        overrides["x_max"] = e[1];
        overrides["y_min"] = e[2];
        overrides["y_max"] = e[3];
    }
    cfg = from_json(overrides, cfg);
    cfg.validate();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Non-Markovian quantum Brownian motion in phase space"};
    app.require_subcommand(0, 1);
    app.fallthrough();

    Flags f;
    app.add_option("--g", f.g, "coupling constant g");
    app.add_option("--r", f.r, "ratio omega_c / omega_0");
    auto* kt = app.add_option("--kt-over-wc", f.kt_over_wc, "temperature kT / (hbar omega_c)");
    auto* wc = app.add_option("--wc-over-2pikt", f.wc_over_2pikt, "temperature as omega_c / (2 pi kT)");
    kt->excludes(wc);
    app.add_option("--tau-max", f.tau_max, "end of the time grid (tau = omega_c t)");
    app.add_option("--steps", f.steps, "number of grid points on [0, tau-max]");
    app.add_option("--out", f.out, "output file (wigner: path prefix)");
    app.add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--config", f.config, "JSON config file");
    app.add_flag("--dump-config", f.dump_config, "print the effective configuration as JSON and exit");
    app.add_option("--state", f.state, "initial state")->check(CLI::IsMember({"vacuum", "coherent", "squeezed"}));
    app.add_option("--alpha-re", f.alpha_re, "Re alpha0");
    app.add_option("--alpha-im", f.alpha_im, "Im alpha0");
    app.add_option("--sigma2", f.sigma2, "squeezing sigma^2 = e^{-2s}");
    app.add_option("--phi", f.phi, "squeezing angle");
    app.add_option("--taus", f.taus, "comma-separated times for wigner grids");
    app.add_option("--extent", f.extent, "fixed grid x_min,x_max,y_min,y_max in alpha coordinates");
    app.add_option("--grid-sigmas", f.grid_sigmas, "auto grid half-width in standard deviations");
    app.add_option("--nx", f.nx, "grid points along alpha_x");
    app.add_option("--ny", f.ny, "grid points along alpha_y");
    app.add_option("--tol", f.tol, "relative tolerance of the Delta_Gamma quadrature");
    app.add_option("--frame", f.frame, "rotating or lab")->check(CLI::IsMember({"rotating", "lab"}));
    app.add_flag("--markovian", f.markovian, "freeze Delta and gamma at their asymptotic values");
    app.add_option("--samples", f.samples, "classify: number of scan points");

    auto* coeffs = app.add_subcommand("coeffs", "tabulate Delta, gamma, Gamma, Delta_Gamma");
    auto* moments = app.add_subcommand("moments", "Gaussian moment trajectory and summary");
    auto* wigner = app.add_subcommand("wigner", "Wigner grids at --taus");
    auto* classify = app.add_subcommand("classify", "Lindblad-type classification of Delta +/- gamma");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalidArgs;
    }

    try {
        const RunConfig cfg = resolve(f);
        if (f.dump_config) {
            std::cout << to_json(cfg).dump(1) << '\n';
            return kExitOk;
        }
        std::vector<std::string> written;
        if (coeffs->parsed()) written = cmd_coeffs(cfg, std::cout);
        else if (moments->parsed()) written = cmd_moments(cfg, std::cout);
        else if (wigner->parsed()) written = cmd_wigner(cfg);
        else if (classify->parsed()) written = cmd_classify(cfg, std::cout);
        else {
            std::cerr << app.help();
            return kExitInvalidArgs;
        }
        for (const auto& path : written) std::cerr << "wrote " << path << '\n';
        return kExitOk;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalidArgs;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const IoError& e) {
        std::cerr << "i/o failure: " << e.what() << '\n';
        return kExitIo;
    }
}
