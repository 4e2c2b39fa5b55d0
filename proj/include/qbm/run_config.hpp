// run_config.hpp — Parameters of a CLI run, with flat-JSON (de)serialisation

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qbm/coefficients.hpp"
#include "qbm/gaussian.hpp"
#include "qbm/wigner.hpp"

namespace qbm::cli {

enum class StateKind { vacuum, coherent, squeezed };
enum class OutputFormat { csv, json };

struct InitialStateSpec {
    StateKind kind{StateKind::squeezed};
    double alpha_re{0.0};
    double alpha_im{0.0};
    double sigma2{0.1};  // e^{-2s}
    double phi{0.0};

    GaussianState build() const;
};

struct GridExtents {
    double x_min, x_max, y_min, y_max;
};

// Defaults reproduce the squeezed-vacuum reference run (sigma^2 = 0.1, g = 0.1, r = 0.05,
// omega_c / 2 pi kT = 3e-5).
struct RunConfig {
    PhysicalParams params{};
    InitialStateSpec state{};
    double tau_max{1.0};
    std::size_t n_steps{2001};
    std::vector<double> taus{0.0, 0.15, 0.3, 0.45};
    std::optional<GridExtents> extents;  // absent: +/- grid_sigmas around each state
    double grid_sigmas{6.0};
    std::size_t nx{401};
    std::size_t ny{401};
    std::string out;  // empty: stdout where the command allows it
    OutputFormat format{OutputFormat::csv};
    double tol{kDefaultDeltaGammaTol};
    Frame frame{Frame::rotating};
    Dynamics dynamics{Dynamics::non_markovian};
    std::size_t classify_samples{1000};

    // Throws DomainError on non-finite or out-of-range values.
    void validate() const;
    GridSpec grid_for(const GaussianState& state) const;
};

nlohmann::json to_json(const RunConfig& cfg);
// Missing keys keep their defaults; unknown keys and non-scalar values are rejected.
RunConfig from_json(const nlohmann::json& j, RunConfig base = {});
RunConfig load_config_file(const std::string& path, RunConfig base = {});

std::vector<double> parse_tau_list(const std::string& text);
std::string format_tau_list(const std::vector<double>& taus);

// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

}  // namespace qbm::cli
