#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dpa/photon_statistics.hpp"
#include "dpa/wigner.hpp"

// Scenario configs, result records, and the figure/table dataset runners
// behind the dpa-lab command line.  Emitted files are deterministic:
// fixed row order, numbers printed with at most 12 significant digits,
// no timestamps.

namespace dpa {

inline constexpr const char* kToolVersion = "0.1.0";

struct ScenarioConfig {
    Family family = Family::vacuum;

    std::optional<double> z1, z2, nbar1, nbar2, r1, r2, r;
    std::optional<double> nbar_total;  // budget parameterization wins when set
    double split = 0.5;

    std::optional<double> phi;              // scalar phase
    std::optional<std::vector<double>> phi_grid;

    std::optional<int> cutoff;  // per-mode override
    double eps_trunc = kDefaultEpsTrunc;

    int quad_nodes       = 24;
    double box           = 0.0;  // 0 = adaptive
    double wln_tol       = 2e-3;
    int max_doublings    = 4;
    double eps_diagonal  = kDiagonalEps;
    double eps_marginal  = kMarginalEps;

    std::string stage = "after";  // before|after
    int n_max         = 10;
    double extent     = 4.0;  // section grids
    int resolution    = 161;
    double grid_max   = 3.0;  // fig2 parameter grids
    double grid_step  = 0.05;

    std::string out_dir = ".";
    std::string format  = "csv";  // csv|json

    StateSpec to_spec() const;
    Stage to_stage() const;
    DpaParams params() const { return DpaParams{phi.value_or(0.0)}; }
    std::vector<double> phases() const;  // grid if set, else {phi or 0}
    QuadratureConfig quadrature() const;
    std::optional<FockCutoff> fock_cutoff() const;

    nlohmann::json to_json() const;
    static ScenarioConfig from_json(const nlohmann::json& j);  // unknown keys rejected
};

struct ResultRecord {
    std::string quantity;
    nlohmann::json scenario;
    nlohmann::json values;
    nlohmann::json convergence;
    std::string tool_version = kToolVersion;
    nlohmann::json to_json() const;
};

// shortest representation capped at 12 significant digits; NaN forbidden
std::string format_number(double v);
std::uint64_t fnv1a(std::string_view bytes);
std::string config_hash(const ScenarioConfig& config);

ResultRecord run_point(const ScenarioConfig& config, const std::string& quantity);

// Writes one CSV per panel plus <figure>_manifest.json; returns written paths.
std::vector<std::string> run_figure(const std::string& figure_id, const ScenarioConfig& config);
std::vector<std::string> run_table(const std::string& table_id, const ScenarioConfig& config);

}  // namespace dpa
