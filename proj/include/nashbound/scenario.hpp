#pragma once

#include "nashbound/bounds.hpp"
#include "nashbound/common.hpp"
#include "nashbound/experiments.hpp"
#include "nashbound/games.hpp"
#include "nashbound/geometry.hpp"
#include "nashbound/noise.hpp"
#include "nashbound/protocol.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace nashbound::cli {

struct EnsembleSpec {
    std::string type = "theorem2";  // theorem2 | theorem1
    double epsilon = 0.1;
    double gamma = 1.0;
    std::optional<Matrix> A;
    std::uint64_t packing_seed = 0;  // theorem1 greedy packing
    int restarts = 8;

    games::HardEnsemble build(const geometry::ConstraintSet& S) const;
    // Spectral norm of the curvature the built family will carry; the class
    // parameter the bounds may legitimately use.
    double effective_gamma() const;
};

struct ExperimentParams {
    double delta = 0.25;
    int T_max = 500;
    long trials = 2000;
    std::uint64_t seed = 1;
    std::vector<int> genie_T_list;
    bool run_genie = true;
    bool run_complexity = true;
};

struct BoundsParams {
    std::vector<std::string> theorems;  // empty = every applicable one
    long mc_samples = 100000;
    // Downlink capacity in nats for the capacity-ratio bounds. Required for
    // non-Gaussian downlinks, where water-filling does not apply.
    std::optional<double> C_down;
};

struct KlParams {
    noise::NoiseModel model = noise::NoiseModel::gaussian(1.0);
    std::vector<double> shifts{0.2, 0.1, 0.05, 0.025};
};

struct PackParams {
    double epsilon = 0.1;
    std::uint64_t seed = 0;
    int restarts = 8;
};

struct SimulateParams {
    int T = 50;
    int game_index = 0;
};

struct ScenarioConfig {
    geometry::ConstraintSet constraint_set = geometry::ConstraintSet::box(
        Vector::Zero(2), Vector::Ones(2));
    noise::Topology topology;
    noise::ChannelConfig channels;
    EnsembleSpec ensemble;
    protocol::AlgorithmSpec algorithm;
    ExperimentParams experiment;
    BoundsParams bounds_params;
    std::optional<KlParams> kl;
    PackParams pack;
    SimulateParams simulate;

    // Canonical serialized form; hashing it stamps the outputs.
    nlohmann::json to_json() const;
};

// Parses and validates scenario JSON text, collecting every validation error
// before throwing ConfigError. Syntax errors carry line/column.
ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig parse_config_file(const std::string& path);

struct CliOptions {
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed_override;
    int workers = 1;
    std::string format = "both";  // json | csv | both
    // Display information quantities in bits instead of nats (formatting only;
    // every computation stays in nats).
    bool bits = false;
};

// Runs one subcommand. Returns 0 on success, 1 on validation failure,
// 2 on runtime failure. Outputs are written atomically.
int dispatch(const std::string& subcommand, ScenarioConfig config, const CliOptions& options);

}  // namespace nashbound::cli
