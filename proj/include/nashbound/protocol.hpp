#pragma once

#include "nashbound/common.hpp"
#include "nashbound/games.hpp"
#include "nashbound/noise.hpp"
#include "nashbound/rng.hpp"

#include <json.hpp>

#include <functional>
#include <string>
#include <vector>

namespace nashbound::protocol {

// Data describing a per-player update rule. The runner interprets the id;
// updates see only the player's own action and received values.
struct AlgorithmSpec {
    std::string id = "noisy_gradient";
    double step_constant = 1.0;     // c
    double step_exponent = 1.0;     // schedule k^{-exponent}
    bool projection = true;

    nlohmann::json to_json() const;
    static AlgorithmSpec from_json(const nlohmann::json& j);
};

// x_{k+1} = Proj(x_k + (c / k^exponent) * yhat_k), per player.
AlgorithmSpec baseline_noisy_gradient(double c, double exponent);

// One simulated run. Row k holds the step-k values; `output` is the action
// the algorithm would play at step T+1.
struct Trace {
    Matrix X;             // T x N actions
    Matrix Y_hat;         // T x N received utility info
    Matrix Z_hat;         // T x (sum |constraints per player|) received constraint info
    Matrix Y_clean;       // T x N node outputs before downlink noise
    Matrix Y_noiseless;   // T x N pseudo-gradient at the true actions
    std::vector<Matrix> usn_received;  // per step: usn_count x N received actions
    Vector output;
    std::uint64_t seed = 0;
    std::string game_id;
    std::string algorithm_id;

    int steps() const { return static_cast<int>(X.rows()); }
    nlohmann::json to_json() const;
    std::string to_csv() const;
};

Trace run(const games::QuadraticGame& game, const noise::Topology& topo,
          const noise::ChannelConfig& cfg, const AlgorithmSpec& alg, int T, std::uint64_t seed);

// Harness entry point: a policy maps (player, step, own action, received
// utility info) to the next action, before projection. Used to probe
// causality; `run` wraps the baseline rule in one of these.
using PlayerPolicy = std::function<double(int player, int step, double x_i, double yhat_i)>;

Trace run_policy(const games::QuadraticGame& game, const noise::Topology& topo,
                 const noise::ChannelConfig& cfg, const PlayerPolicy& policy, bool projection,
                 int T, std::uint64_t seed, const std::string& algorithm_id = "policy");

// Mean over steps of the squared pseudo-gradient norm at the true actions.
double empirical_power(const Trace& trace);

}  // namespace nashbound::protocol
