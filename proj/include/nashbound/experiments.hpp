#pragma once

#include "nashbound/bounds.hpp"
#include "nashbound/common.hpp"
#include "nashbound/games.hpp"
#include "nashbound/noise.hpp"
#include "nashbound/protocol.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace nashbound::experiments {

// Index of the packing point nearest to `output`; ties go to the lowest index.
int genie_decode(const games::HardEnsemble& ensemble, const Vector& output);

struct GenieResult {
    std::vector<long> errors;                 // per game
    long trials = 0;                          // per game
    double sup_error_prob = 0.0;
    std::vector<std::vector<long>> confusion;  // [true game][decoded game]

    nlohmann::json to_json() const;
};

// For each game and trial: simulate T steps, decode the output against the
// packing, count mismatches. T = 0 decodes the initial action directly.
GenieResult run_genie_test(const games::HardEnsemble& ensemble, const noise::Topology& topo,
                           const noise::ChannelConfig& cfg, const protocol::AlgorithmSpec& alg,
                           int T, long trials, std::uint64_t seed, int workers = 1);

struct FanoReport {
    double empirical_error = 0.0;
    double mutual_information = 0.0;  // plug-in, nats
    double fano_lower_bound = 0.0;
    double std_error = 0.0;
    bool satisfied = false;

    nlohmann::json to_json() const;
};

// Plug-in Fano check on a confusion matrix with equal row sums (uniform
// prior): empirical error must reach 1 - (1 + I(M;Mhat))/ln(rows) up to
// 2 standard errors.
FanoReport fano_check(const std::vector<std::vector<long>>& confusion);

struct ComplexityRecord {
    int T = 0;
    double sup_error = 0.0;
    double std_error = 0.0;  // binomial, at the worst game
    double wilson_upper = 0.0;
    bool accepted = false;
};

struct ComplexityResult {
    std::optional<int> T_emp;  // empty = NotReached within T_max
    std::vector<ComplexityRecord> history;
    std::optional<ComplexityRecord> verify_at;     // fresh-seed recheck of T_emp
    std::optional<ComplexityRecord> verify_below;  // fresh-seed recheck of T_emp - 1

    nlohmann::json to_json() const;
};

// Smallest T <= T_max at which the worst-game miss probability
// P(||x*_m - output|| >= eps) clears delta (Wilson upper bound <= delta+0.02),
// by doubling then bisection. The result is what this particular algorithm
// achieves, i.e. an upper-bound witness for the class complexity; it must
// still respect every applicable iteration lower bound.
ComplexityResult empirical_complexity(const games::HardEnsemble& ensemble,
                                      const noise::Topology& topo,
                                      const noise::ChannelConfig& cfg,
                                      const protocol::AlgorithmSpec& alg, double epsilon,
                                      double delta, int T_max, long trials, std::uint64_t seed,
                                      int workers = 1);

struct BoundComparisonRow {
    std::string theorem;
    double bound = 0.0;
    double ceil_bound = 0.0;
    std::optional<int> T_emp;
    double margin = 0.0;  // T_emp - ceil(bound), when T_emp exists
    bool pass = false;
    bool vacuous = false;
    std::string note;
};

struct BoundComparisonReport {
    std::vector<BoundComparisonRow> rows;
    ComplexityResult complexity;

    nlohmann::json to_json() const;
};

// Evaluates every applicable bound for the scenario and compares each against
// the measured complexity (pass = T_emp >= ceil(bound)). The capacity-ratio
// bounds run with the Gaussian water-filling capacity when every downlink is
// Gaussian; otherwise they need the caller-supplied capacity (nats).
BoundComparisonReport bound_comparison_report(const games::HardEnsemble& ensemble,
                                              const noise::Topology& topo,
                                              const noise::ChannelConfig& cfg,
                                              const protocol::AlgorithmSpec& alg, double epsilon,
                                              double delta, int T_max, long trials,
                                              long mc_samples, std::uint64_t seed,
                                              int workers = 1,
                                              std::optional<double> user_c_down = std::nullopt);

double wilson_upper(long successes, long trials, double z = 1.96);

}  // namespace nashbound::experiments
