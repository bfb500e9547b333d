#pragma once

#include "nashbound/common.hpp"
#include "nashbound/geometry.hpp"
#include "nashbound/rng.hpp"

#include <json.hpp>

#include <optional>
#include <vector>

namespace nashbound::noise {

enum class NoiseKind { gaussian, logistic, tabulated };

// Constants for the smoothness/tail envelope |d^3 log p| <= beta1 + beta2*|x|^beta3,
// tail decay faster than x^-(beta3+1+r).
struct Regularity {
    double beta1 = 0.0;
    double beta2 = 0.0;
    double beta3 = 0.0;
    double r = 1.0;
};

// Zero-mean scalar channel noise law.
class NoiseModel {
  public:
    static NoiseModel gaussian(double variance);
    static NoiseModel logistic(double scale);
    // Piecewise-linear density on a sorted grid. Must integrate to 1 (1e-8)
    // and have zero mean (1e-8); zero outside the grid.
    static NoiseModel tabulated(std::vector<double> grid, std::vector<double> values);

    NoiseKind kind() const { return kind_; }
    double variance() const { return variance_; }
    double scale() const { return param_; }

    double pdf(double x) const;
    double log_pdf(double x) const;
    double dlog_pdf(double x) const;
    double sample(Rng& rng) const;
    // P(|V| >= x)
    double tail_prob(double x) const;
    // Smallest c with P(|V| >= c) <= mass.
    double support_halfwidth(double mass) const;
    // Differential entropy in nats.
    double entropy() const;

    Regularity regularity;

    nlohmann::json to_json() const;
    static NoiseModel from_json(const nlohmann::json& j);

  private:
    NoiseModel() = default;
    NoiseKind kind_ = NoiseKind::gaussian;
    double param_ = 1.0;     // sigma for gaussian, s for logistic
    double variance_ = 1.0;  // exact or numeric
    // tabulated state
    std::vector<double> grid_, values_, cdf_;
};

double fisher_information(const NoiseModel& model, double abs_tol = 3e-14);

struct RegularityReport {
    bool passed = false;
    double max_abs_third_derivative = 0.0;
    double worst_margin = 0.0;  // min over probes of bound - |d3 log p|
    std::vector<double> tail_statistic;  // x^(beta3+1+r) * P(|V| >= x) at the tail points
    std::string message;
};

// Verifies the envelope at the probe points (numeric third derivative,
// tolerance 1e-6) plus density positivity and the tail decay condition at
// five tail points. Throws RegularityViolatedError naming the offending probe.
RegularityReport check_regularity(const NoiseModel& model, const std::vector<double>& probes);

struct WaterFilling {
    double capacity = 0.0;  // nats
    std::vector<double> allocation;
    double level = 0.0;
};

WaterFilling water_filling(const std::vector<double>& variances, double alpha);
// Total Gaussian downlink capacity sum_i 0.5*ln(1 + P_i/sigma_i^2) under
// sum P_i = alpha, in nats.
double downlink_capacity(const std::vector<double>& variances, double alpha);

// Who talks to which node. Players and constraints are 0-indexed.
struct Topology {
    int players = 0;
    int constraints = 0;
    int usn_count = 0;
    int csn_count = 0;
    std::vector<int> usn_of_player;                     // size players
    std::vector<int> csn_of_constraint;                 // size constraints
    std::vector<std::vector<int>> usn_members;          // per USN
    std::vector<std::vector<int>> csn_members;          // per CSN
    std::vector<std::vector<int>> constraints_of_player;  // per player

    void validate() const;

    // Single USN / single CSN, everyone a member.
    static Topology shared(int players, int constraints);
    // One USN per player (all players members of each), single CSN.
    static Topology split_usn(int players, int constraints);

    nlohmann::json to_json() const;
    static Topology from_json(const nlohmann::json& j);
};

// Coordinate-bound constraints for boxes (2N of them), one norm constraint
// for balls.
int constraint_count(const geometry::ConstraintSet& S);
Topology default_topology(const geometry::ConstraintSet& S, bool shared_usn = true);

// Per-channel noise levels. Variance 0 (uplink) or a missing downlink model
// means a noiseless channel.
struct ChannelConfig {
    std::vector<double> uplink_usn_var;
    std::vector<double> uplink_csn_var;
    std::vector<std::optional<NoiseModel>> downlink;  // per player
    double alpha = 0.0;  // downlink sum-power budget

    void validate(const Topology& topo) const;
    double downlink_variance(int player) const;
    double min_downlink_variance() const;
    bool all_downlink_gaussian() const;
    bool uplink_noiseless() const;

    static ChannelConfig gaussian(const Topology& topo, double usn_var, double csn_var,
                                  double downlink_var, double alpha);

    nlohmann::json to_json() const;
    static ChannelConfig from_json(const nlohmann::json& j);
};

// diag(sigma_i^2) + (diag(sigma_usn_pi(i)^2) A A) masked to shared-USN blocks.
// Covariance of the effective per-player noise for quadratic instances.
Matrix covariance_sigma_AG(const Matrix& A, const Topology& topo, const ChannelConfig& cfg);

// lambda_min of the covariance above; checks the dual-Weyl floor
// lambda_min >= min_i sigma_i^2.
double min_variance_bound(const Matrix& A, const Topology& topo, const ChannelConfig& cfg);

}  // namespace nashbound::noise
