#pragma once

#include "nashbound/common.hpp"
#include "nashbound/divergence.hpp"
#include "nashbound/geometry.hpp"
#include "nashbound/noise.hpp"
#include "nashbound/rng.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace nashbound::bounds {

enum class Theorem { T1, C1, T2, T3, T4 };

std::string theorem_name(Theorem t);

// One evaluated iteration lower bound. Values are raw (possibly fractional);
// callers ceil when comparing against iteration counts. Negative analytic
// values clamp to 0 with a "vacuous" caveat.
struct BoundReport {
    Theorem theorem = Theorem::T1;
    double value = 0.0;
    nlohmann::json inputs;
    std::vector<std::string> caveats;

    nlohmann::json to_json() const;
};

// ((1-delta) * logM - 1) / C_down, logM and C_down in nats.
BoundReport theorem1_bound(double logM, double C_down, double delta);

// ((1-delta) * (N ln(1/2eps) + ln(Vol - eps*P)) - 1) / C_down.
BoundReport corollary1_bound(const geometry::ConstraintSet& S, double epsilon, double delta,
                             double C_down);

// (2(1-delta) - 1) * min sigma^2 / (4 gamma^2 eps^2); requires delta <= 0.5.
BoundReport theorem2_bound(double min_sigma2, double gamma, double epsilon, double delta);

// (2(1-delta) - 1) / (4 N eps^2 gamma^2 max_fisher); requires delta <= 0.5.
// Leading order: the cubic remainder of the shift expansion is dropped.
BoundReport theorem3_bound(int players, double gamma, double epsilon, double delta,
                           double max_fisher);

struct Candidate {
    Matrix A;
    geometry::PackingResult packing;
    std::string label;
};

// Max over candidates of ((1-delta) ln|packing| - 1) / MI, with MI estimated
// by Monte Carlo for the candidate's effective noise: the masked covariance
// for Gaussian channels, or the product of downlink models when the uplink is
// noiseless. The supremum is certified over the candidate list only.
BoundReport theorem4_bound(const std::vector<Candidate>& candidates,
                           const noise::Topology& topo, const noise::ChannelConfig& cfg,
                           double delta, long mc_samples, Rng& rng);

// {-gamma I, -gamma (I + 0.1 R) renormalized} crossed with the 4-point packing
// and lattice-subset packings of sizes {2, 4, 8}.
std::vector<Candidate> default_candidates(const geometry::ConstraintSet& S, double epsilon,
                                          double gamma, Rng& rng);

}  // namespace nashbound::bounds
