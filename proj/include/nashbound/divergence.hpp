#pragma once

#include "nashbound/common.hpp"
#include "nashbound/noise.hpp"
#include "nashbound/rng.hpp"

#include <json.hpp>

#include <vector>

namespace nashbound::divergence {

// KL(p(x) || p(x - shift)) by adaptive quadrature, in nats.
double kl_numeric(const noise::NoiseModel& p, double shift, double abs_tol = 1e-13);

// 0.5 * delta^T Sigma^{-1} delta: KL between Gaussians with equal covariance
// and mean gap delta.
double kl_gaussian_shift(const Vector& delta, const Matrix& Sigma);

struct KlExpansionReport {
    std::vector<double> shifts;
    std::vector<double> kl_numeric;
    std::vector<double> kl_leading;  // 0.5 * I * t^2
    std::vector<double> remainder;   // kl_numeric - kl_leading
    double fisher = 0.0;
    // log-log regression slope of |remainder| vs shift; NaN when the
    // remainder sits at machine precision (exact expansion).
    double slope_estimate = 0.0;

    nlohmann::json to_json() const;
};

// Compares numeric KL against the quadratic-in-shift leading term across a
// decreasing ladder of shifts (at least 3).
KlExpansionReport kl_expansion_check(const noise::NoiseModel& p, std::vector<double> shifts);

struct MiEstimate {
    double value = 0.0;    // nats, clamped at 0
    double std_error = 0.0;
    long samples = 0;

    nlohmann::json to_json(std::uint64_t seed) const;
};

// Mutual information between a uniform index over `means` and mean + noise,
// by Monte Carlo with the exact mixture density as plug-in. Gaussian noise
// with covariance Sigma.
MiEstimate mi_mixture_estimate(const std::vector<Vector>& means, const Matrix& Sigma,
                               long samples, Rng& rng);

// Same, with independent per-coordinate noise models.
MiEstimate mi_mixture_estimate(const std::vector<Vector>& means,
                               const std::vector<noise::NoiseModel>& channel, long samples,
                               Rng& rng);

}  // namespace nashbound::divergence
