#include "nashbound/divergence.hpp"

#include "nashbound/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace nashbound::divergence {

namespace {

double logsumexp(const std::vector<double>& v) {
    const double m = *std::max_element(v.begin(), v.end());
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double x : v) s += std::exp(x - m);
    return m + std::log(s);
}

}  // namespace

double kl_numeric(const noise::NoiseModel& p, double shift, double abs_tol) {
    if (shift == 0.0) return 0.0;
    const double c = p.support_halfwidth(1e-15);
    const double lo = -c - std::abs(shift);
    const double hi = c + std::abs(shift);
    const auto integrand = [&p, shift](double x) {
        const double px = p.pdf(x);
        if (!(px > 0.0)) return 0.0;
        const double ratio = p.log_pdf(x) - p.log_pdf(x - shift);
        if (!std::isfinite(ratio))
            throw QuadratureFailure("kl_numeric: densities have mismatched support");
        return px * ratio;
    };
    return integrate(integrand, lo, hi, abs_tol).value;
}

double kl_gaussian_shift(const Vector& delta, const Matrix& Sigma) {
    if (Sigma.rows() != Sigma.cols() || Sigma.rows() != delta.size())
        throw InvalidArgument("kl_gaussian_shift: dimension mismatch");
    if (!Sigma.isApprox(Sigma.transpose(), 1e-12))
        throw SingularSigmaError("kl_gaussian_shift: Sigma must be symmetric");
    Eigen::LLT<Matrix> llt(Sigma);
    if (llt.info() != Eigen::Success)
        throw SingularSigmaError("kl_gaussian_shift: Sigma is not positive definite");
    return 0.5 * delta.dot(llt.solve(delta));
}

nlohmann::json KlExpansionReport::to_json() const {
    nlohmann::json j;
    j["shifts"] = shifts;
    j["kl_numeric"] = kl_numeric;
    j["kl_leading"] = kl_leading;
    j["remainder"] = remainder;
    j["fisher"] = fisher;
    if (std::isfinite(slope_estimate))
        j["slope_estimate"] = slope_estimate;
    else
        j["slope_estimate"] = nullptr;
    j["units"] = "nats";
    return j;
}

KlExpansionReport kl_expansion_check(const noise::NoiseModel& p, std::vector<double> shifts) {
    if (shifts.size() < 3)
        throw InvalidArgument("kl_expansion_check: need at least 3 shifts");
    for (std::size_t i = 0; i < shifts.size(); ++i) {
        if (!(shifts[i] > 0.0))
            throw InvalidArgument("kl_expansion_check: shifts must be positive");
        if (i > 0 && !(shifts[i] < shifts[i - 1]))
            throw InvalidArgument("kl_expansion_check: shifts must be strictly decreasing");
    }
    KlExpansionReport report;
    report.shifts = shifts;
    report.fisher = noise::fisher_information(p);
    for (double t : shifts) {
        const double kl = kl_numeric(p, t);
        const double lead = 0.5 * report.fisher * t * t;
        report.kl_numeric.push_back(kl);
        report.kl_leading.push_back(lead);
        report.remainder.push_back(kl - lead);
    }
    // Least-squares slope of ln|rem| against ln t, skipping machine-zero
    // remainders.
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < shifts.size(); ++i) {
        if (std::abs(report.remainder[i]) > 1e-14) {
            xs.push_back(std::log(shifts[i]));
            ys.push_back(std::log(std::abs(report.remainder[i])));
        }
    }
    if (xs.size() < 2) {
        report.slope_estimate = std::numeric_limits<double>::quiet_NaN();
        return report;
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    report.slope_estimate = num / den;
    return report;
}

nlohmann::json MiEstimate::to_json(std::uint64_t seed) const {
    return nlohmann::json{{"value", value},
                          {"stderr", std_error},
                          {"units", "nats"},
                          {"samples", samples},
                          {"seed", seed}};
}

namespace {

MiEstimate finalize(double sum, double sumsq, long samples) {
    const double mean = sum / static_cast<double>(samples);
    const double var =
        std::max(0.0, sumsq / static_cast<double>(samples) - mean * mean);
    MiEstimate est;
    est.value = std::max(0.0, mean);
    est.std_error = std::sqrt(var / static_cast<double>(samples));
    est.samples = samples;
    return est;
}

void check_mi_inputs(std::size_t n_means, long samples) {
    if (n_means < 1) throw InvalidArgument("mi_mixture_estimate: need at least one mean");
    if (samples < 10000)
        throw InvalidArgument("mi_mixture_estimate: need at least 10^4 samples");
}

}  // namespace

MiEstimate mi_mixture_estimate(const std::vector<Vector>& means, const Matrix& Sigma,
                               long samples, Rng& rng) {
    check_mi_inputs(means.size(), samples);
    const long n = Sigma.rows();
    for (const Vector& m : means)
        if (m.size() != n) throw InvalidArgument("mi_mixture_estimate: mean dimension mismatch");
    Eigen::LLT<Matrix> llt(Sigma);
    if (llt.info() != Eigen::Success)
        throw SingularSigmaError("mi_mixture_estimate: Sigma is not positive definite");
    const Matrix L = llt.matrixL();

    // Whitened means: the per-sample statistic needs only ||z + wm - wj||^2.
    std::vector<Vector> white;
    white.reserve(means.size());
    for (const Vector& m : means) white.push_back(L.triangularView<Eigen::Lower>().solve(m));

    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, means.size() - 1);
    const double log_count = std::log(static_cast<double>(means.size()));

    double sum = 0.0, sumsq = 0.0;
    Vector z(n);
    std::vector<double> logs(means.size());
    for (long s = 0; s < samples; ++s) {
        const std::size_t m = pick(rng);
        for (long i = 0; i < n; ++i) z[i] = normal(rng);
        // ln p(y|m) - ln mix(y) with the shared Gaussian factor cancelled.
        for (std::size_t j = 0; j < means.size(); ++j)
            logs[j] = -0.5 * (z + white[m] - white[j]).squaredNorm();
        const double stat = -0.5 * z.squaredNorm() - (logsumexp(logs) - log_count);
        sum += stat;
        sumsq += stat * stat;
    }
    return finalize(sum, sumsq, samples);
}

MiEstimate mi_mixture_estimate(const std::vector<Vector>& means,
                               const std::vector<noise::NoiseModel>& channel, long samples,
                               Rng& rng) {
    check_mi_inputs(means.size(), samples);
    const std::size_t n = channel.size();
    for (const Vector& m : means)
        if (static_cast<std::size_t>(m.size()) != n)
            throw InvalidArgument("mi_mixture_estimate: mean dimension mismatch");

    std::uniform_int_distribution<std::size_t> pick(0, means.size() - 1);
    const double log_count = std::log(static_cast<double>(means.size()));

    double sum = 0.0, sumsq = 0.0;
    Vector y(static_cast<long>(n));
    std::vector<double> logs(means.size());
    for (long s = 0; s < samples; ++s) {
        const std::size_t m = pick(rng);
        double log_true = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double w = channel[i].sample(rng);
            y[static_cast<long>(i)] = means[m][static_cast<long>(i)] + w;
            log_true += channel[i].log_pdf(w);
        }
        for (std::size_t j = 0; j < means.size(); ++j) {
            double lj = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                lj += channel[i].log_pdf(y[static_cast<long>(i)] - means[j][static_cast<long>(i)]);
            logs[j] = lj;
        }
        const double stat = log_true - (logsumexp(logs) - log_count);
        sum += stat;
        sumsq += stat * stat;
    }
    return finalize(sum, sumsq, samples);
}

}  // namespace nashbound::divergence
