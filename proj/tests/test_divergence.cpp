#include "nashbound/divergence.hpp"

#include <doctest.h>

#include <cmath>

using namespace nashbound;
using namespace nashbound::divergence;

namespace {

// Independent composite-Simpson oracle for KL(p(x) || p(x - t)).
double simpson_kl(const noise::NoiseModel& p, double t, double halfwidth, int n) {
    const double lo = -halfwidth - std::abs(t);
    const double hi = halfwidth + std::abs(t);
    auto f = [&](double x) {
        const double px = p.pdf(x);
        return px > 0.0 ? px * (p.log_pdf(x) - p.log_pdf(x - t)) : 0.0;
    };
    const double h = (hi - lo) / n;
    double s = f(lo) + f(hi);
    for (int i = 1; i < n; ++i) s += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

Vector vec2(double a, double b) {
    Vector v(2);
    v << a, b;
    return v;
}

}  // namespace

TEST_CASE("KL against the Gaussian closed form") {
    const auto g = noise::NoiseModel::gaussian(1.0);
    CHECK(kl_numeric(g, 0.0) == 0.0);
    CHECK(std::abs(kl_numeric(g, 0.2) - 0.02) < 1e-8);

    for (double sigma2 : {0.5, 1.0, 2.0}) {
        const auto model = noise::NoiseModel::gaussian(sigma2);
        for (double t : {0.05, 0.1, 0.3, 0.5, 1.0})
            CHECK(std::abs(kl_numeric(model, t) - t * t / (2.0 * sigma2)) < 1e-8);
    }
}

TEST_CASE("KL against an independent quadrature oracle (logistic)") {
    const auto logi = noise::NoiseModel::logistic(1.0);
    for (double t : {0.05, 0.1, 0.2}) {
        const double oracle = simpson_kl(logi, t, 60.0, 200000);
        CHECK(std::abs(kl_numeric(logi, t) - oracle) < 1e-10);
    }
    // Leading-term comparison: within a cubic-sized window of the quadratic.
    const double kl01 = kl_numeric(logi, 0.1);
    CHECK(std::abs(kl01 - 0.5 * (1.0 / 3.0) * 0.01) < 2.0 * 0.001);
}

TEST_CASE("KL positivity and symmetry in the shift sign") {
    const auto logi = noise::NoiseModel::logistic(0.8);
    for (double t : {0.05, 0.2, 0.7}) {
        const double kl = kl_numeric(logi, t);
        CHECK(kl > 0.0);
        CHECK(kl_numeric(logi, -t) == doctest::Approx(kl).epsilon(1e-10));
    }
}

TEST_CASE("Gaussian shift KL in matrix form") {
    CHECK(kl_gaussian_shift(vec2(0.2, 0.0), Matrix::Identity(2, 2)) == doctest::Approx(0.02));
    CHECK(kl_gaussian_shift(Vector::Zero(2), Matrix::Identity(2, 2)) == doctest::Approx(0.0));

    Matrix sigma(2, 2);
    sigma << 6, -4, -4, 6;
    // Oracle: explicit 2x2 inverse (1/20)[[6,4],[4,6]] applied by hand.
    Matrix inv(2, 2);
    inv << 6.0 / 20.0, 4.0 / 20.0, 4.0 / 20.0, 6.0 / 20.0;
    const Vector delta = vec2(0.2, 0.2);
    const double by_hand = 0.5 * delta.dot(inv * delta);
    CHECK(by_hand == doctest::Approx(0.02));
    CHECK(kl_gaussian_shift(delta, sigma) == doctest::Approx(by_hand).epsilon(1e-12));

    Matrix indefinite(2, 2);
    indefinite << 1, 2, 2, 1;
    CHECK_THROWS_AS(kl_gaussian_shift(delta, indefinite), SingularSigmaError);
}

TEST_CASE("multivariate Gaussian KL equals the per-coordinate sum for diagonal covariance") {
    Rng rng = make_rng(44);
    std::uniform_real_distribution<double> var(0.2, 3.0), shift(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);
        Vector delta(n);
        Matrix sigma = Matrix::Zero(n, n);
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            delta[i] = shift(rng);
            sigma(i, i) = var(rng);
            sum += delta[i] * delta[i] / (2.0 * sigma(i, i));
        }
        CHECK(std::abs(kl_gaussian_shift(delta, sigma) - sum) < 1e-8);
    }
}

TEST_CASE("shift expansion: exact for Gaussian, quartic remainder for logistic") {
    const auto gauss_report =
        kl_expansion_check(noise::NoiseModel::gaussian(1.0), {0.2, 0.1, 0.05});
    for (double rem : gauss_report.remainder) CHECK(std::abs(rem) < 1e-12);
    CHECK(std::isnan(gauss_report.slope_estimate));

    const auto logi_report =
        kl_expansion_check(noise::NoiseModel::logistic(1.0), {0.2, 0.1, 0.05, 0.025});
    CHECK(logi_report.fisher == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
    for (double kl : logi_report.kl_numeric) CHECK(kl >= 0.0);
    // A symmetric density has an even KL, so the cubic term cancels and the
    // measured decay sits at 4.
    CHECK(logi_report.slope_estimate >= 2.7);
    CHECK(logi_report.slope_estimate == doctest::Approx(4.0).epsilon(0.1));

    CHECK_THROWS_AS(kl_expansion_check(noise::NoiseModel::gaussian(1.0), {0.1}),
                    InvalidArgument);
    CHECK_THROWS_AS(kl_expansion_check(noise::NoiseModel::gaussian(1.0), {0.1, 0.2, 0.3}),
                    InvalidArgument);
}

TEST_CASE("mixture MI: degenerate inputs") {
    Rng rng = make_rng(1);
    const Matrix I1 = Matrix::Identity(1, 1);
    Vector a(1), b(1);
    a << 0.3;
    b << 0.3;

    const auto single = mi_mixture_estimate({a}, I1, 10000, rng);
    CHECK(single.value == doctest::Approx(0.0));
    CHECK(single.std_error == doctest::Approx(0.0));

    const auto coincident = mi_mixture_estimate({a, b}, I1, 10000, rng);
    CHECK(coincident.value <= 3.0 * coincident.std_error + 1e-12);

    CHECK_THROWS_AS(mi_mixture_estimate({a}, I1, 100, rng), InvalidArgument);
}

TEST_CASE("mixture MI: well-separated binary input carries one bit") {
    Rng rng = make_rng(7);
    Vector a(1), b(1);
    a << -5.0;
    b << 5.0;
    const auto est = mi_mixture_estimate({a, b}, Matrix::Identity(1, 1), 100000, rng);
    CHECK(std::abs(est.value - std::log(2.0)) < 0.01);
    CHECK(est.value <= std::log(2.0) + 3.0 * est.std_error + 1e-9);
}

TEST_CASE("mixture MI is bounded by the largest pairwise KL") {
    Rng rng = make_rng(9);
    const std::vector<Vector> means = {vec2(0.0, 0.0), vec2(0.4, 0.0), vec2(0.0, 0.6)};
    Matrix sigma(2, 2);
    sigma << 1.5, 0.2, 0.2, 1.0;
    const auto est = mi_mixture_estimate(means, sigma, 50000, rng);
    double max_kl = 0.0;
    for (std::size_t i = 0; i < means.size(); ++i)
        for (std::size_t j = 0; j < means.size(); ++j)
            if (i != j) max_kl = std::max(max_kl, kl_gaussian_shift(means[i] - means[j], sigma));
    CHECK(est.value <= max_kl + 3.0 * est.std_error);
}

TEST_CASE("mixture MI decreases as the noise grows") {
    const std::vector<Vector> means = {vec2(0.0, 0.0), vec2(1.0, 0.0), vec2(0.0, 1.0),
                                       vec2(1.0, 1.0)};
    double prev = 1e9;
    double prev_se = 0.0;
    for (double s2 : {0.5, 1.0, 2.0}) {
        Rng rng = make_rng(100 + static_cast<std::uint64_t>(s2 * 10));
        const auto est = mi_mixture_estimate(means, s2 * Matrix::Identity(2, 2), 50000, rng);
        CHECK(est.value <= prev + 3.0 * (est.std_error + prev_se));
        prev = est.value;
        prev_se = est.std_error;
    }
}

TEST_CASE("MI report serialization carries value, stderr, units, samples, seed") {
    Rng rng = make_rng(6);
    Vector a(1);
    a << 0.0;
    const auto est = mi_mixture_estimate({a}, Matrix::Identity(1, 1), 10000, rng);
    const auto j = est.to_json(6);
    CHECK(j.at("units") == "nats");
    CHECK(j.at("samples").get<long>() == 10000);
    CHECK(j.at("seed").get<std::uint64_t>() == 6);
    CHECK(j.contains("value"));
    CHECK(j.contains("stderr"));
}

TEST_CASE("mixture MI with product noise matches the Gaussian path") {
    const std::vector<Vector> means = {vec2(-1.0, 0.0), vec2(1.0, 0.0)};
    Rng r1 = make_rng(5), r2 = make_rng(5);
    const auto gauss = mi_mixture_estimate(means, Matrix::Identity(2, 2), 50000, r1);
    const std::vector<noise::NoiseModel> channel{noise::NoiseModel::gaussian(1.0),
                                                 noise::NoiseModel::gaussian(1.0)};
    const auto product = mi_mixture_estimate(means, channel, 50000, r2);
    CHECK(std::abs(gauss.value - product.value) <
          0.01 + 3.0 * (gauss.std_error + product.std_error));
}
