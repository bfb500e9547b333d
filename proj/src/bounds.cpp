#include "nashbound/bounds.hpp"

#include "nashbound/games.hpp"

#include <algorithm>
#include <cmath>

namespace nashbound::bounds {

namespace {

const char* kVacuous = "vacuous";

BoundReport make_report(Theorem t, double raw, nlohmann::json inputs,
                        std::vector<std::string> caveats = {}) {
    BoundReport r;
    r.theorem = t;
    r.inputs = std::move(inputs);
    r.caveats = std::move(caveats);
    if (raw <= 0.0 || !std::isfinite(raw)) {
        r.value = std::max(raw, 0.0);
        if (raw <= 0.0) {
            r.value = 0.0;
            r.caveats.emplace_back(kVacuous);
        }
    } else {
        r.value = raw;
    }
    return r;
}

}  // namespace

std::string theorem_name(Theorem t) {
    switch (t) {
        case Theorem::T1: return "T1";
        case Theorem::C1: return "C1";
        case Theorem::T2: return "T2";
        case Theorem::T3: return "T3";
        case Theorem::T4: return "T4";
    }
    return "?";
}

nlohmann::json BoundReport::to_json() const {
    return nlohmann::json{{"theorem", theorem_name(theorem)},
                          {"value", value},
                          {"units", "iterations (logs in nats)"},
                          {"inputs", inputs},
                          {"caveats", caveats}};
}

BoundReport theorem1_bound(double logM, double C_down, double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        throw InvalidArgument("theorem1_bound: requires 0 < delta < 1");
    if (!(C_down > 0.0)) throw ZeroCapacityError("theorem1_bound: requires C_down > 0");
    const double raw = ((1.0 - delta) * logM - 1.0) / C_down;
    return make_report(Theorem::T1, raw,
                       {{"logM", logM}, {"C_down", C_down}, {"delta", delta}});
}

BoundReport corollary1_bound(const geometry::ConstraintSet& S, double epsilon, double delta,
                             double C_down) {
    if (!(delta > 0.0 && delta < 1.0))
        throw InvalidArgument("corollary1_bound: requires 0 < delta < 1");
    if (!(C_down > 0.0)) throw ZeroCapacityError("corollary1_bound: requires C_down > 0");
    if (!(epsilon > 0.0)) throw InvalidArgument("corollary1_bound: requires epsilon > 0");
    const int n = S.dimension();
    const double slack = S.volume() - epsilon * S.surface_area();
    nlohmann::json inputs{{"epsilon", epsilon},
                          {"delta", delta},
                          {"C_down", C_down},
                          {"volume", S.volume()},
                          {"surface_area", S.surface_area()},
                          {"players", n}};
    if (!(slack > 0.0)) {
        auto r = make_report(Theorem::C1, 0.0, std::move(inputs));
        return r;
    }
    const double raw =
        ((1.0 - delta) * (n * std::log(1.0 / (2.0 * epsilon)) + std::log(slack)) - 1.0) / C_down;
    return make_report(Theorem::C1, raw, std::move(inputs));
}

BoundReport theorem2_bound(double min_sigma2, double gamma, double epsilon, double delta) {
    if (delta > 0.5) throw DeltaTooLargeError("theorem2_bound: requires delta <= 0.5");
    if (!(delta > 0.0)) throw InvalidArgument("theorem2_bound: requires delta > 0");
    if (!(min_sigma2 > 0.0 && gamma > 0.0 && epsilon > 0.0))
        throw InvalidArgument("theorem2_bound: requires positive sigma^2, gamma, epsilon");
    const double raw =
        (2.0 * (1.0 - delta) - 1.0) * min_sigma2 / (4.0 * gamma * gamma * epsilon * epsilon);
    return make_report(Theorem::T2, raw,
                       {{"min_sigma2", min_sigma2},
                        {"gamma", gamma},
                        {"epsilon", epsilon},
                        {"delta", delta}});
}

BoundReport theorem3_bound(int players, double gamma, double epsilon, double delta,
                           double max_fisher) {
    if (delta > 0.5) throw DeltaTooLargeError("theorem3_bound: requires delta <= 0.5");
    if (!(delta > 0.0)) throw InvalidArgument("theorem3_bound: requires delta > 0");
    if (players < 1 || !(gamma > 0.0 && epsilon > 0.0 && max_fisher > 0.0))
        throw InvalidArgument("theorem3_bound: requires positive inputs");
    const double raw = (2.0 * (1.0 - delta) - 1.0) /
                       (4.0 * players * epsilon * epsilon * gamma * gamma * max_fisher);
    return make_report(Theorem::T3, raw,
                       {{"players", players},
                        {"gamma", gamma},
                        {"epsilon", epsilon},
                        {"delta", delta},
                        {"max_fisher", max_fisher}},
                       {"leading order; cubic remainder of the shift expansion dropped"});
}

BoundReport theorem4_bound(const std::vector<Candidate>& candidates,
                           const noise::Topology& topo, const noise::ChannelConfig& cfg,
                           double delta, long mc_samples, Rng& rng) {
    if (candidates.empty()) throw InvalidArgument("theorem4_bound: no candidates");
    if (!(delta > 0.0 && delta < 1.0))
        throw InvalidArgument("theorem4_bound: requires 0 < delta < 1");
    cfg.validate(topo);

    const bool gaussian_path = cfg.all_downlink_gaussian();
    const bool product_path = cfg.uplink_noiseless() &&
                              std::all_of(cfg.downlink.begin(), cfg.downlink.end(),
                                          [](const auto& m) { return m.has_value(); });
    if (!gaussian_path && !product_path)
        throw InvalidArgument(
            "theorem4_bound: supported channels are all-Gaussian, or noiseless uplink with "
            "downlink models on every player");

    nlohmann::json table = nlohmann::json::array();
    double best = 0.0;
    std::vector<std::string> caveats{"Monte Carlo MI; certified over the candidate list only"};
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        const Candidate& cand = candidates[c];
        const int n = topo.players;
        if (cand.A.rows() != n || cand.A.cols() != n)
            throw InvalidArgument("theorem4_bound: candidate A dimension mismatch");
        if (cand.A != cand.A.transpose())
            throw NotNegativeDefiniteError("theorem4_bound: candidate A must be symmetric");
        Eigen::SelfAdjointEigenSolver<Matrix> eig(cand.A, Eigen::EigenvaluesOnly);
        if (eig.eigenvalues().maxCoeff() >= -1e-12)
            throw NotNegativeDefiniteError(
                "theorem4_bound: candidate A must be negative definite");
        if (cand.packing.points.empty())
            throw InvalidArgument("theorem4_bound: candidate packing is empty");

        std::vector<Vector> means;
        means.reserve(cand.packing.points.size());
        for (const Vector& p : cand.packing.points) means.push_back(-cand.A * p);

        divergence::MiEstimate mi;
        if (gaussian_path) {
            const Matrix sigma = noise::covariance_sigma_AG(cand.A, topo, cfg);
            mi = divergence::mi_mixture_estimate(means, sigma, mc_samples, rng);
        } else {
            std::vector<noise::NoiseModel> channel;
            for (const auto& m : cfg.downlink) channel.push_back(*m);
            mi = divergence::mi_mixture_estimate(means, channel, mc_samples, rng);
        }

        const double numerator =
            (1.0 - delta) * std::log(static_cast<double>(means.size())) - 1.0;
        double value;
        if (numerator <= 0.0) {
            value = 0.0;
        } else if (mi.value <= 1e-9) {
            value = numerator / std::max(mi.value + 3.0 * mi.std_error, 1e-9);
            caveats.emplace_back("candidate " + std::to_string(c) +
                                 ": MI statistically zero; conservative denominator used");
        } else {
            value = numerator / mi.value;
        }
        best = std::max(best, value);
        table.push_back({{"label", cand.label},
                         {"packing_size", means.size()},
                         {"mi", mi.value},
                         {"mi_stderr", mi.std_error},
                         {"bound", value}});
    }
    return make_report(Theorem::T4, best,
                       {{"delta", delta}, {"mc_samples", mc_samples}, {"candidates", table}},
                       std::move(caveats));
}

std::vector<Candidate> default_candidates(const geometry::ConstraintSet& S, double epsilon,
                                          double gamma, Rng& rng) {
    const int n = S.dimension();
    std::vector<Matrix> mats;
    mats.push_back(-gamma * Matrix::Identity(n, n));
    {
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        Matrix R(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) R(i, j) = R(j, i) = unif(rng);
        Eigen::SelfAdjointEigenSolver<Matrix> eig(R, Eigen::EigenvaluesOnly);
        const double norm_r = eig.eigenvalues().cwiseAbs().maxCoeff();
        if (norm_r > 0.0) R /= norm_r;
        Matrix M = Matrix::Identity(n, n) + 0.1 * R;  // eigenvalues in [0.9, 1.1]
        Eigen::SelfAdjointEigenSolver<Matrix> eig_m(M, Eigen::EigenvaluesOnly);
        mats.push_back(-1.2 * gamma * M / eig_m.eigenvalues().cwiseAbs().maxCoeff());
    }

    std::vector<geometry::PackingResult> packs;
    try {
        packs.push_back(games::theorem2_ensemble(S, epsilon, gamma).packing);
    } catch (const BallDoesNotFitError&) {
        // The four-point construction does not fit; lattice subsets only.
    }
    // Lattice at double spacing gives pairwise separation 4*eps; spread
    // subsets by farthest-point selection.
    try {
        std::vector<Vector> coarse = geometry::lattice_points(S, 2.0 * epsilon);
        if (coarse.size() >= 2) {
            const Vector c = S.centroid();
            std::size_t start = 0;
            double far = -1.0;
            for (std::size_t i = 0; i < coarse.size(); ++i) {
                const double d = (coarse[i] - c).norm();
                if (d > far) {
                    far = d;
                    start = i;
                }
            }
            std::vector<Vector> ordered{coarse[start]};
            std::vector<double> mind(coarse.size());
            for (std::size_t i = 0; i < coarse.size(); ++i)
                mind[i] = (coarse[i] - ordered[0]).norm();
            while (ordered.size() < std::min<std::size_t>(8, coarse.size())) {
                std::size_t arg = 0;
                double best = -1.0;
                for (std::size_t i = 0; i < coarse.size(); ++i)
                    if (mind[i] > best) {
                        best = mind[i];
                        arg = i;
                    }
                if (best <= 0.0) break;
                ordered.push_back(coarse[arg]);
                for (std::size_t i = 0; i < coarse.size(); ++i)
                    mind[i] = std::min(mind[i], (coarse[i] - ordered.back()).norm());
            }
            for (std::size_t k : {std::size_t{2}, std::size_t{4}, std::size_t{8}}) {
                if (ordered.size() < k) continue;
                geometry::PackingResult pr;
                pr.epsilon = epsilon;
                pr.method = geometry::PackingMethod::lattice;
                pr.points.assign(ordered.begin(), ordered.begin() + static_cast<long>(k));
                packs.push_back(std::move(pr));
            }
        }
    } catch (const EnumerationBudgetExceeded&) {
    }

    std::vector<Candidate> out;
    for (std::size_t mi = 0; mi < mats.size(); ++mi)
        for (std::size_t pi = 0; pi < packs.size(); ++pi)
            out.push_back(Candidate{mats[mi], packs[pi],
                                    "A" + std::to_string(mi) + "/P" + std::to_string(pi)});
    return out;
}

}  // namespace nashbound::bounds
