#include "nashbound/protocol.hpp"

#include <cmath>
#include <sstream>

namespace nashbound::protocol {

namespace {

// Substream tags keep every (channel, direction) pair on its own stream, so
// draws stay jointly independent and deterministic under the master seed.
enum : std::uint64_t {
    kTagUplinkUsn = 0x11,
    kTagUplinkCsn = 0x22,
    kTagDownlinkUsn = 0x33,
    kTagDownlinkCsn = 0x44
};

double constraint_value(const geometry::ConstraintSet& S, int p, const Vector& x) {
    if (S.kind() == geometry::SetKind::box) {
        const int axis = p / 2;
        return p % 2 == 0 ? S.lower()[axis] - x[axis] : x[axis] - S.upper()[axis];
    }
    return (x - S.center()).squaredNorm() - S.radius() * S.radius();
}

}  // namespace

nlohmann::json AlgorithmSpec::to_json() const {
    return nlohmann::json{{"id", id},
                          {"c", step_constant},
                          {"exponent", step_exponent},
                          {"projection", projection}};
}

AlgorithmSpec AlgorithmSpec::from_json(const nlohmann::json& j) {
    AlgorithmSpec a;
    a.id = j.value("id", std::string("noisy_gradient"));
    a.step_constant = j.value("c", 1.0);
    a.step_exponent = j.value("exponent", 1.0);
    a.projection = j.value("projection", true);
    return a;
}

AlgorithmSpec baseline_noisy_gradient(double c, double exponent) {
    if (!(c >= 0.0)) throw InvalidArgument("baseline_noisy_gradient: requires c >= 0");
    if (!(exponent > 0.5 && exponent <= 1.0))
        throw InvalidArgument("baseline_noisy_gradient: requires exponent in (0.5, 1]");
    AlgorithmSpec a;
    a.id = "noisy_gradient";
    a.step_constant = c;
    a.step_exponent = exponent;
    a.projection = true;
    return a;
}

Trace run_policy(const games::QuadraticGame& game, const noise::Topology& topo,
                 const noise::ChannelConfig& cfg, const PlayerPolicy& policy, bool projection,
                 int T, std::uint64_t seed, const std::string& algorithm_id) {
    if (T < 1) throw InvalidArgument("run: requires T >= 1");
    topo.validate();
    cfg.validate(topo);
    const int n = game.players();
    if (topo.players != n) throw InvalidArgument("run: topology/game player mismatch");
    const auto& S = game.action_space();
    const Matrix& A = game.curvature();

    // Every coefficient a_ij != 0 requires player j to reach USN pi(i).
    for (int i = 0; i < n; ++i) {
        const auto& members =
            topo.usn_members[static_cast<std::size_t>(topo.usn_of_player[i])];
        for (int j = 0; j < n; ++j) {
            if (A(i, j) == 0.0) continue;
            if (std::find(members.begin(), members.end(), j) == members.end())
                throw InvalidArgument("run: player " + std::to_string(j) +
                                      " does not reach the node computing for player " +
                                      std::to_string(i));
        }
    }

    // Per-channel substreams.
    std::vector<std::vector<Rng>> usn_up(static_cast<std::size_t>(topo.usn_count));
    for (int l = 0; l < topo.usn_count; ++l)
        for (int i = 0; i < n; ++i)
            usn_up[static_cast<std::size_t>(l)].push_back(make_rng(derive_seed(
                seed, {kTagUplinkUsn, static_cast<std::uint64_t>(l),
                       static_cast<std::uint64_t>(i)})));
    std::vector<std::vector<Rng>> csn_up(static_cast<std::size_t>(topo.csn_count));
    for (int m = 0; m < topo.csn_count; ++m)
        for (int i = 0; i < n; ++i)
            csn_up[static_cast<std::size_t>(m)].push_back(make_rng(derive_seed(
                seed, {kTagUplinkCsn, static_cast<std::uint64_t>(m),
                       static_cast<std::uint64_t>(i)})));
    std::vector<Rng> down_usn;
    for (int i = 0; i < n; ++i)
        down_usn.push_back(
            make_rng(derive_seed(seed, {kTagDownlinkUsn, static_cast<std::uint64_t>(i)})));
    std::vector<std::vector<Rng>> down_csn(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (std::size_t d = 0; d < topo.constraints_of_player[static_cast<std::size_t>(i)].size();
             ++d)
            down_csn[static_cast<std::size_t>(i)].push_back(make_rng(
                derive_seed(seed, {kTagDownlinkCsn, static_cast<std::uint64_t>(i),
                                   static_cast<std::uint64_t>(d)})));

    std::size_t z_width = 0;
    for (int i = 0; i < n; ++i)
        z_width += topo.constraints_of_player[static_cast<std::size_t>(i)].size();

    Trace trace;
    trace.X.resize(T, n);
    trace.Y_hat.resize(T, n);
    trace.Z_hat.resize(T, static_cast<long>(z_width));
    trace.Y_clean.resize(T, n);
    trace.Y_noiseless.resize(T, n);
    trace.usn_received.reserve(static_cast<std::size_t>(T));
    trace.seed = seed;
    trace.algorithm_id = algorithm_id;

    std::normal_distribution<double> std_normal(0.0, 1.0);
    Vector x = S.centroid();  // X_1, shared by every game

    for (int k = 1; k <= T; ++k) {
        const int row = k - 1;
        trace.X.row(row) = x.transpose();

        // Uplink to USNs: fresh noise per (node, player).
        Matrix received(topo.usn_count, n);
        for (int l = 0; l < topo.usn_count; ++l) {
            const double sd =
                std::sqrt(cfg.uplink_usn_var[static_cast<std::size_t>(l)]);
            for (int i = 0; i < n; ++i) {
                const double w =
                    sd > 0.0 ? sd * std_normal(usn_up[static_cast<std::size_t>(l)]
                                                     [static_cast<std::size_t>(i)])
                             : 0.0;
                received(l, i) = x[i] + w;
            }
        }
        trace.usn_received.push_back(received);

        // Node outputs: own-action partial derivative at the received profile.
        for (int i = 0; i < n; ++i) {
            const int l = topo.usn_of_player[static_cast<std::size_t>(i)];
            double y = -A.row(i).dot(game.nash_point());
            const auto& members = topo.usn_members[static_cast<std::size_t>(l)];
            for (int j : members) y += A(i, j) * received(l, j);
            trace.Y_clean(row, i) = y;
            const auto& model = cfg.downlink[static_cast<std::size_t>(i)];
            trace.Y_hat(row, i) = y + (model ? model->sample(down_usn[static_cast<std::size_t>(i)])
                                             : 0.0);
        }
        trace.Y_noiseless.row(row) = game.pseudo_gradient(x).transpose();

        // Constraint nodes.
        std::vector<double> z(static_cast<std::size_t>(topo.constraints), 0.0);
        if (topo.constraints > 0) {
            Matrix csn_received(std::max(topo.csn_count, 1), n);
            for (int m = 0; m < topo.csn_count; ++m) {
                const double sd =
                    std::sqrt(cfg.uplink_csn_var[static_cast<std::size_t>(m)]);
                for (int i = 0; i < n; ++i) {
                    const double w =
                        sd > 0.0 ? sd * std_normal(csn_up[static_cast<std::size_t>(m)]
                                                         [static_cast<std::size_t>(i)])
                                 : 0.0;
                    csn_received(m, i) = x[i] + w;
                }
            }
            for (int p = 0; p < topo.constraints; ++p) {
                const int m = topo.csn_of_constraint[static_cast<std::size_t>(p)];
                z[static_cast<std::size_t>(p)] =
                    constraint_value(S, p, csn_received.row(m).transpose());
            }
        }
        std::size_t col = 0;
        for (int i = 0; i < n; ++i) {
            const auto& deps = topo.constraints_of_player[static_cast<std::size_t>(i)];
            for (std::size_t d = 0; d < deps.size(); ++d) {
                const auto& model = cfg.downlink[static_cast<std::size_t>(i)];
                const double v =
                    model ? model->sample(down_csn[static_cast<std::size_t>(i)][d]) : 0.0;
                trace.Z_hat(row, static_cast<long>(col++)) =
                    z[static_cast<std::size_t>(deps[d])] + v;
            }
        }

        // Update. Locality: player i sees only its own action and yhat entry.
        Vector next(n);
        for (int i = 0; i < n; ++i) next[i] = policy(i, k, x[i], trace.Y_hat(row, i));
        if (projection) {
            if (S.kind() == geometry::SetKind::box) {
                for (int i = 0; i < n; ++i)
                    next[i] = std::clamp(next[i], S.lower()[i], S.upper()[i]);
            } else {
                next = S.project(next);
            }
        }
        x = next;
    }
    trace.output = x;
    return trace;
}

Trace run(const games::QuadraticGame& game, const noise::Topology& topo,
          const noise::ChannelConfig& cfg, const AlgorithmSpec& alg, int T,
          std::uint64_t seed) {
    if (alg.id != "noisy_gradient" && alg.id != "constant")
        throw InvalidArgument("run: unknown algorithm id '" + alg.id + "'");
    const double c = alg.id == "constant" ? 0.0 : alg.step_constant;
    const double q = alg.step_exponent;
    const PlayerPolicy policy = [c, q](int, int k, double x_i, double yhat_i) {
        return x_i + c / std::pow(static_cast<double>(k), q) * yhat_i;
    };
    return run_policy(game, topo, cfg, policy, alg.projection, T, seed, alg.id);
}

double empirical_power(const Trace& trace) {
    if (trace.steps() == 0) return 0.0;
    double total = 0.0;
    for (int k = 0; k < trace.steps(); ++k) total += trace.Y_noiseless.row(k).squaredNorm();
    return total / trace.steps();
}

nlohmann::json Trace::to_json() const {
    nlohmann::json j;
    j["seed"] = seed;
    j["game_id"] = game_id;
    j["algorithm_id"] = algorithm_id;
    j["steps"] = steps();
    auto dump_matrix = [](const Matrix& m) {
        nlohmann::json rows = nlohmann::json::array();
        for (int r = 0; r < m.rows(); ++r) {
            std::vector<double> row(static_cast<std::size_t>(m.cols()));
            for (int c = 0; c < m.cols(); ++c) row[static_cast<std::size_t>(c)] = m(r, c);
            rows.push_back(row);
        }
        return rows;
    };
    j["X"] = dump_matrix(X);
    j["Y_hat"] = dump_matrix(Y_hat);
    j["Z_hat"] = dump_matrix(Z_hat);
    j["output"] = std::vector<double>(output.begin(), output.end());
    return j;
}

std::string Trace::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "step";
    for (int i = 0; i < X.cols(); ++i) os << ",x" << i;
    for (int i = 0; i < Y_hat.cols(); ++i) os << ",yhat" << i;
    for (int i = 0; i < Z_hat.cols(); ++i) os << ",zhat" << i;
    os << "\n";
    for (int k = 0; k < steps(); ++k) {
        os << (k + 1);
        for (int i = 0; i < X.cols(); ++i) os << "," << X(k, i);
        for (int i = 0; i < Y_hat.cols(); ++i) os << "," << Y_hat(k, i);
        for (int i = 0; i < Z_hat.cols(); ++i) os << "," << Z_hat(k, i);
        os << "\n";
    }
    return os.str();
}

}  // namespace nashbound::protocol
