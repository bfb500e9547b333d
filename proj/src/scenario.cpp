#include "nashbound/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace nashbound::cli {

namespace {

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

games::HardEnsemble build_ensemble(const EnsembleSpec& spec,
                                   const geometry::ConstraintSet& S) {
    if (spec.type == "theorem2")
        return games::theorem2_ensemble(S, spec.epsilon, spec.gamma, spec.A);
    if (spec.type == "theorem1")
        return games::theorem1_ensemble(S, spec.epsilon, spec.A, spec.packing_seed,
                                        spec.restarts);
    throw InvalidArgument("ensemble.type must be 'theorem1' or 'theorem2'");
}

}  // namespace

games::HardEnsemble EnsembleSpec::build(const geometry::ConstraintSet& S) const {
    return build_ensemble(*this, S);
}

double EnsembleSpec::effective_gamma() const {
    if (A) {
        Eigen::SelfAdjointEigenSolver<Matrix> eig(*A, Eigen::EigenvaluesOnly);
        return eig.eigenvalues().cwiseAbs().maxCoeff();
    }
    return type == "theorem2" ? gamma : 1.0;  // theorem1 defaults to -I
}

nlohmann::json ScenarioConfig::to_json() const {
    nlohmann::json j;
    j["constraint_set"] = constraint_set.to_json();
    j["topology"] = topology.to_json();
    j["channels"] = channels.to_json();
    nlohmann::json ens{{"type", ensemble.type},
                       {"epsilon", ensemble.epsilon},
                       {"gamma", ensemble.gamma},
                       {"packing_seed", ensemble.packing_seed},
                       {"restarts", ensemble.restarts}};
    if (ensemble.A) {
        std::vector<double> a;
        for (int r = 0; r < ensemble.A->rows(); ++r)
            for (int c = 0; c < ensemble.A->cols(); ++c) a.push_back((*ensemble.A)(r, c));
        ens["A"] = a;
    }
    j["ensemble"] = ens;
    j["algorithm"] = algorithm.to_json();
    j["experiment"] = nlohmann::json{{"delta", experiment.delta},
                                     {"T_max", experiment.T_max},
                                     {"trials", experiment.trials},
                                     {"seed", experiment.seed},
                                     {"genie_T_list", experiment.genie_T_list},
                                     {"run_genie", experiment.run_genie},
                                     {"run_complexity", experiment.run_complexity}};
    j["bounds"] = nlohmann::json{{"theorems", bounds_params.theorems},
                                 {"mc_samples", bounds_params.mc_samples}};
    if (kl) {
        j["kl"] = nlohmann::json{{"model", kl->model.to_json()}, {"shifts", kl->shifts}};
    }
    j["pack"] = nlohmann::json{
        {"epsilon", pack.epsilon}, {"seed", pack.seed}, {"restarts", pack.restarts}};
    j["simulate"] =
        nlohmann::json{{"T", simulate.T}, {"game_index", simulate.game_index}};
    return j;
}

ScenarioConfig parse_config_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ConfigError({"JSON syntax error at line " + std::to_string(line) + ", column " +
                           std::to_string(col) + ": " + e.what()});
    }

    std::vector<std::string> errors;
    ScenarioConfig cfg;

    // constraint_set
    bool have_set = false;
    if (!j.contains("constraint_set")) {
        errors.emplace_back("constraint_set: required");
    } else {
        try {
            cfg.constraint_set = geometry::ConstraintSet::from_json(j.at("constraint_set"));
            have_set = true;
        } catch (const std::exception& e) {
            errors.emplace_back(std::string("constraint_set: ") + e.what());
        }
    }
    const int n = have_set ? cfg.constraint_set.dimension() : 0;

    // topology
    bool have_topo = false;
    if (have_set) {
        try {
            if (j.contains("topology") && j.at("topology").contains("usn_of_player")) {
                nlohmann::json tj = j.at("topology");
                tj["players"] = n;
                if (!tj.contains("constraints"))
                    tj["constraints"] = noise::constraint_count(cfg.constraint_set);
                cfg.topology = noise::Topology::from_json(tj);
                if (cfg.constraint_set.kind() == geometry::SetKind::box &&
                    cfg.topology.constraints == 2 * n)
                    for (int i = 0; i < n; ++i)
                        cfg.topology.constraints_of_player[static_cast<std::size_t>(i)] = {
                            2 * i, 2 * i + 1};
            } else {
                const bool shared =
                    !j.contains("topology") || j.at("topology").value("shared_usn", true);
                cfg.topology = noise::default_topology(cfg.constraint_set, shared);
            }
            have_topo = true;
        } catch (const std::exception& e) {
            errors.emplace_back(std::string("topology: ") + e.what());
        }
    }

    // channels
    if (have_topo) {
        try {
            if (j.contains("channels")) {
                cfg.channels = noise::ChannelConfig::from_json(j.at("channels"));
            } else {
                cfg.channels = noise::ChannelConfig::gaussian(cfg.topology, 0.0, 0.0, 1.0, 0.0);
            }
            cfg.channels.validate(cfg.topology);
        } catch (const std::exception& e) {
            errors.emplace_back(std::string("channels: ") + e.what());
        }
    }

    // ensemble
    if (j.contains("ensemble")) {
        const auto& ej = j.at("ensemble");
        cfg.ensemble.type = ej.value("type", std::string("theorem2"));
        cfg.ensemble.epsilon = ej.value("epsilon", 0.1);
        cfg.ensemble.gamma = ej.value("gamma", 1.0);
        cfg.ensemble.packing_seed = ej.value("packing_seed", std::uint64_t{0});
        cfg.ensemble.restarts = ej.value("restarts", 8);
        if (cfg.ensemble.type != "theorem1" && cfg.ensemble.type != "theorem2")
            errors.emplace_back("ensemble.type: must be 'theorem1' or 'theorem2', got '" +
                                cfg.ensemble.type + "'");
        if (!(cfg.ensemble.epsilon > 0.0)) errors.emplace_back("ensemble.epsilon: must be > 0");
        if (!(cfg.ensemble.gamma > 0.0)) errors.emplace_back("ensemble.gamma: must be > 0");
        if (ej.contains("A") && n > 0) {
            const auto a = ej.at("A").get<std::vector<double>>();
            if (a.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
                errors.emplace_back("ensemble.A: needs " + std::to_string(n * n) +
                                    " row-major entries");
            } else {
                Matrix A(n, n);
                for (int r = 0; r < n; ++r)
                    for (int c = 0; c < n; ++c) A(r, c) = a[static_cast<std::size_t>(r) * n + c];
                cfg.ensemble.A = A;
            }
        }
    }

    // algorithm
    if (j.contains("algorithm")) {
        try {
            cfg.algorithm = protocol::AlgorithmSpec::from_json(j.at("algorithm"));
            if (cfg.algorithm.id == "noisy_gradient")
                cfg.algorithm = [&] {
                    auto a = protocol::baseline_noisy_gradient(cfg.algorithm.step_constant,
                                                               cfg.algorithm.step_exponent);
                    a.projection = cfg.algorithm.projection;
                    return a;
                }();
        } catch (const std::exception& e) {
            errors.emplace_back(std::string("algorithm: ") + e.what());
        }
    } else {
        cfg.algorithm = protocol::baseline_noisy_gradient(1.0, 1.0);
    }

    // experiment
    if (j.contains("experiment")) {
        const auto& xj = j.at("experiment");
        cfg.experiment.delta = xj.value("delta", 0.25);
        cfg.experiment.T_max = xj.value("T_max", 500);
        cfg.experiment.trials = xj.value("trials", long{2000});
        cfg.experiment.seed = xj.value("seed", std::uint64_t{1});
        cfg.experiment.genie_T_list = xj.value("genie_T_list", std::vector<int>{});
        cfg.experiment.run_genie = xj.value("run_genie", true);
        cfg.experiment.run_complexity = xj.value("run_complexity", true);
        if (!(cfg.experiment.delta > 0.0 && cfg.experiment.delta < 1.0))
            errors.emplace_back("experiment.delta: must lie in (0,1)");
        if (cfg.experiment.T_max < 1) errors.emplace_back("experiment.T_max: must be >= 1");
        if (cfg.experiment.trials < 1) errors.emplace_back("experiment.trials: must be >= 1");
    }

    // bounds
    if (j.contains("bounds")) {
        const auto& bj = j.at("bounds");
        cfg.bounds_params.theorems = bj.value("theorems", std::vector<std::string>{});
        cfg.bounds_params.mc_samples = bj.value("mc_samples", long{100000});
        if (bj.contains("C_down")) {
            cfg.bounds_params.C_down = bj.at("C_down").get<double>();
            if (!(*cfg.bounds_params.C_down > 0.0))
                errors.emplace_back("bounds.C_down: must be > 0 (nats)");
        }
        for (const auto& t : cfg.bounds_params.theorems) {
            if (t != "T1" && t != "C1" && t != "T2" && t != "T3" && t != "T4") {
                errors.emplace_back("bounds.theorems: unknown theorem '" + t + "'");
            } else if ((t == "T2" || t == "T3") && cfg.experiment.delta > 0.5) {
                errors.emplace_back("bounds.theorems: " + t +
                                    " requires delta <= 0.5 (experiment.delta = " +
                                    std::to_string(cfg.experiment.delta) + ")");
            }
        }
    }

    // kl
    if (j.contains("kl")) {
        try {
            KlParams kp;
            kp.model = noise::NoiseModel::from_json(j.at("kl").at("model"));
            kp.shifts = j.at("kl").value("shifts", std::vector<double>{0.2, 0.1, 0.05, 0.025});
            cfg.kl = std::move(kp);
        } catch (const std::exception& e) {
            errors.emplace_back(std::string("kl: ") + e.what());
        }
    }

    // pack
    if (j.contains("pack")) {
        const auto& pj = j.at("pack");
        cfg.pack.epsilon = pj.value("epsilon", cfg.ensemble.epsilon);
        cfg.pack.seed = pj.value("seed", std::uint64_t{0});
        cfg.pack.restarts = pj.value("restarts", 8);
        if (!(cfg.pack.epsilon > 0.0)) errors.emplace_back("pack.epsilon: must be > 0");
        if (cfg.pack.restarts < 1) errors.emplace_back("pack.restarts: must be >= 1");
    } else {
        cfg.pack.epsilon = cfg.ensemble.epsilon;
    }

    // simulate
    if (j.contains("simulate")) {
        const auto& sj = j.at("simulate");
        cfg.simulate.T = sj.value("T", 50);
        cfg.simulate.game_index = sj.value("game_index", 0);
        if (cfg.simulate.T < 1) errors.emplace_back("simulate.T: must be >= 1");
        if (cfg.simulate.game_index < 0)
            errors.emplace_back("simulate.game_index: must be >= 0");
    }

    if (!errors.empty()) throw ConfigError(std::move(errors));
    return cfg;
}

ScenarioConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot open config file '" + path + "'"});
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

namespace {

struct OutputWriter {
    std::filesystem::path dir;
    std::string stamp_comment;  // CSV header comment
    nlohmann::json stamp_json;
    std::string format;
    bool bits = false;

    double info(double nats) const { return bits ? nats / std::numbers::ln2 : nats; }
    const char* info_units() const { return bits ? "bits" : "nats"; }

    void write_atomic(const std::filesystem::path& path, const std::string& content) const {
        const std::filesystem::path tmp = path.string() + ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary);
            out << content;
        }
        std::filesystem::rename(tmp, path);
    }

    void json_file(const std::string& name, nlohmann::json body) const {
        if (format == "csv") return;
        for (auto it = stamp_json.begin(); it != stamp_json.end(); ++it)
            body[it.key()] = it.value();
        write_atomic(dir / name, body.dump(2) + "\n");
    }

    void csv_file(const std::string& name, const std::string& table) const {
        if (format == "json") return;
        write_atomic(dir / name, stamp_comment + table);
    }
};

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

int run_pack(const ScenarioConfig& cfg, const OutputWriter& out) {
    const auto& S = cfg.constraint_set;
    const double eps = cfg.pack.epsilon;
    const geometry::PackingResult packing =
        geometry::greedy_packing(S, eps, cfg.pack.seed, cfg.pack.restarts);
    long long lattice = -1;
    try {
        lattice = geometry::lattice_count(S, eps);
    } catch (const EnumerationBudgetExceeded&) {
    }
    nlohmann::json j;
    j["packing"] = packing.to_json();
    j["greedy_count"] = packing.count();
    j["lattice_count"] = lattice;
    j["lattice_lower_bound"] = geometry::lattice_lower_bound(S, eps);
    j["kolmogorov_capacity"] = out.info(geometry::kolmogorov_capacity_estimate(S, eps));
    j["capacity_units"] = out.info_units();
    j["isoperimetric_ratio"] = geometry::isoperimetric_ratio(S);
    j["volume"] = S.volume();
    j["surface_area"] = S.surface_area();
    out.json_file("packing.json", j);

    std::ostringstream csv;
    csv << "index";
    for (int d = 0; d < S.dimension(); ++d) csv << ",x" << d;
    csv << "\n";
    for (std::size_t i = 0; i < packing.points.size(); ++i) {
        csv << i;
        for (int d = 0; d < S.dimension(); ++d)
            csv << "," << format_double(packing.points[i][d]);
        csv << "\n";
    }
    out.csv_file("points.csv", csv.str());
    return 0;
}

int run_bounds(const ScenarioConfig& cfg, const OutputWriter& out, std::uint64_t seed) {
    const auto& S = cfg.constraint_set;
    const double eps = cfg.ensemble.epsilon;
    const double delta = cfg.experiment.delta;
    std::vector<std::string> wanted = cfg.bounds_params.theorems;
    if (wanted.empty()) {
        wanted = {"T1", "C1", "T4"};
        if (delta <= 0.5) {
            if (cfg.channels.all_downlink_gaussian()) wanted.emplace_back("T2");
            if (cfg.channels.uplink_noiseless()) wanted.emplace_back("T3");
        }
    }
    const auto requested = [&wanted](const char* t) {
        return std::find(wanted.begin(), wanted.end(), t) != wanted.end();
    };

    std::vector<bounds::BoundReport> reports;
    std::vector<std::string> skipped;
    if (requested("T1") || requested("C1")) {
        std::optional<double> c_down = cfg.bounds_params.C_down;
        if (!c_down) {
            // Water-filling gives the capacity for Gaussian downlinks only.
            if (cfg.channels.alpha > 0.0 && cfg.channels.all_downlink_gaussian()) {
                std::vector<double> vars;
                for (const auto& m : cfg.channels.downlink) vars.push_back(m->variance());
                const double wf = noise::downlink_capacity(vars, cfg.channels.alpha);
                if (wf > 0.0)
                    c_down = wf;
                else
                    skipped.emplace_back("T1/C1: zero downlink capacity (alpha too small)");
            } else {
                skipped.emplace_back(
                    "T1/C1: need Gaussian downlinks with alpha > 0, or bounds.C_down");
            }
        }
        if (c_down) {
            if (requested("T1"))
                reports.push_back(bounds::theorem1_bound(
                    geometry::kolmogorov_capacity_estimate(S, eps), *c_down, delta));
            if (requested("C1"))
                reports.push_back(bounds::corollary1_bound(S, eps, delta, *c_down));
            if (cfg.bounds_params.C_down)
                for (auto& r : reports) r.caveats.emplace_back("capacity supplied by caller");
        }
    }
    const double gamma = cfg.ensemble.effective_gamma();
    if (requested("T2")) {
        if (cfg.channels.all_downlink_gaussian())
            reports.push_back(bounds::theorem2_bound(cfg.channels.min_downlink_variance(),
                                                     gamma, eps, delta));
        else
            skipped.emplace_back("T2: needs Gaussian downlink models");
    }
    if (requested("T3")) {
        double max_fisher = 0.0;
        bool ok = cfg.channels.uplink_noiseless();
        if (ok)
            for (const auto& m : cfg.channels.downlink) {
                if (!m) {
                    ok = false;
                    break;
                }
                max_fisher = std::max(max_fisher, noise::fisher_information(*m));
            }
        if (ok)
            reports.push_back(bounds::theorem3_bound(cfg.topology.players, gamma, eps,
                                                     delta, max_fisher));
        else
            skipped.emplace_back("T3: needs noiseless uplink and a downlink model per player");
    }
    if (requested("T4")) {
        Rng rng = make_rng(derive_seed(seed, {0x74346269ULL}));
        try {
            const auto cands = bounds::default_candidates(S, eps, gamma, rng);
            reports.push_back(bounds::theorem4_bound(cands, cfg.topology, cfg.channels, delta,
                                                     cfg.bounds_params.mc_samples, rng));
        } catch (const InvalidArgument& e) {
            skipped.emplace_back(std::string("T4: ") + e.what());
        }
    }

    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json rj = r.to_json();
        if (out.bits) {
            // Display-only conversion of the echoed information quantities.
            for (const char* key : {"logM", "C_down"})
                if (rj["inputs"].contains(key))
                    rj["inputs"][key] = out.info(rj["inputs"][key].get<double>());
            if (rj["inputs"].contains("candidates"))
                for (auto& cand : rj["inputs"]["candidates"]) {
                    cand["mi"] = out.info(cand["mi"].get<double>());
                    cand["mi_stderr"] = out.info(cand["mi_stderr"].get<double>());
                }
            rj["units"] = "iterations (logs in bits)";
        }
        arr.push_back(rj);
    }
    nlohmann::json j;
    j["bounds"] = arr;
    j["skipped"] = skipped;
    out.json_file("bounds.json", j);

    std::ostringstream csv;
    csv << "theorem,value,log_units,caveats\n";
    for (const auto& r : reports) {
        std::string caveats;
        for (std::size_t i = 0; i < r.caveats.size(); ++i)
            caveats += (i ? "; " : "") + r.caveats[i];
        csv << bounds::theorem_name(r.theorem) << "," << format_double(r.value) << ","
            << out.info_units() << ",\"" << caveats << "\"\n";
    }
    out.csv_file("bounds.csv", csv.str());
    return 0;
}

int run_simulate(const ScenarioConfig& cfg, const OutputWriter& out, std::uint64_t seed) {
    games::HardEnsemble ensemble = cfg.ensemble.build(cfg.constraint_set);
    const int gi = cfg.simulate.game_index;
    if (gi >= static_cast<int>(ensemble.size()))
        throw ConfigError({"simulate.game_index: only " + std::to_string(ensemble.size()) +
                           " games in the ensemble"});
    protocol::Trace trace =
        protocol::run(ensemble.games[static_cast<std::size_t>(gi)], cfg.topology, cfg.channels,
                      cfg.algorithm, cfg.simulate.T, seed);
    trace.game_id = "game" + std::to_string(gi);
    const double power = protocol::empirical_power(trace);

    nlohmann::json j = trace.to_json();
    j["empirical_power"] = power;
    j["alpha"] = cfg.channels.alpha;
    j["power_exceeds_alpha"] = cfg.channels.alpha > 0.0 && power > cfg.channels.alpha;
    out.json_file("trace.json", j);
    out.csv_file("trace.csv", trace.to_csv());
    return 0;
}

int run_verify_kl(const ScenarioConfig& cfg, const OutputWriter& out) {
    if (!cfg.kl) throw ConfigError({"kl: section required for verify-kl"});
    const divergence::KlExpansionReport report =
        divergence::kl_expansion_check(cfg.kl->model, cfg.kl->shifts);
    nlohmann::json j;
    j["report"] = report.to_json();
    j["fisher_information"] = report.fisher;
    out.json_file("kl_expansion.json", j);

    std::ostringstream csv;
    csv << "shift,kl_numeric,kl_leading,remainder\n";
    for (std::size_t i = 0; i < report.shifts.size(); ++i)
        csv << format_double(report.shifts[i]) << "," << format_double(report.kl_numeric[i])
            << "," << format_double(report.kl_leading[i]) << ","
            << format_double(report.remainder[i]) << "\n";
    out.csv_file("kl_expansion.csv", csv.str());
    return 0;
}

int run_experiment(const ScenarioConfig& cfg, const OutputWriter& out, std::uint64_t seed,
                   int workers) {
    games::HardEnsemble ensemble = cfg.ensemble.build(cfg.constraint_set);
    nlohmann::json j;
    std::ostringstream csv;
    csv << "record,T,value,extra\n";

    if (cfg.experiment.run_genie && !cfg.experiment.genie_T_list.empty()) {
        nlohmann::json genie_runs = nlohmann::json::array();
        for (int T : cfg.experiment.genie_T_list) {
            const experiments::GenieResult res =
                experiments::run_genie_test(ensemble, cfg.topology, cfg.channels, cfg.algorithm,
                                            T, cfg.experiment.trials, seed, workers);
            const experiments::FanoReport fano = experiments::fano_check(res.confusion);
            nlohmann::json entry;
            entry["T"] = T;
            entry["genie"] = res.to_json();
            entry["fano"] = fano.to_json();
            genie_runs.push_back(entry);
            csv << "genie_sup_error," << T << "," << format_double(res.sup_error_prob) << ",\n";
            csv << "fano_bound," << T << "," << format_double(fano.fano_lower_bound)
                << "," << (fano.satisfied ? "satisfied" : "violated") << "\n";
        }
        j["genie"] = genie_runs;
    }

    if (cfg.experiment.run_complexity) {
        const experiments::BoundComparisonReport report = experiments::bound_comparison_report(
            ensemble, cfg.topology, cfg.channels, cfg.algorithm, cfg.ensemble.epsilon,
            cfg.experiment.delta, cfg.experiment.T_max, cfg.experiment.trials,
            cfg.bounds_params.mc_samples, seed, workers, cfg.bounds_params.C_down);
        j["bound_comparison"] = report.to_json();
        if (report.complexity.T_emp)
            csv << "empirical_complexity," << *report.complexity.T_emp << ","
                << *report.complexity.T_emp << ",\n";
        else
            csv << "empirical_complexity,,NotReached,\n";
        for (const auto& row : report.rows)
            csv << "bound_" << row.theorem << "," << format_double(row.ceil_bound) << ","
                << format_double(row.bound) << "," << (row.pass ? "pass" : "fail")
                << (row.vacuous ? " (vacuous)" : "")
                << (row.T_emp ? " margin=" + format_double(row.margin) : "") << "\n";
    }

    out.json_file("experiment.json", j);
    out.csv_file("experiment.csv", csv.str());
    return 0;
}

}  // namespace

int dispatch(const std::string& subcommand, ScenarioConfig config, const CliOptions& options) {
    try {
        if (options.seed_override) config.experiment.seed = *options.seed_override;
        const std::uint64_t seed = config.experiment.seed;

        const std::string canonical = config.to_json().dump();
        const std::uint64_t hash = fnv1a64(canonical);
        char hash_hex[32];
        std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                      static_cast<unsigned long long>(hash));

        OutputWriter out;
        out.dir = options.out_dir;
        std::filesystem::create_directories(out.dir);
        out.format = options.format;
        out.bits = options.bits;
        out.stamp_comment = "# config_hash=" + std::string(hash_hex) +
                            " seed=" + std::to_string(seed) + " version=" + kVersionString +
                            "\n";
        out.stamp_json = nlohmann::json{
            {"config_hash", hash_hex}, {"seed", seed}, {"version", kVersionString}};

        if (subcommand == "pack") return run_pack(config, out);
        if (subcommand == "bounds") return run_bounds(config, out, seed);
        if (subcommand == "simulate") return run_simulate(config, out, seed);
        if (subcommand == "verify-kl") return run_verify_kl(config, out);
        if (subcommand == "experiment")
            return run_experiment(config, out, seed, options.workers);
        std::cerr << "unknown subcommand '" << subcommand << "'\n";
        return 1;
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const InvalidArgument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace nashbound::cli
