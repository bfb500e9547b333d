#include "nashbound/scenario.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace nashbound;
using namespace nashbound::cli;

namespace {

const char* kMinimalConfig = R"({
  "constraint_set": {"type": "box", "lower": [0, 0], "upper": [1, 1]}
})";

const char* kFullConfig = R"({
  "constraint_set": {"type": "box", "lower": [0, 0], "upper": [1, 1]},
  "channels": {
    "uplink_usn_var": [0.0],
    "uplink_csn_var": [0.0],
    "downlink": [{"type": "gaussian", "variance": 1.0},
                 {"type": "gaussian", "variance": 1.0}],
    "alpha": 2.0
  },
  "ensemble": {"type": "theorem2", "epsilon": 0.1, "gamma": 1.0},
  "algorithm": {"id": "noisy_gradient", "c": 1.0, "exponent": 1.0},
  "experiment": {"delta": 0.25, "T_max": 40, "trials": 60, "seed": 11,
                 "genie_T_list": [1, 4], "run_complexity": true},
  "bounds": {"theorems": ["T1", "C1", "T2", "T3"], "mc_samples": 12000},
  "kl": {"model": {"type": "logistic", "scale": 1.0}, "shifts": [0.2, 0.1, 0.05]},
  "pack": {"epsilon": 0.1, "seed": 0, "restarts": 4},
  "simulate": {"T": 10}
})";

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::filesystem::path write_temp_config(const std::string& name, const std::string& text) {
    const auto dir = std::filesystem::temp_directory_path() / "nashbound_cli_tests";
    std::filesystem::create_directories(dir);
    const auto path = dir / name;
    std::ofstream out(path);
    out << text;
    return path;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(NASHBOUND_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("minimal config loads with defaults") {
    const ScenarioConfig cfg = parse_config_text(kMinimalConfig);
    CHECK(cfg.constraint_set.dimension() == 2);
    CHECK(cfg.topology.players == 2);
    CHECK(cfg.topology.constraints == 4);
    CHECK(cfg.algorithm.id == "noisy_gradient");
    CHECK(cfg.experiment.delta == doctest::Approx(0.25));
    CHECK(cfg.ensemble.epsilon == doctest::Approx(0.1));
}

TEST_CASE("config round trip through canonical JSON") {
    const ScenarioConfig cfg = parse_config_text(kFullConfig);
    const ScenarioConfig back = parse_config_text(cfg.to_json().dump());
    CHECK(back.to_json() == cfg.to_json());
}

TEST_CASE("syntax errors carry line and column") {
    try {
        parse_config_text("{\n  \"constraint_set\": [,]\n}");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("out-of-range node assignment names the field") {
    const std::string bad = R"({
      "constraint_set": {"type": "box", "lower": [0, 0], "upper": [1, 1]},
      "topology": {"usn_count": 1, "usn_of_player": [0, 1]}
    })";
    try {
        parse_config_text(bad);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("usn_of_player") != std::string::npos);
    }
}

TEST_CASE("delta gate for the Gaussian and Fisher bounds") {
    const std::string bad = R"({
      "constraint_set": {"type": "box", "lower": [0, 0], "upper": [1, 1]},
      "experiment": {"delta": 0.6},
      "bounds": {"theorems": ["T2"]}
    })";
    try {
        parse_config_text(bad);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("delta <= 0.5") != std::string::npos);
    }
}

TEST_CASE("validation collects every error, not just the first") {
    const std::string bad = R"({
      "constraint_set": {"type": "box", "lower": [0, 0], "upper": [1, 1]},
      "ensemble": {"type": "mystery", "epsilon": -1},
      "experiment": {"delta": 1.5}
    })";
    try {
        parse_config_text(bad);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.errors().size() >= 3);
    }
}

TEST_CASE("channel sizes are checked against the topology") {
    const std::string bad = R"({
      "constraint_set": {"type": "box", "lower": [0, 0], "upper": [1, 1]},
      "channels": {
        "uplink_usn_var": [1.0], "uplink_csn_var": [1.0],
        "downlink": [{"type": "gaussian", "variance": 1.0}],
        "alpha": 1.0
      }
    })";
    try {
        parse_config_text(bad);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("downlink") != std::string::npos);
    }
}

TEST_CASE("cli: format selection controls which files appear") {
    const auto cfgpath = write_temp_config("full.json", kFullConfig);
    const auto dir = std::filesystem::temp_directory_path() / "nashbound_cli_tests";
    const auto json_only = dir / "fmt_json";
    const auto csv_only = dir / "fmt_csv";
    std::filesystem::remove_all(json_only);
    std::filesystem::remove_all(csv_only);
    REQUIRE(run_cli("pack --config " + cfgpath.string() + " --out " + json_only.string() +
                    " --format json") == 0);
    REQUIRE(run_cli("pack --config " + cfgpath.string() + " --out " + csv_only.string() +
                    " --format csv") == 0);
    CHECK(std::filesystem::exists(json_only / "packing.json"));
    CHECK_FALSE(std::filesystem::exists(json_only / "points.csv"));
    CHECK(std::filesystem::exists(csv_only / "points.csv"));
    CHECK_FALSE(std::filesystem::exists(csv_only / "packing.json"));
}

TEST_CASE("cli: unknown subcommand exits 1") {
    CHECK(run_cli("frobnicate") == 1);
}

TEST_CASE("cli: bounds subcommand writes stamped outputs") {
    const auto cfgpath = write_temp_config("full.json", kFullConfig);
    const auto outdir = std::filesystem::temp_directory_path() / "nashbound_cli_tests/bounds";
    std::filesystem::remove_all(outdir);
    REQUIRE(run_cli("bounds --config " + cfgpath.string() + " --out " + outdir.string()) == 0);

    const std::string csv = slurp(outdir / "bounds.csv");
    CHECK(csv.rfind("# config_hash=", 0) == 0);
    CHECK(csv.find("seed=11") != std::string::npos);
    CHECK(csv.find("T2,") != std::string::npos);

    const auto j = nlohmann::json::parse(slurp(outdir / "bounds.json"));
    CHECK(j.contains("config_hash"));
    CHECK(j.at("seed").get<std::uint64_t>() == 11);
    CHECK(j.at("bounds").size() >= 3);
}

TEST_CASE("cli: identical seeds give byte-identical outputs; seed override changes them") {
    const auto cfgpath = write_temp_config("full.json", kFullConfig);
    const auto base = std::filesystem::temp_directory_path() / "nashbound_cli_tests";
    for (const char* sub : {"pack", "verify-kl", "experiment"}) {
        const auto out1 = base / (std::string(sub) + "_run1");
        const auto out2 = base / (std::string(sub) + "_run2");
        std::filesystem::remove_all(out1);
        std::filesystem::remove_all(out2);
        REQUIRE(run_cli(std::string(sub) + " --config " + cfgpath.string() + " --out " +
                        out1.string()) == 0);
        REQUIRE(run_cli(std::string(sub) + " --config " + cfgpath.string() + " --out " +
                        out2.string()) == 0);
        for (const auto& entry : std::filesystem::directory_iterator(out1)) {
            const auto name = entry.path().filename();
            CHECK(slurp(entry.path()) == slurp(out2 / name));
        }
    }

    const auto out3 = base / "experiment_seeded";
    REQUIRE(run_cli("experiment --config " + cfgpath.string() + " --out " + out3.string() +
                    " --seed 999") == 0);
    CHECK(slurp(out3 / "experiment.csv") !=
          slurp(base / "experiment_run1/experiment.csv"));
}

TEST_CASE("cli: non-Gaussian downlinks need a caller-supplied capacity for T1/C1") {
    const char* base = R"({
      "constraint_set": {"type": "box", "lower": [0, 0], "upper": [1, 1]},
      "channels": {
        "uplink_usn_var": [0.0], "uplink_csn_var": [0.0],
        "downlink": [{"type": "logistic", "scale": 0.55},
                     {"type": "logistic", "scale": 0.55}],
        "alpha": 2.0
      },
      "ensemble": {"type": "theorem2", "epsilon": 0.1, "gamma": 1.0},
      "experiment": {"delta": 0.25, "seed": 3},
      "bounds": {"theorems": ["T1", "C1"]%s}
    })";
    char with_cap[1024], without_cap[1024];
    std::snprintf(without_cap, sizeof(without_cap), base, "");
    std::snprintf(with_cap, sizeof(with_cap), base, ", \"C_down\": 0.6931");

    const auto dir = std::filesystem::temp_directory_path() / "nashbound_cli_tests";
    const auto p1 = write_temp_config("logistic_nocap.json", without_cap);
    const auto o1 = dir / "nocap";
    std::filesystem::remove_all(o1);
    REQUIRE(run_cli("bounds --config " + p1.string() + " --out " + o1.string()) == 0);
    const auto j1 = nlohmann::json::parse(slurp(o1 / "bounds.json"));
    CHECK(j1.at("bounds").empty());
    REQUIRE_FALSE(j1.at("skipped").empty());
    CHECK(j1.at("skipped")[0].get<std::string>().find("C_down") != std::string::npos);

    const auto p2 = write_temp_config("logistic_cap.json", with_cap);
    const auto o2 = dir / "withcap";
    std::filesystem::remove_all(o2);
    REQUIRE(run_cli("bounds --config " + p2.string() + " --out " + o2.string()) == 0);
    const auto j2 = nlohmann::json::parse(slurp(o2 / "bounds.json"));
    REQUIRE(j2.at("bounds").size() == 2);
    const auto& t1 = j2.at("bounds")[0];
    CHECK(t1.at("theorem") == "T1");
    CHECK(t1.at("inputs").at("C_down").get<double>() == doctest::Approx(0.6931));
    bool caveat = false;
    for (const auto& c : t1.at("caveats"))
        caveat = caveat || c.get<std::string>().find("caller") != std::string::npos;
    CHECK(caveat);
}

TEST_CASE("cli: bits toggle rescales displayed information quantities only") {
    const auto cfgpath = write_temp_config("full.json", kFullConfig);
    const auto base = std::filesystem::temp_directory_path() / "nashbound_cli_tests";
    const auto nats_dir = base / "pack_nats";
    const auto bits_dir = base / "pack_bits";
    std::filesystem::remove_all(nats_dir);
    std::filesystem::remove_all(bits_dir);
    REQUIRE(run_cli("pack --config " + cfgpath.string() + " --out " + nats_dir.string()) == 0);
    REQUIRE(run_cli("pack --config " + cfgpath.string() + " --out " + bits_dir.string() +
                    " --bits") == 0);
    const auto nats = nlohmann::json::parse(slurp(nats_dir / "packing.json"));
    const auto bits = nlohmann::json::parse(slurp(bits_dir / "packing.json"));
    CHECK(nats.at("capacity_units") == "nats");
    CHECK(bits.at("capacity_units") == "bits");
    CHECK(bits.at("kolmogorov_capacity").get<double>() ==
          doctest::Approx(nats.at("kolmogorov_capacity").get<double>() / std::log(2.0)));
    // Counts are unit-free and must not move.
    CHECK(bits.at("lattice_count") == nats.at("lattice_count"));
}

TEST_CASE("cli: simulate flags power against the budget") {
    const auto cfgpath = write_temp_config("full.json", kFullConfig);
    const auto outdir = std::filesystem::temp_directory_path() / "nashbound_cli_tests/sim";
    std::filesystem::remove_all(outdir);
    REQUIRE(run_cli("simulate --config " + cfgpath.string() + " --out " + outdir.string()) ==
            0);
    const auto j = nlohmann::json::parse(slurp(outdir / "trace.json"));
    CHECK(j.contains("empirical_power"));
    CHECK(j.contains("power_exceeds_alpha"));
    const std::string csv = slurp(outdir / "trace.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 1 + 10);  // stamp + header + rows
}

TEST_CASE("cli: experiment with an unreachable horizon still exits 0") {
    std::string text(kFullConfig);
    const auto pos = text.find("\"T_max\": 40");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 11, "\"T_max\": 2");
    const auto cfgpath = write_temp_config("tight.json", text);
    const auto outdir = std::filesystem::temp_directory_path() / "nashbound_cli_tests/tight";
    std::filesystem::remove_all(outdir);
    REQUIRE(run_cli("experiment --config " + cfgpath.string() + " --out " + outdir.string()) ==
            0);
    const auto j = nlohmann::json::parse(slurp(outdir / "experiment.json"));
    CHECK(j.at("bound_comparison").at("complexity").at("T_emp") == "NotReached");
}

TEST_CASE("cli: workers do not change experiment outputs") {
    const auto cfgpath = write_temp_config("full.json", kFullConfig);
    const auto base = std::filesystem::temp_directory_path() / "nashbound_cli_tests";
    const auto out1 = base / "workers1";
    const auto out2 = base / "workers3";
    std::filesystem::remove_all(out1);
    std::filesystem::remove_all(out2);
    REQUIRE(run_cli("experiment --config " + cfgpath.string() + " --out " + out1.string() +
                    " --workers 1") == 0);
    REQUIRE(run_cli("experiment --config " + cfgpath.string() + " --out " + out2.string() +
                    " --workers 3") == 0);
    CHECK(slurp(out1 / "experiment.csv") == slurp(out2 / "experiment.csv"));
}
