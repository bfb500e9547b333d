#include "nashbound/scenario.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"Distributed Nash-seeking testbed: hard instances, channel simulation, "
                 "iteration lower bounds, and empirical complexity checks"};
    app.require_subcommand(1);

    std::string config_path;
    nashbound::cli::CliOptions options;
    std::optional<std::uint64_t> seed;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "Scenario JSON file")->required();
        sub->add_option("--out", options.out_dir, "Output directory (default: .)");
        sub->add_option("--seed", seed, "Master seed override");
        sub->add_option("--workers", options.workers, "Worker threads for trials (default: 1)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--format", options.format, "Output format: json, csv or both")
            ->check(CLI::IsMember({"json", "csv", "both"}));
        sub->add_flag("--bits", options.bits,
                      "Display information quantities in bits (computations stay in nats)");
    };

    CLI::App* pack = app.add_subcommand("pack", "Packings, lattice counts, capacity estimates");
    CLI::App* bounds = app.add_subcommand("bounds", "Evaluate iteration lower bounds");
    CLI::App* simulate = app.add_subcommand("simulate", "Run the communication loop once");
    CLI::App* verify_kl =
        app.add_subcommand("verify-kl", "KL shift expansion and Fisher information");
    CLI::App* experiment =
        app.add_subcommand("experiment", "Genie test, Fano check, empirical complexity");
    for (CLI::App* sub : {pack, bounds, simulate, verify_kl, experiment}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    options.seed_override = seed;
    nashbound::cli::ScenarioConfig config;
    try {
        config = nashbound::cli::parse_config_file(config_path);
    } catch (const nashbound::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }

    const std::string sub = app.get_subcommands().front()->get_name();
    return nashbound::cli::dispatch(sub, std::move(config), options);
}
