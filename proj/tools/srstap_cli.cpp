// SPDX-License-Identifier: Apache-2.0
#include "srstap/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Sparse-recovery STAP experiments"};
    app.require_subcommand(1);

    srstap::CommandOptions opts;
    std::uint64_t seed = 0;
    auto add_common = [&](CLI::App* sub, bool needs_input) {
        sub->add_option("--config", opts.config_path, "TOML config file")->check(CLI::ExistingFile);
        auto* in = sub->add_option("--input", opts.input_path, "snapshot file");
        if (needs_input) in->required();
        sub->add_option("--output", opts.output_path, "output path (CSV commands default to stdout)");
        sub->add_option("--seed", seed, "override the config seed");
        sub->add_option("--threads", opts.threads, "worker threads")->check(CLI::PositiveNumber);
    };
    auto* simulate = app.add_subcommand("simulate", "write simulated snapshots and a JSON sidecar");
    add_common(simulate, false);
    simulate->get_option("--output")->required();
    add_common(app.add_subcommand("spectrum", "angle-Doppler spectra of a snapshot file"), true);
    add_common(app.add_subcommand("convergence", "IF_Loss versus number of training snapshots"), false);
    add_common(app.add_subcommand("sweep", "IF_Loss versus a mismatched prior parameter"), false);
    add_common(app.add_subcommand("rangescan", "sliding-window filtering over range cells"), true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    for (auto* sub : app.get_subcommands()) {
        if (sub->count("--seed") > 0) opts.seed = seed;
        try {
            srstap::run_command(sub->get_name(), opts);
        } catch (const std::exception& e) {
            std::cerr << "srstap " << sub->get_name() << ": " << e.what() << "\n";
            return srstap::exit_code_for(e);
        }
    }
    return 0;
}
