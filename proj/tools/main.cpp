#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mmlab/runner.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> paths;
    std::optional<std::string> out;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "run configuration file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--seed", opts.seed, "override the configured seed");
    cmd->add_option("--paths", opts.paths, "override the configured path count");
    cmd->add_option("--out", opts.out, "override the configured output directory");
}

mmlab::RunConfig resolve(const CommonOpts& opts) {
    mmlab::RunConfig cfg = mmlab::load_config(opts.config_path);
    if (opts.seed) cfg.sim.seed = *opts.seed;
    if (opts.paths) cfg.sim.n_paths = *opts.paths;
    if (opts.out) cfg.output_dir = *opts.out;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"market-making strategy engine and Monte Carlo laboratory"};
    app.require_subcommand(1);

    CommonOpts quotes_opts, path_opts, table_opts, ode_opts;
    CLI::App* quotes = app.add_subcommand("quotes", "print the optimal quotes for a state");
    add_common(quotes, quotes_opts);
    CLI::App* path = app.add_subcommand("path", "simulate one day and dump the trajectory");
    add_common(path, path_opts);
    CLI::App* table =
        app.add_subcommand("table", "Monte Carlo ensemble statistics, optionally swept");
    add_common(table, table_opts);
    CLI::App* ode = app.add_subcommand("ode", "dump the backward ODE grid (t, q, v_q)");
    add_common(ode, ode_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (quotes->parsed()) {
            mmlab::cmd_quotes(resolve(quotes_opts), std::cout);
        } else if (path->parsed()) {
            std::cout << "wrote " << mmlab::cmd_path(resolve(path_opts)) << "\n";
        } else if (table->parsed()) {
            std::cout << "wrote " << mmlab::cmd_table(resolve(table_opts)) << "\n";
        } else if (ode->parsed()) {
            std::cout << "wrote " << mmlab::cmd_ode(resolve(ode_opts)) << "\n";
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
