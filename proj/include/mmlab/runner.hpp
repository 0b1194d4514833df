#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mmlab/simulate.hpp"
#include "mmlab/stats.hpp"

namespace mmlab {

enum class TableFormat { csv, json };

// One-dimensional parameter sweep; each value produces one table row.
struct SweepSpec {
    std::string param;  // eta, gamma, mu or b
    std::vector<double> values;

    bool operator==(const SweepSpec&) const = default;
};

struct RunConfig {
    SimConfig sim;
    std::optional<SweepSpec> sweep;
    std::string output_dir = ".";
    bool emit_trajectories = false;
    TableFormat table_format = TableFormat::csv;
    // path command: replay the same seed under the martingale benchmark
    // too, sharing price path and fill uniforms.
    bool benchmark_pair = false;
    double t0 = 0.0;  // state time for the quotes command

    bool operator==(const RunConfig&) const = default;
};

// Parses the flat `key = value` run-configuration format (one pair per
// line, '#' comments). Unknown keys, missing required keys and bad
// values throw std::runtime_error with a line-numbered message.
RunConfig parse_config(const std::string& text);

// parse_config on a file's contents; errors carry the path.
RunConfig load_config(const std::string& path);

// Fully resolved configuration in the same format parse_config reads;
// parse_config(emit_manifest(c)) == c.
std::string emit_manifest(const RunConfig& config);

// Table row: the swept/identifying parameters next to the statistics.
struct TableRow {
    std::string strategy;
    std::string assume;
    double eta = 0.0;
    double gamma = 0.0;
    std::optional<double> mu;  // ou models
    std::optional<double> b;   // abm models
    StatsRecord stats;
};

std::vector<TableRow> compute_table(const RunConfig& config);

// Commands behind the CLI subcommands. Each writes its outputs plus a
// manifest.cfg into config.output_dir and returns the primary file path.
void cmd_quotes(const RunConfig& config, std::ostream& out);
std::string cmd_table(const RunConfig& config);
std::string cmd_path(const RunConfig& config);
std::string cmd_ode(const RunConfig& config);

// Serialization used by cmd_table, exposed for byte-identity checks.
std::string format_table_csv(const std::vector<TableRow>& rows);
std::string format_table_json(const std::vector<TableRow>& rows);

}  // namespace mmlab
