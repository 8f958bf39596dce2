#pragma once

#include <optional>
#include <string>
#include <vector>

#include "niqb/experiments.hpp"

namespace niqb {

enum class Command { Simulate, Sweep, Tables, Compare, Validate };

struct RangeSpec {
    double lo = 0.0;
    double hi = 0.0;
    int n = 0;
};

struct RunConfig {
    Command command = Command::Simulate;
    std::string nuclide_id;
    std::string db_path;  // empty = bundled (NIQB_DB env overrides the default)
    ScheduleOverrides overrides;
    std::optional<RangeSpec> ip_range;  // sweep axes, log-spaced
    std::optional<RangeSpec> is_range;
    std::string out_dir = ".";
    Tolerances tolerances;
    int snapshots = 2001;
    int jobs = 1;
    bool dump_config = false;
};

// Maps argv onto a RunConfig; `--config file.json` merges a JSON config
// underneath explicit flags. Throws UsageError on unknown or missing input.
RunConfig parse_cli(const std::vector<std::string>& args);

std::string dump_config_json(const RunConfig& cfg);
RunConfig parse_config_json(const std::string& text);

// File emitters; every number is written with 17 significant digits so
// identical results are byte-identical files.
void write_trajectory_csv(const std::string& path, const Trajectory& traj);
void write_metrics_csv(const std::string& path, const MetricSeries& series);
void write_summary_json(const std::string& path, const ChargingSummary& summary);
void write_sweep_csv(const std::string& path, const SweepGrid& grid);
void write_report_json(const std::string& path, const TableReport& report);
void write_comparison_csv(const std::string& path, const ComparisonTable& table);

// Full command dispatch: returns 0 on success, 1 on error, 2 when a table
// comparison failed.
int cli_main(const std::vector<std::string>& args);

}  // namespace niqb
