#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "niqb/metrics.hpp"
#include "niqb/performance_targets.hpp"

namespace niqb {

struct ChargingSummary {
    std::string record_id;
    double e_sta_eV = 0.0;   // stored energy at the end of the window
    double w_sta_eV = 0.0;   // ergotropy at the end of the window
    double e_max_eV = 0.0;   // grid maxima (transient overshoot included)
    double w_max_eV = 0.0;
    double p_max_W = 0.0;    // max over E(t_i)/t_i, i >= 1
    std::optional<double> t_sta_ps;
    double r_final = 1.0;
    double purity_min = 1.0;
    double target_pop_final = 0.0;
    double rho22_max = 0.0;  // intermediate-level peak (three-level)
    double trace_final = 1.0;
};

struct ScenarioResult {
    Trajectory trajectory;
    MetricSeries series;
    ChargingSummary summary;
};

ScenarioResult run_charging_scenario(const NuclideRecord& record, const ScheduleOverrides& overrides = {},
                                     int snapshots = 2001, const Tolerances& tol = {});

// Earliest snapshot where the target population reaches 99.9% of its final
// value and stays within +-0.001 of it through the end; nullopt when the
// final population is below 0.5 (battery never charged).
std::optional<double> detect_stable_time(const MetricSeries& series, int target_level);

struct SweepGrid {
    std::vector<double> ip_axis;  // W/cm^2
    std::vector<double> is_axis;
    std::vector<std::vector<double>> e_cells;  // E_sta, eV; [ip][is]
    std::vector<std::vector<double>> r_cells;  // extraction ratio
    std::vector<std::vector<std::string>> cell_errors;  // empty = ok
};

// One charging scenario per (pump, Stokes) intensity cell, log-spaced axes.
// Cells are independent; per-cell failures are recorded and the sweep
// continues. jobs > 1 distributes cells over threads; results are gathered
// by index so the grid is identical either way.
SweepGrid robustness_sweep(const NuclideRecord& record, std::pair<double, double> ip_range,
                           std::pair<double, double> is_range, int n_ip, int n_is, int snapshots = 2001,
                           const Tolerances& tol = {}, int jobs = 1);

// One tolerance-gated comparison against a published value.
struct GateCheck {
    std::string field;
    double simulated = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool relative = true;
    bool pass = false;
};

struct TableRow {
    std::string id;
    std::string family;
    std::map<std::string, double> simulated;  // all summary fields
    std::map<std::string, double> paper;      // published counterparts
    std::vector<GateCheck> checks;            // acceptance-gated fields only
    bool pass = true;
    std::string error;  // set when the scenario failed to integrate
};

struct TableReport {
    std::vector<TableRow> rows;
    bool all_pass = true;
};

// Re-simulates every bundled cell and grades the gated fields: kinematics
// (gamma +-0.01), pulse consistency (peak Rabi +-1% and area pi +-2% for
// two-level, pump area +-2% vs the published column for three-level),
// stored energy (0.1% two-level; 0.5% three-level, 5% for the two strong
// intermediate-decay cells 154Gd and 229Th, which are also graded on
// ergotropy at 5%), full-extraction ratio 1 +- 1e-3 (two-level and ladder),
// stable time +-0.01 ps and peak power +-50% (two-level), final population
// and minimum purity >= 0.999 (two-level), and the lambda dark-state bound
// max rho22 <= 0.05 for cells with tau2 >= 1 ps. Everything else is
// reported untolerated for inspection.
TableReport reproduce_performance_tables(const std::vector<NuclideRecord>& db, int snapshots = 2001,
                                         const Tolerances& tol = {}, int jobs = 1);

struct ComparisonRow {
    std::string element;
    std::string nuclide_id;
    int z = 0;  // proton number
    double e_nuclear_eV = 0.0;
    double p_nuclear_W = 0.0;
    double e_atomic_eV = 0.0;
    double p_atomic_W = 0.0;
    double e_ratio = 0.0;
    double p_ratio = 0.0;
    std::optional<double> isomer_half_life_s;
};

struct ComparisonTable {
    std::vector<ComparisonRow> rows;
    std::vector<std::string> notes;  // skipped elements
};

// Pairs every three-level nuclear cell with its element's atomic cell and
// forms simulated energy / power enhancement ratios.
ComparisonTable compare_nuclear_vs_atomic(const std::vector<NuclideRecord>& db, int snapshots = 2001,
                                          const Tolerances& tol = {}, int jobs = 1);

}  // namespace niqb
