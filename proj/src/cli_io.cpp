#include "niqb/cli_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "niqb/errors.hpp"
#include "niqb/units.hpp"

namespace niqb {

using nlohmann::json;
namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// parsing

static const char* command_name(Command c) {
    switch (c) {
        case Command::Simulate: return "simulate";
        case Command::Sweep: return "sweep";
        case Command::Tables: return "tables";
        case Command::Compare: return "compare";
        case Command::Validate: return "validate";
    }
    return "?";
}

static Command command_from(const std::string& name) {
    for (Command c : {Command::Simulate, Command::Sweep, Command::Tables, Command::Compare, Command::Validate})
        if (name == command_name(c)) return c;
    throw UsageError("unknown command '" + name + "'");
}

static RangeSpec parse_range(const std::string& text) {
    RangeSpec r;
    char extra;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &r.lo, &r.hi, &r.n, &extra) != 3 || r.n < 1 ||
        r.lo <= 0.0 || r.hi <= 0.0)
        throw UsageError("range '" + text + "' must be lo:hi:n with positive bounds");
    return r;
}

static std::string range_text(const RangeSpec& r) {
    std::ostringstream os;
    os.precision(17);
    os << r.lo << ":" << r.hi << ":" << r.n;
    return os.str();
}

namespace {
struct RawArgs {
    std::string nuclide, db, out, config, ip, is;
    double rtol = 0.0, atol = 0.0;
    double pump_i = 0.0, stokes_i = 0.0, pump_c = 0.0, stokes_c = 0.0, duration = 0.0;
    int snapshots = 0, jobs = 0;
    bool dump = false;
};
}  // namespace

static void apply_config_json(RunConfig& cfg, const json& doc) {
    if (doc.contains("command")) cfg.command = command_from(doc.at("command").get<std::string>());
    if (doc.contains("nuclide")) cfg.nuclide_id = doc.at("nuclide").get<std::string>();
    if (doc.contains("db")) cfg.db_path = doc.at("db").get<std::string>();
    if (doc.contains("out")) cfg.out_dir = doc.at("out").get<std::string>();
    if (doc.contains("snapshots")) cfg.snapshots = doc.at("snapshots").get<int>();
    if (doc.contains("rtol")) cfg.tolerances.rtol = doc.at("rtol").get<double>();
    if (doc.contains("atol")) cfg.tolerances.atol = doc.at("atol").get<double>();
    if (doc.contains("jobs")) cfg.jobs = doc.at("jobs").get<int>();
    if (doc.contains("ip")) cfg.ip_range = parse_range(doc.at("ip").get<std::string>());
    if (doc.contains("is")) cfg.is_range = parse_range(doc.at("is").get<std::string>());
    if (doc.contains("overrides")) {
        const json& ov = doc.at("overrides");
        if (ov.contains("pump_intensity")) cfg.overrides.pump_intensity = ov.at("pump_intensity").get<double>();
        if (ov.contains("stokes_intensity"))
            cfg.overrides.stokes_intensity = ov.at("stokes_intensity").get<double>();
        if (ov.contains("pump_center_ps")) cfg.overrides.pump_center_ps = ov.at("pump_center_ps").get<double>();
        if (ov.contains("stokes_center_ps"))
            cfg.overrides.stokes_center_ps = ov.at("stokes_center_ps").get<double>();
        if (ov.contains("duration_ps")) cfg.overrides.duration_ps = ov.at("duration_ps").get<double>();
    }
}

RunConfig parse_config_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw UsageError(std::string("config is not valid JSON: ") + e.what());
    }
    RunConfig cfg;
    apply_config_json(cfg, doc);
    return cfg;
}

std::string dump_config_json(const RunConfig& cfg) {
    json doc;
    doc["command"] = command_name(cfg.command);
    if (!cfg.nuclide_id.empty()) doc["nuclide"] = cfg.nuclide_id;
    if (!cfg.db_path.empty()) doc["db"] = cfg.db_path;
    doc["out"] = cfg.out_dir;
    doc["snapshots"] = cfg.snapshots;
    doc["rtol"] = cfg.tolerances.rtol;
    doc["atol"] = cfg.tolerances.atol;
    doc["jobs"] = cfg.jobs;
    if (cfg.ip_range) doc["ip"] = range_text(*cfg.ip_range);
    if (cfg.is_range) doc["is"] = range_text(*cfg.is_range);
    json ov = json::object();
    const ScheduleOverrides& o = cfg.overrides;
    if (o.pump_intensity) ov["pump_intensity"] = *o.pump_intensity;
    if (o.stokes_intensity) ov["stokes_intensity"] = *o.stokes_intensity;
    if (o.pump_center_ps) ov["pump_center_ps"] = *o.pump_center_ps;
    if (o.stokes_center_ps) ov["stokes_center_ps"] = *o.stokes_center_ps;
    if (o.duration_ps) ov["duration_ps"] = *o.duration_ps;
    if (!ov.empty()) doc["overrides"] = ov;
    return doc.dump(1);
}

RunConfig parse_cli(const std::vector<std::string>& args) {
    CLI::App app{"nuclear-isomer quantum battery simulator"};
    app.require_subcommand(1);
    app.fallthrough();

    RawArgs raw;
    auto* o_nuc = app.add_option("--nuclide", raw.nuclide, "record id, e.g. 193Ir");
    auto* o_db = app.add_option("--db", raw.db, "nuclide database path (default: bundled; env NIQB_DB)");
    auto* o_out = app.add_option("--out", raw.out, "output directory");
    auto* o_cfg = app.add_option("--config", raw.config, "JSON config merged under explicit flags");
    auto* o_snap = app.add_option("--snapshots", raw.snapshots, "snapshot count (>= 2)");
    auto* o_rtol = app.add_option("--rtol", raw.rtol, "integrator relative tolerance");
    auto* o_atol = app.add_option("--atol", raw.atol, "integrator absolute tolerance");
    auto* o_jobs = app.add_option("--jobs", raw.jobs, "worker threads for sweeps and tables");
    auto* o_dump = app.add_flag("--dump-config", raw.dump, "print the effective config as JSON and exit");
    auto* o_pi = app.add_option("--pump-intensity", raw.pump_i, "override, W/cm^2");
    auto* o_si = app.add_option("--stokes-intensity", raw.stokes_i, "override, W/cm^2");
    auto* o_pc = app.add_option("--pump-center", raw.pump_c, "override, ps");
    auto* o_sc = app.add_option("--stokes-center", raw.stokes_c, "override, ps");
    auto* o_du = app.add_option("--duration", raw.duration, "override, ps");

    CLI::App* sub[5];
    sub[0] = app.add_subcommand("simulate", "charge one cell and emit trajectory/metrics/summary");
    sub[1] = app.add_subcommand("sweep", "2-D laser-intensity robustness map");
    sub[2] = app.add_subcommand("tables", "reproduce the performance tables and grade them");
    sub[3] = app.add_subcommand("compare", "nuclear vs atomic enhancement ratios");
    sub[4] = app.add_subcommand("validate", "validate a nuclide database");
    auto* o_ip = sub[1]->add_option("--ip", raw.ip, "pump intensity range lo:hi:n (log-spaced)");
    auto* o_is = sub[1]->add_option("--is", raw.is, "Stokes intensity range lo:hi:n (log-spaced)");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help() << std::endl;
        throw;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    RunConfig cfg;
    if (o_cfg->count()) {
        std::ifstream in(raw.config);
        if (!in) throw UsageError("cannot open config '" + raw.config + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        json doc;
        try {
            doc = json::parse(buf.str());
        } catch (const json::exception& e) {
            throw UsageError(std::string("config is not valid JSON: ") + e.what());
        }
        apply_config_json(cfg, doc);
    }
    for (int i = 0; i < 5; ++i)
        if (sub[i]->parsed()) cfg.command = static_cast<Command>(i);
    if (o_nuc->count()) cfg.nuclide_id = raw.nuclide;
    if (o_db->count()) cfg.db_path = raw.db;
    if (o_out->count()) cfg.out_dir = raw.out;
    if (o_snap->count()) cfg.snapshots = raw.snapshots;
    if (o_rtol->count()) cfg.tolerances.rtol = raw.rtol;
    if (o_atol->count()) cfg.tolerances.atol = raw.atol;
    if (o_jobs->count()) cfg.jobs = raw.jobs;
    if (o_dump->count()) cfg.dump_config = true;
    if (o_pi->count()) cfg.overrides.pump_intensity = raw.pump_i;
    if (o_si->count()) cfg.overrides.stokes_intensity = raw.stokes_i;
    if (o_pc->count()) cfg.overrides.pump_center_ps = raw.pump_c;
    if (o_sc->count()) cfg.overrides.stokes_center_ps = raw.stokes_c;
    if (o_du->count()) cfg.overrides.duration_ps = raw.duration;
    if (o_ip->count()) cfg.ip_range = parse_range(raw.ip);
    if (o_is->count()) cfg.is_range = parse_range(raw.is);

    if (cfg.snapshots < 2) throw UsageError("--snapshots must be >= 2");
    if (cfg.tolerances.rtol <= 0.0 || cfg.tolerances.atol <= 0.0)
        throw UsageError("tolerances must be positive");
    if (cfg.jobs < 1) throw UsageError("--jobs must be >= 1");
    if ((cfg.command == Command::Simulate || cfg.command == Command::Sweep) && cfg.nuclide_id.empty())
        throw UsageError(std::string(command_name(cfg.command)) + " needs --nuclide");
    return cfg;
}

// ---------------------------------------------------------------------------
// emitters

static std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

static std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    return out;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    std::ofstream out = open_out(path);
    const int d = traj.states.empty() ? 0 : traj.states.front().dim();
    out << "t_ps";
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            if (i == j) out << ",rho" << i + 1 << j + 1;
            else out << ",rho" << i + 1 << j + 1 << "_re,rho" << i + 1 << j + 1 << "_im";
        }
    out << "\n";
    for (size_t k = 0; k < traj.times.size(); ++k) {
        out << fmt17(traj.times[k]);
        const StateMatrix& m = traj.states[k].m;
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) {
                if (i == j) out << "," << fmt17(m(i, j).real());
                else out << "," << fmt17(m(i, j).real()) << "," << fmt17(m(i, j).imag());
            }
        out << "\n";
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

void write_metrics_csv(const std::string& path, const MetricSeries& series) {
    std::ofstream out = open_out(path);
    out << "t_ps";
    for (int l = 0; l < series.levels(); ++l) out << ",P" << l + 1;
    out << ",E_eV,P_W,W_eV,R,purity\n";
    for (size_t i = 0; i < series.size(); ++i) {
        out << fmt17(series.times[i]);
        for (int l = 0; l < series.levels(); ++l)
            out << "," << fmt17(series.populations[static_cast<size_t>(l)][i]);
        out << "," << fmt17(series.energy[i]) << "," << fmt17(series.power[i]) << ","
            << fmt17(series.ergotropy[i]) << "," << fmt17(series.ratio[i]) << ","
            << fmt17(series.purity[i]) << "\n";
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

static json summary_json(const ChargingSummary& s) {
    json j;
    j["record_id"] = s.record_id;
    j["E_sta_eV"] = s.e_sta_eV;
    j["W_sta_eV"] = s.w_sta_eV;
    j["E_max_eV"] = s.e_max_eV;
    j["W_max_eV"] = s.w_max_eV;
    j["P_max_W"] = s.p_max_W;
    if (s.t_sta_ps) j["t_sta_ps"] = *s.t_sta_ps;
    else j["t_sta_ps"] = nullptr;
    j["R_final"] = s.r_final;
    j["purity_min"] = s.purity_min;
    j["target_pop_final"] = s.target_pop_final;
    j["trace_final"] = s.trace_final;
    return j;
}

void write_summary_json(const std::string& path, const ChargingSummary& summary) {
    std::ofstream out = open_out(path);
    out << summary_json(summary).dump(1) << "\n";
    if (!out) throw IoError("write failed for '" + path + "'");
}

void write_sweep_csv(const std::string& path, const SweepGrid& grid) {
    std::ofstream out = open_out(path);
    out << "ip,is,E_eV,R\n";
    for (size_t i = 0; i < grid.ip_axis.size(); ++i)
        for (size_t j = 0; j < grid.is_axis.size(); ++j)
            out << fmt17(grid.ip_axis[i]) << "," << fmt17(grid.is_axis[j]) << ","
                << fmt17(grid.e_cells[i][j]) << "," << fmt17(grid.r_cells[i][j]) << "\n";
    if (!out) throw IoError("write failed for '" + path + "'");
}

void write_report_json(const std::string& path, const TableReport& report) {
    json rows = json::array();
    for (const auto& row : report.rows) {
        json r;
        r["id"] = row.id;
        r["family"] = row.family;
        r["simulated"] = row.simulated;
        r["paper"] = row.paper;
        r["pass"] = row.pass;
        json tols = json::object();
        for (const auto& c : row.checks)
            tols[c.field] = {{"simulated", c.simulated},
                             {"expected", c.expected},
                             {"tolerance", c.tolerance},
                             {"relative", c.relative},
                             {"pass", c.pass}};
        r["tolerances"] = tols;
        if (!row.error.empty()) r["error"] = row.error;
        rows.push_back(r);
    }
    json doc;
    doc["rows"] = rows;
    doc["all_pass"] = report.all_pass;
    std::ofstream out = open_out(path);
    out << doc.dump(1) << "\n";
    if (!out) throw IoError("write failed for '" + path + "'");
}

void write_comparison_csv(const std::string& path, const ComparisonTable& table) {
    std::ofstream out = open_out(path);
    out << "element,Z,nuclide_id,E_nuclear_eV,P_nuclear_W,E_atomic_eV,P_atomic_W,E_ratio,P_ratio,"
           "isomer_half_life_s\n";
    for (const auto& r : table.rows) {
        out << r.element << "," << r.z << "," << r.nuclide_id << "," << fmt17(r.e_nuclear_eV) << ","
            << fmt17(r.p_nuclear_W) << "," << fmt17(r.e_atomic_eV) << "," << fmt17(r.p_atomic_W) << ","
            << fmt17(r.e_ratio) << "," << fmt17(r.p_ratio) << ","
            << (r.isomer_half_life_s ? fmt17(*r.isomer_half_life_s) : "") << "\n";
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

// ---------------------------------------------------------------------------
// dispatch

static std::vector<NuclideRecord> resolve_db(const RunConfig& cfg) {
    if (!cfg.db_path.empty()) return load_nuclide_table(cfg.db_path);
    if (const char* env = std::getenv("NIQB_DB"); env && *env) return load_nuclide_table(env);
    return bundled_records();
}

static void ensure_out_dir(const RunConfig& cfg) {
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + cfg.out_dir + "': " + ec.message());
}

static std::string join_path(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

static int run_simulate(const RunConfig& cfg) {
    const auto db = resolve_db(cfg);
    const NuclideRecord& rec = find_record(db, cfg.nuclide_id);
    Schedule schedule = build_schedule(rec, cfg.overrides);
    if (schedule.truncation_warning)
        std::cerr << "warning: [0, t_total] clips the +-5 sigma support of a pulse envelope\n";
    ScenarioResult res = run_charging_scenario(rec, cfg.overrides, cfg.snapshots, cfg.tolerances);
    ensure_out_dir(cfg);
    write_trajectory_csv(join_path(cfg.out_dir, "trajectory.csv"), res.trajectory);
    write_metrics_csv(join_path(cfg.out_dir, "metrics.csv"), res.series);
    write_summary_json(join_path(cfg.out_dir, "summary.json"), res.summary);
    const ChargingSummary& s = res.summary;
    std::cout << rec.id << ": E_sta = " << s.e_sta_eV << " eV, W_sta = " << s.w_sta_eV
              << " eV, P_max = " << s.p_max_W << " W, R = " << s.r_final
              << ", target population = " << s.target_pop_final << "\n";
    return 0;
}

static int run_sweep(const RunConfig& cfg) {
    const auto db = resolve_db(cfg);
    const NuclideRecord& rec = find_record(db, cfg.nuclide_id);
    if (!is_three_level(rec.scheme)) throw UsageError("sweep needs a three-level record");
    RangeSpec ip = cfg.ip_range.value_or(
        RangeSpec{rec.peak_intensity[0] / 10.0, rec.peak_intensity[0] * 10.0, 11});
    RangeSpec is = cfg.is_range.value_or(
        RangeSpec{rec.peak_intensity[1] / 10.0, rec.peak_intensity[1] * 10.0, 11});
    SweepGrid grid = robustness_sweep(rec, {ip.lo, ip.hi}, {is.lo, is.hi}, ip.n, is.n, cfg.snapshots,
                                      cfg.tolerances, cfg.jobs);
    ensure_out_dir(cfg);
    write_sweep_csv(join_path(cfg.out_dir, "sweep.csv"), grid);
    int failures = 0;
    for (const auto& row : grid.cell_errors)
        for (const auto& e : row)
            if (!e.empty()) {
                ++failures;
                std::cerr << "cell error: " << e << "\n";
            }
    std::cout << rec.id << ": " << ip.n << "x" << is.n << " sweep written"
              << (failures ? " (" + std::to_string(failures) + " failed cells)" : "") << "\n";
    return 0;
}

static int run_tables(const RunConfig& cfg) {
    const auto db = resolve_db(cfg);
    TableReport report = reproduce_performance_tables(db, cfg.snapshots, cfg.tolerances, cfg.jobs);
    ensure_out_dir(cfg);
    write_report_json(join_path(cfg.out_dir, "report.json"), report);
    for (const auto& row : report.rows) {
        std::cout << (row.pass ? "PASS " : "FAIL ") << row.id << " (" << row.family << ")";
        if (!row.error.empty()) std::cout << " error: " << row.error;
        for (const auto& c : row.checks)
            if (!c.pass)
                std::cout << "  [" << c.field << " " << c.simulated << " vs " << c.expected << "]";
        std::cout << "\n";
    }
    std::cout << (report.all_pass ? "all rows pass" : "some rows FAIL") << "\n";
    return report.all_pass ? 0 : 2;
}

static int run_compare(const RunConfig& cfg) {
    const auto db = resolve_db(cfg);
    ComparisonTable table = compare_nuclear_vs_atomic(db, cfg.snapshots, cfg.tolerances, cfg.jobs);
    ensure_out_dir(cfg);
    write_comparison_csv(join_path(cfg.out_dir, "compare.csv"), table);
    for (const auto& r : table.rows)
        std::cout << r.nuclide_id << " vs " << r.element << ": E x" << r.e_ratio << ", P x" << r.p_ratio
                  << "\n";
    for (const auto& n : table.notes) std::cout << "note: " << n << "\n";
    return 0;
}

static int run_validate(const RunConfig& cfg) {
    const auto db = resolve_db(cfg);  // load_nuclide_table validates every record
    int n_nuclear = 0, n_atomic = 0;
    for (const auto& r : db) (r.nuclear() ? n_nuclear : n_atomic)++;
    std::cout << "database valid: " << n_nuclear << " nuclear records, " << n_atomic
              << " atomic records\n";
    return 0;
}

int cli_main(const std::vector<std::string>& args) {
    try {
        RunConfig cfg;
        try {
            cfg = parse_cli(args);
        } catch (const CLI::CallForHelp&) {
            return 0;
        }
        if (cfg.dump_config) {
            std::cout << dump_config_json(cfg) << "\n";
            return 0;
        }
        switch (cfg.command) {
            case Command::Simulate: return run_simulate(cfg);
            case Command::Sweep: return run_sweep(cfg);
            case Command::Tables: return run_tables(cfg);
            case Command::Compare: return run_compare(cfg);
            case Command::Validate: return run_validate(cfg);
        }
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace niqb
