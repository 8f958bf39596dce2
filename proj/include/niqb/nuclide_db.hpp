#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace niqb {

enum class Scheme { TwoLevel, Lambda, Ladder, AtomicLadder };

const char* to_string(Scheme s);
bool is_three_level(Scheme s);

struct Multipolarity {
    char kind = 'E';  // 'E' or 'M'
    int order = 1;    // L >= 1
};

struct SpinParity {
    double spin = 0.0;
    int parity = 1;  // +1 or -1
};

struct Branching {
    double b21 = 0.0;
    double b23 = 0.0;
};

// One battery cell's parameter set. Energies in eV, times in ps,
// intensities in W/cm^2, omega0 in ps^-1 (W/cm^2)^-1/2 after load
// (database files carry seconds and s^-1; see load_nuclide_table).
struct NuclideRecord {
    std::string id;
    int mass_number = 0;  // absent (0) for atomic entries
    Scheme scheme = Scheme::TwoLevel;
    std::vector<double> level_energies;             // eps1 = 0
    std::vector<std::optional<double>> half_lives;  // per level; nullopt = stable / not modeled
    std::optional<Branching> branching;             // lambda schemes
    std::vector<Multipolarity> multipolarities;     // per driven transition
    std::vector<double> reduced_B;                  // W.u., per driven transition
    std::vector<SpinParity> spins;                  // per level
    std::vector<double> omega0;                     // per driven transition
    std::vector<double> peak_intensity;             // per driven transition
    std::vector<double> pulse_centers;              // [tau_p, tau_s]; empty for two-level
    std::vector<double> pulse_duration;             // one shared T, or [T_p, T_s]
    std::vector<double> photon_energy;              // per driven transition; empty for atomic
    double t_total = 0.0;

    int dim() const { return static_cast<int>(level_energies.size()); }
    int transitions() const { return dim() - 1; }
    bool nuclear() const { return scheme != Scheme::AtomicLadder; }
    double duration(int transition) const;
    int target_level() const;      // storage (isomer) level index, 0-based
    double target_energy() const;  // its energy in eV
    std::optional<double> isomer_half_life() const;  // ps
};

struct DecayModel {
    double gamma = 0.0;  // decay rate of |2>, ps^-1
    std::optional<Branching> branching;
};

enum class TableFormat { Json, Csv };

std::vector<NuclideRecord> load_nuclide_table(std::istream& in, TableFormat format);
std::vector<NuclideRecord> load_nuclide_table(const std::string& path, TableFormat format);
std::vector<NuclideRecord> load_nuclide_table(const std::string& path);  // format by extension

// Bundled parameter database (6 two-level, 9 lambda, 6 ladder, 13 atomic).
const std::vector<NuclideRecord>& bundled_records();

const NuclideRecord& find_record(const std::vector<NuclideRecord>& db, const std::string& id);
const NuclideRecord* find_record_ptr(const std::vector<NuclideRecord>& db, const std::string& id);

void validate_record(const NuclideRecord& r);

// JSON document with the same schema the loader accepts.
std::string serialize_records(const std::vector<NuclideRecord>& records);

DecayModel decay_model_for(const NuclideRecord& r);

// ln2 / t_half in the reciprocal unit of the argument; the optional overload
// maps "stable" to rate 0.
double linewidth_from_half_life(double t_half);
double linewidth_from_half_life(const std::optional<double>& t_half);

// Standard single-particle (Weisskopf) estimate times b_wu, in SI:
// C^2 m^2L for electric orders; magnetic orders are returned divided by c^2
// so both kinds share the C^2 m^2L slot of the rate/coupling formulas.
double weisskopf_to_si(double b_wu, char kind, int order, int mass_number);

// Coefficient of Eq.-style Rabi scaling Omega = omega0 * sqrt(I) * envelope,
// recomputed from multipolarity, reduced transition probability, spins and
// kinematics. Returns s^-1 (W/cm^2)^-1/2 for comparison against the bundled
// tables (cross-check only; the tabulated omega0 drive all simulations).
double compute_omega0(const NuclideRecord& r, int transition);

}  // namespace niqb
