#pragma once

#include <optional>

#include "niqb/nuclide_db.hpp"

namespace niqb {

// Beam kinematics matching a lab-frame photon to a transition energy.
struct Kinematics {
    double beta = 0.0;     // v/c
    double gamma = 1.0;    // 1/sqrt(1-beta^2)
    double doppler = 1.0;  // x = gamma(1+beta)
};

Kinematics solve_resonance(double transition_energy_eV, double photon_energy_eV);

enum class PulseRole { Pump, Stokes };

// One Gaussian drive: Omega(t) = omega0 sqrt(I) exp(-[x(t-tau)/(sqrt2 T)]^2).
struct PulseSpec {
    double omega0 = 0.0;     // ps^-1 (W/cm^2)^-1/2
    double intensity = 0.0;  // W/cm^2, effective peak
    double center = 0.0;     // tau, ps
    double duration = 0.0;   // T, ps
    double doppler = 1.0;    // x
    PulseRole role = PulseRole::Pump;

    double peak_rabi() const;  // omega0 sqrt(I), ps^-1
    double sigma() const { return duration / doppler; }  // lab-frame envelope width
};

double rabi_envelope(const PulseSpec& p, double t_ps);  // ps^-1
double pulse_area(const PulseSpec& p);                  // omega0 sqrt(I) sqrt(2pi) T / x

// Peak intensity giving pulse area exactly pi.
double calibrate_pi_pulse(double omega0, double duration, double doppler);

struct Schedule {
    PulseSpec pump;
    std::optional<PulseSpec> stokes;
    double t_total = 0.0;  // ps
    // set when [0, t_total] clips less than +-5 sigma of some envelope
    bool truncation_warning = false;
};

struct ScheduleOverrides {
    std::optional<double> pump_intensity;    // W/cm^2
    std::optional<double> stokes_intensity;  // W/cm^2
    std::optional<double> pump_center_ps;
    std::optional<double> stokes_center_ps;
    std::optional<double> duration_ps;
};

// Two-level records get a single pi-area pump centered at 0.6 t_total; the
// symmetric t_total/2 placement misses the tabulated stable-charge times for
// the slowest cells. Three-level records take both centers from the tables,
// with per-transition Doppler factors from solve_resonance (atomic entries
// run at doppler 1).
Schedule build_schedule(const NuclideRecord& record, const ScheduleOverrides& overrides = {});

}  // namespace niqb
