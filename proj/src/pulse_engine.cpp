#include "niqb/pulse_engine.hpp"

#include <cmath>

#include "niqb/errors.hpp"

namespace niqb {

Kinematics solve_resonance(double transition_energy_eV, double photon_energy_eV) {
    if (transition_energy_eV <= 0.0 || photon_energy_eV <= 0.0)
        throw DomainError("solve_resonance: energies must be > 0");
    if (transition_energy_eV < photon_energy_eV)
        throw DomainError("solve_resonance: transition energy below photon energy (x < 1)");
    Kinematics k;
    k.doppler = transition_energy_eV / photon_energy_eV;
    const double x2 = k.doppler * k.doppler;
    k.beta = (x2 - 1.0) / (x2 + 1.0);
    k.gamma = 0.5 * (k.doppler + 1.0 / k.doppler);
    return k;
}

double PulseSpec::peak_rabi() const { return omega0 * std::sqrt(intensity); }

double rabi_envelope(const PulseSpec& p, double t_ps) {
    const double u = p.doppler * (t_ps - p.center) / (std::sqrt(2.0) * p.duration);
    return p.peak_rabi() * std::exp(-u * u);
}

double pulse_area(const PulseSpec& p) {
    return p.peak_rabi() * std::sqrt(2.0 * M_PI) * p.duration / p.doppler;
}

double calibrate_pi_pulse(double omega0, double duration, double doppler) {
    if (omega0 <= 0.0 || duration <= 0.0 || doppler <= 0.0)
        throw DomainError("calibrate_pi_pulse: inputs must be > 0");
    const double root_i = M_PI * doppler / (omega0 * std::sqrt(2.0 * M_PI) * duration);
    return root_i * root_i;
}

static bool clipped(const PulseSpec& p, double t_total) {
    const double s = 5.0 * p.sigma();
    return p.center - s < 0.0 || p.center + s > t_total;
}

Schedule build_schedule(const NuclideRecord& record, const ScheduleOverrides& overrides) {
    validate_record(record);
    for (const auto& v : {overrides.pump_intensity, overrides.stokes_intensity, overrides.pump_center_ps,
                          overrides.stokes_center_ps, overrides.duration_ps})
        if (v && *v < 0.0) throw ScheduleError("record " + record.id + ": overrides must be non-negative");

    Schedule s;
    s.t_total = record.t_total;

    s.pump.role = PulseRole::Pump;
    s.pump.omega0 = record.omega0[0];
    s.pump.intensity = overrides.pump_intensity.value_or(record.peak_intensity[0]);
    s.pump.duration = overrides.duration_ps.value_or(record.duration(0));
    s.pump.doppler = record.nuclear()
                         ? solve_resonance(record.level_energies[1], record.photon_energy[0]).doppler
                         : 1.0;

    if (record.scheme == Scheme::TwoLevel) {
        s.pump.center = overrides.pump_center_ps.value_or(0.6 * record.t_total);
        if (overrides.stokes_intensity || overrides.stokes_center_ps)
            throw ScheduleError("record " + record.id + ": two-level schedule has no Stokes pulse");
    } else {
        s.pump.center = overrides.pump_center_ps.value_or(record.pulse_centers[0]);
        PulseSpec st;
        st.role = PulseRole::Stokes;
        st.omega0 = record.omega0[1];
        st.intensity = overrides.stokes_intensity.value_or(record.peak_intensity[1]);
        st.center = overrides.stokes_center_ps.value_or(record.pulse_centers[1]);
        st.duration = overrides.duration_ps.value_or(record.duration(1));
        st.doppler = record.nuclear()
                         ? solve_resonance(std::abs(record.level_energies[1] - record.level_energies[2]),
                                           record.photon_energy[1])
                               .doppler
                         : 1.0;
        if (!(st.center < s.pump.center))
            throw ScheduleError("record " + record.id +
                                ": counterintuitive ordering violated (stokes center must precede pump)");
        s.stokes = st;
    }

    s.truncation_warning = clipped(s.pump, s.t_total) || (s.stokes && clipped(*s.stokes, s.t_total));
    return s;
}

}  // namespace niqb
