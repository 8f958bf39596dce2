#pragma once

// Internal unit system: energies in eV, times in ps. Hamiltonian entries and
// time steps stay near unity for the nuclear scenarios; table values are
// converted once at load.

namespace niqb::units {

inline constexpr double hbar_eV_ps = 6.582119569e-4;   // eV ps
inline constexpr double eV_to_J = 1.602176634e-19;     // J per eV
inline constexpr double ps_to_s = 1.0e-12;
inline constexpr double s_to_ps = 1.0e12;
inline constexpr double per_s_to_per_ps = 1.0e-12;

// SI constants for the nuclear-coefficient utilities.
inline constexpr double hbar_SI = 1.054571817e-34;     // J s
inline constexpr double c_SI = 2.99792458e8;           // m/s
inline constexpr double eps0_SI = 8.8541878128e-12;    // F/m
inline constexpr double e_charge = 1.602176634e-19;    // C
inline constexpr double mu_N = 5.0507837461e-27;       // J/T
inline constexpr double fm = 1.0e-15;                  // m
inline constexpr double Wcm2_to_Wm2 = 1.0e4;

inline constexpr double ln2 = 0.6931471805599453;

}  // namespace niqb::units
