#pragma once

#include <span>
#include <vector>

#include "niqb/dynamics_core.hpp"

namespace niqb {

// E(t) = Tr[H0 rho] - Tr[H0 rho(0)] with eps1 = 0, in eV.
double stored_energy(const DensityMatrix& rho, std::span<const double> levels_eV);

// Eq. P = E/t converted to watts; P(0) := 0 (continuous limit of 0/0).
double average_power(double energy_eV, double t_ps);

// Maximum unitarily extractable work, Tr[H0 rho] - sum_n r_n eps_n with the
// state's eigenvalues r_n descending against ascending level energies.
double ergotropy(const DensityMatrix& rho, std::span<const double> levels_eV);

// W/E; an empty battery (E <= 1e-12 eps_max) extracts everything it holds,
// so the ratio is pinned to 1 there instead of going 0/0.
double extraction_ratio(double w_eV, double e_eV, double eps_max_eV);

double purity(const DensityMatrix& rho);

struct MetricSeries {
    std::vector<double> times;                       // ps
    std::vector<double> energy;                      // eV
    std::vector<double> power;                       // W
    std::vector<double> ergotropy;                   // eV
    std::vector<double> ratio;                       // dimensionless
    std::vector<double> purity;                      // dimensionless
    std::vector<std::vector<double>> populations;    // populations[level][sample]

    size_t size() const { return times.size(); }
    int levels() const { return static_cast<int>(populations.size()); }
};

MetricSeries metric_series(const Trajectory& traj, std::span<const double> levels_eV);

}  // namespace niqb
