#include "niqb/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "niqb/errors.hpp"
#include "niqb/units.hpp"

namespace niqb {

double stored_energy(const DensityMatrix& rho, std::span<const double> levels_eV) {
    if (rho.dim() != static_cast<int>(levels_eV.size()))
        throw DimensionError("stored_energy: state dimension does not match level count");
    double e = 0.0;
    for (int n = 0; n < rho.dim(); ++n) e += levels_eV[static_cast<size_t>(n)] * rho.m(n, n).real();
    return e;  // Tr[H0 rho(0)] = eps1 = 0 by convention
}

double average_power(double energy_eV, double t_ps) {
    if (t_ps < 0.0) throw DomainError("average_power: time must be >= 0");
    if (t_ps == 0.0) return 0.0;
    return energy_eV * units::eV_to_J / (t_ps * units::ps_to_s);
}

double ergotropy(const DensityMatrix& rho, std::span<const double> levels_eV) {
    const int d = rho.dim();
    if (d != static_cast<int>(levels_eV.size()))
        throw DimensionError("ergotropy: state dimension does not match level count");
    Eigen::SelfAdjointEigenSolver<StateMatrix> es(rho.m, Eigen::EigenvaluesOnly);
    std::vector<double> r(es.eigenvalues().data(), es.eigenvalues().data() + d);
    for (double& v : r) {
        if (v < -1e-6) throw NumericalError("ergotropy: state eigenvalue " + std::to_string(v) + " < -1e-6");
        if (v < 0.0) v = 0.0;  // numerical fuzz only; no renormalization
    }
    std::sort(r.begin(), r.end(), std::greater<>());  // descending

    std::vector<size_t> order(static_cast<size_t>(d));
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return levels_eV[a] < levels_eV[b]; });  // ascending

    double passive = 0.0;
    for (int n = 0; n < d; ++n) passive += r[static_cast<size_t>(n)] * levels_eV[order[static_cast<size_t>(n)]];
    return stored_energy(rho, levels_eV) - passive;
}

double extraction_ratio(double w_eV, double e_eV, double eps_max_eV) {
    if (e_eV <= 1e-12 * eps_max_eV) return 1.0;
    return w_eV / e_eV;
}

double purity(const DensityMatrix& rho) { return (rho.m * rho.m).trace().real(); }

MetricSeries metric_series(const Trajectory& traj, std::span<const double> levels_eV) {
    MetricSeries s;
    const size_t n = traj.times.size();
    const int d = static_cast<int>(levels_eV.size());
    const double eps_max = *std::max_element(levels_eV.begin(), levels_eV.end());
    s.times = traj.times;
    s.energy.resize(n);
    s.power.resize(n);
    s.ergotropy.resize(n);
    s.ratio.resize(n);
    s.purity.resize(n);
    s.populations.assign(static_cast<size_t>(d), std::vector<double>(n));
    for (size_t i = 0; i < n; ++i) {
        try {
            const DensityMatrix& rho = traj.states[i];
            s.energy[i] = stored_energy(rho, levels_eV);
            s.power[i] = average_power(s.energy[i], traj.times[i]);
            s.ergotropy[i] = ergotropy(rho, levels_eV);
            s.ratio[i] = extraction_ratio(s.ergotropy[i], s.energy[i], eps_max);
            s.purity[i] = purity(rho);
            for (int l = 0; l < d; ++l)
                s.populations[static_cast<size_t>(l)][i] = rho.m(l, l).real();
        } catch (const Error& e) {
            throw NumericalError("metric_series: snapshot " + std::to_string(i) + ": " + e.what());
        }
    }
    return s;
}

}  // namespace niqb
