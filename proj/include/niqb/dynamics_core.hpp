#pragma once

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "niqb/nuclide_db.hpp"
#include "niqb/pulse_engine.hpp"

namespace niqb {

using Complex = std::complex<double>;

// 2x2 or 3x3, bounded dynamic size (stack storage).
using StateMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, 0, 3, 3>;

struct DensityMatrix {
    StateMatrix m;

    int dim() const { return static_cast<int>(m.rows()); }
    static DensityMatrix ground(int dim);  // |1><1|
};

// Hermiticity within 1e-10, eigenvalues >= -1e-8, trace in
// [1 - leak_budget, 1 + 1e-8]. Throws InvariantError naming `context`.
void check_state(const DensityMatrix& rho, double leak_budget, const std::string& context);

// Interaction-picture Hamiltonian in eV: (hbar/2) [[0, Wp],[Wp, 0]] or the
// tridiagonal three-level form. Frequencies in ps^-1.
StateMatrix hamiltonian(Scheme scheme, double omega_p, std::optional<double> omega_s = std::nullopt);

// Spontaneous-emission matrix evaluated on rho (rate of change, ps^-1 units
// of rho). Lambda schemes feed the branching ratios; the lambda form has no
// rho13 damping term, so the 1-3 coherence is left undamped.
StateMatrix dissipator(Scheme scheme, const DecayModel& decay, const StateMatrix& rho);

// Instantaneous eigensystem of the three-level interaction Hamiltonian.
// vectors columns are |dark>, |plus>, |minus>; eigenvalues eV.
struct EigenSystem {
    double mixing_angle = 0.0;  // theta = atan2(Wp, Ws)
    double lambda0 = 0.0;
    double lambda_plus = 0.0;
    double lambda_minus = 0.0;
    Eigen::Matrix3cd vectors;
};

EigenSystem instantaneous_eigensystem(double omega_p, double omega_s);

struct Tolerances {
    double rtol = 1e-10;
    double atol = 1e-12;
};

struct Trajectory {
    std::vector<double> times;  // ps, uniform on [0, t_total], times[0] = 0
    std::vector<DensityMatrix> states;
    Schedule schedule;
    std::string record_id;
};

// Drive hook for oracle tests: t -> (omega_p, omega_s), ps^-1.
using Drive = std::function<std::pair<double, double>(double)>;

// Integrates d rho/dt = [H, rho]/(i hbar) + rho_s from rho(0) = |1><1| with
// an embedded Dormand-Prince 5(4) pair, stepping exactly onto a uniform
// snapshot grid. Only the independent matrix elements are integrated, so
// hermiticity is structural.
Trajectory integrate_master(Scheme scheme, const Drive& drive, const DecayModel& decay, double t_total,
                            int snapshots, const Tolerances& tol = {}, double leak_budget = 1e-8);

Trajectory propagate(const NuclideRecord& record, const Schedule& schedule, int snapshots = 2001,
                     const Tolerances& tol = {});

// Trace-loss allowance for a record's trajectory: Gamma (1 - B21 - B23)
// t_total for lambda schemes, numerical-only otherwise.
double leak_budget(const NuclideRecord& record);

}  // namespace niqb
