#include "niqb/dynamics_core.hpp"

#include <cmath>

#include "niqb/errors.hpp"
#include "niqb/units.hpp"

namespace niqb {

DensityMatrix DensityMatrix::ground(int dim) {
    DensityMatrix rho;
    rho.m = StateMatrix::Zero(dim, dim);
    rho.m(0, 0) = 1.0;
    return rho;
}

void check_state(const DensityMatrix& rho, double leak_budget, const std::string& context) {
    const StateMatrix& m = rho.m;
    const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-10)
        throw InvariantError(context + ": hermiticity violated (max deviation " + std::to_string(herm) + ")");
    const double tr = m.trace().real();
    if (tr < 1.0 - leak_budget || tr > 1.0 + 1e-8)
        throw InvariantError(context + ": trace " + std::to_string(tr) + " outside budget");
    Eigen::SelfAdjointEigenSolver<StateMatrix> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-8)
        throw InvariantError(context + ": negative eigenvalue " + std::to_string(es.eigenvalues().minCoeff()));
}

StateMatrix hamiltonian(Scheme scheme, double omega_p, std::optional<double> omega_s) {
    const double h2 = 0.5 * units::hbar_eV_ps;
    if (omega_p < 0.0 || (omega_s && *omega_s < 0.0)) throw SchemeError("hamiltonian: frequencies must be >= 0");
    if (scheme == Scheme::TwoLevel) {
        if (omega_s) throw SchemeError("hamiltonian: two-level scheme takes no Stokes frequency");
        StateMatrix h = StateMatrix::Zero(2, 2);
        h(0, 1) = h(1, 0) = h2 * omega_p;
        return h;
    }
    if (!omega_s) throw SchemeError("hamiltonian: three-level scheme needs a Stokes frequency");
    StateMatrix h = StateMatrix::Zero(3, 3);
    h(0, 1) = h(1, 0) = h2 * omega_p;
    h(1, 2) = h(2, 1) = h2 * *omega_s;
    return h;
}

StateMatrix dissipator(Scheme scheme, const DecayModel& decay, const StateMatrix& rho) {
    const double g2 = 0.5 * decay.gamma;
    if (scheme == Scheme::TwoLevel) {
        if (rho.rows() != 2) throw SchemeError("dissipator: two-level scheme needs a 2x2 state");
        StateMatrix d(2, 2);
        d(0, 0) = g2 * 2.0 * rho(1, 1);
        d(0, 1) = -g2 * rho(0, 1);
        d(1, 0) = -g2 * rho(1, 0);
        d(1, 1) = -g2 * 2.0 * rho(1, 1);
        return d;
    }
    if (rho.rows() != 3) throw SchemeError("dissipator: three-level scheme needs a 3x3 state");
    double b21 = 1.0, b23 = 0.0;
    if (scheme == Scheme::Lambda) {
        if (!decay.branching) throw SchemeError("dissipator: lambda scheme needs branching ratios");
        b21 = decay.branching->b21;
        b23 = decay.branching->b23;
    }
    StateMatrix d = StateMatrix::Zero(3, 3);
    d(0, 0) = g2 * 2.0 * b21 * rho(1, 1);
    d(0, 1) = -g2 * rho(0, 1);
    d(1, 0) = -g2 * rho(1, 0);
    d(1, 1) = -g2 * 2.0 * rho(1, 1);
    d(1, 2) = -g2 * rho(1, 2);
    d(2, 1) = -g2 * rho(2, 1);
    d(2, 2) = g2 * 2.0 * b23 * rho(1, 1);
    return d;
}

EigenSystem instantaneous_eigensystem(double omega_p, double omega_s) {
    if (omega_p == 0.0 && omega_s == 0.0)
        throw DegenerateError("instantaneous_eigensystem: both frequencies vanish");
    EigenSystem es;
    es.mixing_angle = std::atan2(omega_p, omega_s);
    const double omega = std::hypot(omega_p, omega_s);
    es.lambda0 = 0.0;
    es.lambda_plus = 0.5 * units::hbar_eV_ps * omega;
    es.lambda_minus = -es.lambda_plus;
    const double c = std::cos(es.mixing_angle), s = std::sin(es.mixing_angle);
    const double r = 1.0 / std::sqrt(2.0);
    es.vectors.setZero();
    es.vectors.col(0) << c, 0.0, -s;
    es.vectors.col(1) << s * r, r, c * r;
    es.vectors.col(2) << s * r, -r, c * r;
    return es;
}

// ---------------------------------------------------------------------------
// embedded Dormand-Prince 5(4)

namespace {

// packed independent components: diagonals, then (re, im) of each upper
// off-diagonal in row-major order
template <int D>
using Packed = std::array<double, D * D>;

template <int D>
void pack(const StateMatrix& m, Packed<D>& v) {
    int k = 0;
    for (int i = 0; i < D; ++i) v[k++] = m(i, i).real();
    for (int i = 0; i < D; ++i)
        for (int j = i + 1; j < D; ++j) {
            v[k++] = m(i, j).real();
            v[k++] = m(i, j).imag();
        }
}

template <int D>
void unpack(const Packed<D>& v, StateMatrix& m) {
    int k = 0;
    for (int i = 0; i < D; ++i) m(i, i) = v[k++];
    for (int i = 0; i < D; ++i)
        for (int j = i + 1; j < D; ++j) {
            const Complex c(v[k], v[k + 1]);
            k += 2;
            m(i, j) = c;
            m(j, i) = std::conj(c);
        }
}

constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kB5[7] = {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double kB4[7] = {5179.0 / 57600,    0.0,           7571.0 / 16695, 393.0 / 640,
                           -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

template <int D>
class MasterIntegrator {
  public:
    MasterIntegrator(Scheme scheme, const Drive& drive, const DecayModel& decay, const Tolerances& tol)
        : scheme_(scheme), drive_(drive), decay_(decay), tol_(tol) {
        rho_ = StateMatrix::Zero(D, D);
    }

    void rhs(double t, const Packed<D>& y, Packed<D>& dy) {
        unpack<D>(y, rho_);
        auto [wp, ws] = drive_(t);
        StateMatrix h = scheme_ == Scheme::TwoLevel ? hamiltonian(scheme_, wp)
                                                    : hamiltonian(scheme_, wp, ws);
        StateMatrix d = (h * rho_ - rho_ * h) / Complex(0.0, units::hbar_eV_ps);
        if (decay_.gamma != 0.0) d += dissipator(scheme_, decay_, rho_);
        pack<D>(d, dy);
        ++evals_;
    }

    // advance y from t0 to t1 with adaptive steps
    void advance(Packed<D>& y, double t0, double t1, double h_max) {
        double t = t0;
        double h = std::min(h_max, t1 - t0);
        Packed<D> k[7], ytmp, y5, y4;
        rhs(t, y, k[0]);
        while (t < t1) {
            h = std::min(h, t1 - t);
            if (h < 1e-14 * (t1 - t0) || evals_ > 100'000'000)
                throw IntegrationError("step size underflow: tolerances unreachable at t = " +
                                       std::to_string(t) + " ps");
            for (int s = 1; s < 7; ++s) {
                for (size_t i = 0; i < y.size(); ++i) {
                    double acc = y[i];
                    for (int j = 0; j < s; ++j) acc += h * kA[s][j] * k[j][i];
                    ytmp[i] = acc;
                }
                rhs(t + kC[s] * h, ytmp, k[s]);
            }
            double err = 0.0;
            for (size_t i = 0; i < y.size(); ++i) {
                double s5 = 0.0, s4 = 0.0;
                for (int j = 0; j < 7; ++j) {
                    s5 += kB5[j] * k[j][i];
                    s4 += kB4[j] * k[j][i];
                }
                y5[i] = y[i] + h * s5;
                y4[i] = y[i] + h * s4;
                const double sc = tol_.atol + tol_.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
                const double e = (y5[i] - y4[i]) / sc;
                err += e * e;
            }
            err = std::sqrt(err / static_cast<double>(y.size()));
            if (err <= 1.0) {
                t += h;
                y = y5;
                k[0] = k[6];  // FSAL
                if (err == 0.0) {
                    h = std::min(5.0 * h, h_max);
                } else {
                    h = std::min(h * std::min(5.0, 0.9 * std::pow(err, -0.2)), h_max);
                }
            } else {
                h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
                rhs(t, y, k[0]);  // k[6] belongs to the rejected endpoint
            }
        }
    }

    long evals() const { return evals_; }

  private:
    Scheme scheme_;
    const Drive& drive_;
    DecayModel decay_;
    Tolerances tol_;
    StateMatrix rho_;
    long evals_ = 0;
};

template <int D>
Trajectory run_integration(Scheme scheme, const Drive& drive, const DecayModel& decay, double t_total,
                           int snapshots, const Tolerances& tol, double budget) {
    Trajectory traj;
    traj.times.resize(static_cast<size_t>(snapshots));
    traj.states.reserve(static_cast<size_t>(snapshots));

    MasterIntegrator<D> integ(scheme, drive, decay, tol);
    Packed<D> y{};
    DensityMatrix rho = DensityMatrix::ground(D);
    pack<D>(rho.m, y);
    traj.states.push_back(rho);
    traj.times[0] = 0.0;

    // stepping segment-by-segment onto the grid; the step cap keeps even a
    // coarse grid from striding over a narrow Doppler-compressed envelope
    const double h_max = t_total / 200.0;
    for (int i = 1; i < snapshots; ++i) {
        const double t0 = t_total * static_cast<double>(i - 1) / (snapshots - 1);
        const double t1 = i == snapshots - 1 ? t_total : t_total * static_cast<double>(i) / (snapshots - 1);
        integ.advance(y, t0, t1, h_max);
        traj.times[static_cast<size_t>(i)] = t1;
        DensityMatrix snap;
        snap.m = StateMatrix::Zero(D, D);
        unpack<D>(y, snap.m);
        check_state(snap, budget, "snapshot " + std::to_string(i) + " (t = " + std::to_string(t1) + " ps)");
        traj.states.push_back(snap);
    }
    return traj;
}

}  // namespace

Trajectory integrate_master(Scheme scheme, const Drive& drive, const DecayModel& decay, double t_total,
                            int snapshots, const Tolerances& tol, double budget) {
    if (snapshots < 2) throw DomainError("integrate_master: need at least 2 snapshot points");
    if (t_total <= 0.0) throw DomainError("integrate_master: t_total must be > 0");
    if (tol.rtol <= 0.0 || tol.atol <= 0.0) throw DomainError("integrate_master: tolerances must be > 0");
    return scheme == Scheme::TwoLevel
               ? run_integration<2>(scheme, drive, decay, t_total, snapshots, tol, budget)
               : run_integration<3>(scheme, drive, decay, t_total, snapshots, tol, budget);
}

double leak_budget(const NuclideRecord& record) {
    double budget = 1e-8;
    if (record.scheme == Scheme::Lambda && record.branching) {
        const DecayModel decay = decay_model_for(record);
        budget += decay.gamma * std::max(0.0, 1.0 - record.branching->b21 - record.branching->b23) *
                  record.t_total;
    }
    return budget;
}

Trajectory propagate(const NuclideRecord& record, const Schedule& schedule, int snapshots,
                     const Tolerances& tol) {
    if (is_three_level(record.scheme) != schedule.stokes.has_value())
        throw SchemeError("propagate: schedule does not match the record's scheme");
    const DecayModel decay = decay_model_for(record);
    Drive drive;
    if (schedule.stokes) {
        const PulseSpec pump = schedule.pump, stokes = *schedule.stokes;
        drive = [pump, stokes](double t) {
            return std::make_pair(rabi_envelope(pump, t), rabi_envelope(stokes, t));
        };
    } else {
        const PulseSpec pump = schedule.pump;
        drive = [pump](double t) { return std::make_pair(rabi_envelope(pump, t), 0.0); };
    }
    Trajectory traj =
        integrate_master(record.scheme, drive, decay, schedule.t_total, snapshots, tol, leak_budget(record));
    traj.schedule = schedule;
    traj.record_id = record.id;
    return traj;
}

}  // namespace niqb
