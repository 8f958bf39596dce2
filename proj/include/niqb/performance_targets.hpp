#pragma once

#include <string>
#include <vector>

namespace niqb {

// Published per-cell performance figures the simulations are compared
// against: relativistic factor, peak Rabi frequency (1/s), pump pulse area,
// stable-charge time, total evolution time (ps for nuclear rows, ns for
// atomic), stored energy / ergotropy (eV) and peak charging power (W).
struct PerformanceTarget {
    std::string id;
    std::string family;  // two_level | lambda | ladder | atomic
    double gamma;
    double omega_max;
    double area;
    double t_sta;
    double t_tot;
    double e_sta_eV;
    double e_max_eV;  // 0 where not quoted
    double p_max_W;
    double w_sta_eV;  // 0 where not quoted
    double w_max_eV;

    bool nuclear() const { return family != "atomic"; }
};

const std::vector<PerformanceTarget>& performance_targets();
const PerformanceTarget* target_for(const std::string& id);

}  // namespace niqb
