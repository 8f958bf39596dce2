#include "niqb/performance_targets.hpp"

namespace niqb {

const std::vector<PerformanceTarget>& performance_targets() {
    static const std::vector<PerformanceTarget> t = {
    {"133Xe", "two_level", 9.43, 236000000000000.0, 3.141592653589793, 0.08, 0.1, 233220.0, 0.0, 0.64, 233220.0, 0.0},
    {"193Ir", "two_level", 3.31, 81000000000000.0, 3.141592653589793, 0.09, 0.1, 80240.0, 0.0, 0.18, 80240.0, 0.0},
    {"117Sn", "two_level", 12.7, 318000000000000.0, 3.141592653589793, 0.07, 0.1, 314580.0, 0.0, 0.89, 314580.0, 0.0},
    {"127Te", "two_level", 3.63, 89200000000000.0, 3.141592653589793, 0.09, 0.1, 88230.0, 0.0, 0.21, 88230.0, 0.0},
    {"113Cd", "two_level", 10.65, 266000000000000.0, 3.141592653589793, 0.07, 0.1, 263540.0, 0.0, 0.73, 263540.0, 0.0},
    {"93Nb", "two_level", 1.44, 31000000000000.0, 3.141592653589793, 0.26, 0.3, 30770.0, 0.0, 0.02, 30770.0, 0.0},
    {"154Gd", "lambda", 50.1, 1.07e+16, 26.66, 0.02, 0.03, 121690.0, 177010.0, 1.85, 120470.0, 171850.0},
    {"63Ni", "lambda", 40.38, 9490000000000000.0, 29.46, 0.01, 0.02, 87230.0, 89110.0, 1.31, 87200.0, 89080.0},
    {"229Th", "lambda", 5.45, 3200000000000000.0, 62.83, 1.73, 2.6, 8.355, 220.0, 2.5e-05, 8.354000000000001, 200.0},
    {"107Ag", "lambda", 17.08, 3820000000000000.0, 28.1, 0.02, 0.03, 93130.0, 93590.0, 0.84, 93130.0, 93590.0},
    {"144Pr", "lambda", 4.09, 1190000000000000.0, 37.15, 0.08, 0.1, 59030.0, 59030.0, 0.15, 59030.0, 59030.0},
    {"103Rh", "lambda", 14.43, 3470000000000000.0, 30.12, 0.02, 0.03, 39740.0, 40520.0, 0.38, 39740.0, 40520.0},
    {"189Os", "lambda", 8.77, 2010000000000000.0, 28.79, 0.04, 0.06, 30810.0, 31250.0, 0.14, 30810.0, 31250.0},
    {"152Eu", "lambda", 2.73, 933000000000000.0, 44.41, 0.13, 0.16, 45600.0, 45600.0, 0.07, 45600.0, 45600.0},
    {"121Sn", "lambda", 37.33, 8370000000000000.0, 48.67, 0.01, 0.02, 6370.0, 18220.0, 0.29, 6370.0, 18220.0},
    {"195Pt", "ladder", 5.28, 1440000000000000.0, 34.41, 0.16, 0.2, 258050.0, 258950.0, 0.38, 258050.0, 258950.0},
    {"129Xe", "ladder", 1.75, 3570000000000000.0, 280.97, 0.24, 0.3, 236140.0, 236140.0, 0.21, 236140.0, 236140.0},
    {"121Te", "ladder", 8.59, 3030000000000000.0, 44.43, 0.07, 0.1, 293900.0, 293910.0, 0.82, 293900.0, 293910.0},
    {"119Sn", "ladder", 1.22, 285000000000000.0, 37.17, 0.41, 0.5, 89530.0, 89530.0, 0.05, 89530.0, 89530.0},
    {"108Ag", "ladder", 3.27, 1130000000000000.0, 44.43, 0.25, 0.3, 109450.0, 109470.0, 0.1, 109450.0, 109470.0},
    {"186Re", "ladder", 4.07, 5680000000000000.0, 177.71, 0.2, 0.3, 148200.0, 148200.0, 0.15, 148200.0, 148200.0},
    {"Gd", "atomic", 0.0, 5000000000.0, 0.0, 6.76, 9.0, 0.07, 0.0, 1.87e-12, 0.0, 0.0},
    {"Ni", "atomic", 0.0, 5000000000.0, 0.0, 6.88, 9.0, 0.27, 0.0, 7.78e-12, 0.0, 0.0},
    {"Rh", "atomic", 0.0, 5000000000.0, 0.0, 6.9, 9.0, 0.32, 0.0, 9.11e-12, 0.0, 0.0},
    {"Pr", "atomic", 0.0, 5000000000.0, 0.0, 6.91, 9.0, 0.35, 0.0, 9.98e-12, 0.0, 0.0},
    {"Sn", "atomic", 0.0, 5000000000.0, 0.0, 6.93, 9.0, 0.42, 0.0, 1.2e-11, 0.0, 0.0},
    {"Os", "atomic", 0.0, 5000000000.0, 0.0, 6.92, 9.0, 0.52, 0.0, 1.46e-11, 0.0, 0.0},
    {"Th", "atomic", 0.0, 5000000000.0, 0.0, 6.94, 9.0, 0.62, 0.0, 1.74e-11, 0.0, 0.0},
    {"Pt", "atomic", 0.0, 5000000000.0, 0.0, 6.97, 9.0, 1.26, 0.0, 3.56e-11, 0.0, 0.0},
    {"Eu", "atomic", 0.0, 5000000000.0, 0.0, 6.94, 9.0, 1.98, 0.0, 5.61e-11, 0.0, 0.0},
    {"Re", "atomic", 0.0, 5000000000.0, 0.0, 6.97, 9.0, 3.58, 0.0, 1.02e-10, 0.0, 0.0},
    {"Ag", "atomic", 0.0, 5000000000.0, 0.0, 6.97, 9.0, 3.78, 0.0, 1.07e-10, 0.0, 0.0},
    {"Te", "atomic", 0.0, 5000000000.0, 0.0, 7.01, 9.0, 5.78, 0.0, 1.63e-10, 0.0, 0.0},
    {"Xe", "atomic", 0.0, 5000000000.0, 0.0, 7.0, 9.0, 9.45, 0.0, 2.68e-10, 0.0, 0.0},
    };
    return t;
}

const PerformanceTarget* target_for(const std::string& id) {
    for (const auto& t : performance_targets())
        if (t.id == id) return &t;
    return nullptr;
}

}  // namespace niqb
