#ifndef DUALITY_PRESETS_HPP
#define DUALITY_PRESETS_HPP

#include <string>
#include <vector>

#include "duality/qstate.hpp"

namespace duality {

// Display conversion for joule-valued report fields.
constexpr double default_energy_joules = 2.45e-19;

// Published reference values for one preset state: the theoretical
// capacities and the single-shot experimental results they are compared
// against in reports.
struct ReferenceEntry {
    std::string name;                    // "phi1".."phi4"
    double theory_c_d;                   // units of E
    double theory_c_p;                   // units of E
    double exp_c_d;
    double exp_c_v;
    double exp_c_p;
    double exp_w_max;                    // measured phase-scan extrema
    double exp_w_min;
};

// Stated maximum single-shot discrepancies, used as sanity bands.
constexpr double reference_cv_band = 0.0253;
constexpr double reference_capacity_band = 0.0269;
constexpr double reference_residual_band = 0.0406;

bool is_preset_name(const std::string& name);

// Amplitudes of the four preset states phi1..phi4.
PureState preset_state(const std::string& name);

const std::vector<ReferenceEntry>& reference_table();

const ReferenceEntry& reference_entry(const std::string& name);

}  // namespace duality

#endif
