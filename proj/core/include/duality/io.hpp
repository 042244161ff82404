#ifndef DUALITY_IO_HPP
#define DUALITY_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "duality/capacity.hpp"
#include "duality/counts.hpp"
#include "duality/optics.hpp"
#include "duality/qstate.hpp"

namespace duality {

// State file: JSON object with either {"alpha": [re, im], "beta": [re, im]}
// or {"stokes": [s1, s2, s3]} -- exactly one of the two forms.
DensityMatrix read_state_file(const std::filesystem::path& path);

void write_state_file(const std::filesystem::path& path, const PureState& state);

// Scan file: "phi_radians,W_over_E" header plus one row per grid point.
void write_scan_csv(const std::filesystem::path& path, const PhaseScan& scan);
PhaseScan read_scan_csv(const std::filesystem::path& path);

// Count file: "axis,repeat,n0,n1" header plus one row per record.
void write_counts_csv(const std::filesystem::path& path, const std::vector<CountRecord>& records);
std::vector<CountRecord> read_counts_csv(const std::filesystem::path& path);

// CapacityReport as a JSON document with c_p, c_d, c_v, equality_residual,
// inequality_ok, convention and E_joules fields.
std::string capacity_report_json(const CapacityReport& report, double e_joules);

}  // namespace duality

#endif
