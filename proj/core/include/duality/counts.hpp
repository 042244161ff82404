#ifndef DUALITY_COUNTS_HPP
#define DUALITY_COUNTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "duality/optics.hpp"
#include "duality/qstate.hpp"

namespace duality {

struct empty_record : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct axis_mismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Tomographic measurement axes. Outcome 0 is the H, D, R projector
// respectively.
enum class Axis { Z, X, Y };

enum class BasisLabel { H, V, D, A, R, L };

std::string axis_name(Axis axis);
Axis axis_from_name(const std::string& name);

// One of the six projective measurement settings.
struct MeasurementSetting {
    BasisLabel label;
    Axis axis;
    bool outcome0;  // true if this projector is the axis's outcome-0 arm
    PureState projector;
};

MeasurementSetting setting(BasisLabel label);

// Outcome-0 projector for an axis (H for Z, D for X, R for Y).
MeasurementSetting axis_setting(Axis axis);

// Raw coincidence tallies for one repeat of one axis.
struct CountRecord {
    Axis axis = Axis::Z;
    int repeat = 0;
    std::uint64_t n0 = 0;
    std::uint64_t n1 = 0;
};

// Poisson total per repeat, binomially split by the Born probability.
struct NoiseModel {
    double mean_rate = 16000.0;  // coincidences per second
    double duration_s = 0.01;    // per repeat; defaults give ~16000 per axis over 100 repeats
    int n_repeats = 100;
    std::uint64_t seed = 0;
};

// <proj|rho|proj>
double born_prob(const DensityMatrix& rho, const MeasurementSetting& setting);

// One record per (axis, repeat). Deterministic given the seed; each
// (axis, repeat) pair draws from its own derived substream.
std::vector<CountRecord> simulate_counts(const DensityMatrix& rho, const NoiseModel& noise);

// n0 / (n0 + n1)
double estimate_prob(const CountRecord& record);

// W = E p(0|x), valid when the record's axis matches the Hamiltonian frame.
double estimate_work(const CountRecord& record, double energy_unit, Axis hamiltonian_axis);

// Pool repeats into per-axis totals (order Z, X, Y).
std::vector<CountRecord> pool_by_axis(const std::vector<CountRecord>& records);

}  // namespace duality

#endif
