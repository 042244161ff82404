#include "duality/counts.hpp"

#include <cmath>
#include <random>

namespace duality {

std::string axis_name(Axis axis) {
    switch (axis) {
        case Axis::Z: return "Z";
        case Axis::X: return "X";
        case Axis::Y: return "Y";
    }
    return "?";
}

Axis axis_from_name(const std::string& name) {
    if (name == "Z") return Axis::Z;
    if (name == "X") return Axis::X;
    if (name == "Y") return Axis::Y;
    throw std::invalid_argument("unknown axis: " + name);
}

MeasurementSetting setting(BasisLabel label) {
    switch (label) {
        case BasisLabel::H: return {label, Axis::Z, true, state_h()};
        case BasisLabel::V: return {label, Axis::Z, false, state_v()};
        case BasisLabel::D: return {label, Axis::X, true, state_d()};
        case BasisLabel::A: return {label, Axis::X, false, state_a()};
        case BasisLabel::R: return {label, Axis::Y, true, state_r()};
        case BasisLabel::L: return {label, Axis::Y, false, state_l()};
    }
    throw std::logic_error("unreachable");
}

MeasurementSetting axis_setting(Axis axis) {
    switch (axis) {
        case Axis::Z: return setting(BasisLabel::H);
        case Axis::X: return setting(BasisLabel::D);
        case Axis::Y: return setting(BasisLabel::R);
    }
    throw std::logic_error("unreachable");
}

double born_prob(const DensityMatrix& rho, const MeasurementSetting& s) {
    const complexd a = s.projector.alpha();
    const complexd b = s.projector.beta();
    const complexd val = std::conj(a) * (rho(0, 0) * a + rho(0, 1) * b) +
                         std::conj(b) * (rho(1, 0) * a + rho(1, 1) * b);
    double p = val.real();
    if (p < 0.0) p = 0.0;
    if (p > 1.0) p = 1.0;
    return p;
}

std::vector<CountRecord> simulate_counts(const DensityMatrix& rho, const NoiseModel& noise) {
    if (!(noise.mean_rate > 0.0) || !(noise.duration_s > 0.0) || noise.n_repeats < 1) {
        throw std::invalid_argument("noise model requires positive rate, duration and repeats");
    }
    const double mean_total = noise.mean_rate * noise.duration_s;
    std::vector<CountRecord> records;
    records.reserve(3 * static_cast<std::size_t>(noise.n_repeats));
    const Axis axes[3] = {Axis::Z, Axis::X, Axis::Y};
    for (int ax = 0; ax < 3; ++ax) {
        const double p = born_prob(rho, axis_setting(axes[ax]));
        for (int rep = 0; rep < noise.n_repeats; ++rep) {
            // Independent substream per (axis, repeat); repeats can run in
            // any order or in parallel with identical output.
            std::mt19937_64 rng(mix_seed(noise.seed, static_cast<std::uint64_t>(ax) * 0x10000 + rep));
            std::poisson_distribution<std::uint64_t> total_dist(mean_total);
            const std::uint64_t total = total_dist(rng);
            std::uint64_t n0 = 0;
            if (total > 0) {
                std::binomial_distribution<std::uint64_t> split(total, p);
                n0 = split(rng);
            }
            records.push_back(CountRecord{axes[ax], rep, n0, total - n0});
        }
    }
    return records;
}

double estimate_prob(const CountRecord& record) {
    const std::uint64_t total = record.n0 + record.n1;
    if (total == 0) throw empty_record("count record has no coincidences");
    return static_cast<double>(record.n0) / static_cast<double>(total);
}

double estimate_work(const CountRecord& record, double energy_unit, Axis hamiltonian_axis) {
    if (record.axis != hamiltonian_axis) {
        throw axis_mismatch("count record axis " + axis_name(record.axis) +
                            " does not match the Hamiltonian axis " + axis_name(hamiltonian_axis));
    }
    return energy_unit * estimate_prob(record);
}

std::vector<CountRecord> pool_by_axis(const std::vector<CountRecord>& records) {
    CountRecord pooled[3] = {{Axis::Z, 0, 0, 0}, {Axis::X, 0, 0, 0}, {Axis::Y, 0, 0, 0}};
    for (const auto& r : records) {
        auto& p = pooled[static_cast<int>(r.axis)];
        p.n0 += r.n0;
        p.n1 += r.n1;
    }
    return {pooled[0], pooled[1], pooled[2]};
}

}  // namespace duality
