#include "duality/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace duality {

namespace {

using nlohmann::json;

json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    json j;
    in >> j;
    return j;
}

void save_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

}  // namespace

DensityMatrix read_state_file(const std::filesystem::path& path) {
    const json j = load_json(path);
    const bool has_amps = j.contains("alpha") || j.contains("beta");
    const bool has_stokes = j.contains("stokes");
    if (has_amps == has_stokes) {
        throw std::invalid_argument(path.string() +
                                 ": exactly one of {alpha,beta} or {stokes} must be present");
    }
    if (has_amps) {
        if (!j.contains("alpha") || !j.contains("beta")) {
            throw std::invalid_argument(path.string() + ": both alpha and beta are required");
        }
        const auto a = j.at("alpha");
        const auto b = j.at("beta");
        if (a.size() != 2 || b.size() != 2) {
            throw std::invalid_argument(path.string() + ": amplitudes must be [re, im] pairs");
        }
        return density_from_pure(PureState({a[0].get<double>(), a[1].get<double>()},
                                           {b[0].get<double>(), b[1].get<double>()}));
    }
    const auto s = j.at("stokes");
    if (s.size() != 3) throw std::invalid_argument(path.string() + ": stokes must be [s1, s2, s3]");
    return from_stokes(
        StokesVector{s[0].get<double>(), s[1].get<double>(), s[2].get<double>()});
}

void write_state_file(const std::filesystem::path& path, const PureState& state) {
    json j;
    j["alpha"] = {state.alpha().real(), state.alpha().imag()};
    j["beta"] = {state.beta().real(), state.beta().imag()};
    save_text(path, j.dump(2) + "\n");
}

void write_scan_csv(const std::filesystem::path& path, const PhaseScan& scan) {
    std::ostringstream out;
    out << "phi_radians,W_over_E\n";
    out << std::setprecision(17);
    for (std::size_t i = 0; i < scan.phases.size(); ++i) {
        out << scan.phases[i] << "," << scan.energies[i] << "\n";
    }
    save_text(path, out.str());
}

PhaseScan read_scan_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument(path.string() + ": empty scan file");
    PhaseScan scan;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw std::invalid_argument(path.string() + ": malformed scan row: " + line);
        }
        scan.phases.push_back(std::stod(line.substr(0, comma)));
        scan.energies.push_back(std::stod(line.substr(comma + 1)));
    }
    return scan;
}

void write_counts_csv(const std::filesystem::path& path, const std::vector<CountRecord>& records) {
    std::ostringstream out;
    out << "axis,repeat,n0,n1\n";
    for (const auto& r : records) {
        out << axis_name(r.axis) << "," << r.repeat << "," << r.n0 << "," << r.n1 << "\n";
    }
    save_text(path, out.str());
}

std::vector<CountRecord> read_counts_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument(path.string() + ": empty count file");
    std::vector<CountRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string axis, field;
        CountRecord rec;
        if (!std::getline(row, axis, ',')) continue;
        rec.axis = axis_from_name(axis);
        std::getline(row, field, ',');
        rec.repeat = std::stoi(field);
        std::getline(row, field, ',');
        rec.n0 = std::stoull(field);
        std::getline(row, field, ',');
        rec.n1 = std::stoull(field);
        records.push_back(rec);
    }
    return records;
}

std::string capacity_report_json(const CapacityReport& report, double e_joules) {
    json j;
    j["c_p"] = report.c_p;
    j["c_d"] = report.c_d;
    j["c_v"] = report.c_v;
    j["equality_residual"] = report.equality_residual;
    j["inequality_ok"] = report.inequality_ok;
    j["convention"] = report.convention.name();
    j["E_joules"] = e_joules;
    if (report.std_errors) {
        j["std_errors"] = {{"c_p", report.std_errors->c_p},
                           {"c_d", report.std_errors->c_d},
                           {"c_v", report.std_errors->c_v},
                           {"residual", report.std_errors->residual}};
    }
    return j.dump(2) + "\n";
}

}  // namespace duality
