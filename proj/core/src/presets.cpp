#include "duality/presets.hpp"

#include <stdexcept>

namespace duality {

bool is_preset_name(const std::string& name) {
    return name == "phi1" || name == "phi2" || name == "phi3" || name == "phi4";
}

PureState preset_state(const std::string& name) {
    if (name == "phi1") return PureState({0.5417, 0.6645}, {-0.4545, 0.2418});
    if (name == "phi2") return PureState({0.6645, 0.6797}, {-0.2418, -0.1949});
    if (name == "phi3") return PureState({0.6964, 0.6124}, {-0.1228, 0.3536});
    if (name == "phi4") return PureState({0.2418, 0.5417}, {-0.6645, -0.4545});
    throw std::invalid_argument("unknown preset state: " + name);
}

// Single read-only table of published reference values; reports pull from
// here rather than hard-coding numbers inline.
const std::vector<ReferenceEntry>& reference_table() {
    static const std::vector<ReferenceEntry> table = {
        //  name    th C_d  th C_p  exp C_d  exp C_v  exp C_p  exp Wmax  exp Wmin
        {"phi1", 0.4698, 1.0, 0.4959, 0.8816, 0.9995, 0.9420, 0.0605},
        {"phi2", 0.8071, 1.0, 0.8033, 0.6158, 0.9988, 0.8091, 0.1933},
        {"phi3", 0.7199, 1.0, 0.7395, 0.6886, 0.9902, 0.8439, 0.1553},
        {"phi4", 0.2962, 1.0, 0.3025, 0.9334, 0.9731, 0.9666, 0.0332},
    };
    return table;
}

const ReferenceEntry& reference_entry(const std::string& name) {
    for (const auto& e : reference_table()) {
        if (e.name == name) return e;
    }
    throw std::invalid_argument("no reference entry for state: " + name);
}

}  // namespace duality
