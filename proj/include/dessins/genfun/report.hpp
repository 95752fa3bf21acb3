#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace dessins {

/// Outcome of one exact check.
struct CheckReport {
    std::string check;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    bool zero = true;
    std::optional<std::string> first_nonzero;

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["check"] = check;
        j["params"] = params;
        j["status"] = zero ? "zero" : "nonzero";
        if (first_nonzero) j["firstNonzeroTerm"] = *first_nonzero;
        return j;
    }
};

inline bool all_zero(const std::vector<CheckReport>& reports) {
    for (const auto& r : reports)
        if (!r.zero) return false;
    return true;
}

}  // namespace dessins
