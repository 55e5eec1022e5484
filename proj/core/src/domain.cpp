#include "ceeflow/domain.hpp"

#include <algorithm>
#include <set>

#include "ceeflow/errors.hpp"

namespace ceeflow {

const char* to_string(SizeClass c) {
    switch (c) {
        case SizeClass::Small: return "SMALL";
        case SizeClass::Medium: return "MEDIUM";
        case SizeClass::Large: return "LARGE";
    }
    return "?";
}

SizeClass classify_city_size(double population) {
    if (!(population >= 0))  // rejects negatives and nan
        throw ValidationError("invalid population: " + std::to_string(population));
    if (population < 50000.0) return SizeClass::Small;
    if (population <= 250000.0) return SizeClass::Medium;  // both bounds inclusive
    return SizeClass::Large;
}

bool is_iso2(const std::string& code) {
    return code.size() == 2 && code[0] >= 'A' && code[0] <= 'Z' && code[1] >= 'A' && code[1] <= 'Z';
}

SectorScheme::SectorScheme(std::string name,
                           std::vector<std::string> groups,
                           std::map<std::string, std::string> mapping)
    : name_(std::move(name)), groups_(std::move(groups)), mapping_(std::move(mapping)) {
    if (groups_.empty())
        throw ValidationError("sector scheme '" + name_ + "' has no groups");
    std::set<std::string> seen;
    for (const auto& g : groups_) {
        if (!seen.insert(g).second)
            throw ValidationError("sector scheme '" + name_ + "': duplicate group '" + g + "'");
    }
    for (const auto& [raw, group] : mapping_) {
        if (!seen.count(group))
            throw ValidationError("sector scheme '" + name_ + "': code '" + raw +
                                  "' maps to unknown group '" + group + "'");
    }
}

std::optional<std::string> SectorScheme::map_code(const std::string& raw) const {
    auto it = mapping_.find(raw);
    if (it == mapping_.end()) return std::nullopt;
    return it->second;
}

int SectorScheme::group_index(const std::string& group) const {
    auto it = std::find(groups_.begin(), groups_.end(), group);
    return it == groups_.end() ? -1 : static_cast<int>(it - groups_.begin());
}

namespace {

SectorScheme make_identity_scheme(std::string name, std::vector<std::string> groups) {
    std::map<std::string, std::string> mapping;
    for (const auto& g : groups) mapping[g] = g;
    return SectorScheme(std::move(name), std::move(groups), std::move(mapping));
}

}  // namespace

const SectorScheme& SectorScheme::trade10() {
    static const SectorScheme scheme = make_identity_scheme(
        "trade10", {"Agriculture", "Chemistry", "Construction", "Energy", "Food Products",
                    "Mechanics", "Mining", "Siderurgy", "Textiles", "Wood"});
    return scheme;
}

const SectorScheme& SectorScheme::fdi9() {
    static const SectorScheme scheme = make_identity_scheme(
        "fdi9", {"CARS", "FINANCE", "IT", "INDUSTRY", "MEDIA", "REAL ESTATE", "SALES",
                 "SERVICES", "ENERGY"});
    return scheme;
}

}  // namespace ceeflow
