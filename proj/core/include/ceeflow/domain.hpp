#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ceeflow {

/// City size bands used throughout the aggregation reports:
/// below 50 000 inhabitants -> Small, 50 000..250 000 (inclusive) -> Medium,
/// above 250 000 -> Large.
enum class SizeClass { Small, Medium, Large };

const char* to_string(SizeClass c);

/// Classify a population count into a SizeClass. Throws ValidationError for
/// negative populations. Monotone non-decreasing in population.
SizeClass classify_city_size(double population);

struct CityRecord {
    std::string id;
    std::string name;
    std::string country;  // ISO-2 uppercase
    double lat = 0;       // degrees, [-90, 90]
    double lon = 0;       // degrees, [-180, 180]
    double population = 0;
};

struct CountryRecord {
    std::string code;                    // ISO-2 uppercase
    std::map<int, double> gdp_by_year;   // constant-dollar millions, > 0
    std::string capital_city_id;         // resolved against the city table
};

struct TradeFlowRecord {
    int year = 0;
    std::string origin;  // ISO-2, != dest
    std::string dest;
    std::string sector;  // group label under the active scheme
    double value = 0;    // constant-dollar millions, >= 0
};

/// Maps raw sector codes onto a fixed, ordered list of group labels.
/// Two schemes ship built in: "trade10" (ten commodity groups) and "fdi9"
/// (nine ownership-link sectors). Custom schemes load from CSV, see ingest.
class SectorScheme {
public:
    SectorScheme(std::string name,
                 std::vector<std::string> groups,
                 std::map<std::string, std::string> mapping);

    static const SectorScheme& trade10();
    static const SectorScheme& fdi9();

    const std::string& name() const { return name_; }
    const std::vector<std::string>& groups() const { return groups_; }

    /// Group label for a raw code, or nullopt when the code is unmapped.
    std::optional<std::string> map_code(const std::string& raw) const;

    /// Position of a group label in the declared order, -1 when absent.
    int group_index(const std::string& group) const;

private:
    std::string name_;
    std::vector<std::string> groups_;
    std::map<std::string, std::string> mapping_;
};

/// True iff `code` is exactly two uppercase ASCII letters.
bool is_iso2(const std::string& code);

}  // namespace ceeflow
