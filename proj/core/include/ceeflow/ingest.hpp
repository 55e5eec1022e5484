#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ceeflow/domain.hpp"

namespace ceeflow {

struct OwnershipLinkRecord {
    std::string parent_firm;
    std::string parent_city;
    std::string subsidiary_firm;
    std::string subsidiary_city;
    double ownership_pct = 0;  // (0, 100]
    std::string sector;        // raw code, mapped later by the aggregation
    double revenue = 0;        // euro millions, >= 0
};

class CityTable {
public:
    CityTable() = default;
    explicit CityTable(std::vector<CityRecord> rows);  // validates invariants

    const CityRecord* find(const std::string& id) const;
    const CityRecord& at(const std::string& id) const;  // ValidationError when missing
    const std::vector<CityRecord>& rows() const { return rows_; }
    bool empty() const { return rows_.empty(); }

private:
    std::vector<CityRecord> rows_;
    std::map<std::string, std::size_t> index_;
};

struct CountryTable {
    std::map<std::string, CountryRecord> by_code;

    std::optional<double> gdp(const std::string& code, int year) const;
};

struct TradeFlowTable {
    // aggregated per (year, origin, dest, group), sorted by that key
    std::vector<TradeFlowRecord> records;
    std::optional<int> year_min, year_max;

    double total() const;
    std::vector<int> years() const;  // distinct, ascending
};

struct OwnershipLinkTable {
    std::vector<OwnershipLinkRecord> links;  // records at or above the control threshold
    std::size_t dropped_below_threshold = 0;
    double min_control_pct = 50.0;

    double total_revenue() const;
};

/// Symmetric inter-country distances in kilometers; self-pairs are never stored.
class DistanceTable {
public:
    void set(const std::string& a, const std::string& b, double km);
    std::optional<double> find(const std::string& a, const std::string& b) const;
    double at(const std::string& a, const std::string& b) const;
    const std::map<std::pair<std::string, std::string>, double>& pairs() const { return km_; }

private:
    std::map<std::pair<std::string, std::string>, double> km_;
};

inline constexpr double kEarthRadiusKm = 6371.0088;

/// Great-circle distance between two lat/lon points, spherical earth.
double haversine_km(double lat1, double lon1, double lat2, double lon2);

/// sector_scheme.csv: `raw_code,group`. Group order is first appearance.
/// The scheme name is the file stem.
SectorScheme load_sector_scheme(const std::filesystem::path& path);

/// trade_flows.csv: `year,origin,dest,sector,value`. Raw sectors are mapped
/// through the scheme and rows summed per (year, origin, dest, group).
TradeFlowTable load_trade_flows(const std::filesystem::path& path, const SectorScheme& scheme);

/// cities.csv: `city_id,name,country,lat,lon,population`.
CityTable load_cities(const std::filesystem::path& path);

/// gdp.csv: `country,year,gdp` (constant-dollar millions, > 0).
CountryTable load_gdp(const std::filesystem::path& path);

/// ownership.csv: `parent_firm,parent_city,subsidiary_firm,subsidiary_city,
/// ownership_pct,sector,revenue`. Rows below min_control_pct are dropped and
/// counted; duplicated (parent_firm, subsidiary_firm) pairs are an error.
OwnershipLinkTable load_ownership(const std::filesystem::path& path, double min_control_pct = 50.0);

/// The gdp file does not carry capitals; the capital of a country is taken to
/// be its most populous city in the table (ties: smallest city id).
void assign_capitals(CountryTable& countries, const CityTable& cities);

/// Haversine distances between the capitals of every unordered country pair.
/// Requires capitals assigned and resolvable; two distinct countries with
/// coincident capitals violate the positivity invariant and are rejected.
DistanceTable capital_distances(const CountryTable& countries, const CityTable& cities);

}  // namespace ceeflow
