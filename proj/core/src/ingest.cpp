#include "ceeflow/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "ceeflow/csv.hpp"
#include "ceeflow/errors.hpp"

namespace ceeflow {

CityTable::CityTable(std::vector<CityRecord> rows) : rows_(std::move(rows)) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const CityRecord& c = rows_[i];
        if (c.id.empty())
            throw ValidationError("city with empty id");
        if (!is_iso2(c.country))
            throw ValidationError("city '" + c.id + "': bad country code '" + c.country + "'");
        if (!(c.lat >= -90.0 && c.lat <= 90.0))
            throw ValidationError("city '" + c.id + "': latitude out of range");
        if (!(c.lon >= -180.0 && c.lon <= 180.0))
            throw ValidationError("city '" + c.id + "': longitude out of range");
        if (!(c.population >= 0))
            throw ValidationError("city '" + c.id + "': invalid population");
        if (!index_.emplace(c.id, i).second)
            throw ValidationError("duplicate city id '" + c.id + "'");
    }
}

const CityRecord* CityTable::find(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &rows_[it->second];
}

const CityRecord& CityTable::at(const std::string& id) const {
    const CityRecord* c = find(id);
    if (!c) throw ValidationError("unknown city id '" + id + "'");
    return *c;
}

std::optional<double> CountryTable::gdp(const std::string& code, int year) const {
    auto it = by_code.find(code);
    if (it == by_code.end()) return std::nullopt;
    auto y = it->second.gdp_by_year.find(year);
    if (y == it->second.gdp_by_year.end()) return std::nullopt;
    return y->second;
}

double TradeFlowTable::total() const {
    long double s = 0;
    for (const auto& r : records) s += r.value;
    return static_cast<double>(s);
}

std::vector<int> TradeFlowTable::years() const {
    std::set<int> ys;
    for (const auto& r : records) ys.insert(r.year);
    return {ys.begin(), ys.end()};
}

double OwnershipLinkTable::total_revenue() const {
    long double s = 0;
    for (const auto& l : links) s += l.revenue;
    return static_cast<double>(s);
}

void DistanceTable::set(const std::string& a, const std::string& b, double km) {
    if (a == b)
        throw ValidationError("self-distance for '" + a + "'");
    km_[std::minmax(a, b)] = km;
}

std::optional<double> DistanceTable::find(const std::string& a, const std::string& b) const {
    auto it = km_.find(std::minmax(a, b));
    if (it == km_.end()) return std::nullopt;
    return it->second;
}

double DistanceTable::at(const std::string& a, const std::string& b) const {
    auto d = find(a, b);
    if (!d) throw ValidationError("no distance for pair (" + a + ", " + b + ")");
    return *d;
}

double haversine_km(double lat1, double lon1, double lat2, double lon2) {
    constexpr double deg = M_PI / 180.0;
    const double phi1 = lat1 * deg, phi2 = lat2 * deg;
    const double dphi = (lat2 - lat1) * deg;
    const double dlam = (lon2 - lon1) * deg;
    const double sp = std::sin(dphi / 2), sl = std::sin(dlam / 2);
    double h = sp * sp + std::cos(phi1) * std::cos(phi2) * sl * sl;
    h = std::clamp(h, 0.0, 1.0);
    return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

SectorScheme load_sector_scheme(const std::filesystem::path& path) {
    csv::Reader in(path);
    const std::size_t c_raw = in.column("raw_code");
    const std::size_t c_group = in.column("group");

    std::vector<std::string> groups;
    std::map<std::string, std::string> mapping;
    std::vector<std::string> fields;
    std::size_t line;
    while (in.next(fields, line)) {
        const std::string& raw = fields[c_raw];
        const std::string& group = fields[c_group];
        if (raw.empty() || group.empty())
            fail_at(in.filename(), line, "empty raw_code or group");
        if (mapping.count(raw))
            fail_at(in.filename(), line, "duplicate raw_code '" + raw + "'");
        mapping[raw] = group;
        if (std::find(groups.begin(), groups.end(), group) == groups.end())
            groups.push_back(group);
    }
    return SectorScheme(path.stem().string(), std::move(groups), std::move(mapping));
}

TradeFlowTable load_trade_flows(const std::filesystem::path& path, const SectorScheme& scheme) {
    csv::Reader in(path);
    const std::size_t c_year = in.column("year");
    const std::size_t c_origin = in.column("origin");
    const std::size_t c_dest = in.column("dest");
    const std::size_t c_sector = in.column("sector");
    const std::size_t c_value = in.column("value");

    // key: (year, origin, dest, group index); extended-precision accumulators
    std::map<std::tuple<int, std::string, std::string, int>, long double> agg;
    std::vector<std::string> fields;
    std::size_t line;
    while (in.next(fields, line)) {
        const int year = csv::parse_int(fields[c_year], in.filename(), line, "year");
        const std::string& origin = fields[c_origin];
        const std::string& dest = fields[c_dest];
        if (!is_iso2(origin))
            fail_at(in.filename(), line, "bad origin code '" + origin + "'");
        if (!is_iso2(dest))
            fail_at(in.filename(), line, "bad dest code '" + dest + "'");
        if (origin == dest)
            fail_at(in.filename(), line, "self-flow " + origin + "->" + dest);
        const double value = csv::parse_number(fields[c_value], in.filename(), line, "value");
        if (!(value >= 0) || !std::isfinite(value))
            fail_at(in.filename(), line, "negative or non-finite value");
        auto group = scheme.map_code(fields[c_sector]);
        if (!group)
            fail_at(in.filename(), line, "sector code '" + fields[c_sector] +
                                             "' unmapped under scheme '" + scheme.name() + "'");
        agg[{year, origin, dest, scheme.group_index(*group)}] += value;
    }

    TradeFlowTable table;
    table.records.reserve(agg.size());
    for (const auto& [key, sum] : agg) {
        const auto& [year, origin, dest, gi] = key;
        table.records.push_back({year, origin, dest, scheme.groups()[gi], static_cast<double>(sum)});
        if (!table.year_min || year < *table.year_min) table.year_min = year;
        if (!table.year_max || year > *table.year_max) table.year_max = year;
    }
    return table;
}

CityTable load_cities(const std::filesystem::path& path) {
    csv::Reader in(path);
    const std::size_t c_id = in.column("city_id");
    const std::size_t c_name = in.column("name");
    const std::size_t c_country = in.column("country");
    const std::size_t c_lat = in.column("lat");
    const std::size_t c_lon = in.column("lon");
    const std::size_t c_pop = in.column("population");

    std::vector<CityRecord> rows;
    std::vector<std::string> fields;
    std::size_t line;
    while (in.next(fields, line)) {
        CityRecord c;
        c.id = fields[c_id];
        c.name = fields[c_name];
        c.country = fields[c_country];
        c.lat = csv::parse_number(fields[c_lat], in.filename(), line, "lat");
        c.lon = csv::parse_number(fields[c_lon], in.filename(), line, "lon");
        c.population = csv::parse_number(fields[c_pop], in.filename(), line, "population");
        if (!(c.lat >= -90 && c.lat <= 90))
            fail_at(in.filename(), line, "latitude out of [-90, 90]");
        if (!(c.lon >= -180 && c.lon <= 180))
            fail_at(in.filename(), line, "longitude out of [-180, 180]");
        if (!(c.population >= 0))
            fail_at(in.filename(), line, "invalid population");
        if (!is_iso2(c.country))
            fail_at(in.filename(), line, "bad country code '" + c.country + "'");
        rows.push_back(std::move(c));
    }
    try {
        return CityTable(std::move(rows));
    } catch (const ValidationError& e) {
        throw ValidationError(in.filename() + ": " + e.what());
    }
}

CountryTable load_gdp(const std::filesystem::path& path) {
    csv::Reader in(path);
    const std::size_t c_country = in.column("country");
    const std::size_t c_year = in.column("year");
    const std::size_t c_gdp = in.column("gdp");

    CountryTable table;
    std::vector<std::string> fields;
    std::size_t line;
    while (in.next(fields, line)) {
        const std::string& code = fields[c_country];
        if (!is_iso2(code))
            fail_at(in.filename(), line, "bad country code '" + code + "'");
        const int year = csv::parse_int(fields[c_year], in.filename(), line, "year");
        const double gdp = csv::parse_number(fields[c_gdp], in.filename(), line, "gdp");
        if (!(gdp > 0) || !std::isfinite(gdp))
            fail_at(in.filename(), line, "gdp must be positive");
        CountryRecord& rec = table.by_code[code];
        rec.code = code;
        if (!rec.gdp_by_year.emplace(year, gdp).second)
            fail_at(in.filename(), line,
                    "duplicate gdp for " + code + " in " + std::to_string(year));
    }
    return table;
}

OwnershipLinkTable load_ownership(const std::filesystem::path& path, double min_control_pct) {
    if (!(min_control_pct > 0) || min_control_pct > 100)
        throw ValidationError("min_control_pct must be in (0, 100]");
    csv::Reader in(path);
    const std::size_t c_pf = in.column("parent_firm");
    const std::size_t c_pc = in.column("parent_city");
    const std::size_t c_sf = in.column("subsidiary_firm");
    const std::size_t c_sc = in.column("subsidiary_city");
    const std::size_t c_pct = in.column("ownership_pct");
    const std::size_t c_sector = in.column("sector");
    const std::size_t c_rev = in.column("revenue");

    OwnershipLinkTable table;
    table.min_control_pct = min_control_pct;
    std::set<std::pair<std::string, std::string>> seen;
    std::vector<std::string> fields;
    std::size_t line;
    while (in.next(fields, line)) {
        OwnershipLinkRecord r;
        r.parent_firm = fields[c_pf];
        r.parent_city = fields[c_pc];
        r.subsidiary_firm = fields[c_sf];
        r.subsidiary_city = fields[c_sc];
        r.ownership_pct = csv::parse_number(fields[c_pct], in.filename(), line, "ownership_pct");
        r.sector = fields[c_sector];
        r.revenue = csv::parse_number(fields[c_rev], in.filename(), line, "revenue");
        if (!(r.ownership_pct > 0) || r.ownership_pct > 100)
            fail_at(in.filename(), line, "ownership_pct outside (0, 100]");
        if (r.revenue < 0 || !std::isfinite(r.revenue))
            fail_at(in.filename(), line, "negative or non-finite revenue");
        if (!seen.emplace(r.parent_firm, r.subsidiary_firm).second)
            fail_at(in.filename(), line, "duplicate ownership row for (" + r.parent_firm + ", " +
                                             r.subsidiary_firm + ")");
        if (r.ownership_pct < min_control_pct) {
            ++table.dropped_below_threshold;
            continue;
        }
        table.links.push_back(std::move(r));
    }
    return table;
}

void assign_capitals(CountryTable& countries, const CityTable& cities) {
    for (auto& [code, rec] : countries.by_code) {
        const CityRecord* best = nullptr;
        for (const auto& city : cities.rows()) {
            if (city.country != code) continue;
            if (!best || city.population > best->population ||
                (city.population == best->population && city.id < best->id))
                best = &city;
        }
        if (best) rec.capital_city_id = best->id;
    }
}

DistanceTable capital_distances(const CountryTable& countries, const CityTable& cities) {
    std::vector<const CountryRecord*> recs;
    for (const auto& [code, rec] : countries.by_code) {
        if (rec.capital_city_id.empty())
            throw ValidationError("country " + code + " has no capital city");
        if (!cities.find(rec.capital_city_id))
            throw ValidationError("country " + code + ": capital city id '" +
                                  rec.capital_city_id + "' not in city table");
        recs.push_back(&rec);
    }
    DistanceTable dist;
    for (std::size_t i = 0; i < recs.size(); ++i) {
        const CityRecord& a = cities.at(recs[i]->capital_city_id);
        for (std::size_t j = i + 1; j < recs.size(); ++j) {
            const CityRecord& b = cities.at(recs[j]->capital_city_id);
            const double km = haversine_km(a.lat, a.lon, b.lat, b.lon);
            if (!(km > 0))
                throw ValidationError("capitals of " + recs[i]->code + " and " + recs[j]->code +
                                      " coincide; distances must be positive");
            dist.set(recs[i]->code, recs[j]->code, km);
        }
    }
    return dist;
}

}  // namespace ceeflow
