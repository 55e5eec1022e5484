#include "ceeflow/network.hpp"

#include <algorithm>
#include <cmath>

#include "ceeflow/errors.hpp"

namespace ceeflow {

double CityGraph::total_revenue() const {
    long double s = 0;
    for (const auto& [key, e] : edges) s += e.revenue;
    return static_cast<double>(s);
}

double CityGraph::self_loop_revenue() const {
    long double s = 0;
    for (const auto& [key, e] : edges)
        if (key.first == key.second) s += e.revenue;
    return static_cast<double>(s);
}

std::vector<std::string> CityGraph::destination_cities() const {
    std::set<std::string> dests;
    for (const auto& [key, e] : edges) dests.insert(key.second);
    return {dests.begin(), dests.end()};
}

CityGraph aggregate_to_cities(const OwnershipLinkTable& links, const SectorScheme& scheme,
                              const CityTable& cities) {
    CityGraph graph;
    for (const auto& link : links.links) {
        if (!cities.find(link.parent_city))
            throw ValidationError("unknown city id '" + link.parent_city + "'");
        if (!cities.find(link.subsidiary_city))
            throw ValidationError("unknown city id '" + link.subsidiary_city + "'");
        auto group = scheme.map_code(link.sector);
        if (!group)
            throw ValidationError("sector code '" + link.sector + "' unmapped under scheme '" +
                                  scheme.name() + "'");
        EdgeData& e = graph.edges[{link.parent_city, link.subsidiary_city}];
        e.revenue += link.revenue;
        e.count += 1;
        SectorStat& s = e.sectors[*group];
        s.revenue += link.revenue;
        s.count += 1;
        graph.nodes.insert(link.parent_city);
        graph.nodes.insert(link.subsidiary_city);
    }
    return graph;
}

CountryMatrix aggregate_to_countries(const CityGraph& graph, const CityTable& cities) {
    std::set<std::string> country_set;
    for (const auto& node : graph.nodes) country_set.insert(cities.at(node).country);

    CountryMatrix m;
    m.countries.assign(country_set.begin(), country_set.end());
    m.values = Eigen::MatrixXd::Zero(m.countries.size(), m.countries.size());

    const auto index = [&](const std::string& code) {
        return std::lower_bound(m.countries.begin(), m.countries.end(), code) -
               m.countries.begin();
    };
    for (const auto& [key, e] : graph.edges) {
        const std::string& c1 = cities.at(key.first).country;
        const std::string& c2 = cities.at(key.second).country;
        if (c1 == c2)
            m.domestic_total += e.revenue;
        else
            m.values(index(c1), index(c2)) += e.revenue;
    }
    return m;
}

std::vector<int> largest_remainder_percent(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<int> out(n, 0);
    long double total = 0;
    for (double v : values) total += v;
    if (!(total > 0)) return out;

    std::vector<double> exact(n);
    std::vector<std::pair<double, std::size_t>> remainders;
    int assigned = 0;
    for (std::size_t i = 0; i < n; ++i) {
        exact[i] = 100.0 * values[i] / static_cast<double>(total);
        out[i] = static_cast<int>(std::floor(exact[i]));
        assigned += out[i];
        remainders.push_back({exact[i] - out[i], i});
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (int k = 0; k < 100 - assigned && k < static_cast<int>(n); ++k)
        out[remainders[k].second] += 1;
    return out;
}

CountryShares share_matrix(const CountryMatrix& matrix) {
    const double grand = matrix.grand_total();
    if (!(grand > 0))
        throw ValidationError("share_matrix: grand total is zero");

    CountryShares s;
    std::vector<double> row_sums, col_sums;
    for (Eigen::Index i = 0; i < matrix.values.rows(); ++i)
        row_sums.push_back(matrix.values.row(i).sum());
    for (Eigen::Index j = 0; j < matrix.values.cols(); ++j)
        col_sums.push_back(matrix.values.col(j).sum());
    for (double v : row_sums) s.origin_pct.push_back(100.0 * v / grand);
    for (double v : col_sums) s.dest_pct.push_back(100.0 * v / grand);
    s.origin_display = largest_remainder_percent(row_sums);
    s.dest_display = largest_remainder_percent(col_sums);
    return s;
}

SectorSizeCrosstab sector_size_crosstab(const CityGraph& graph, const CityTable& cities) {
    // sector -> distinct destination cities with a link in that sector
    std::map<std::string, std::set<std::string>> hosts;
    for (const auto& [key, e] : graph.edges)
        for (const auto& [sector, stat] : e.sectors) hosts[sector].insert(key.second);

    SectorSizeCrosstab tab;
    for (const auto& [sector, cities_in] : hosts) {
        SectorSizeCrosstab::Row row;
        row.sector = sector;
        row.counts = {0, 0, 0};
        for (const auto& id : cities_in)
            row.counts[static_cast<int>(classify_city_size(cities.at(id).population))] += 1;
        const std::array<double, 3> as_d{static_cast<double>(row.counts[0]),
                                         static_cast<double>(row.counts[1]),
                                         static_cast<double>(row.counts[2])};
        const auto pct = largest_remainder_percent(as_d);
        row.pct = {pct[0], pct[1], pct[2]};
        tab.rows.push_back(std::move(row));
    }
    return tab;
}

SpecialisationReport specialisation_classify(const CityGraph& graph, const CityTable& cities,
                                             double min_share_pct) {
    if (min_share_pct < 0 || min_share_pct > 100)
        throw ValidationError("min_share_pct must be in [0, 100]");

    // inbound sector revenue per destination city
    std::map<std::string, std::map<std::string, double>> inbound;
    for (const auto& [key, e] : graph.edges)
        for (const auto& [sector, stat] : e.sectors) inbound[key.second][sector] += stat.revenue;

    SpecialisationReport report;
    for (const auto& [city, sectors] : inbound) {
        double total = 0;
        for (const auto& [sector, rev] : sectors) total += rev;

        int qualifying = 0;
        if (min_share_pct <= 0 || total <= 0) {
            qualifying = static_cast<int>(sectors.size());
        } else {
            for (const auto& [sector, rev] : sectors)
                if (100.0 * rev / total >= min_share_pct) ++qualifying;
            if (qualifying == 0) qualifying = 1;  // the dominant sector always counts
        }

        SpecialisationReport::CityEntry entry;
        entry.city = city;
        entry.size = classify_city_size(cities.at(city).population);
        entry.sector_count = qualifying;
        entry.mono = qualifying == 1;
        (entry.mono ? report.mono_counts : report.pluri_counts)[static_cast<int>(entry.size)] += 1;
        report.cities.push_back(std::move(entry));
    }

    const auto to_pct = [](const std::array<int, 3>& counts) {
        const std::array<double, 3> as_d{static_cast<double>(counts[0]),
                                         static_cast<double>(counts[1]),
                                         static_cast<double>(counts[2])};
        const auto pct = largest_remainder_percent(as_d);
        return std::array<int, 3>{pct[0], pct[1], pct[2]};
    };
    report.mono_pct = to_pct(report.mono_counts);
    report.pluri_pct = to_pct(report.pluri_counts);
    return report;
}

ContingencyTable city_sector_table(const CityGraph& graph, const SectorScheme& scheme,
                                   WeightMode mode) {
    if (graph.edges.empty())
        throw ValidationError("city_sector_table: empty graph");

    const std::vector<std::string> rows = graph.destination_cities();
    const std::vector<std::string>& cols = scheme.groups();
    std::map<std::string, Eigen::Index> row_index;
    for (std::size_t i = 0; i < rows.size(); ++i) row_index[rows[i]] = i;

    Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(rows.size(), cols.size());
    for (const auto& [key, e] : graph.edges) {
        const Eigen::Index i = row_index.at(key.second);
        for (const auto& [sector, stat] : e.sectors) {
            const int j = scheme.group_index(sector);
            if (j < 0)
                throw ValidationError("sector '" + sector + "' not in scheme '" + scheme.name() +
                                      "'");
            counts(i, j) += mode == WeightMode::revenue ? stat.revenue
                                                        : static_cast<double>(stat.count);
        }
    }
    return ContingencyTable(rows, cols, std::move(counts));
}

}  // namespace ceeflow
