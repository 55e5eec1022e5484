#pragma once

#include <array>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ceeflow/ca.hpp"
#include "ceeflow/domain.hpp"
#include "ceeflow/ingest.hpp"

namespace ceeflow {

struct SectorStat {
    double revenue = 0;
    int count = 0;
};

struct EdgeData {
    double revenue = 0;
    int count = 0;
    std::map<std::string, SectorStat> sectors;  // group label -> contribution
};

/// City-to-city aggregation of firm control links. Self-loops (parent and
/// subsidiary in the same city) are kept and queryable, not silently dropped.
struct CityGraph {
    std::set<std::string> nodes;
    std::map<std::pair<std::string, std::string>, EdgeData> edges;  // (origin, dest)

    double total_revenue() const;
    double self_loop_revenue() const;
    std::vector<std::string> destination_cities() const;  // sorted, with inbound links
};

/// Sum firm links into city edges; sectors are mapped through the scheme and
/// every city id must resolve in the city table.
CityGraph aggregate_to_cities(const OwnershipLinkTable& links, const SectorScheme& scheme,
                              const CityTable& cities);

/// Origin-country x destination-country revenue matrix. Domestic (same
/// country) weight is reported separately and excluded from the matrix.
struct CountryMatrix {
    std::vector<std::string> countries;  // sorted ISO-2 codes
    Eigen::MatrixXd values;              // structurally zero diagonal
    double domestic_total = 0;

    double grand_total() const { return values.sum(); }
};

CountryMatrix aggregate_to_countries(const CityGraph& graph, const CityTable& cities);

/// Marginal percentages of the country matrix. `display` values are integers
/// forced to sum to 100 by largest-remainder rounding; exact values retained.
struct CountryShares {
    std::vector<double> origin_pct, dest_pct;
    std::vector<int> origin_display, dest_display;
};

CountryShares share_matrix(const CountryMatrix& matrix);

/// For each sector, distinct destination cities hosting at least one
/// controlled firm in it, bucketed by city size.
struct SectorSizeCrosstab {
    struct Row {
        std::string sector;
        std::array<int, 3> counts;  // small, medium, large
        std::array<int, 3> pct;     // largest-remainder, sums to 100
    };
    std::vector<Row> rows;  // sector order: lexicographic
};

SectorSizeCrosstab sector_size_crosstab(const CityGraph& graph, const CityTable& cities);

/// Mono- vs pluri-specialisation of destination cities. A city is MONO when
/// its controlled firms span exactly one sector group. With min_share_pct > 0
/// only sectors carrying at least that share of the city's inbound revenue
/// count, the dominant sector always does. Cities without inbound links are
/// excluded. Aggregate rows give the size-class distribution within each
/// classification (each row sums to 100).
struct SpecialisationReport {
    struct CityEntry {
        std::string city;
        SizeClass size;
        int sector_count;
        bool mono;
    };
    std::vector<CityEntry> cities;            // sorted by city id
    std::array<int, 3> mono_counts{0, 0, 0};  // small, medium, large
    std::array<int, 3> pluri_counts{0, 0, 0};
    std::array<int, 3> mono_pct{0, 0, 0};
    std::array<int, 3> pluri_pct{0, 0, 0};
};

SpecialisationReport specialisation_classify(const CityGraph& graph, const CityTable& cities,
                                             double min_share_pct = 0.0);

enum class WeightMode { revenue, count };

/// Destination-city x sector-group table feeding the city CA. Column order
/// follows the scheme; all-zero rows/columns are dropped by the table itself.
ContingencyTable city_sector_table(const CityGraph& graph, const SectorScheme& scheme,
                                   WeightMode mode = WeightMode::revenue);

/// Integer percentages of `values` against their sum, summing exactly to 100
/// (largest remainder; ties to the earlier entry). All-zero input gives zeros.
std::vector<int> largest_remainder_percent(std::span<const double> values);

}  // namespace ceeflow
