#include "ceeflow/synth.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "ceeflow/csv.hpp"
#include "ceeflow/domain.hpp"
#include "ceeflow/ingest.hpp"

namespace ceeflow::synth {

namespace {

struct Capital {
    const char* country;
    const char* id;
    const char* name;
    double lat, lon, population;
};

// the eight capitals, real coordinates
constexpr Capital kCapitals[] = {
    {"BG", "bg-sof", "Sofia", 42.6977, 23.3219, 1200000},
    {"CZ", "cz-prg", "Prague", 50.0755, 14.4378, 1280000},
    {"HR", "hr-zag", "Zagreb", 45.8150, 15.9819, 790000},
    {"HU", "hu-bud", "Budapest", 47.4979, 19.0402, 1740000},
    {"PL", "pl-waw", "Warsaw", 52.2297, 21.0122, 1720000},
    {"RO", "ro-buc", "Bucharest", 44.4268, 26.1025, 1880000},
    {"SI", "si-lju", "Ljubljana", 46.0569, 14.5058, 280000},
    {"SK", "sk-bts", "Bratislava", 48.1486, 17.1077, 430000},
};

csv::TableWriter capitals_table() {
    csv::TableWriter w({"city_id", "name", "country", "lat", "lon", "population"});
    for (const auto& c : kCapitals)
        w.add_row({std::string(c.id), std::string(c.name), std::string(c.country), c.lat, c.lon,
                   c.population});
    return w;
}

std::string city_id_of(const std::string& country) {
    for (const auto& c : kCapitals)
        if (country == c.country) return c.id;
    return {};
}

}  // namespace

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

long long poisson_sample(std::mt19937_64& rng, double mean) {
    if (!(mean > 0)) return 0;
    if (mean < 60.0) {
        const double u = uniform01(rng);
        double p = std::exp(-mean), cdf = p;
        long long k = 0;
        while (u > cdf && k < 10000) {
            ++k;
            p *= mean / static_cast<double>(k);
            cdf += p;
        }
        return k;
    }
    // Box-Muller normal approximation with continuity correction
    const double u1 = std::max(uniform01(rng), 1e-16);
    const double u2 = uniform01(rng);
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    const double v = std::floor(mean + std::sqrt(mean) * z + 0.5);
    return v < 0 ? 0 : static_cast<long long>(v);
}

void write_gravity_fixture(const std::filesystem::path& dir, std::uint64_t seed) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 1);
    capitals_table().write_csv(dir / "cities.csv");

    // GDPs log-uniform between 50 000 and 500 000 (constant-dollar millions)
    const int year = 2012;
    std::vector<double> gdp;
    csv::TableWriter gdp_out({"country", "year", "gdp"});
    for (const auto& c : kCapitals) {
        const double g = 5e4 * std::pow(10.0, uniform01(rng));
        gdp.push_back(g);
        gdp_out.add_row({std::string(c.country), static_cast<std::int64_t>(year), g});
    }
    gdp_out.write_csv(dir / "gdp.csv");

    constexpr double beta = 1.2, gamma = 1.1, delta = -1.8;
    const std::size_t n = std::size(kCapitals);

    double min_eta = 0;
    bool first = true;
    std::vector<std::vector<double>> eta(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double d = haversine_km(kCapitals[i].lat, kCapitals[i].lon, kCapitals[j].lat,
                                          kCapitals[j].lon);
            eta[i][j] = beta * std::log(gdp[i]) + gamma * std::log(gdp[j]) + delta * std::log(d);
            if (first || eta[i][j] < min_eta) min_eta = eta[i][j];
            first = false;
        }
    }
    const double intercept = std::log(50.0) - min_eta;  // smallest pair mean = 50

    // each pair's Poisson total split across three commodity groups
    constexpr const char* kSectors[] = {"Mechanics", "Chemistry", "Food Products"};
    constexpr double kShares[] = {0.5, 0.3, 0.2};
    csv::TableWriter flows({"year", "origin", "dest", "sector", "value"});
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double mean = std::exp(intercept + eta[i][j]);
            for (int s = 0; s < 3; ++s) {
                const long long v = poisson_sample(rng, mean * kShares[s]);
                flows.add_row({static_cast<std::int64_t>(year), std::string(kCapitals[i].country),
                               std::string(kCapitals[j].country), std::string(kSectors[s]),
                               static_cast<double>(v)});
            }
        }
    }
    flows.write_csv(dir / "trade_flows.csv");
}

void write_trade_ca_fixture(const std::filesystem::path& dir, std::uint64_t seed) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 2);
    const auto& scheme = SectorScheme::trade10();
    const std::size_t n_sectors = scheme.groups().size();

    const auto simplex = [&](std::size_t m) {
        std::vector<double> v(m);
        double total = 0;
        for (auto& x : v) {
            x = -std::log(std::max(uniform01(rng), 1e-12));
            total += x;
        }
        for (auto& x : v) x /= total;
        return v;
    };

    csv::TableWriter flows({"year", "origin", "dest", "sector", "value"});
    constexpr int kYears[] = {1970, 1975, 1980, 1985, 1990, 1995, 2000, 2005, 2010};
    const std::size_t n_countries = std::size(kCapitals);
    for (std::size_t o = 0; o < n_countries; ++o) {
        const auto early = simplex(n_sectors);
        const auto late = simplex(n_sectors);
        for (std::size_t t = 0; t < std::size(kYears); ++t) {
            const double w = static_cast<double>(t) / (std::size(kYears) - 1);
            const double volume = 500.0 * std::exp(0.25 * static_cast<double>(t)) *
                                  (0.8 + 0.4 * uniform01(rng));
            for (std::size_t s = 0; s < n_sectors; ++s) {
                const double share = (1.0 - w) * early[s] + w * late[s];
                // partner rotates over the other countries; the trade CA sums
                // over destinations, so only origin profiles matter here
                const Capital& dest = kCapitals[(o + 1 + s % (n_countries - 1)) % n_countries];
                flows.add_row({static_cast<std::int64_t>(kYears[t]),
                               std::string(kCapitals[o].country), std::string(dest.country),
                               scheme.groups()[s], volume * share});
            }
        }
    }
    flows.write_csv(dir / "trade_flows.csv");
}

namespace {

struct FixtureCity {
    std::string id;
    double population;
};

void write_generic_cities(const std::filesystem::path& path, const std::vector<FixtureCity>& cities,
                          const std::string& country) {
    csv::TableWriter w({"city_id", "name", "country", "lat", "lon", "population"});
    double lat = 45.0, lon = 15.0;
    for (const auto& c : cities) {
        w.add_row({c.id, c.id, country, lat, lon, c.population});
        lon += 0.05;
        if (lon > 25.0) {
            lon = 15.0;
            lat += 0.05;
        }
    }
    w.write_csv(path);
}

constexpr double kSmallPop = 20000, kMediumPop = 120000, kLargePop = 600000;

}  // namespace

void write_city_ca_fixture(const std::filesystem::path& dir, std::uint64_t seed) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 3);

    struct Profile {
        std::string prefix;
        int count;
        std::vector<std::pair<std::string, double>> sectors;  // group -> base revenue
    };
    // construction-service pole kept rare and extreme so axis 1 pins on it
    const std::vector<Profile> profiles = {
        {"svc", 4, {{"SERVICES", 90.0}, {"ENERGY", 10.0}}},
        {"ind", 12, {{"INDUSTRY", 60.0}, {"CARS", 25.0}, {"SALES", 15.0}}},
    };

    std::vector<FixtureCity> cities{{"hub", kLargePop}};
    csv::TableWriter links({"parent_firm", "parent_city", "subsidiary_firm", "subsidiary_city",
                            "ownership_pct", "sector", "revenue"});
    int firm = 0;
    for (const auto& p : profiles) {
        for (int i = 0; i < p.count; ++i) {
            const std::string id = p.prefix + (i < 9 ? "0" : "") + std::to_string(i + 1);
            const double pop = i % 3 == 0 ? kSmallPop : (i % 3 == 1 ? kMediumPop : kLargePop);
            cities.push_back({id, pop});
            for (const auto& [sector, base] : p.sectors) {
                const double revenue = base * (0.85 + 0.3 * uniform01(rng));
                const double pct = 50.0 + 50.0 * uniform01(rng);
                links.add_row({"p" + std::to_string(++firm), std::string("hub"),
                               "s" + std::to_string(firm), id, pct, sector, revenue});
            }
        }
    }
    // sub-threshold minority stakes, dropped by the default 50% filter
    for (int i = 0; i < 3; ++i) {
        links.add_row({"p" + std::to_string(++firm), std::string("hub"),
                       "s" + std::to_string(firm), std::string("ind01"),
                       10.0 + 10.0 * uniform01(rng), std::string("FINANCE"), 5.0});
    }

    write_generic_cities(dir / "cities.csv", cities, "PL");
    links.write_csv(dir / "ownership.csv");
}

void write_country_links_fixture(const std::filesystem::path& dir) {
    // origin -> (dest, revenue in millions of euros); the RO->BG cell is 235,
    // the value consistent with the table's own printed share margins
    struct Cell {
        const char* origin;
        const char* dest;
        double value;
    };
    constexpr Cell kCells[] = {
        {"CZ", "PL", 52},   {"CZ", "HU", 1},     {"CZ", "SK", 383},  {"CZ", "HR", 0.4},
        {"CZ", "SI", 0.1},  {"CZ", "BG", 215},   {"CZ", "RO", 203},  {"PL", "CZ", 1148},
        {"PL", "HU", 9},    {"PL", "SK", 28},    {"PL", "HR", 9},    {"PL", "SI", 1},
        {"PL", "BG", 0.4},  {"PL", "RO", 73},    {"HU", "CZ", 30},   {"HU", "PL", 31},
        {"HU", "SK", 1676}, {"HU", "HR", 607},   {"HU", "SI", 60},   {"HU", "BG", 96},
        {"HU", "RO", 235},  {"SK", "CZ", 390},   {"SK", "PL", 194},  {"SK", "HU", 33},
        {"SK", "HR", 0.6},  {"SK", "SI", 10},    {"SK", "BG", 1},    {"SK", "RO", 0.1},
        {"HR", "CZ", 8},    {"HR", "PL", 8},     {"HR", "HU", 2},    {"HR", "SK", 28},
        {"HR", "SI", 128},  {"HR", "BG", 0.01},  {"HR", "RO", 0.1},  {"SI", "CZ", 8},
        {"SI", "PL", 2},    {"SI", "SK", 0.3},   {"SI", "HR", 212},  {"SI", "BG", 1},
        {"SI", "RO", 23},   {"BG", "CZ", 1},     {"BG", "HR", 0.05}, {"BG", "RO", 3},
        {"RO", "BG", 235},
    };

    capitals_table().write_csv(dir / "cities.csv");
    csv::TableWriter links({"parent_firm", "parent_city", "subsidiary_firm", "subsidiary_city",
                            "ownership_pct", "sector", "revenue"});
    const auto& groups = SectorScheme::fdi9().groups();
    int i = 0;
    for (const auto& cell : kCells) {
        const std::string tag = std::string(cell.origin) + "-" + cell.dest;
        links.add_row({"pf-" + tag, city_id_of(cell.origin), "sf-" + tag, city_id_of(cell.dest),
                       100.0, groups[i++ % groups.size()], cell.value});
    }
    links.write_csv(dir / "ownership.csv");
}

namespace {

void write_size_fixture(const std::filesystem::path& dir,
                        const std::vector<std::pair<std::string, std::array<int, 3>>>& sectors,
                        int links_per_city) {
    std::vector<FixtureCity> cities{{"hub", kLargePop}};
    csv::TableWriter links({"parent_firm", "parent_city", "subsidiary_firm", "subsidiary_city",
                            "ownership_pct", "sector", "revenue"});
    const auto& groups = SectorScheme::fdi9().groups();
    int city_no = 0, firm = 0;
    for (const auto& [sector, counts] : sectors) {
        for (int bucket = 0; bucket < 3; ++bucket) {
            const double pop =
                bucket == 0 ? kSmallPop : (bucket == 1 ? kMediumPop : kLargePop);
            for (int i = 0; i < counts[bucket]; ++i) {
                char id[16];
                std::snprintf(id, sizeof id, "c%03d", ++city_no);
                cities.push_back({id, pop});
                for (int l = 0; l < links_per_city; ++l) {
                    // extra links use further sectors to make the city pluri
                    const std::string g =
                        l == 0 ? sector
                               : groups[(SectorScheme::fdi9().group_index(sector) + l) %
                                        groups.size()];
                    links.add_row({"p" + std::to_string(++firm), std::string("hub"),
                                   "s" + std::to_string(firm), std::string(id), 100.0, g,
                                   10.0 + city_no});
                }
            }
        }
    }
    write_generic_cities(dir / "cities.csv", cities, "PL");
    links.write_csv(dir / "ownership.csv");
}

}  // namespace

void write_sector_size_fixture(const std::filesystem::path& dir) {
    // per-sector (small, medium, large) host-city counts; disjoint city sets
    write_size_fixture(dir,
                       {{"CARS", {1, 1, 5}},
                        {"FINANCE", {1, 2, 8}},
                        {"IT", {0, 1, 1}},
                        {"INDUSTRY", {8, 3, 4}},
                        {"MEDIA", {1, 2, 9}},
                        {"REAL ESTATE", {0, 0, 3}},
                        {"SALES", {7, 3, 4}},
                        {"SERVICES", {2, 1, 4}},
                        {"ENERGY", {1, 1, 1}}},
                       1);
}

void write_specialisation_fixture(const std::filesystem::path& dir) {
    std::vector<FixtureCity> cities{{"hub", kLargePop}};
    csv::TableWriter links({"parent_firm", "parent_city", "subsidiary_firm", "subsidiary_city",
                            "ownership_pct", "sector", "revenue"});
    const auto& groups = SectorScheme::fdi9().groups();

    // mono cities 24/9/4 across sizes, pluri cities 0/3/8 (two sectors each)
    constexpr std::array<int, 3> kMono{24, 9, 4}, kPluri{0, 3, 8};
    int city_no = 0, firm = 0;
    const auto add_city = [&](double pop, int n_sectors) {
        char id[16];
        std::snprintf(id, sizeof id, "m%03d", ++city_no);
        cities.push_back({id, pop});
        for (int s = 0; s < n_sectors; ++s)
            links.add_row({"p" + std::to_string(++firm), std::string("hub"),
                           "s" + std::to_string(firm), std::string(id), 100.0,
                           groups[(city_no + s) % groups.size()], 25.0 + city_no});
    };
    for (int bucket = 0; bucket < 3; ++bucket) {
        const double pop = bucket == 0 ? kSmallPop : (bucket == 1 ? kMediumPop : kLargePop);
        for (int i = 0; i < kMono[bucket]; ++i) add_city(pop, 1);
    }
    for (int bucket = 0; bucket < 3; ++bucket) {
        const double pop = bucket == 0 ? kSmallPop : (bucket == 1 ? kMediumPop : kLargePop);
        for (int i = 0; i < kPluri[bucket]; ++i) add_city(pop, 2);
    }
    write_generic_cities(dir / "cities.csv", cities, "PL");
    links.write_csv(dir / "ownership.csv");
}

void write_all(const std::filesystem::path& dir, std::uint64_t seed) {
    write_gravity_fixture(dir / "gravity", seed);
    write_trade_ca_fixture(dir / "trade_ca", seed);
    write_city_ca_fixture(dir / "city_ca", seed);
    write_country_links_fixture(dir / "country_links");
    write_sector_size_fixture(dir / "sector_sizes");
    write_specialisation_fixture(dir / "specialisation");
}

}  // namespace ceeflow::synth
