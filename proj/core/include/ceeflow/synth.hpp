#pragma once

#include <cstdint>
#include <filesystem>
#include <random>

namespace ceeflow::synth {

/// Deterministic Poisson draw (inversion below mean 60, else a
/// continuity-corrected normal approximation). Stream comes only from `rng`.
long long poisson_sample(std::mt19937_64& rng, double mean);

/// 53-bit uniform in [0, 1).
double uniform01(std::mt19937_64& rng);

/// Gravity estimation fixture: eight countries with capital cities and 2012
/// GDPs, and sector-split trade flows drawn Poisson around the gravity mean
/// exp(c + 1.2 log M_i + 1.1 log M_j - 1.8 log D_ij), scaled so the smallest
/// pair mean is 50. Writes cities.csv, gdp.csv, trade_flows.csv.
void write_gravity_fixture(const std::filesystem::path& dir, std::uint64_t seed);

/// Trade specialisation fixture: flows for 8 countries x 9 analysis years
/// x 10 commodity groups with per-country drifting sector profiles.
void write_trade_ca_fixture(const std::filesystem::path& dir, std::uint64_t seed);

/// City specialisation fixture: ownership links giving a clean opposition
/// between construction-service and industrial destination cities, plus a few
/// below-threshold rows. Writes cities.csv, ownership.csv.
void write_city_ca_fixture(const std::filesystem::path& dir, std::uint64_t seed);

/// Country-level control-link fixture whose aggregation reproduces the
/// reference origin/destination share margins. Not seeded (fixed table).
void write_country_links_fixture(const std::filesystem::path& dir);

/// Sector x city-size fixture with disjoint per-sector host cities.
void write_sector_size_fixture(const std::filesystem::path& dir);

/// Mono/pluri specialisation fixture.
void write_specialisation_fixture(const std::filesystem::path& dir);

/// All of the above under dir/{gravity,trade_ca,city_ca,country_links,sector_sizes,specialisation}.
void write_all(const std::filesystem::path& dir, std::uint64_t seed);

}  // namespace ceeflow::synth
