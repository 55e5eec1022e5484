#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ceeflow::cli {

/// Everything the subcommands consume. Flags beat config-file values beat
/// these defaults; `scheme` empty means "per-command default" (trade10 for
/// trade commands, fdi9 for ownership commands).
struct RunConfig {
    std::string trade;
    std::string cities;
    std::string gdp;
    std::string ownership;
    std::string scheme;
    std::vector<int> years;

    double a = 2.0;
    std::string k_variant = "paper";  // or "total-preserving"
    bool assume_zero = false;
    double tol = 1e-10;
    int max_iter = 50;

    int axes = 0;      // 0 = keep all non-trivial axes
    int clusters = 0;  // 0 = no cut
    double min_control_pct = 50.0;
    double min_share = 0.0;
    std::string weights = "revenue";  // or "count"

    std::string out = "out";
    std::vector<std::string> formats = {"csv"};
    int jobs = 1;
    std::uint64_t seed = 1;
    bool strict = false;
};

int cmd_validate(const RunConfig& cfg);
int cmd_gravity(const RunConfig& cfg);
int cmd_trade_ca(const RunConfig& cfg);
int cmd_city_ca(const RunConfig& cfg);
int cmd_network(const RunConfig& cfg);
int cmd_synth(const RunConfig& cfg);

/// Parse argv (argv[0] is the program name) and dispatch. Exit codes:
/// 0 success, 1 validation failure, 2 numerical failure, 3 I/O failure.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);

}  // namespace ceeflow::cli
