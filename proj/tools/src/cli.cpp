#include "cli.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <limits>
#include <set>
#include <thread>

#include <CLI11.hpp>

#include "ceeflow/ca.hpp"
#include "ceeflow/cluster.hpp"
#include "ceeflow/csv.hpp"
#include "ceeflow/domain.hpp"
#include "ceeflow/errors.hpp"
#include "ceeflow/gravity.hpp"
#include "ceeflow/ingest.hpp"
#include "ceeflow/network.hpp"
#include "ceeflow/svg.hpp"
#include "ceeflow/synth.hpp"

namespace fs = std::filesystem;

namespace ceeflow::cli {

namespace {

bool wants(const RunConfig& cfg, const std::string& fmt) {
    for (const auto& f : cfg.formats)
        if (f == fmt) return true;
    return false;
}

// every CSV report gets a one-to-one JSON mirror when asked for
void emit(const RunConfig& cfg, const csv::TableWriter& table, const std::string& stem) {
    const fs::path dir(cfg.out);
    if (wants(cfg, "csv")) table.write_csv(dir / (stem + ".csv"));
    if (wants(cfg, "json")) table.write_json(dir / (stem + ".json"));
}

SectorScheme resolve_scheme(const RunConfig& cfg, const SectorScheme& fallback) {
    if (cfg.scheme.empty()) return fallback;
    if (cfg.scheme == "trade10") return SectorScheme::trade10();
    if (cfg.scheme == "fdi9") return SectorScheme::fdi9();
    return load_sector_scheme(cfg.scheme);
}

void require(bool ok, const std::string& msg) {
    if (!ok) throw ValidationError(msg);
}

// deterministic worker pool: results land in caller-indexed slots
template <typename Fn>
void parallel_indexed(std::size_t n, int jobs, Fn&& fn) {
    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

std::vector<std::string> axis_columns(int n_axes) {
    std::vector<std::string> cols{"row_id"};
    for (int k = 1; k <= n_axes; ++k) cols.push_back("axis" + std::to_string(k));
    return cols;
}

csv::TableWriter coordinates_table(const std::vector<std::string>& ids,
                                   const Eigen::MatrixXd& coords) {
    csv::TableWriter out(axis_columns(static_cast<int>(coords.cols())));
    for (std::size_t i = 0; i < ids.size(); ++i) {
        std::vector<csv::TableWriter::Cell> row{ids[i]};
        for (Eigen::Index k = 0; k < coords.cols(); ++k)
            row.emplace_back(coords(static_cast<Eigen::Index>(i), k));
        out.add_row(std::move(row));
    }
    return out;
}

csv::TableWriter inertia_table(const CAResult& ca) {
    csv::TableWriter out({"axis", "singular_value", "inertia_share_pct"});
    for (int k = 0; k < ca.n_axes(); ++k)
        out.add_row({static_cast<std::int64_t>(k + 1), ca.singular_values[k],
                     ca.inertia_share_pct[k]});
    return out;
}

void emit_scatter_svg(const RunConfig& cfg, const CAResult& ca, const std::string& stem,
                      const std::vector<std::vector<std::size_t>>& polylines = {}) {
    if (!wants(cfg, "svg") || ca.n_axes() < 1) return;
    std::vector<SvgPoint> pts;
    for (std::size_t i = 0; i < ca.row_ids.size(); ++i) {
        SvgPoint p;
        p.x = ca.row_coords(static_cast<Eigen::Index>(i), 0);
        p.y = ca.n_axes() >= 2 ? ca.row_coords(static_cast<Eigen::Index>(i), 1) : 0.0;
        p.label = ca.row_ids[i];
        pts.push_back(std::move(p));
    }
    SvgOptions opt;
    opt.title = stem;
    opt.x_label = "axis 1";
    opt.y_label = ca.n_axes() >= 2 ? "axis 2" : "";
    opt.polylines = polylines;
    csv::write_file(fs::path(cfg.out) / (stem + ".svg"), scatter_svg(pts, opt));
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

int cmd_validate(const RunConfig& cfg) {
    bool any_validation = false, any_io = false;
    const auto check = [&](const std::string& label, auto&& loader) {
        try {
            loader();
        } catch (const IoError& e) {
            std::cout << label << ": I/O error: " << e.what() << "\n";
            any_io = true;
        } catch (const ValidationError& e) {
            std::cout << label << ": invalid: " << e.what() << "\n";
            any_validation = true;
        }
    };

    bool any_input = false;
    const bool custom_scheme =
        !cfg.scheme.empty() && cfg.scheme != "trade10" && cfg.scheme != "fdi9";
    std::optional<SectorScheme> custom;
    if (custom_scheme) {
        any_input = true;
        check("scheme", [&] {
            custom.emplace(load_sector_scheme(cfg.scheme));
            std::cout << "scheme: " << custom->groups().size() << " groups, "
                      << custom->name() << "\n";
        });
    }
    if (!cfg.trade.empty()) {
        any_input = true;
        if (custom_scheme && !custom) {
            std::cout << "trade: skipped, the sector scheme did not load\n";
        } else {
            check("trade", [&] {
                const SectorScheme scheme =
                    custom ? *custom : resolve_scheme(cfg, SectorScheme::trade10());
                auto table = load_trade_flows(cfg.trade, scheme);
                std::cout << "trade: " << table.records.size() << " aggregated records";
                if (table.year_min)
                    std::cout << ", years " << *table.year_min << ".." << *table.year_max;
                std::cout << "\n";
            });
        }
    }
    if (!cfg.cities.empty()) {
        any_input = true;
        check("cities", [&] {
            auto cities = load_cities(cfg.cities);
            std::cout << "cities: " << cities.rows().size() << " records\n";
        });
    }
    if (!cfg.gdp.empty()) {
        any_input = true;
        check("gdp", [&] {
            auto gdp = load_gdp(cfg.gdp);
            std::size_t n = 0;
            for (const auto& [code, rec] : gdp.by_code) n += rec.gdp_by_year.size();
            std::cout << "gdp: " << n << " records, " << gdp.by_code.size() << " countries\n";
        });
    }
    if (!cfg.ownership.empty()) {
        any_input = true;
        check("ownership", [&] {
            auto links = load_ownership(cfg.ownership, cfg.min_control_pct);
            std::cout << "ownership: " << links.links.size() << " records kept, "
                      << links.dropped_below_threshold << " dropped below "
                      << csv::format_number(cfg.min_control_pct) << "% control\n";
        });
    }
    require(any_input, "validate: no inputs given (use --trade/--cities/--gdp/--ownership)");

    if (any_io) return 3;
    if (any_validation) return 1;
    std::cout << "ok\n";
    return 0;
}

int cmd_gravity(const RunConfig& cfg) {
    require(!cfg.years.empty(), "gravity: --years must not be empty");
    require(cfg.k_variant == "paper" || cfg.k_variant == "total-preserving",
            "gravity: --k-variant must be 'paper' or 'total-preserving'");
    const SectorScheme scheme = resolve_scheme(cfg, SectorScheme::trade10());
    const TradeFlowTable flows = load_trade_flows(cfg.trade, scheme);
    CountryTable gdp = load_gdp(cfg.gdp);
    const CityTable cities = load_cities(cfg.cities);
    assign_capitals(gdp, cities);
    const DistanceTable dist = capital_distances(gdp, cities);

    struct YearResult {
        GravityFit fit;
        double k = kNaN;
        std::string error;
    };
    std::vector<YearResult> results(cfg.years.size());

    GravitySpec spec;
    spec.a = cfg.a;
    spec.tol = cfg.tol;
    spec.max_iter = cfg.max_iter;

    parallel_indexed(cfg.years.size(), cfg.jobs, [&](std::size_t i) {
        YearResult& res = results[i];
        try {
            const int year = cfg.years[i];
            res.fit = fit_gravity(flows, year, gdp, dist, spec, cfg.assume_zero);
            const auto obs = gravity_observations(flows, year, gdp, dist, year, cfg.assume_zero);
            std::vector<double> fl, mass, d;
            for (const auto& o : obs) {
                fl.push_back(o.flow);
                mass.push_back(o.m_i * o.m_j);
                d.push_back(o.d);
            }
            res.k = calibrate_k(fl, mass, d, cfg.a,
                                cfg.k_variant == "paper" ? KVariant::paper
                                                         : KVariant::total_preserving);
        } catch (const std::exception& e) {
            res.error = e.what();
        }
    });

    csv::TableWriter table(
        {"year", "beta", "gamma", "delta", "r2_deviance", "r2_corr", "n_obs", "converged"});
    csv::TableWriter k_table({"year", "k", "variant"});
    bool any_numerical_failure = false;
    for (std::size_t i = 0; i < cfg.years.size(); ++i) {
        const YearResult& res = results[i];
        const auto year = static_cast<std::int64_t>(cfg.years[i]);
        if (!res.error.empty()) {
            std::cerr << "gravity " << cfg.years[i] << ": " << res.error << "\n";
            table.add_row({year, kNaN, kNaN, kNaN, kNaN, kNaN, std::int64_t{0}, false});
            k_table.add_row({year, kNaN, cfg.k_variant});
            any_numerical_failure = true;
            continue;
        }
        if (!res.fit.converged) any_numerical_failure = true;
        table.add_row({year, res.fit.beta, res.fit.gamma, res.fit.delta, res.fit.r2_deviance,
                       res.fit.r2_corr, static_cast<std::int64_t>(res.fit.n_obs),
                       res.fit.converged});
        k_table.add_row({year, res.k, cfg.k_variant});
    }
    emit(cfg, table, "gravity");
    emit(cfg, k_table, "gravity_k");

    if (cfg.strict && any_numerical_failure)
        throw NumericalError("gravity: at least one year failed or did not converge");
    return 0;
}

namespace {

ContingencyTable trade_contingency(const TradeFlowTable& flows, const SectorScheme& scheme,
                                   const std::vector<int>& years) {
    const std::set<int> wanted(years.begin(), years.end());
    // (country, year) -> sector volume vector, keys sorted
    std::map<std::pair<std::string, int>, Eigen::VectorXd> rows;
    const Eigen::Index n_groups = static_cast<Eigen::Index>(scheme.groups().size());
    for (const auto& r : flows.records) {
        if (!wanted.count(r.year)) continue;
        auto [it, inserted] =
            rows.try_emplace({r.origin, r.year}, Eigen::VectorXd::Zero(n_groups));
        it->second[scheme.group_index(r.sector)] += r.value;
    }
    require(!rows.empty(), "trade-ca: no flow records in the requested years");

    std::vector<std::string> row_ids;
    Eigen::MatrixXd counts(rows.size(), n_groups);
    Eigen::Index i = 0;
    for (const auto& [key, vec] : rows) {
        row_ids.push_back(key.first + ":" + std::to_string(key.second));
        counts.row(i++) = vec.transpose();
    }
    return ContingencyTable(std::move(row_ids), scheme.groups(), std::move(counts));
}

void warn_dropped(const ContingencyTable& table, const std::string& what) {
    for (const auto& id : table.dropped_rows())
        std::cerr << what << ": dropped all-zero row '" << id << "'\n";
    for (const auto& id : table.dropped_cols())
        std::cerr << what << ": dropped all-zero column '" << id << "'\n";
}

}  // namespace

int cmd_trade_ca(const RunConfig& cfg) {
    require(!cfg.years.empty(), "trade-ca: --years must not be empty");
    const SectorScheme scheme = resolve_scheme(cfg, SectorScheme::trade10());
    const TradeFlowTable flows = load_trade_flows(cfg.trade, scheme);
    const ContingencyTable table = trade_contingency(flows, scheme, cfg.years);
    warn_dropped(table, "trade-ca");

    const CAResult ca = ca_fit(table, cfg.axes);
    if (ca.n_axes() == 0)
        std::cerr << "trade-ca: degenerate table, no axes retained\n";

    emit(cfg, coordinates_table(ca.row_ids, ca.row_coords), "trade_ca_row_coordinates");
    emit(cfg, coordinates_table(ca.col_ids, ca.col_coords), "trade_ca_column_coordinates");
    emit(cfg, inertia_table(ca), "trade_ca_inertia");

    const TrajectorySet traj = build_trajectories(ca, cfg.years);
    for (const auto& w : traj.warnings) std::cerr << "trade-ca: " << w << "\n";
    csv::TableWriter traj_table({"country", "year", "axis1", "axis2"});
    for (const auto& [country, pts] : traj.by_country)
        for (const auto& p : pts)
            traj_table.add_row({country, static_cast<std::int64_t>(p.year), p.x, p.y});
    emit(cfg, traj_table, "trade_ca_trajectories");

    // connect each country's year sequence in the scatter
    std::vector<std::vector<std::size_t>> polylines;
    {
        std::map<std::string, std::size_t> row_of;
        for (std::size_t i = 0; i < ca.row_ids.size(); ++i) row_of[ca.row_ids[i]] = i;
        for (const auto& [country, pts] : traj.by_country) {
            std::vector<std::size_t> line;
            for (const auto& p : pts) line.push_back(row_of.at(country + ":" + std::to_string(p.year)));
            polylines.push_back(std::move(line));
        }
    }
    emit_scatter_svg(cfg, ca, "trade_ca", polylines);
    return 0;
}

int cmd_city_ca(const RunConfig& cfg) {
    require(cfg.weights == "revenue" || cfg.weights == "count",
            "city-ca: --weights must be 'revenue' or 'count'");
    const SectorScheme scheme = resolve_scheme(cfg, SectorScheme::fdi9());
    const CityTable cities = load_cities(cfg.cities);
    const OwnershipLinkTable links = load_ownership(cfg.ownership, cfg.min_control_pct);
    const CityGraph graph = aggregate_to_cities(links, scheme, cities);
    require(!graph.edges.empty(), "city-ca: no control links after filtering");

    const ContingencyTable table = city_sector_table(
        graph, scheme, cfg.weights == "revenue" ? WeightMode::revenue : WeightMode::count);
    warn_dropped(table, "city-ca");

    const CAResult ca = ca_fit(table, cfg.axes);
    if (ca.n_axes() == 0)
        std::cerr << "city-ca: degenerate table, no axes retained\n";

    emit(cfg, coordinates_table(ca.row_ids, ca.row_coords), "city_ca_row_coordinates");
    emit(cfg, coordinates_table(ca.col_ids, ca.col_coords), "city_ca_column_coordinates");
    emit(cfg, inertia_table(ca), "city_ca_inertia");

    csv::TableWriter reports({"axis", "row_id", "coordinate", "side"});
    for (int axis = 0; axis < ca.n_axes(); ++axis) {
        const AxisReport rep = axis_report(ca, axis);
        for (const auto& e : rep.entries)
            reports.add_row({static_cast<std::int64_t>(axis + 1), e.row_id, e.coord,
                             std::string(e.coord < 0 ? "negative" : "positive")});
    }
    emit(cfg, reports, "city_ca_axis_reports");

    csv::TableWriter merges({"step", "node_a", "node_b", "height", "size"});
    csv::TableWriter clusters({"row_id", "cluster"});
    if (ca.n_axes() >= 1 && ca.row_coords.rows() >= 2) {
        const ClusterTree tree = hca_ward(ca.row_coords, ca.row_masses);
        for (std::size_t t = 0; t < tree.merges.size(); ++t) {
            const Merge& m = tree.merges[t];
            merges.add_row({static_cast<std::int64_t>(t + 1), static_cast<std::int64_t>(m.node_a),
                            static_cast<std::int64_t>(m.node_b), m.height,
                            static_cast<std::int64_t>(m.size)});
        }
        if (cfg.clusters > 0) {
            const auto labels = cut_tree(tree, cfg.clusters);
            for (std::size_t i = 0; i < ca.row_ids.size(); ++i)
                clusters.add_row({ca.row_ids[i], static_cast<std::int64_t>(labels[i])});
        }
    }
    emit(cfg, merges, "city_ca_merges");
    if (cfg.clusters > 0) emit(cfg, clusters, "city_ca_clusters");

    emit_scatter_svg(cfg, ca, "city_ca");
    return 0;
}

int cmd_network(const RunConfig& cfg) {
    const SectorScheme scheme = resolve_scheme(cfg, SectorScheme::fdi9());
    const CityTable cities = load_cities(cfg.cities);
    const OwnershipLinkTable links = load_ownership(cfg.ownership, cfg.min_control_pct);
    const CityGraph graph = aggregate_to_cities(links, scheme, cities);

    // revenue must be conserved through every aggregation level
    const double ingested = links.total_revenue();
    const double in_graph = graph.total_revenue();
    const auto close = [](double a, double b) {
        return std::abs(a - b) <= 1e-9 * std::max({std::abs(a), std::abs(b), 1.0});
    };
    if (!close(ingested, in_graph))
        throw NumericalError("network: city aggregation lost revenue (" +
                             csv::format_number(ingested) + " vs " +
                             csv::format_number(in_graph) + ")");

    csv::TableWriter edges({"origin_city", "dest_city", "revenue", "count"});
    for (const auto& [key, e] : graph.edges)
        edges.add_row({key.first, key.second, e.revenue, static_cast<std::int64_t>(e.count)});
    emit(cfg, edges, "network_edges");

    if (graph.edges.empty()) {
        // headers-only reports for an empty input
        emit(cfg, csv::TableWriter({"origin", "total", "share_pct"}), "network_country_matrix");
        emit(cfg,
             csv::TableWriter({"sector", "small_n", "medium_n", "large_n", "small_pct",
                               "medium_pct", "large_pct"}),
             "network_crosstab");
        emit(cfg, csv::TableWriter({"city", "size_class", "sector_count", "classification"}),
             "network_specialisation");
        emit(cfg,
             csv::TableWriter({"classification", "small_pct", "medium_pct", "large_pct",
                               "small_n", "medium_n", "large_n"}),
             "network_specialisation_summary");
        return 0;
    }

    const CountryMatrix matrix = aggregate_to_countries(graph, cities);
    if (!close(matrix.grand_total() + matrix.domestic_total, in_graph))
        throw NumericalError("network: country aggregation lost revenue");

    // Matrix with share margins; the diagonal is structurally absent.
    std::vector<std::string> cols{"origin"};
    cols.insert(cols.end(), matrix.countries.begin(), matrix.countries.end());
    cols.push_back("total");
    cols.push_back("share_pct");
    csv::TableWriter matrix_table(cols);
    const bool has_cross_border = matrix.grand_total() > 0;
    std::optional<CountryShares> shares;
    if (has_cross_border) shares = share_matrix(matrix);
    for (std::size_t i = 0; i < matrix.countries.size(); ++i) {
        std::vector<csv::TableWriter::Cell> row{matrix.countries[i]};
        for (std::size_t j = 0; j < matrix.countries.size(); ++j) {
            if (i == j)
                row.emplace_back(std::string());
            else
                row.emplace_back(matrix.values(i, j));
        }
        row.emplace_back(matrix.values.row(i).sum());
        if (shares)
            row.emplace_back(static_cast<std::int64_t>(shares->origin_display[i]));
        else
            row.emplace_back(std::string());
        matrix_table.add_row(std::move(row));
    }
    {
        std::vector<csv::TableWriter::Cell> total_row{std::string("total")};
        for (std::size_t j = 0; j < matrix.countries.size(); ++j)
            total_row.emplace_back(matrix.values.col(j).sum());
        total_row.emplace_back(matrix.grand_total());
        total_row.emplace_back(std::string());
        matrix_table.add_row(std::move(total_row));

        std::vector<csv::TableWriter::Cell> share_row{std::string("share_pct")};
        for (std::size_t j = 0; j < matrix.countries.size(); ++j) {
            if (shares)
                share_row.emplace_back(static_cast<std::int64_t>(shares->dest_display[j]));
            else
                share_row.emplace_back(std::string());
        }
        share_row.emplace_back(std::string());
        share_row.emplace_back(shares ? csv::TableWriter::Cell(std::int64_t{100})
                                      : csv::TableWriter::Cell(std::string()));
        matrix_table.add_row(std::move(share_row));
    }
    emit(cfg, matrix_table, "network_country_matrix");

    const SectorSizeCrosstab crosstab = sector_size_crosstab(graph, cities);
    csv::TableWriter crosstab_table({"sector", "small_n", "medium_n", "large_n", "small_pct",
                                     "medium_pct", "large_pct"});
    for (const auto& row : crosstab.rows)
        crosstab_table.add_row({row.sector, static_cast<std::int64_t>(row.counts[0]),
                                static_cast<std::int64_t>(row.counts[1]),
                                static_cast<std::int64_t>(row.counts[2]),
                                static_cast<std::int64_t>(row.pct[0]),
                                static_cast<std::int64_t>(row.pct[1]),
                                static_cast<std::int64_t>(row.pct[2])});
    emit(cfg, crosstab_table, "network_crosstab");

    const SpecialisationReport spec = specialisation_classify(graph, cities, cfg.min_share);
    csv::TableWriter spec_table({"city", "size_class", "sector_count", "classification"});
    for (const auto& c : spec.cities)
        spec_table.add_row({c.city, std::string(to_string(c.size)),
                            static_cast<std::int64_t>(c.sector_count),
                            std::string(c.mono ? "MONO" : "PLURI")});
    emit(cfg, spec_table, "network_specialisation");

    csv::TableWriter summary({"classification", "small_pct", "medium_pct", "large_pct",
                              "small_n", "medium_n", "large_n"});
    const auto add_summary = [&](const char* label, const std::array<int, 3>& pct,
                                 const std::array<int, 3>& counts) {
        summary.add_row({std::string(label), static_cast<std::int64_t>(pct[0]),
                         static_cast<std::int64_t>(pct[1]), static_cast<std::int64_t>(pct[2]),
                         static_cast<std::int64_t>(counts[0]), static_cast<std::int64_t>(counts[1]),
                         static_cast<std::int64_t>(counts[2])});
    };
    add_summary("MONO", spec.mono_pct, spec.mono_counts);
    add_summary("PLURI", spec.pluri_pct, spec.pluri_counts);
    emit(cfg, summary, "network_specialisation_summary");
    return 0;
}

int cmd_synth(const RunConfig& cfg) {
    synth::write_all(cfg.out, cfg.seed);
    std::cout << "fixtures written to " << cfg.out << "\n";
    return 0;
}

int run(int argc, const char* const* argv) {
    RunConfig cfg;
    CLI::App app{"gravity estimation, correspondence analysis and control-network aggregation "
                 "for trade and firm-ownership tables"};
    app.set_config("--config", "", "flat key=value configuration file");
    app.fallthrough();

    app.add_option("--trade", cfg.trade, "trade_flows.csv")->configurable(true);
    app.add_option("--cities", cfg.cities, "cities.csv")->configurable(true);
    app.add_option("--gdp", cfg.gdp, "gdp.csv")->configurable(true);
    app.add_option("--ownership", cfg.ownership, "ownership.csv")->configurable(true);
    app.add_option("--scheme", cfg.scheme,
                   "sector scheme: trade10, fdi9 or a sector_scheme.csv path")
        ->configurable(true);
    app.add_option("--years", cfg.years, "years to analyse")->delimiter(',')->configurable(true);
    app.add_option("--a", cfg.a, "distance exponent of the theoretical model")->configurable(true);
    app.add_option("--k-variant", cfg.k_variant, "k calibration: paper | total-preserving")
        ->configurable(true);
    app.add_flag("--assume-zero", cfg.assume_zero,
                 "treat country pairs without a flow record as zero flows")
        ->configurable(true);
    app.add_option("--tol", cfg.tol, "IRLS relative deviance tolerance")->configurable(true);
    app.add_option("--max-iter", cfg.max_iter, "IRLS iteration cap")->configurable(true);
    app.add_option("--axes", cfg.axes, "CA axes to keep (0 = all)")->configurable(true);
    app.add_option("--clusters", cfg.clusters, "clusters to cut from the Ward tree")
        ->configurable(true);
    app.add_option("--min-control-pct", cfg.min_control_pct,
                   "ownership threshold for a control link")
        ->configurable(true);
    app.add_option("--min-share", cfg.min_share,
                   "minimum revenue share for a sector to count in specialisation")
        ->configurable(true);
    app.add_option("--weights", cfg.weights, "city-sector table weights: revenue | count")
        ->configurable(true);
    app.add_option("--out", cfg.out, "output directory")->configurable(true);
    app.add_option("--format", cfg.formats, "output formats: csv,json,svg")
        ->delimiter(',')
        ->configurable(true);
    app.add_option("--jobs", cfg.jobs, "parallel fits for independent years")->configurable(true);
    app.add_option("--seed", cfg.seed, "seed for the synth subcommand")->configurable(true);
    app.add_flag("--strict", cfg.strict, "exit 2 when a fit fails or does not converge")
        ->configurable(true);

    auto* validate = app.add_subcommand("validate", "load and check every given input");
    auto* gravity = app.add_subcommand("gravity", "per-year gravity regression table");
    auto* trade_ca =
        app.add_subcommand("trade-ca", "correspondence analysis of export specialisations");
    auto* city_ca = app.add_subcommand(
        "city-ca", "correspondence analysis and Ward classification of city specialisations");
    auto* network =
        app.add_subcommand("network", "city/country aggregation of firm control links");
    auto* synth_cmd = app.add_subcommand("synth", "write synthetic fixture datasets");
    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*validate) return cmd_validate(cfg);
        if (*gravity) return cmd_gravity(cfg);
        if (*trade_ca) return cmd_trade_ca(cfg);
        if (*city_ca) return cmd_city_ca(cfg);
        if (*network) return cmd_network(cfg);
        if (*synth_cmd) return cmd_synth(cfg);
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace ceeflow::cli
