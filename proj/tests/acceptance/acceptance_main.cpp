// Acceptance suite: every release gate in one binary, one verdict line per
// criterion. Exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "ceeflow/ca.hpp"
#include "ceeflow/cluster.hpp"
#include "ceeflow/csv.hpp"
#include "ceeflow/domain.hpp"
#include "ceeflow/glm.hpp"
#include "ceeflow/gravity.hpp"
#include "ceeflow/ingest.hpp"
#include "ceeflow/network.hpp"
#include "ceeflow/synth.hpp"
#include "cli.hpp"
#include "../support/oracles.hpp"
#include "../support/tempdir.hpp"

using namespace ceeflow;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
    std::vector<std::string> failures;

    void check(bool ok, const std::string& msg) {
        if (!ok) failures.push_back(msg);
    }
    void near(double actual, double expected, double tol, const std::string& label) {
        if (!(std::abs(actual - expected) <= tol)) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "%s: got %.10g, want %.10g +/- %.3g", label.c_str(),
                          actual, expected, tol);
            failures.push_back(buf);
        }
    }
};

int g_failed = 0;

void run_criterion(int id, const std::string& name, const std::function<void(Criterion&)>& body) {
    Criterion c;
    try {
        body(c);
    } catch (const std::exception& e) {
        c.failures.push_back(std::string("exception: ") + e.what());
    }
    if (c.failures.empty()) {
        std::printf("[PASS] %2d. %s\n", id, name.c_str());
    } else {
        ++g_failed;
        std::printf("[FAIL] %2d. %s\n", id, name.c_str());
        for (const auto& f : c.failures) std::printf("       - %s\n", f.c_str());
    }
    std::fflush(stdout);
}

GlmProblem random_glm_problem(std::mt19937& rng, int n, int covariates) {
    std::normal_distribution<double> normal(0.0, 0.7);
    GlmProblem p;
    p.design.resize(n, covariates + 1);
    p.design.col(0).setOnes();
    for (int j = 1; j <= covariates; ++j)
        for (int i = 0; i < n; ++i) p.design(i, j) = normal(rng);
    Eigen::VectorXd truth(covariates + 1);
    truth[0] = 1.1;
    for (int j = 1; j <= covariates; ++j) truth[j] = normal(rng);
    p.response.resize(n);
    for (int i = 0; i < n; ++i) {
        std::poisson_distribution<long> pois(std::exp(p.design.row(i) * truth));
        p.response[i] = static_cast<double>(pois(rng));
    }
    return p;
}

// six-country line system for the model-consistency and invariance criteria
struct MiniSystem {
    CountryTable gdp;
    DistanceTable dist;
    std::vector<std::string> codes{"AT", "BE", "CH", "DE", "FR", "NL"};

    MiniSystem() {
        const double masses[] = {100, 220, 480, 1000, 2100, 4500};
        for (std::size_t i = 0; i < codes.size(); ++i) {
            CountryRecord rec;
            rec.code = codes[i];
            rec.gdp_by_year[2012] = masses[i];
            gdp.by_code[codes[i]] = rec;
        }
        for (std::size_t i = 0; i < codes.size(); ++i)
            for (std::size_t j = i + 1; j < codes.size(); ++j)
                dist.set(codes[i], codes[j], 150.0 * static_cast<double>(j - i) + 40.0 * i);
    }

    TradeFlowTable flows(const std::function<double(double, double, double)>& fn) const {
        TradeFlowTable t;
        for (const auto& a : codes)
            for (const auto& b : codes) {
                if (a == b) continue;
                t.records.push_back(
                    {2012, a, b, "Agriculture", fn(*gdp.gdp(a, 2012), *gdp.gdp(b, 2012), dist.at(a, b))});
            }
        t.year_min = t.year_max = 2012;
        return t;
    }
};

int run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "ceeflow");
    return cli::run(args);
}

// the full pipeline against the self-contained fixtures, everything under dir
void full_pipeline(const fs::path& dir) {
    const fs::path fx = dir / "fixtures";
    synth::write_all(fx, 7);
    const auto str = [](const fs::path& p) { return p.string(); };

    if (run_cli({"gravity", "--trade", str(fx / "gravity/trade_flows.csv"), "--cities",
                 str(fx / "gravity/cities.csv"), "--gdp", str(fx / "gravity/gdp.csv"), "--years",
                 "2012", "--format", "csv,json", "--out", str(dir / "gravity")}) != 0)
        throw std::runtime_error("gravity command failed");
    if (run_cli({"trade-ca", "--trade", str(fx / "trade_ca/trade_flows.csv"), "--years",
                 "1970,1975,1980,1985,1990,1995,2000,2005,2010", "--format", "csv,json,svg",
                 "--out", str(dir / "trade_ca")}) != 0)
        throw std::runtime_error("trade-ca command failed");
    if (run_cli({"city-ca", "--cities", str(fx / "city_ca/cities.csv"), "--ownership",
                 str(fx / "city_ca/ownership.csv"), "--clusters", "2", "--format", "csv,json,svg",
                 "--out", str(dir / "city_ca")}) != 0)
        throw std::runtime_error("city-ca command failed");
    for (const char* t : {"country_links", "sector_sizes", "specialisation"}) {
        if (run_cli({"network", "--cities", str(fx / t / "cities.csv"), "--ownership",
                     str(fx / t / "ownership.csv"), "--format", "csv,json", "--out",
                     str(dir / ("network_" + std::string(t)))}) != 0)
            throw std::runtime_error("network command failed");
    }
}

}  // namespace

int main() {
    const auto suite_start = Clock::now();
    testsupport::TempDir tmp;

    run_criterion(1, "gravity parameter recovery on the seed-7 fixture", [&](Criterion& c) {
        const fs::path fx = tmp.path / "c1";
        synth::write_gravity_fixture(fx, 7);
        const auto t0 = Clock::now();
        const TradeFlowTable flows = load_trade_flows(fx / "trade_flows.csv", SectorScheme::trade10());
        CountryTable gdp = load_gdp(fx / "gdp.csv");
        const CityTable cities = load_cities(fx / "cities.csv");
        assign_capitals(gdp, cities);
        const DistanceTable dist = capital_distances(gdp, cities);
        const GravityFit fit = fit_gravity(flows, 2012, gdp, dist);
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();

        c.check(fit.converged, "fit did not converge");
        c.check(fit.n_obs == 56, "expected 56 directed pairs, got " + std::to_string(fit.n_obs));
        c.near(fit.beta, 1.2, 0.1, "beta");
        c.near(fit.gamma, 1.1, 0.1, "gamma");
        c.near(fit.delta, -1.8, 0.1, "delta");
        c.check(fit.r2_deviance >= 0.8,
                "r2_deviance " + std::to_string(fit.r2_deviance) + " below 0.8");
        c.check(secs < 1.0, "load+fit took " + std::to_string(secs) + "s, limit 1s");
    });

    run_criterion(2, "IRLS equals an independent Newton maximizer", [&](Criterion& c) {
        for (int rep = 0; rep < 10; ++rep) {
            std::mt19937 rng(1000 + rep);
            const GlmProblem p = random_glm_problem(rng, 20, 3);
            const GlmFit fit = fit_poisson_glm(p);
            const Eigen::VectorXd ref = oracles::newton_poisson_mle(p.design, p.response);
            c.check(fit.converged, "problem " + std::to_string(rep) + " did not converge");
            for (int j = 0; j < 4; ++j)
                c.near(fit.coef[j], ref[j], 1e-6,
                       "problem " + std::to_string(rep) + " coef " + std::to_string(j));
            for (std::size_t t = 1; t < fit.deviance_trace.size(); ++t)
                c.check(fit.deviance_trace[t] <=
                            fit.deviance_trace[t - 1] * (1 + 1e-12) + 1e-12,
                        "problem " + std::to_string(rep) + ": deviance rose at step " +
                            std::to_string(t));
        }
    });

    run_criterion(3, "model-consistent flows give (1, 1, -a) and R2 = 1", [&](Criterion& c) {
        MiniSystem sys;
        const double a = 2.0;
        std::vector<double> observed, masses, dists;
        std::mt19937 rng(42);
        sys.flows([&](double mi, double mj, double d) {
            observed.push_back(10.0 + 90.0 * std::generate_canonical<double, 53>(rng));
            masses.push_back(mi * mj);
            dists.push_back(d);
            return 0.0;
        });
        const double k = calibrate_k(observed, masses, dists, a, KVariant::total_preserving);
        const TradeFlowTable flows =
            sys.flows([&](double mi, double mj, double d) { return theoretical_flow(mi, mj, d, k, a); });

        double observed_total = 0;
        for (double f : observed) observed_total += f;
        c.check(std::abs(flows.total() - observed_total) <= 1e-9 * observed_total,
                "total-preserving k does not preserve the total");

        const GravityFit fit = fit_gravity(flows, 2012, sys.gdp, sys.dist, {.a = a});
        c.near(fit.beta, 1.0, 1e-6, "beta");
        c.near(fit.gamma, 1.0, 1e-6, "gamma");
        c.near(fit.delta, -a, 1e-6, "delta");
        c.near(fit.r2_deviance, 1.0, 1e-9, "r2_deviance");
    });

    run_criterion(4, "CA matches a direct chi-square computation", [&](Criterion& c) {
        std::mt19937 rng(2000);
        for (int rep = 0; rep < 10; ++rep) {
            const int R = 3 + static_cast<int>(rng() % 6), C = 2 + static_cast<int>(rng() % 5);
            std::uniform_int_distribution<int> cell(0, 20);
            Eigen::MatrixXd m(R, C);
            for (int i = 0; i < R; ++i)
                for (int j = 0; j < C; ++j) m(i, j) = cell(rng);
            for (int i = 0; i < R; ++i) m(i, i % C) += 1;
            for (int j = 0; j < C; ++j) m(j % R, j) += 1;

            std::vector<std::string> rid, cid;
            for (int i = 0; i < R; ++i) rid.push_back("r" + std::to_string(i));
            for (int j = 0; j < C; ++j) cid.push_back("c" + std::to_string(j));
            const ContingencyTable table(rid, cid, m);
            const CAResult ca = ca_fit(table);

            const double reference = oracles::chi_square(m) / m.sum();
            c.check(std::abs(ca.total_inertia - reference) <= 1e-9 * std::max(reference, 1e-30),
                    "table " + std::to_string(rep) + ": inertia != chi2/n");

            const Eigen::VectorXd row_sums = m.rowwise().sum();
            for (int i = 0; i < R; ++i) {
                const Eigen::RowVectorXd expect = (m.row(i) / row_sums[i]) * ca.col_standard;
                for (int k = 0; k < ca.n_axes(); ++k)
                    c.check(std::abs(ca.row_coords(i, k) - expect[k]) <= 1e-9,
                            "table " + std::to_string(rep) + ": row transition formula");
            }
            const Eigen::VectorXd col_sums = m.colwise().sum();
            for (int j = 0; j < C; ++j) {
                const Eigen::RowVectorXd expect =
                    (m.col(j) / col_sums[j]).transpose() * ca.row_standard;
                for (int k = 0; k < ca.n_axes(); ++k)
                    c.check(std::abs(ca.col_coords(j, k) - expect[k]) <= 1e-9,
                            "table " + std::to_string(rep) + ": column transition formula");
            }
        }

        const Eigen::Vector2d r(1, 2);
        const Eigen::Vector3d cc(3, 4, 5);
        const CAResult rank1 = ca_fit(ContingencyTable({"a", "b"}, {"x", "y", "z"},
                                                       Eigen::MatrixXd(r * cc.transpose())));
        c.check(rank1.n_axes() == 0, "rank-1 table should have zero axes");

        Eigen::MatrixXd diag(2, 2);
        diag << 10, 0, 0, 10;
        const CAResult d = ca_fit(ContingencyTable({"a", "b"}, {"x", "y"}, diag));
        c.near(d.total_inertia, 1.0, 1e-12, "diagonal table inertia");
    });

    run_criterion(5, "Ward equals the exhaustive-recomputation oracle", [&](Criterion& c) {
        std::mt19937 rng(3000);
        std::uniform_real_distribution<double> coord(-5, 5);
        for (int rep = 0; rep < 10; ++rep) {
            Eigen::MatrixXd pts(6, 2);
            for (int i = 0; i < 6; ++i) {
                pts(i, 0) = coord(rng);
                pts(i, 1) = coord(rng);
            }
            const Eigen::VectorXd w = Eigen::VectorXd::Ones(6);
            const ClusterTree tree = hca_ward(pts, w);
            const auto oracle = oracles::ward_exhaustive(pts, w);
            c.check(tree.merges.size() == oracle.size(), "merge count mismatch");
            for (std::size_t t = 0; t < oracle.size(); ++t) {
                c.check(tree.merges[t].node_a == oracle[t].node_a &&
                            tree.merges[t].node_b == oracle[t].node_b,
                        "set " + std::to_string(rep) + ": wrong pair at step " + std::to_string(t));
                c.near(tree.merges[t].height, oracle[t].height, 1e-9,
                       "set " + std::to_string(rep) + ": height at step " + std::to_string(t));
            }
            for (int k = 6; k >= 2; --k) {
                const auto fine = cut_tree(tree, k);
                const auto coarse = cut_tree(tree, k - 1);
                std::map<int, std::set<int>> image;
                for (int i = 0; i < 6; ++i) image[fine[i]].insert(coarse[i]);
                for (const auto& [fl, cls] : image)
                    c.check(cls.size() == 1, "cut at k=" + std::to_string(k) + " not a refinement");
            }
        }
    });

    run_criterion(6, "country share margins match the reference table", [&](Criterion& c) {
        const fs::path fx = tmp.path / "c6";
        synth::write_country_links_fixture(fx);
        const CityTable cities = load_cities(fx / "cities.csv");
        const OwnershipLinkTable links = load_ownership(fx / "ownership.csv");
        const CityGraph graph = aggregate_to_cities(links, SectorScheme::fdi9(), cities);
        const CountryMatrix matrix = aggregate_to_countries(graph, cities);
        const CountryShares shares = share_matrix(matrix);

        const std::pair<std::string, double> expected[] = {{"BG", 0},  {"CZ", 14}, {"HR", 3},
                                                           {"HU", 44}, {"PL", 21}, {"RO", 4},
                                                           {"SI", 4},  {"SK", 10}};
        for (const auto& [code, want] : expected) {
            const auto at = std::find(matrix.countries.begin(), matrix.countries.end(), code) -
                            matrix.countries.begin();
            c.near(shares.origin_pct[static_cast<std::size_t>(at)], want, 1.0,
                   "origin share " + code);
        }
        const auto sk = std::find(matrix.countries.begin(), matrix.countries.end(), "SK") -
                        matrix.countries.begin();
        c.near(shares.dest_pct[static_cast<std::size_t>(sk)], 34.0, 1.0, "destination share SK");
    });

    run_criterion(7, "sector-size and specialisation tables match the references",
                  [&](Criterion& c) {
        const fs::path fx3 = tmp.path / "c7a";
        synth::write_sector_size_fixture(fx3);
        const CityTable cities3 = load_cities(fx3 / "cities.csv");
        const CityGraph graph3 = aggregate_to_cities(load_ownership(fx3 / "ownership.csv"),
                                                     SectorScheme::fdi9(), cities3);
        const SectorSizeCrosstab tab = sector_size_crosstab(graph3, cities3);
        bool saw_cars = false, saw_re = false;
        for (const auto& row : tab.rows) {
            const int sum = row.pct[0] + row.pct[1] + row.pct[2];
            c.check(sum == 100, row.sector + ": percentages sum to " + std::to_string(sum));
            if (row.sector == "CARS") {
                saw_cars = true;
                c.near(row.pct[0], 14, 1.0, "CARS small");
                c.near(row.pct[1], 14, 1.0, "CARS medium");
                c.near(row.pct[2], 72, 1.0, "CARS large");
            }
            if (row.sector == "REAL ESTATE") {
                saw_re = true;
                c.check(row.pct == std::array<int, 3>{0, 0, 100}, "REAL ESTATE not (0,0,100)");
            }
        }
        c.check(saw_cars && saw_re, "reference sectors missing from the crosstab");

        const fs::path fx4 = tmp.path / "c7b";
        synth::write_specialisation_fixture(fx4);
        const CityTable cities4 = load_cities(fx4 / "cities.csv");
        const SpecialisationReport rep = specialisation_classify(
            aggregate_to_cities(load_ownership(fx4 / "ownership.csv"), SectorScheme::fdi9(),
                                cities4),
            cities4);
        c.near(rep.mono_pct[0], 65, 1.0, "MONO small");
        c.near(rep.mono_pct[1], 24, 1.0, "MONO medium");
        c.near(rep.mono_pct[2], 11, 1.0, "MONO large");
        c.near(rep.pluri_pct[0], 0, 1.0, "PLURI small");
        c.near(rep.pluri_pct[1], 27, 1.0, "PLURI medium");
        c.near(rep.pluri_pct[2], 73, 1.0, "PLURI large");
        c.check(rep.mono_pct[0] + rep.mono_pct[1] + rep.mono_pct[2] == 100,
                "MONO row does not sum to 100");
        c.check(rep.pluri_pct[0] + rep.pluri_pct[1] + rep.pluri_pct[2] == 100,
                "PLURI row does not sum to 100");
    });

    run_criterion(8, "great-circle distances", [&](Criterion& c) {
        c.near(haversine_km(52.2297, 21.0122, 47.4979, 19.0402), 545.0, 5.0, "Warsaw-Budapest");
        c.near(haversine_km(0, 0, 0, 180), 20015.1, 0.1, "antipodal maximum");
        std::mt19937 rng(4000);
        std::uniform_real_distribution<double> lat(-90, 90), lon(-180, 180);
        for (int i = 0; i < 100; ++i) {
            const double a1 = lat(rng), o1 = lon(rng), a2 = lat(rng), o2 = lon(rng);
            c.check(haversine_km(a1, o1, a2, o2) == haversine_km(a2, o2, a1, o1),
                    "asymmetric pair " + std::to_string(i));
        }
    });

    run_criterion(9, "full pipeline is byte-for-byte deterministic", [&](Criterion& c) {
        const fs::path run1 = tmp.path / "c9a", run2 = tmp.path / "c9b";
        full_pipeline(run1);
        full_pipeline(run2);
        c.check(testsupport::same_tree(run1, run2), "output trees differ between runs");
    });

    run_criterion(10, "invariance suite", [&](Criterion& c) {
        // distance rescaling shifts only the gravity intercept, by -delta log c
        MiniSystem sys;
        std::mt19937 rng(5000);
        const TradeFlowTable flows = sys.flows([&](double mi, double mj, double d) {
            return theoretical_flow(mi, mj, d, 2e-3, 1.7) *
                   (0.9 + 0.2 * std::generate_canonical<double, 53>(rng));
        });
        const GravityFit base = fit_gravity(flows, 2012, sys.gdp, sys.dist);
        const double scale = 3.5;
        DistanceTable scaled;
        for (const auto& [pair, km] : sys.dist.pairs())
            scaled.set(pair.first, pair.second, scale * km);
        const GravityFit rescaled = fit_gravity(flows, 2012, sys.gdp, scaled);
        c.near(rescaled.beta, base.beta, 1e-8, "beta under distance rescale");
        c.near(rescaled.gamma, base.gamma, 1e-8, "gamma under distance rescale");
        c.near(rescaled.delta, base.delta, 1e-8, "delta under distance rescale");
        c.near(rescaled.intercept, base.intercept - base.delta * std::log(scale), 1e-7,
               "intercept shift");

        // CA is invariant to a global table scale
        std::uniform_int_distribution<int> cell(1, 15);
        Eigen::MatrixXd m(6, 4);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 4; ++j) m(i, j) = cell(rng);
        std::vector<std::string> rid, cid;
        for (int i = 0; i < 6; ++i) rid.push_back("r" + std::to_string(i));
        for (int j = 0; j < 4; ++j) cid.push_back("c" + std::to_string(j));
        const CAResult ca_base = ca_fit(ContingencyTable(rid, cid, m));
        const CAResult ca_scaled = ca_fit(ContingencyTable(rid, cid, 41.0 * m));
        c.check(ca_base.n_axes() == ca_scaled.n_axes(), "axis count changed under scaling");
        for (int k = 0; k < ca_base.n_axes(); ++k)
            for (int i = 0; i < 6; ++i)
                c.check(std::abs(ca_base.row_coords(i, k) - ca_scaled.row_coords(i, k)) <= 1e-9,
                        "CA coordinates changed under scaling");

        // specialisation depends only on sector presence, not revenue scale
        const fs::path fx = tmp.path / "c10";
        synth::write_city_ca_fixture(fx, 7);
        const CityTable cities = load_cities(fx / "cities.csv");
        OwnershipLinkTable links = load_ownership(fx / "ownership.csv");
        const SpecialisationReport rep_a = specialisation_classify(
            aggregate_to_cities(links, SectorScheme::fdi9(), cities), cities);
        for (auto& l : links.links) l.revenue *= 1234.5;
        const SpecialisationReport rep_b = specialisation_classify(
            aggregate_to_cities(links, SectorScheme::fdi9(), cities), cities);
        c.check(rep_a.cities.size() == rep_b.cities.size(), "city set changed under scaling");
        for (std::size_t i = 0; i < rep_a.cities.size(); ++i)
            c.check(rep_a.cities[i].mono == rep_b.cities[i].mono &&
                        rep_a.cities[i].sector_count == rep_b.cities[i].sector_count,
                    "classification changed under revenue scaling");

        const double elapsed = std::chrono::duration<double>(Clock::now() - suite_start).count();
        c.check(elapsed < 30.0,
                "suite took " + std::to_string(elapsed) + "s, limit 30s");
    });

    const double total = std::chrono::duration<double>(Clock::now() - suite_start).count();
    std::printf("%d/10 criteria passed in %.2fs\n", 10 - g_failed, total);
    return g_failed == 0 ? 0 : 1;
}
