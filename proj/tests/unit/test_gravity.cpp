#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "ceeflow/errors.hpp"
#include "ceeflow/gravity.hpp"
#include "../support/oracles.hpp"
#include "../support/tempdir.hpp"

using namespace ceeflow;
using testsupport::TempDir;

namespace {

// small in-memory system: six countries on a line, unequal masses
struct System {
    CountryTable gdp;
    DistanceTable dist;
    std::vector<std::string> codes{"AT", "BE", "CH", "DE", "FR", "NL"};

    explicit System(int year = 2012) {
        const double masses[] = {100, 220, 480, 1000, 2100, 4500};
        for (std::size_t i = 0; i < codes.size(); ++i) {
            CountryRecord rec;
            rec.code = codes[i];
            rec.gdp_by_year[year] = masses[i];
            gdp.by_code[codes[i]] = rec;
        }
        for (std::size_t i = 0; i < codes.size(); ++i)
            for (std::size_t j = i + 1; j < codes.size(); ++j)
                dist.set(codes[i], codes[j], 150.0 * static_cast<double>(j - i) + 40.0 * i);
    }

    TradeFlowTable flows_from(const std::function<double(double, double, double)>& flow_fn,
                              int year = 2012) const {
        TradeFlowTable table;
        for (const auto& oi : codes) {
            for (const auto& oj : codes) {
                if (oi == oj) continue;
                const double mi = *gdp.gdp(oi, year), mj = *gdp.gdp(oj, year);
                table.records.push_back(
                    {year, oi, oj, "Agriculture", flow_fn(mi, mj, dist.at(oi, oj))});
            }
        }
        table.year_min = table.year_max = year;
        return table;
    }
};

}  // namespace

TEST_CASE("theoretical flow formula") {
    CHECK(theoretical_flow(1, 1, 1, 1, 2) == 1.0);
    CHECK(theoretical_flow(2, 3, 2, 1, 2) == doctest::Approx(1.5));
    // doubling distance with a = 2 quarters the flow
    CHECK(theoretical_flow(1, 1, 2, 1, 2) == doctest::Approx(0.25));
    CHECK_THROWS_AS(theoretical_flow(0, 1, 1, 1, 2), ValidationError);
    CHECK_THROWS_AS(theoretical_flow(1, 1, -1, 1, 2), ValidationError);
    CHECK_THROWS_AS(theoretical_flow(1, 1, 1, 0, 2), ValidationError);
}

TEST_CASE("theoretical flow homogeneity") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.5, 50.0);
    for (int i = 0; i < 50; ++i) {
        const double mi = u(rng), mj = u(rng), d = u(rng), k = u(rng), a = 1.0 + u(rng) / 20;
        const double base = theoretical_flow(mi, mj, d, k, a);
        const double c = 1.0 + u(rng);
        CHECK(theoretical_flow(mi, mj, d, c * k, a) == doctest::Approx(c * base).epsilon(1e-12));
        CHECK(theoretical_flow(mi, mj, c * d, k, a) ==
              doctest::Approx(base / std::pow(c, a)).epsilon(1e-12));
    }
}

TEST_CASE("k calibration, plain mass-product variant") {
    const std::vector<double> flows{10, 20}, masses{1, 4};
    CHECK(calibrate_k(flows, masses) == doctest::Approx(6.0));

    const std::vector<double> zeros{0, 0};
    CHECK(calibrate_k(zeros, masses) == 0.0);

    CHECK_THROWS_AS(calibrate_k({}, {}), ValidationError);
    const std::vector<double> no_mass{0, 0};
    CHECK_THROWS_AS(calibrate_k(flows, no_mass), ValidationError);
}

TEST_CASE("total-preserving k matches observed totals") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(1.0, 100.0);
    std::vector<double> flows, masses, dists;
    for (int i = 0; i < 5; ++i) {
        flows.push_back(u(rng));
        masses.push_back(u(rng) * u(rng));
        dists.push_back(u(rng));
    }
    const double a = 2.0;
    const double k = calibrate_k(flows, masses, dists, a, KVariant::total_preserving);
    double theoretical_total = 0, observed_total = 0;
    for (std::size_t i = 0; i < flows.size(); ++i) {
        theoretical_total +=
            theoretical_flow(std::sqrt(masses[i]), std::sqrt(masses[i]), dists[i], k, a);
        observed_total += flows[i];
    }
    CHECK(std::abs(theoretical_total - observed_total) <= 1e-9 * observed_total);

    // the plain variant does not preserve totals when a > 0
    const double k_paper = calibrate_k(flows, masses, dists, a, KVariant::paper);
    CHECK(k_paper == doctest::Approx(calibrate_k(flows, masses)));
}

TEST_CASE("model-consistent flows recover (1, 1, -a) exactly") {
    System sys;
    const double a = 2.0;

    // observe arbitrary flows, calibrate the total-preserving k, then replace
    // the observations with the theoretical flows it implies
    std::mt19937 rng(100);
    std::vector<double> observed, masses, dists;
    sys.flows_from([&](double mi, double mj, double d) {
        observed.push_back(10.0 + 90.0 * std::generate_canonical<double, 53>(rng));
        masses.push_back(mi * mj);
        dists.push_back(d);
        return 0.0;
    });
    const double k = calibrate_k(observed, masses, dists, a, KVariant::total_preserving);
    const TradeFlowTable flows = sys.flows_from(
        [&](double mi, double mj, double d) { return theoretical_flow(mi, mj, d, k, a); });

    // total preservation: sum of theoretical flows equals the observed sum
    double obs_total = 0;
    for (double f : observed) obs_total += f;
    CHECK(std::abs(flows.total() - obs_total) <= 1e-9 * obs_total);

    const GravityFit fit = fit_gravity(flows, 2012, sys.gdp, sys.dist, {.a = a});
    CHECK(fit.converged);
    CHECK(fit.beta == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(fit.gamma == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(fit.delta == doctest::Approx(-a).epsilon(1e-6));
    CHECK(std::abs(fit.r2_deviance - 1.0) <= 1e-9);
}

TEST_CASE("constant flows give zero elasticities") {
    System sys;
    const TradeFlowTable flows = sys.flows_from([](double, double, double) { return 7.5; });
    const GravityFit fit = fit_gravity(flows, 2012, sys.gdp, sys.dist);
    CHECK(fit.beta == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(fit.gamma == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(fit.delta == doctest::Approx(0.0).epsilon(1e-8));

    // cross-check against the Newton oracle on the same observations
    const auto obs = gravity_observations(flows, 2012, sys.gdp, sys.dist, 2012, false);
    Eigen::MatrixXd X(obs.size(), 4);
    Eigen::VectorXd y(obs.size());
    for (std::size_t i = 0; i < obs.size(); ++i) {
        X(i, 0) = 1;
        X(i, 1) = std::log(obs[i].m_i);
        X(i, 2) = std::log(obs[i].m_j);
        X(i, 3) = std::log(obs[i].d);
        y[i] = obs[i].flow;
    }
    const Eigen::VectorXd ref = oracles::newton_poisson_mle(X, y);
    CHECK(fit.intercept == doctest::Approx(ref[0]).epsilon(1e-6));
    CHECK(std::abs(ref[1]) < 1e-8);
}

TEST_CASE("fit is invariant to observation order") {
    System sys;
    std::mt19937 rng(3);
    TradeFlowTable flows = sys.flows_from([&](double mi, double mj, double d) {
        return theoretical_flow(mi, mj, d, 1e-3, 2.0) * (0.8 + 0.4 * std::generate_canonical<double, 53>(rng));
    });
    const GravityFit a = fit_gravity(flows, 2012, sys.gdp, sys.dist);

    std::shuffle(flows.records.begin(), flows.records.end(), rng);
    const GravityFit b = fit_gravity(flows, 2012, sys.gdp, sys.dist);
    CHECK(a.beta == doctest::Approx(b.beta).epsilon(1e-10));
    CHECK(a.gamma == doctest::Approx(b.gamma).epsilon(1e-10));
    CHECK(a.delta == doctest::Approx(b.delta).epsilon(1e-10));
}

TEST_CASE("distance rescaling shifts only the intercept") {
    System sys;
    std::mt19937 rng(9);
    const TradeFlowTable flows = sys.flows_from([&](double mi, double mj, double d) {
        return theoretical_flow(mi, mj, d, 2e-3, 1.7) *
               (0.9 + 0.2 * std::generate_canonical<double, 53>(rng));
    });
    const GravityFit base = fit_gravity(flows, 2012, sys.gdp, sys.dist);

    const double c = 3.5;
    DistanceTable scaled;
    for (const auto& [pair, km] : sys.dist.pairs()) scaled.set(pair.first, pair.second, c * km);
    const GravityFit rescaled = fit_gravity(flows, 2012, sys.gdp, scaled);

    CHECK(rescaled.beta == doctest::Approx(base.beta).epsilon(1e-8));
    CHECK(rescaled.gamma == doctest::Approx(base.gamma).epsilon(1e-8));
    CHECK(rescaled.delta == doctest::Approx(base.delta).epsilon(1e-8));
    CHECK(rescaled.intercept ==
          doctest::Approx(base.intercept - base.delta * std::log(c)).epsilon(1e-7));
}

TEST_CASE("gravity validation errors") {
    System sys;
    const TradeFlowTable flows = sys.flows_from([](double, double, double) { return 10.0; });

    SUBCASE("no records for the year") {
        CHECK_THROWS_AS(fit_gravity(flows, 1999, sys.gdp, sys.dist), ValidationError);
    }
    SUBCASE("flow pair without GDP") {
        TradeFlowTable extra = flows;
        extra.records.push_back({2012, "XX", "AT", "Agriculture", 5.0});
        CHECK_THROWS_AS(fit_gravity(extra, 2012, sys.gdp, sys.dist), ValidationError);
    }
    SUBCASE("flow pair without distance") {
        System partial;
        DistanceTable sparse;
        sparse.set("AT", "BE", 150.0);
        CHECK_THROWS_AS(fit_gravity(flows, 2012, partial.gdp, sparse), ValidationError);
    }
    SUBCASE("too few observations") {
        TradeFlowTable tiny;
        tiny.records.push_back({2012, "AT", "BE", "Agriculture", 5.0});
        DistanceTable sparse;
        sparse.set("AT", "BE", 150.0);
        CHECK_THROWS_AS(fit_gravity(tiny, 2012, sys.gdp, sparse), ValidationError);
    }
    SUBCASE("non-positive exponent") {
        CHECK_THROWS_AS(fit_gravity(flows, 2012, sys.gdp, sys.dist, {.a = 0.0}), ValidationError);
    }
}

TEST_CASE("assume-zero widens the observation set") {
    System sys;
    TradeFlowTable flows = sys.flows_from([](double, double, double) { return 10.0; });
    // drop every record out of AT: 5 ordered pairs disappear
    std::erase_if(flows.records, [](const TradeFlowRecord& r) { return r.origin == "AT"; });

    const auto excluded = gravity_observations(flows, 2012, sys.gdp, sys.dist, 2012, false);
    const auto included = gravity_observations(flows, 2012, sys.gdp, sys.dist, 2012, true);
    CHECK(excluded.size() == 25);
    CHECK(included.size() == 30);
    int zeros = 0;
    for (const auto& o : included) zeros += o.flow == 0.0 ? 1 : 0;
    CHECK(zeros == 5);
}
