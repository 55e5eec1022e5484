#include "ceeflow/gravity.hpp"

#include <cmath>
#include <map>
#include <set>

#include "ceeflow/errors.hpp"

namespace ceeflow {

double theoretical_flow(double m_i, double m_j, double d_ij, double k, double a) {
    if (!(m_i > 0) || !(m_j > 0) || !(d_ij > 0) || !(k > 0) || !(a > 0))
        throw ValidationError("theoretical_flow: all inputs must be positive");
    return k * m_i * m_j / std::pow(d_ij, a);
}

double calibrate_k(std::span<const double> flows, std::span<const double> mass_products) {
    if (flows.empty() || flows.size() != mass_products.size())
        throw ValidationError("calibrate_k: need equal-length, non-empty lists");
    long double fs = 0, ms = 0;
    for (double f : flows) fs += f;
    for (double m : mass_products) ms += m;
    if (!(ms > 0))
        throw ValidationError("calibrate_k: mass-product sum must be positive");
    return static_cast<double>(fs / ms);
}

double calibrate_k(std::span<const double> flows, std::span<const double> mass_products,
                   std::span<const double> distances, double a, KVariant variant) {
    if (variant == KVariant::paper)
        return calibrate_k(flows, mass_products);
    if (distances.size() != flows.size())
        throw ValidationError("calibrate_k: need one distance per flow");
    std::vector<double> discounted(mass_products.size());
    for (std::size_t i = 0; i < mass_products.size(); ++i) {
        if (!(distances[i] > 0))
            throw ValidationError("calibrate_k: distances must be positive");
        discounted[i] = mass_products[i] / std::pow(distances[i], a);
    }
    return calibrate_k(flows, discounted);
}

std::vector<GravityObs> gravity_observations(const TradeFlowTable& flows, int year,
                                             const CountryTable& gdp, const DistanceTable& dist,
                                             int mass_year, bool assume_zero) {
    // per-pair flow totals for the requested year, summed over sectors
    std::map<std::pair<std::string, std::string>, double> flow_by_pair;
    for (const auto& r : flows.records) {
        if (r.year != year) continue;
        flow_by_pair[{r.origin, r.dest}] += r.value;
    }
    if (flow_by_pair.empty())
        throw ValidationError("gravity: no flow records for year " + std::to_string(year));

    // observation universe: ordered pairs with both GDPs and a distance
    std::vector<std::string> codes;
    for (const auto& [code, rec] : gdp.by_code)
        if (rec.gdp_by_year.count(mass_year)) codes.push_back(code);

    std::vector<GravityObs> obs;
    std::set<std::pair<std::string, std::string>> covered;
    for (const auto& oi : codes) {
        for (const auto& oj : codes) {
            if (oi == oj) continue;
            auto d = dist.find(oi, oj);
            if (!d) continue;
            covered.insert({oi, oj});
            auto it = flow_by_pair.find({oi, oj});
            if (it == flow_by_pair.end() && !assume_zero) continue;
            const double flow = it == flow_by_pair.end() ? 0.0 : it->second;
            obs.push_back({oi, oj, flow, *gdp.gdp(oi, mass_year), *gdp.gdp(oj, mass_year), *d});
        }
    }
    for (const auto& [pair, flow] : flow_by_pair) {
        if (!covered.count(pair))
            throw ValidationError("gravity: flow " + pair.first + "->" + pair.second +
                                  " has no GDP or distance for year " + std::to_string(year));
    }
    return obs;
}

GravityFit fit_gravity(const TradeFlowTable& flows, int year, const CountryTable& gdp,
                       const DistanceTable& dist, const GravitySpec& spec, bool assume_zero) {
    if (!(spec.a > 0))
        throw ValidationError("gravity: exponent a must be positive");
    const int mass_year = spec.mass_year.value_or(year);
    const std::vector<GravityObs> obs =
        gravity_observations(flows, year, gdp, dist, mass_year, assume_zero);
    if (obs.size() < 4)
        throw ValidationError("gravity: need at least 4 observations, got " +
                              std::to_string(obs.size()));

    GlmProblem problem;
    const Eigen::Index n = static_cast<Eigen::Index>(obs.size());
    problem.design.resize(n, 4);
    problem.response.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        problem.design(i, 0) = 1.0;
        problem.design(i, 1) = std::log(obs[i].m_i);
        problem.design(i, 2) = std::log(obs[i].m_j);
        problem.design(i, 3) = std::log(obs[i].d);
        problem.response[i] = obs[i].flow;
    }

    GlmFit glm = fit_poisson_glm(problem, spec.tol, spec.max_iter);

    GravityFit fit;
    fit.intercept = glm.coef[0];
    fit.beta = glm.coef[1];
    fit.gamma = glm.coef[2];
    fit.delta = glm.coef[3];
    fit.n_obs = static_cast<int>(n);
    fit.iterations = glm.iterations;
    fit.converged = glm.converged;

    if (glm.null_deviance > 0)
        fit.r2_deviance = 1.0 - glm.deviance / glm.null_deviance;
    else
        fit.r2_deviance = glm.deviance <= 1e-12 ? 1.0 : 0.0;

    const Eigen::VectorXd mu = (problem.design * glm.coef).array().exp().matrix();
    const double my = mu.mean(), ry = problem.response.mean();
    const Eigen::VectorXd dm = mu.array() - my, dr = problem.response.array() - ry;
    const double vm = dm.squaredNorm(), vr = dr.squaredNorm();
    if (vm > 0 && vr > 0) {
        const double c = dm.dot(dr) / std::sqrt(vm * vr);
        fit.r2_corr = c * c;
    } else {
        fit.r2_corr = glm.deviance <= 1e-12 ? 1.0 : 0.0;
    }
    return fit;
}

}  // namespace ceeflow
