#pragma once

#include <optional>
#include <span>

#include "ceeflow/glm.hpp"
#include "ceeflow/ingest.hpp"

namespace ceeflow {

struct GravitySpec {
    double a = 2.0;                // distance exponent of the theoretical model
    std::optional<int> mass_year;  // GDP year; defaults to the flow year
    double tol = 1e-10;
    int max_iter = 50;
};

/// How the mobility constant k is calibrated.
///   paper            : k = sum(flows) / sum(m_i * m_j)
///   total_preserving : k = sum(flows) / sum(m_i * m_j / d_ij^a), which makes
///                      the theoretical flows sum to the observed total.
enum class KVariant { paper, total_preserving };

/// k * m_i * m_j / d_ij^a. All of m_i, m_j, d_ij, k and a must be positive.
double theoretical_flow(double m_i, double m_j, double d_ij, double k, double a);

double calibrate_k(std::span<const double> flows, std::span<const double> mass_products);
double calibrate_k(std::span<const double> flows, std::span<const double> mass_products,
                   std::span<const double> distances, double a, KVariant variant);

struct GravityFit {
    double intercept = 0;  // absorbs alpha*log k; never decomposed
    double beta = 0;       // elasticity of origin GDP
    double gamma = 0;      // elasticity of destination GDP
    double delta = 0;      // raw coefficient on log distance
    double r2_deviance = 0;
    double r2_corr = 0;
    int n_obs = 0;
    int iterations = 0;
    bool converged = false;
};

struct GravityObs {
    std::string origin, dest;
    double flow = 0, m_i = 0, m_j = 0, d = 0;
};

/// The per-year observation set behind fit_gravity, in deterministic
/// (origin, dest) order: every ordered country pair with both GDPs at
/// mass_year and a distance. Missing flow records are either skipped or
/// entered as zero depending on assume_zero; flow records outside the
/// universe raise a ValidationError.
std::vector<GravityObs> gravity_observations(const TradeFlowTable& flows, int year,
                                             const CountryTable& gdp, const DistanceTable& dist,
                                             int mass_year, bool assume_zero);

/// Poisson regression of the per-pair flow totals for one year on
/// {log gdp_origin, log gdp_dest, log distance} plus an intercept.
/// The observation set is every ordered country pair with both GDPs and a
/// distance; pairs without a flow record are excluded unless assume_zero,
/// in which case they enter with response 0. Flow records for pairs that
/// lack a GDP or distance are an error.
GravityFit fit_gravity(const TradeFlowTable& flows, int year, const CountryTable& gdp,
                       const DistanceTable& dist, const GravitySpec& spec = {},
                       bool assume_zero = false);

}  // namespace ceeflow
