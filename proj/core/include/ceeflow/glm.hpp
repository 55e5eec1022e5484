#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace ceeflow {

/// Poisson working model with log link. The response may be any non-negative
/// real, not only counts: IRLS uses only the mean-variance relation.
struct GlmProblem {
    Eigen::MatrixXd design;                 // n x p, include the intercept column yourself
    Eigen::VectorXd response;               // n, elementwise >= 0
    std::optional<Eigen::VectorXd> offset;  // n, added to the linear predictor
};

struct GlmFit {
    Eigen::VectorXd coef;
    double deviance = 0;
    double null_deviance = 0;  // intercept-only model
    int iterations = 0;
    bool converged = false;
    std::vector<double> deviance_trace;  // deviance after each accepted step
};

/// 2 * sum[y log(y/mu) - (y - mu)], with y log(y/mu) := 0 when y = 0.
double poisson_deviance(const Eigen::VectorXd& y, const Eigen::VectorXd& mu);
double poisson_null_deviance(const Eigen::VectorXd& y);

/// Iteratively reweighted least squares. Starts from zero coefficients with
/// the intercept (first all-ones column, if any) at log(mean(y) + 1e-8);
/// declares convergence when |dev - dev_old| / (0.1 + |dev|) < tol. Steps
/// that would increase the deviance are halved toward the previous iterate,
/// so the reported trace is non-increasing.
GlmFit fit_poisson_glm(const GlmProblem& problem, double tol = 1e-10, int max_iter = 50);

}  // namespace ceeflow
