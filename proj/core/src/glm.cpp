#include "ceeflow/glm.hpp"

#include <cmath>

#include "ceeflow/errors.hpp"

namespace ceeflow {

namespace {

// keeps exp() finite and the working weights strictly positive
Eigen::VectorXd mean_from_eta(const Eigen::VectorXd& eta) {
    return eta.array().min(700.0).max(-700.0).exp().max(1e-290).matrix();
}

}  // namespace

double poisson_deviance(const Eigen::VectorXd& y, const Eigen::VectorXd& mu) {
    double dev = 0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double yi = y[i], mi = mu[i];
        double term = -(yi - mi);
        if (yi > 0) term += yi * std::log(yi / mi);
        dev += term;
    }
    return 2.0 * dev;
}

double poisson_null_deviance(const Eigen::VectorXd& y) {
    const double mean = y.size() ? y.mean() : 0.0;
    if (mean <= 0) return 0.0;
    Eigen::VectorXd mu = Eigen::VectorXd::Constant(y.size(), mean);
    return poisson_deviance(y, mu);
}

GlmFit fit_poisson_glm(const GlmProblem& problem, double tol, int max_iter) {
    const Eigen::MatrixXd& X = problem.design;
    const Eigen::VectorXd& y = problem.response;
    const Eigen::Index n = X.rows(), p = X.cols();

    if (!(tol > 0))
        throw ValidationError("glm: tol must be positive");
    if (y.size() != n)
        throw ValidationError("glm: response length does not match design rows");
    if ((y.array() < 0).any())
        throw ValidationError("glm: negative response");
    Eigen::VectorXd offset = Eigen::VectorXd::Zero(n);
    if (problem.offset) {
        if (problem.offset->size() != n)
            throw ValidationError("glm: offset length does not match design rows");
        offset = *problem.offset;
    }
    if (n < p)
        throw ValidationError("glm: fewer observations than coefficients");
    {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
        qr.setThreshold(1e-10);
        if (qr.rank() < p)
            throw ValidationError("glm: design matrix is rank-deficient");
    }

    GlmFit fit;
    fit.null_deviance = poisson_null_deviance(y);

    // start: zero coefficients, intercept at log(mean + eps)
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
    for (Eigen::Index j = 0; j < p; ++j) {
        if ((X.col(j).array() == 1.0).all()) {
            beta[j] = std::log(y.mean() + 1e-8);
            break;
        }
    }

    Eigen::VectorXd eta = X * beta + offset;
    Eigen::VectorXd mu = mean_from_eta(eta);
    double dev = poisson_deviance(y, mu);
    fit.deviance_trace.push_back(dev);

    for (int iter = 1; iter <= max_iter; ++iter) {
        const Eigen::VectorXd w_sqrt = mu.array().sqrt().matrix();
        // working response on the linear scale, offset removed before solving
        const Eigen::VectorXd z =
            (eta - offset).array() + (y - mu).array() / mu.array();

        Eigen::MatrixXd Xw = w_sqrt.asDiagonal() * X;
        Eigen::VectorXd zw = w_sqrt.asDiagonal() * z;
        Eigen::VectorXd beta_new = Xw.colPivHouseholderQr().solve(zw);

        // glm2-style step halving: never accept a step that raises the deviance
        Eigen::VectorXd eta_new = X * beta_new + offset;
        Eigen::VectorXd mu_new = mean_from_eta(eta_new);
        double dev_new = poisson_deviance(y, mu_new);
        for (int half = 0; half < 32 && (!std::isfinite(dev_new) || dev_new > dev * (1 + 1e-12) + 1e-12);
             ++half) {
            beta_new = 0.5 * (beta_new + beta);
            eta_new = X * beta_new + offset;
            mu_new = mean_from_eta(eta_new);
            dev_new = poisson_deviance(y, mu_new);
        }

        beta = beta_new;
        eta = eta_new;
        mu = mu_new;
        fit.iterations = iter;
        fit.deviance_trace.push_back(dev_new);

        if (std::abs(dev_new - dev) / (0.1 + std::abs(dev_new)) < tol) {
            fit.converged = true;
            dev = dev_new;
            break;
        }
        dev = dev_new;
    }

    fit.coef = beta;
    fit.deviance = dev;
    return fit;
}

}  // namespace ceeflow
