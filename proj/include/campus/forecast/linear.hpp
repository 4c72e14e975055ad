#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "campus/common/errors.hpp"
#include "campus/forecast/features.hpp"

namespace campus::forecast {

enum class LossKind { SquaredError, Quantile };

struct LinearModel {
    Eigen::VectorXd coef;
    std::vector<std::string> feature_names;
    LossKind loss = LossKind::SquaredError;
    double tau = 0.5;                // meaningful when loss == Quantile
    bool ridge_fallback_used = false;

    double predict(const Eigen::RowVectorXd& features) const { return features * coef; }
};

struct FitOptions {
    bool ridge_fallback = true;  // on rank deficiency, fall back to a tiny ridge penalty
    double ridge = 1e-8;
};

// Ordinary least squares via column-pivoted QR; rank-deficient designs fall
// back to ridge regression (or raise numerical_error when disabled).
inline LinearModel fit_ols(const SupervisedSet& set, const FitOptions& opts = {}) {
    if (set.X.rows() != set.y.rows()) throw std::invalid_argument("fit_ols: X/y row mismatch");
    if (set.X.rows() == 0) throw std::invalid_argument("fit_ols: empty training set");
    LinearModel model;
    model.feature_names = set.feature_names;
    model.loss = LossKind::SquaredError;

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(set.X);
    qr.setThreshold(1e-10);
    if (qr.rank() < set.X.cols()) {
        if (!opts.ridge_fallback)
            throw numerical_error("fit_ols: design matrix is rank deficient");
        const Eigen::MatrixXd gram =
            set.X.transpose() * set.X +
            opts.ridge * Eigen::MatrixXd::Identity(set.X.cols(), set.X.cols());
        model.coef = gram.ldlt().solve(set.X.transpose() * set.y);
        model.ridge_fallback_used = true;
    } else {
        model.coef = qr.solve(set.y);
    }
    return model;
}

struct QuantileFitOptions {
    double smoothing_floor = 1e-8; // final IRLS smoothing parameter
    int max_iterations = 200;
    double tolerance = 1e-12;      // coefficient-change stopping criterion
};

// Quantile regression by iteratively reweighted least squares on a smoothed
// pinball loss: weight |tau - 1{r<0}| / max(|r|, eps) with eps annealed down
// to the smoothing floor. Exact enough that an intercept-only fit lands on
// the empirical tau-quantile.
inline LinearModel fit_quantile(const SupervisedSet& set, double tau,
                                const QuantileFitOptions& opts = {}) {
    if (tau <= 0.0 || tau >= 1.0) throw std::invalid_argument("fit_quantile: tau outside (0,1)");
    if (set.X.rows() != set.y.rows()) throw std::invalid_argument("fit_quantile: X/y row mismatch");
    if (set.X.rows() == 0) throw std::invalid_argument("fit_quantile: empty training set");

    LinearModel model = fit_ols(set);
    model.loss = LossKind::Quantile;
    model.tau = tau;

    const long n = set.X.rows();
    double scale = (set.y - set.X * model.coef).cwiseAbs().mean();
    if (scale <= 0) return model; // already an exact fit
    double eps = std::max(opts.smoothing_floor, 1e-2 * scale);

    Eigen::VectorXd w(n);
    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        const Eigen::VectorXd r = set.y - set.X * model.coef;
        for (long i = 0; i < n; ++i) {
            const double asym = r(i) < 0 ? 1.0 - tau : tau;
            w(i) = asym / std::max(std::abs(r(i)), eps);
        }
        const Eigen::MatrixXd Xw = w.asDiagonal() * set.X;
        Eigen::MatrixXd gram = set.X.transpose() * Xw;
        gram.diagonal().array() += 1e-12 * gram.diagonal().maxCoeff();
        const Eigen::VectorXd next = gram.ldlt().solve(Xw.transpose() * set.y);
        const double change = (next - model.coef).cwiseAbs().maxCoeff();
        model.coef = next;
        if (change < std::max(opts.tolerance, eps * 1e-4)) {
            if (eps <= opts.smoothing_floor) break;
            eps = std::max(opts.smoothing_floor, eps / 10.0);
        }
    }
    return model;
}

} // namespace campus::forecast
