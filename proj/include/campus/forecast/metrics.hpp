#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

namespace campus::forecast {

// Sum-form quantile (pinball) loss: each term is (y - yhat) * (tau - 1{y - yhat < 0}),
// i.e. under-prediction costs (y - yhat) * tau and over-prediction (yhat - y) * (1 - tau).
inline double pinball_loss(std::span<const double> y, std::span<const double> yhat, double tau) {
    if (y.size() != yhat.size()) throw std::invalid_argument("pinball_loss: length mismatch");
    if (tau <= 0.0 || tau > 1.0) throw std::invalid_argument("pinball_loss: tau outside (0,1]");
    double total = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double r = y[i] - yhat[i];
        total += r * (tau - (r < 0 ? 1.0 : 0.0));
    }
    return total;
}

// Mean of the quantile loss.
inline double wmae(std::span<const double> y, std::span<const double> yhat, double tau) {
    if (y.empty()) throw std::invalid_argument("wmae: empty input");
    return pinball_loss(y, yhat, tau) / static_cast<double>(y.size());
}

inline double mae(std::span<const double> y, std::span<const double> yhat) {
    if (y.size() != yhat.size()) throw std::invalid_argument("mae: length mismatch");
    if (y.empty()) throw std::invalid_argument("mae: empty input");
    double total = 0;
    for (std::size_t i = 0; i < y.size(); ++i) total += std::abs(y[i] - yhat[i]);
    return total / static_cast<double>(y.size());
}

inline double rmse(std::span<const double> y, std::span<const double> yhat) {
    if (y.size() != yhat.size()) throw std::invalid_argument("rmse: length mismatch");
    if (y.empty()) throw std::invalid_argument("rmse: empty input");
    double total = 0;
    for (std::size_t i = 0; i < y.size(); ++i) total += (y[i] - yhat[i]) * (y[i] - yhat[i]);
    return std::sqrt(total / static_cast<double>(y.size()));
}

} // namespace campus::forecast
