#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "campus/rates.hpp"

namespace campus::ctmc {

// Constant-rate birth-death generator over states 0..C: births at `lambda`
// per hour, deaths at `mu` per hour (single-server loss queue).
struct BirthDeathRates {
    double lambda = 0;
    double mu = 0;
};

struct BirthDeathSpec {
    int capacity = 0;              // C
    RateProfile arrivals;          // lambda per hour-slot
    RateProfile departures;        // mu per hour-slot
    double epoch_hours = 1.0 / 12; // 5-minute epochs by default

    void validate() const {
        if (capacity < 0) throw std::invalid_argument("capacity must be non-negative");
        arrivals.check_non_negative();
        departures.check_non_negative();
        if (arrivals.slots() != departures.slots())
            throw std::invalid_argument("arrival and departure profiles cover different horizons");
        if (epoch_hours <= 0) throw std::invalid_argument("epoch must be positive");
        const double per_hour = 1.0 / epoch_hours;
        if (std::abs(per_hour - std::round(per_hour)) > 1e-9)
            throw std::invalid_argument("epoch must divide the hour evenly");
    }

    int epochs_per_hour() const { return static_cast<int>(std::round(1.0 / epoch_hours)); }
};

inline bool is_distribution(const std::vector<double>& pi, double tol = 1e-9) {
    double sum = 0;
    for (double p : pi) {
        if (p < -tol) return false;
        sum += p;
    }
    return std::abs(sum - 1.0) <= tol;
}

inline std::vector<double> point_mass(std::size_t states, std::size_t at = 0) {
    std::vector<double> pi(states, 0.0);
    pi.at(at) = 1.0;
    return pi;
}

// Dense (C+1)x(C+1) transition-rate matrix: super-diagonal lambda,
// sub-diagonal mu, diagonal balancing each row to zero.
inline std::vector<std::vector<double>> build_q_matrix(double lambda, double mu, int capacity) {
    if (lambda < 0 || mu < 0) throw std::invalid_argument("rates must be non-negative");
    if (capacity < 0) throw std::invalid_argument("capacity must be non-negative");
    const std::size_t n = static_cast<std::size_t>(capacity) + 1;
    std::vector<std::vector<double>> q(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        if (i + 1 < n) q[i][i + 1] = lambda;
        if (i > 0) q[i][i - 1] = mu;
        q[i][i] = -((i + 1 < n ? lambda : 0.0) + (i > 0 ? mu : 0.0));
    }
    return q;
}

namespace detail {

// pi * (I + Q/rate) for the tridiagonal birth-death generator.
inline void stochastic_product(const std::vector<double>& pi, const BirthDeathRates& q,
                               double rate, std::vector<double>& out) {
    const std::size_t n = pi.size();
    for (std::size_t j = 0; j < n; ++j) {
        const double diag = (j + 1 < n ? q.lambda : 0.0) + (j > 0 ? q.mu : 0.0);
        double v = pi[j] * (1.0 - diag / rate);
        if (j > 0) v += pi[j - 1] * q.lambda / rate;
        if (j + 1 < n) v += pi[j + 1] * q.mu / rate;
        out[j] = v;
    }
}

} // namespace detail

// Advances the state distribution by dt hours: pi' = pi * exp(Q*dt), computed
// by uniformization. The Poisson series is truncated once the neglected tail
// mass drops below tail_tol; the retained weights are renormalized so the
// result remains a distribution after arbitrarily many steps. Steps with
// rate*dt above 500 are split to keep the smallest weight representable.
inline std::vector<double> transient_step(const std::vector<double>& pi, const BirthDeathRates& q,
                                          double dt_hours, double tail_tol = 1e-12) {
    if (q.lambda < 0 || q.mu < 0) throw std::invalid_argument("rates must be non-negative");
    if (dt_hours <= 0) throw std::invalid_argument("dt must be positive");
    if (pi.empty()) throw std::invalid_argument("empty distribution");

    const double rate = q.lambda + q.mu;
    if (rate * dt_hours == 0) return pi;

    const int substeps = std::max(1, static_cast<int>(std::ceil(rate * dt_hours / 500.0)));
    const double a = rate * dt_hours / substeps; // Poisson mean per substep

    std::vector<double> cur = pi, term(pi.size()), acc(pi.size());
    for (int s = 0; s < substeps; ++s) {
        double weight = std::exp(-a); // Poisson(0)
        double cum = weight;
        for (std::size_t j = 0; j < cur.size(); ++j) acc[j] = weight * cur[j];
        term = cur;
        std::vector<double> next(cur.size());
        for (int n = 1; cum < 1.0 - tail_tol; ++n) {
            detail::stochastic_product(term, q, rate, next);
            term.swap(next);
            weight *= a / n;
            cum += weight;
            for (std::size_t j = 0; j < term.size(); ++j) acc[j] += weight * term[j];
        }
        for (double& v : acc) v /= cum;
        cur = acc;
    }
    return cur;
}

// Stationary distribution of the constant-rate chain: pi_n proportional to
// (lambda/mu)^n.
inline std::vector<double> analytic_steady_state(double lambda, double mu, int capacity) {
    if (mu <= 0) throw std::invalid_argument("steady state requires mu > 0");
    if (lambda < 0) throw std::invalid_argument("rates must be non-negative");
    const double r = lambda / mu;
    std::vector<double> pi(static_cast<std::size_t>(capacity) + 1);
    double term = 1.0, sum = 0.0;
    for (auto& p : pi) {
        p = term;
        sum += term;
        term *= r;
        if (sum > 1e250) { // rescale to dodge overflow for large r^C
            for (auto& v : pi) v /= sum;
            term /= sum;
            sum = 1.0;
        }
    }
    for (auto& p : pi) p /= sum;
    return pi;
}

struct DayTrace {
    std::vector<std::vector<double>> distributions; // post-step pi per epoch
    std::vector<double> rejections;                 // expected rejections per epoch
    double total_rejections = 0;
};

// Steps through every hour-slot of the spec's profiles. Within slot k the same
// generator serves all epochs; the expected rejections of an epoch use the
// pre-step probability of the full state: r = pi_C * lambda(k) * dt.
inline DayTrace simulate_day(const BirthDeathSpec& spec, const std::vector<double>& pi0) {
    spec.validate();
    if (pi0.size() != static_cast<std::size_t>(spec.capacity) + 1)
        throw std::invalid_argument("initial distribution has wrong dimension");

    const int epochs = spec.epochs_per_hour();
    DayTrace trace;
    std::vector<double> pi = pi0;
    for (std::size_t k = 0; k < spec.arrivals.slots(); ++k) {
        const BirthDeathRates q{spec.arrivals.values[k], spec.departures.values[k]};
        for (int e = 0; e < epochs; ++e) {
            const double r = pi.back() * q.lambda * spec.epoch_hours;
            trace.rejections.push_back(r);
            trace.total_rejections += r;
            if (q.lambda + q.mu > 0) pi = transient_step(pi, q, spec.epoch_hours);
            trace.distributions.push_back(pi);
        }
    }
    return trace;
}

} // namespace campus::ctmc
