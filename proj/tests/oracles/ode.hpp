#pragma once

// Adaptive Runge-Kutta-Fehlberg 4(5) integration of pi' = pi * Q for a dense
// generator matrix. Serves as the independent check on uniformization.

#include <algorithm>
#include <cmath>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

inline std::vector<double> mat_vec_left(const std::vector<double>& pi, const Matrix& q) {
    std::vector<double> out(pi.size(), 0.0);
    for (std::size_t i = 0; i < pi.size(); ++i)
        for (std::size_t j = 0; j < pi.size(); ++j) out[j] += pi[i] * q[i][j];
    return out;
}

// Integrates pi' = pi Q over [0, t] with adaptive step control.
inline std::vector<double> integrate_kolmogorov(std::vector<double> pi, const Matrix& q, double t,
                                                double tol = 1e-11) {
    static const double a[6] = {0, 1.0 / 4, 3.0 / 8, 12.0 / 13, 1.0, 1.0 / 2};
    static const double b[6][5] = {
        {},
        {1.0 / 4},
        {3.0 / 32, 9.0 / 32},
        {1932.0 / 2197, -7200.0 / 2197, 7296.0 / 2197},
        {439.0 / 216, -8.0, 3680.0 / 513, -845.0 / 4104},
        {-8.0 / 27, 2.0, -3544.0 / 2565, 1859.0 / 4104, -11.0 / 40}};
    static const double c5[6] = {16.0 / 135, 0, 6656.0 / 12825, 28561.0 / 56430, -9.0 / 50, 2.0 / 55};
    static const double c4[6] = {25.0 / 216, 0, 1408.0 / 2565, 2197.0 / 4104, -1.0 / 5, 0};
    (void)a;

    double time = 0;
    double h = t / 16.0;
    const std::size_t n = pi.size();
    while (time < t) {
        h = std::min(h, t - time);
        std::vector<std::vector<double>> k(6);
        for (int s = 0; s < 6; ++s) {
            std::vector<double> y = pi;
            for (int p = 0; p < s; ++p)
                for (std::size_t j = 0; j < n; ++j) y[j] += h * b[s][p] * k[p][j];
            k[s] = mat_vec_left(y, q);
        }
        std::vector<double> y5(n), y4(n);
        for (std::size_t j = 0; j < n; ++j) {
            double d5 = 0, d4 = 0;
            for (int s = 0; s < 6; ++s) {
                d5 += c5[s] * k[s][j];
                d4 += c4[s] * k[s][j];
            }
            y5[j] = pi[j] + h * d5;
            y4[j] = pi[j] + h * d4;
        }
        double err = 0;
        for (std::size_t j = 0; j < n; ++j) err = std::max(err, std::abs(y5[j] - y4[j]));
        if (err <= tol || h <= 1e-14) {
            pi = y5;
            time += h;
        }
        const double shrink = err > 0 ? 0.9 * std::pow(tol / err, 0.2) : 2.0;
        h *= std::clamp(shrink, 0.1, 2.0);
    }
    return pi;
}

} // namespace oracle
