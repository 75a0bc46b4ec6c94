// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "pcqa/stats/correlation.hpp"
#include "pcqa/stats/descriptive.hpp"

namespace pcqa::stats {

/// Monotone 4-parameter logistic MOSp(x) = b1 + (b2-b1) / (1 + exp(-b3 (x - b4))).
struct LogisticFit {
    std::array<double, 4> beta{};
    std::vector<double> predictions;
    double sse = 0.0;
    bool degenerate = false;  // constant objective or constant MOS
};

inline double logistic_eval(const std::array<double, 4>& b, double x) {
    return b[0] + (b[1] - b[0]) / (1.0 + std::exp(-b[2] * (x - b[3])));
}

namespace detail {

/// Damped (Marquardt-scaled) Gauss-Newton on the 4-parameter logistic.
/// The diag(JtJ) damping keeps iterates equivariant under affine rescaling
/// of the objective axis.
inline double levenberg_refine(std::array<double, 4>& beta, const std::vector<double>& x,
                               const std::vector<double>& y) {
    const std::size_t n = x.size();
    auto sse_of = [&](const std::array<double, 4>& b) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = logistic_eval(b, x[i]) - y[i];
            s += r * r;
        }
        return s;
    };
    double lambda = 1e-3;
    double sse = sse_of(beta);
    for (int iter = 0; iter < 200; ++iter) {
        double jtj[4][4] = {};
        double jtr[4] = {};
        for (std::size_t i = 0; i < n; ++i) {
            const double e = std::exp(-beta[2] * (x[i] - beta[3]));
            const double s = 1.0 / (1.0 + e);
            const double ds = s * (1.0 - s);  // sigmoid derivative
            const double resid = beta[0] + (beta[1] - beta[0]) * s - y[i];
            const double j[4] = {1.0 - s, s, (beta[1] - beta[0]) * ds * (x[i] - beta[3]),
                                 -(beta[1] - beta[0]) * ds * beta[2]};
            for (int r = 0; r < 4; ++r) {
                jtr[r] += j[r] * resid;
                for (int c = 0; c < 4; ++c) jtj[r][c] += j[r] * j[c];
            }
        }
        bool stepped = false;
        for (int attempt = 0; attempt < 12 && !stepped; ++attempt) {
            double a[4][5];
            for (int r = 0; r < 4; ++r) {
                for (int c = 0; c < 4; ++c) a[r][c] = jtj[r][c];
                a[r][r] += lambda * std::max(jtj[r][r], 1e-12);
                a[r][4] = -jtr[r];
            }
            // Gaussian elimination with partial pivoting.
            bool singular = false;
            for (int col = 0; col < 4; ++col) {
                int pivot = col;
                for (int r = col + 1; r < 4; ++r)
                    if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
                if (std::abs(a[pivot][col]) < 1e-300) {
                    singular = true;
                    break;
                }
                std::swap(a[pivot], a[col]);
                for (int r = col + 1; r < 4; ++r) {
                    const double f = a[r][col] / a[col][col];
                    for (int c = col; c < 5; ++c) a[r][c] -= f * a[col][c];
                }
            }
            if (singular) {
                lambda *= 10.0;
                continue;
            }
            std::array<double, 4> delta{};
            for (int r = 3; r >= 0; --r) {
                double acc = a[r][4];
                for (int c = r + 1; c < 4; ++c) acc -= a[r][c] * delta[static_cast<std::size_t>(c)];
                delta[static_cast<std::size_t>(r)] = acc / a[r][r];
            }
            std::array<double, 4> cand = beta;
            for (int r = 0; r < 4; ++r) cand[static_cast<std::size_t>(r)] += delta[static_cast<std::size_t>(r)];
            const double cand_sse = sse_of(cand);
            if (cand_sse <= sse) {
                const double gain = sse - cand_sse;
                beta = cand;
                sse = cand_sse;
                lambda = std::max(lambda * 0.3, 1e-12);
                stepped = true;
                if (gain < 1e-15 * (1.0 + sse)) return sse;
            } else {
                lambda *= 10.0;
            }
        }
        if (!stepped) return sse;
    }
    return sse;
}

} // namespace detail

/// Least-squares logistic regression of MOS on an objective score, with
/// deterministic multi-start initialization: the slope sign comes from the
/// rank correlation, the inflection candidates from objective quantiles.
inline LogisticFit fit_logistic(const std::vector<double>& objective, const std::vector<double>& mos) {
    if (objective.size() != mos.size() || objective.size() < 5)
        throw std::invalid_argument("fit_logistic: need equal-length vectors of >= 5 points");
    const std::size_t n = objective.size();

    const auto [xmin_it, xmax_it] = std::minmax_element(objective.begin(), objective.end());
    const auto [ymin_it, ymax_it] = std::minmax_element(mos.begin(), mos.end());
    LogisticFit fit;
    if (*xmin_it == *xmax_it) {
        // Constant objective: no information, constant predictor.
        const double c = mean(mos);
        fit.beta = {c, c, 0.0, *xmin_it};
        fit.predictions.assign(n, c);
        fit.degenerate = true;
        double s = 0.0;
        for (double y : mos) s += (y - c) * (y - c);
        fit.sse = s;
        return fit;
    }
    if (*ymin_it == *ymax_it) {
        const double c = mos.front();
        fit.beta = {c, c, 0.0, mean(objective)};
        fit.predictions.assign(n, c);
        fit.degenerate = true;
        fit.sse = 0.0;
        return fit;
    }

    const double sign = spearman(objective, mos) >= 0.0 ? 1.0 : -1.0;
    std::vector<double> sorted = objective;
    std::sort(sorted.begin(), sorted.end());
    const double q25 = sorted[n / 4], q75 = sorted[(3 * n) / 4];
    const double slope0 = 4.0 / std::max(q75 - q25, 1e-3 * (*xmax_it - *xmin_it));

    std::array<double, 4> best{};
    double best_sse = std::numeric_limits<double>::infinity();
    for (int s = 1; s <= 8; ++s) {
        const double frac = static_cast<double>(s) / 9.0;
        const double b4 = *xmin_it + frac * (*xmax_it - *xmin_it);
        std::array<double, 4> beta = {sign > 0.0 ? *ymin_it : *ymax_it,
                                      sign > 0.0 ? *ymax_it : *ymin_it, sign * slope0, b4};
        const double sse = detail::levenberg_refine(beta, objective, mos);
        if (sse < best_sse) {
            best_sse = sse;
            best = beta;
        }
    }
    // Canonical direction: (b1,b2,b3) and (b2,b1,-b3) are the same curve.
    if (best[2] * sign < 0.0) best = {best[1], best[0], -best[2], best[3]};

    fit.beta = best;
    fit.sse = best_sse;
    fit.predictions.resize(n);
    for (std::size_t i = 0; i < n; ++i) fit.predictions[i] = logistic_eval(best, objective[i]);
    return fit;
}

} // namespace pcqa::stats
