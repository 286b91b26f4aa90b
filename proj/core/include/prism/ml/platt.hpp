#pragma once

#include <span>
#include <utility>

namespace prism::ml {

/// Sigmoid calibration p = 1 / (1 + exp(A*s + B)) fitted by regularized
/// maximum likelihood with Platt's target smoothing. For positively oriented
/// scores the fitted A is negative. Degenerate (constant) scores yield A = 0
/// and B matching the smoothed base rate.
struct PlattParams {
    double a = 0.0;
    double b = 0.0;

    double apply(double score) const;
};

PlattParams platt_fit(std::span<const double> scores, std::span<const int> labels);

/// Negative log-likelihood of the smoothed targets at (a, b); the fit's
/// objective, exposed so tests can grid-check optimality.
double platt_nll(std::span<const double> scores, std::span<const int> labels, double a,
                 double b);

}  // namespace prism::ml
