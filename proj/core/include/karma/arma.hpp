#pragma once

#include <span>
#include <vector>

#include "karma/polynomial.hpp"

namespace karma {

/// Optimization trace attached to identified models.
struct FitInfo {
    bool converged = true;
    int iterations = 0;
    std::vector<double> sse_history; // prediction-error SSE after each accepted iterate
};

/// Scalar ARMA model a(q^-1) y = c(q^-1) e with monic, stable and invertible
/// polynomials. lambda_e is the standard deviation of the fitted innovations.
struct ScalarArmaModel {
    ShiftPolynomial a;
    ShiftPolynomial c;
    double noise_variance = 0.0;
    double lambda_e = 0.0;
    FitInfo info;
};

/// Minimum prediction error fit: two-stage pseudolinear regression for the
/// initial values, then damped Gauss-Newton on the one-step prediction-error
/// sum of squares. The returned model is always stable/invertible; failure to
/// converge is reported through info.converged.
ScalarArmaModel fit_arma(std::span<const double> series, int na, int nc);

/// One-step prediction errors (innovations) of the model on a series,
/// zero pre-sample convention. Output length equals input length.
std::vector<double> arma_innovations(const ScalarArmaModel& model,
                                     std::span<const double> series);

/// Minimum-variance multi-step forecast: future innovations are zero, past
/// innovations come from arma_innovations on the history.
std::vector<double> arma_forecast(const ScalarArmaModel& model,
                                  std::span<const double> history, int horizon);

/// Theoretical k-step-ahead prediction error variances, k = 1..horizon:
/// noise_variance times the cumulative squared impulse response of c/a.
std::vector<double> arma_prediction_variances(const ScalarArmaModel& model, int horizon);

} // namespace karma
