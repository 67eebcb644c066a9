#pragma once

// Internal prediction-error estimation engine shared by the scalar ARMA fit
// and the per-channel ARMAX fits. Not installed.

#include <span>
#include <vector>

#include "karma/polynomial.hpp"

namespace karma::detail {

struct PemProblem {
    std::span<const double> y;                    // output series
    std::vector<std::span<const double>> inputs;  // exogenous inputs, may be empty
    int na = 0;                                   // AR order
    int nb = 0;                                   // input polynomial order (delay >= 1)
    int nc = 0;                                   // MA order
};

struct PemOptions {
    int max_iterations = 100;
    double gradient_tol = 1e-8;     // relative to 1 + SSE
    int max_step_halvings = 30;
    double stability_margin = 1e-6;
};

struct PemResult {
    ShiftPolynomial a;                             // monic, degree na
    ShiftPolynomial c;                             // monic, degree nc
    std::vector<std::vector<double>> b_tails;      // per input: coefficients of q^-1..q^-nb
    double noise_variance = 0.0;                   // SSE / N (population)
    bool converged = true;
    int iterations = 0;
    std::vector<double> sse_history;               // SSE after init and each accepted step
};

PemResult pem_fit(const PemProblem& prob, const PemOptions& opts = {});

/// One-step prediction errors of the fitted structure, zero pre-sample.
/// b_tails[i] holds the q^-1..q^-nb coefficients for input i.
std::vector<double> pem_innovations(const ShiftPolynomial& a, const ShiftPolynomial& c,
                                    const std::vector<std::vector<double>>& b_tails,
                                    const std::vector<std::span<const double>>& inputs,
                                    std::span<const double> y);

} // namespace karma::detail
