#include "karma/arma.hpp"

#include <cmath>
#include <string>

#include "karma/errors.hpp"
#include "pem.hpp"

namespace karma {

ScalarArmaModel fit_arma(std::span<const double> series, int na, int nc) {
    detail::PemProblem prob;
    prob.y = series;
    prob.na = na;
    prob.nc = nc;
    detail::PemResult fit = detail::pem_fit(prob);

    ScalarArmaModel model;
    model.a = fit.a;
    model.c = fit.c;
    model.noise_variance = fit.noise_variance;
    model.lambda_e = std::sqrt(fit.noise_variance);
    model.info = FitInfo{fit.converged, fit.iterations, fit.sse_history};
    return model;
}

std::vector<double> arma_innovations(const ScalarArmaModel& model,
                                     std::span<const double> series) {
    return detail::pem_innovations(model.a, model.c, {}, {}, series);
}

std::vector<double> arma_forecast(const ScalarArmaModel& model,
                                  std::span<const double> history, int horizon) {
    if (horizon < 1) {
        throw ParamError("forecast horizon must be >= 1");
    }
    if (history.empty()) {
        throw DataError("cannot forecast from an empty history");
    }
    const int n = static_cast<int>(history.size());
    const int na = model.a.degree();
    const int nc = model.c.degree();

    std::vector<double> e = arma_innovations(model, history);
    e.resize(static_cast<size_t>(n + horizon), 0.0); // future innovations: zero mean

    std::vector<double> extended(history.begin(), history.end());
    extended.resize(static_cast<size_t>(n + horizon), 0.0);

    for (int t = n; t < n + horizon; ++t) {
        double v = 0.0;
        for (int i = 1; i <= na; ++i) {
            if (t - i >= 0) v -= model.a[i] * extended[static_cast<size_t>(t - i)];
        }
        for (int i = 1; i <= nc; ++i) {
            if (t - i >= 0) v += model.c[i] * e[static_cast<size_t>(t - i)];
        }
        extended[static_cast<size_t>(t)] = v;
    }
    return {extended.begin() + n, extended.end()};
}

std::vector<double> arma_prediction_variances(const ScalarArmaModel& model, int horizon) {
    if (horizon < 1) {
        throw ParamError("horizon must be >= 1");
    }
    std::vector<double> g = rational_impulse(model.c, model.a, horizon);
    std::vector<double> out(static_cast<size_t>(horizon));
    double cum = 0.0;
    for (int k = 0; k < horizon; ++k) {
        cum += g[static_cast<size_t>(k)] * g[static_cast<size_t>(k)];
        out[static_cast<size_t>(k)] = model.noise_variance * cum;
    }
    return out;
}

} // namespace karma
