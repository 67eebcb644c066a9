#include "karma/preprocess.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

#include "karma/errors.hpp"

namespace karma {

double DeterministicModel::evaluate(int channel, int t) const {
    const auto& coeffs = trend_coeffs[static_cast<size_t>(channel)];
    const double tau = (fit_length > 0) ? static_cast<double>(t) / fit_length : 0.0;
    double value = 0.0;
    double power = 1.0;
    for (double c : coeffs) {
        value += c * power;
        power *= tau;
    }
    if (season_period && *season_period > 0) {
        const int phase = ((t % *season_period) + *season_period) % *season_period;
        value += season_profile[static_cast<size_t>(channel)][static_cast<size_t>(phase)];
    }
    return value;
}

DeterministicModel fit_deterministic(const TimeSeriesCollection& data, int p,
                                     std::optional<int> season_period) {
    const int n = data.n();
    const int ny = data.ny();
    if (p < 0) {
        throw ParamError("trend degree must be >= 0");
    }
    if (p + 1 > n) {
        throw DataError("trend of degree " + std::to_string(p) +
                        " is underdetermined with N=" + std::to_string(n));
    }
    if (season_period) {
        if (*season_period < 2) {
            throw ParamError("season period must be >= 2");
        }
        if (*season_period > n / 2) {
            throw DataError("season period " + std::to_string(*season_period) +
                            " exceeds N/2 with N=" + std::to_string(n));
        }
    }

    // Vandermonde in normalized time t/N; raw powers of t lose conditioning
    // already around p = 3.
    Eigen::MatrixXd basis(n, p + 1);
    for (int t = 0; t < n; ++t) {
        const double tau = static_cast<double>(t) / n;
        double power = 1.0;
        for (int m = 0; m <= p; ++m) {
            basis(t, m) = power;
            power *= tau;
        }
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(basis);

    DeterministicModel model;
    model.fit_length = n;
    model.season_period = season_period;
    model.trend_coeffs.resize(static_cast<size_t>(ny));
    model.season_profile.resize(static_cast<size_t>(ny));

    for (int j = 0; j < ny; ++j) {
        Eigen::VectorXd coeffs = qr.solve(data.values.col(j));
        auto& tc = model.trend_coeffs[static_cast<size_t>(j)];
        tc.assign(coeffs.data(), coeffs.data() + coeffs.size());

        if (season_period) {
            const int period = *season_period;
            Eigen::VectorXd detrended = data.values.col(j) - basis * coeffs;
            std::vector<double> sums(static_cast<size_t>(period), 0.0);
            std::vector<int> counts(static_cast<size_t>(period), 0);
            for (int t = 0; t < n; ++t) {
                sums[static_cast<size_t>(t % period)] += detrended(t);
                counts[static_cast<size_t>(t % period)] += 1;
            }
            auto& profile = model.season_profile[static_cast<size_t>(j)];
            profile.resize(static_cast<size_t>(period));
            double mean_of_means = 0.0;
            for (int ph = 0; ph < period; ++ph) {
                profile[static_cast<size_t>(ph)] =
                    sums[static_cast<size_t>(ph)] / counts[static_cast<size_t>(ph)];
                mean_of_means += profile[static_cast<size_t>(ph)];
            }
            mean_of_means /= period;
            for (auto& v : profile) v -= mean_of_means; // profile sums to zero
        }
    }
    return model;
}

namespace {

void check_channels(const TimeSeriesCollection& data, const DeterministicModel& model) {
    if (model.ny() != data.ny()) {
        throw SchemaError("deterministic model has " + std::to_string(model.ny()) +
                          " channels, data has " + std::to_string(data.ny()));
    }
}

} // namespace

TimeSeriesCollection remove_deterministic(const TimeSeriesCollection& data,
                                          const DeterministicModel& model) {
    check_channels(data, model);
    Eigen::MatrixXd out = data.values;
    for (int t = 0; t < data.n(); ++t) {
        for (int j = 0; j < data.ny(); ++j) {
            out(t, j) -= model.evaluate(j, t);
        }
    }
    return TimeSeriesCollection{std::move(out), data.channel_names};
}

TimeSeriesCollection add_deterministic(const TimeSeriesCollection& data,
                                       const DeterministicModel& model,
                                       int start_index) {
    check_channels(data, model);
    Eigen::MatrixXd out = data.values;
    for (int t = 0; t < data.n(); ++t) {
        for (int j = 0; j < data.ny(); ++j) {
            out(t, j) += model.evaluate(j, start_index + t);
        }
    }
    return TimeSeriesCollection{std::move(out), data.channel_names};
}

} // namespace karma
