#pragma once

#include <optional>
#include <vector>

#include "karma/timeseries.hpp"

namespace karma {

/// Per-channel deterministic component: a polynomial trend in normalized
/// time t/N plus an optional seasonal profile (per-phase offsets summing to
/// zero). fit_length keeps the normalization so the trend extrapolates
/// consistently beyond the fitted record.
struct DeterministicModel {
    std::vector<std::vector<double>> trend_coeffs; // per channel, length p+1
    std::optional<int> season_period;
    std::vector<std::vector<double>> season_profile; // per channel, length period
    int fit_length = 0;

    int ny() const { return static_cast<int>(trend_coeffs.size()); }

    /// Deterministic value of channel j at absolute time t.
    double evaluate(int channel, int t) const;
};

/// Least-squares polynomial trend of degree p per channel, then (optionally)
/// the per-phase mean of the detrended residuals, re-centered to sum to zero.
DeterministicModel fit_deterministic(const TimeSeriesCollection& data, int p,
                                     std::optional<int> season_period = std::nullopt);

/// Subtract trend and seasonal profile; inverse of add_deterministic at start 0.
TimeSeriesCollection remove_deterministic(const TimeSeriesCollection& data,
                                          const DeterministicModel& model);

/// Restore the deterministic component on rows representing absolute times
/// start_index .. start_index + K - 1.
TimeSeriesCollection add_deterministic(const TimeSeriesCollection& data,
                                       const DeterministicModel& model,
                                       int start_index);

} // namespace karma
