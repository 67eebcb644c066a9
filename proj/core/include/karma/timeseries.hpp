#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace karma {

/// A collection of synchronized time series: N samples x ny named channels.
/// Immutable value object once validated; every entry is finite.
struct TimeSeriesCollection {
    Eigen::MatrixXd values;                 // N x ny
    std::vector<std::string> channel_names; // exactly ny, distinct, non-empty

    int n() const { return static_cast<int>(values.rows()); }
    int ny() const { return static_cast<int>(values.cols()); }

    /// Copy of one channel as a contiguous series.
    std::vector<double> channel(int j) const;

    /// Rows [start, start+count) as a new collection with the same names.
    TimeSeriesCollection slice(int start, int count) const;
};

/// Validate a raw matrix + names into a collection. Never repairs data:
/// non-finite entries, name-count mismatches and duplicate names are errors.
TimeSeriesCollection validate_collection(const Eigen::MatrixXd& raw,
                                         const std::vector<std::string>& names);

/// Structural indices searched/reported by the toolkit: trend degree p,
/// AR order na, input-polynomial order nb, MA order nc, and the resulting
/// state dimension nx (derived by the realization, not a free input).
struct StructuralIndices {
    int p = 0;
    int na = 0;
    int nb = 0;
    int nc = 0;
    int nx = 0;
};

} // namespace karma
