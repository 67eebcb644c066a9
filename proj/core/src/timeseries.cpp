#include "karma/timeseries.hpp"

#include <cmath>
#include <string>
#include <unordered_set>

#include "karma/errors.hpp"

namespace karma {

std::vector<double> TimeSeriesCollection::channel(int j) const {
    if (j < 0 || j >= ny()) {
        throw RangeError("channel index " + std::to_string(j) + " out of range");
    }
    std::vector<double> out(static_cast<size_t>(n()));
    Eigen::VectorXd::Map(out.data(), n()) = values.col(j);
    return out;
}

TimeSeriesCollection TimeSeriesCollection::slice(int start, int count) const {
    if (start < 0 || count < 1 || start + count > n()) {
        throw RangeError("slice [" + std::to_string(start) + ", " +
                         std::to_string(start + count) + ") out of range for N=" +
                         std::to_string(n()));
    }
    return TimeSeriesCollection{values.middleRows(start, count), channel_names};
}

TimeSeriesCollection validate_collection(const Eigen::MatrixXd& raw,
                                         const std::vector<std::string>& names) {
    if (raw.rows() < 1 || raw.cols() < 1) {
        throw SchemaError("collection must have at least 1 sample and 1 channel");
    }
    if (static_cast<Eigen::Index>(names.size()) != raw.cols()) {
        throw SchemaError("channel name count " + std::to_string(names.size()) +
                          " does not match column count " + std::to_string(raw.cols()));
    }
    std::unordered_set<std::string> seen;
    for (const auto& name : names) {
        if (name.empty()) {
            throw SchemaError("channel names must be non-empty");
        }
        if (!seen.insert(name).second) {
            throw SchemaError("duplicate channel name '" + name + "'");
        }
    }
    for (Eigen::Index r = 0; r < raw.rows(); ++r) {
        for (Eigen::Index c = 0; c < raw.cols(); ++c) {
            if (!std::isfinite(raw(r, c))) {
                throw DataError("non-finite sample at row " + std::to_string(r) +
                                ", column " + std::to_string(c));
            }
        }
    }
    return TimeSeriesCollection{raw, names};
}

} // namespace karma
