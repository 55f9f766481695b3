#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <vector>

#include "windvar/time.hpp"

namespace windvar {

/// Gridded atmospheric variables per timestamp. The data matrix flattens
/// V variables over G = n_lat * n_lon cells, variable-major then row-major
/// over (lat, lon); this flattening order is part of the file contract.
struct FieldStack {
    HourStamp start = 0;
    int step_hours = 1;
    std::vector<std::string> variables;
    std::vector<double> lat;  // n_lat
    std::vector<double> lon;  // n_lon
    Eigen::MatrixXd data;     // T x (V*G), no missing entries

    /// Validates completeness (no NaN) and column count V*G.
    static FieldStack make(HourStamp start, int step_hours, std::vector<std::string> variables,
                           std::vector<double> lat, std::vector<double> lon, Eigen::MatrixXd data);

    Eigen::Index rows() const { return data.rows(); }
    Eigen::Index cols() const { return data.cols(); }
    Eigen::Index cells() const { return static_cast<Eigen::Index>(lat.size() * lon.size()); }
    HourStamp time_at(Eigen::Index i) const { return start + static_cast<HourStamp>(i) * step_hours; }
};

/// Load a field stack from its grid metadata JSON, which names one CSV per
/// variable (header `timestamp,cell_0,...,cell_{G-1}`). All variable files
/// must share the same complete time grid; missing entries are rejected.
FieldStack load_fields(const std::filesystem::path& grid_json);

/// Write grid metadata JSON plus one CSV per variable next to it.
/// `base` prefixes the CSV file names.
void write_fields(const FieldStack& fields, const std::filesystem::path& grid_json,
                  const std::string& base);

}  // namespace windvar
