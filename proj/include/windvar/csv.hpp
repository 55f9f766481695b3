#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <vector>

#include "windvar/time.hpp"

namespace windvar {

/// A timestamped numeric table on a fixed hour grid. Shared parsing layer
/// for panel and field CSVs; rows missing from the file are materialized
/// as NaN, empty fields are NaN.
struct TimedMatrix {
    HourStamp start = 0;
    int step_hours = 1;
    std::vector<std::string> columns;
    Eigen::MatrixXd values;  // T x C
};

/// Throws ParseError on bad header, non-monotone or off-grid timestamps,
/// or unparseable numeric fields.
TimedMatrix load_timed_csv(const std::filesystem::path& path, int step_hours);

void write_timed_csv(const TimedMatrix& m, const std::filesystem::path& path);

}  // namespace windvar
