#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "windvar/time.hpp"

namespace windvar {

/// Hourly, time-aligned wind speed measurements for N sites.
/// Missing entries are quiet NaN; present entries are >= 0.
struct PanelSeries {
    HourStamp start = 0;
    int step_hours = 1;
    std::vector<std::string> sites;
    Eigen::MatrixXd values;  // T x N, NaN = missing

    /// Validates invariants (unique sites, non-negative present values,
    /// T >= 1, N >= 1) and throws ValidationError on violation.
    static PanelSeries make(HourStamp start, int step_hours, std::vector<std::string> sites,
                            Eigen::MatrixXd values);

    Eigen::Index rows() const { return values.rows(); }
    Eigen::Index cols() const { return values.cols(); }
    HourStamp time_at(Eigen::Index i) const { return start + static_cast<HourStamp>(i) * step_hours; }
    HourStamp end() const { return time_at(rows() - 1); }

    /// Fraction of missing entries per site, in column order.
    std::vector<double> missing_fraction() const;
};

/// Per-timestamp mode label in {1..M}, aligned to a PanelSeries.
struct ModeSeries {
    HourStamp start = 0;
    int step_hours = 1;
    int mode_count = 1;
    std::vector<int> labels;  // length T, values 1..mode_count

    static ModeSeries make(HourStamp start, int step_hours, int mode_count, std::vector<int> labels);

    Eigen::Index rows() const { return static_cast<Eigen::Index>(labels.size()); }
    HourStamp time_at(Eigen::Index i) const { return start + static_cast<HourStamp>(i) * step_hours; }
    HourStamp end() const { return time_at(rows() - 1); }
    int label_at(Eigen::Index i) const { return labels[static_cast<std::size_t>(i)]; }
};

/// The measurement-hour set for diurnal dummies, default {0..23}.
std::vector<int> default_hours();

/// Unit indicator vector over `hours` for the hour-of-day of t.
/// Throws DomainError when Hour(t) is not a member of `hours`.
Eigen::VectorXd hour_dummies(HourStamp t, const std::vector<int>& hours);

/// Index of Hour(t) within `hours`; throws DomainError when absent.
Eigen::Index hour_slot(HourStamp t, const std::vector<int>& hours);

/// Restrict both series to their common time window.
/// Throws AlignmentError on mismatched step or empty overlap.
std::pair<PanelSeries, ModeSeries> align(const PanelSeries& panel, const ModeSeries& modes);

/// Load `timestamp,site_1,...,site_N` CSV. Gaps on the step grid become
/// rows of missing values; empty fields are missing. Throws ParseError on
/// non-monotone or off-grid timestamps and ValidationError on negative
/// wind speeds.
PanelSeries load_panel_csv(const std::filesystem::path& path, int step_hours = 1);

void write_panel_csv(const PanelSeries& panel, const std::filesystem::path& path);

/// Load `timestamp,mode` CSV. Labels must be complete (no gaps) and >= 1;
/// mode_count is the maximum label seen.
ModeSeries load_mode_csv(const std::filesystem::path& path, int step_hours = 1);

void write_mode_csv(const ModeSeries& modes, const std::filesystem::path& path);

/// Shortest round-trippable decimal formatting for doubles.
std::string format_double(double v);

}  // namespace windvar
