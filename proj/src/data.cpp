#include "windvar/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include "windvar/csv.hpp"
#include "windvar/errors.hpp"

namespace windvar {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

PanelSeries PanelSeries::make(HourStamp start, int step_hours, std::vector<std::string> sites,
                              Eigen::MatrixXd values) {
    if (step_hours < 1) throw ValidationError("panel step must be >= 1 hour");
    if (values.rows() < 1 || values.cols() < 1) throw ValidationError("panel must have T >= 1 and N >= 1");
    if (static_cast<Eigen::Index>(sites.size()) != values.cols())
        throw ValidationError("site count does not match value columns");
    std::set<std::string> uniq(sites.begin(), sites.end());
    if (uniq.size() != sites.size()) throw ValidationError("site identifiers must be unique");
    for (Eigen::Index i = 0; i < values.rows(); ++i)
        for (Eigen::Index j = 0; j < values.cols(); ++j) {
            const double v = values(i, j);
            if (!std::isnan(v) && v < 0.0)
                throw ValidationError("negative wind speed at row " + std::to_string(i) + ", site " +
                                      sites[static_cast<std::size_t>(j)]);
        }
    PanelSeries p;
    p.start = start;
    p.step_hours = step_hours;
    p.sites = std::move(sites);
    p.values = std::move(values);
    return p;
}

std::vector<double> PanelSeries::missing_fraction() const {
    std::vector<double> out(static_cast<std::size_t>(cols()), 0.0);
    for (Eigen::Index j = 0; j < cols(); ++j) {
        Eigen::Index miss = 0;
        for (Eigen::Index i = 0; i < rows(); ++i)
            if (std::isnan(values(i, j))) ++miss;
        out[static_cast<std::size_t>(j)] = static_cast<double>(miss) / static_cast<double>(rows());
    }
    return out;
}

ModeSeries ModeSeries::make(HourStamp start, int step_hours, int mode_count, std::vector<int> labels) {
    if (step_hours < 1) throw ValidationError("mode series step must be >= 1 hour");
    if (labels.empty()) throw ValidationError("mode series must be non-empty");
    if (mode_count < 1) throw ValidationError("mode count must be >= 1");
    for (int m : labels)
        if (m < 1 || m > mode_count)
            throw ValidationError("mode label " + std::to_string(m) + " outside {1.." +
                                  std::to_string(mode_count) + "}");
    ModeSeries s;
    s.start = start;
    s.step_hours = step_hours;
    s.mode_count = mode_count;
    s.labels = std::move(labels);
    return s;
}

std::vector<int> default_hours() {
    std::vector<int> h(24);
    for (int i = 0; i < 24; ++i) h[i] = i;
    return h;
}

Eigen::Index hour_slot(HourStamp t, const std::vector<int>& hours) {
    const int h = hour_of_day(t);
    const auto it = std::find(hours.begin(), hours.end(), h);
    if (it == hours.end())
        throw DomainError("hour " + std::to_string(h) + " not in the configured hour set");
    return static_cast<Eigen::Index>(it - hours.begin());
}

Eigen::VectorXd hour_dummies(HourStamp t, const std::vector<int>& hours) {
    Eigen::VectorXd d = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(hours.size()));
    d(hour_slot(t, hours)) = 1.0;
    return d;
}

std::pair<PanelSeries, ModeSeries> align(const PanelSeries& panel, const ModeSeries& modes) {
    if (panel.step_hours != modes.step_hours)
        throw AlignmentError("panel step " + std::to_string(panel.step_hours) + "h != mode step " +
                             std::to_string(modes.step_hours) + "h");
    const int step = panel.step_hours;
    if ((panel.start - modes.start) % step != 0)
        throw AlignmentError("panel and mode series are on offset grids");
    const HourStamp lo = std::max(panel.start, modes.start);
    const HourStamp hi = std::min(panel.end(), modes.end());
    if (lo > hi) throw AlignmentError("panel and mode series do not overlap in time");
    const Eigen::Index t = (hi - lo) / step + 1;

    const Eigen::Index p0 = (lo - panel.start) / step;
    PanelSeries p;
    p.start = lo;
    p.step_hours = step;
    p.sites = panel.sites;
    p.values = panel.values.middleRows(p0, t);

    const Eigen::Index m0 = (lo - modes.start) / step;
    ModeSeries m;
    m.start = lo;
    m.step_hours = step;
    m.mode_count = modes.mode_count;
    m.labels.assign(modes.labels.begin() + m0, modes.labels.begin() + m0 + t);
    return {std::move(p), std::move(m)};
}

PanelSeries load_panel_csv(const std::filesystem::path& path, int step_hours) {
    TimedMatrix m = load_timed_csv(path, step_hours);
    try {
        return PanelSeries::make(m.start, m.step_hours, std::move(m.columns), std::move(m.values));
    } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

void write_panel_csv(const PanelSeries& panel, const std::filesystem::path& path) {
    TimedMatrix m;
    m.start = panel.start;
    m.step_hours = panel.step_hours;
    m.columns = panel.sites;
    m.values = panel.values;
    write_timed_csv(m, path);
}

ModeSeries load_mode_csv(const std::filesystem::path& path, int step_hours) {
    const TimedMatrix m = load_timed_csv(path, step_hours);
    if (m.columns.size() != 1 || m.columns[0] != "mode")
        throw ParseError(path.string() + ": header must be 'timestamp,mode'");
    std::vector<int> labels;
    labels.reserve(static_cast<std::size_t>(m.values.rows()));
    int max_label = 0;
    for (Eigen::Index i = 0; i < m.values.rows(); ++i) {
        const double v = m.values(i, 0);
        if (std::isnan(v))
            throw ParseError(path.string() + ": mode series has gaps; labels must be complete");
        if (v != std::floor(v) || v < 1.0)
            throw ParseError(path.string() + ": bad mode label " + format_double(v) + " at row " +
                             std::to_string(i));
        const int lbl = static_cast<int>(v);
        max_label = std::max(max_label, lbl);
        labels.push_back(lbl);
    }
    return ModeSeries::make(m.start, step_hours, max_label, std::move(labels));
}

void write_mode_csv(const ModeSeries& modes, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path.string());
    out << "timestamp,mode\n";
    for (Eigen::Index i = 0; i < modes.rows(); ++i)
        out << format_hour_utc(modes.time_at(i)) << ',' << modes.label_at(i) << '\n';
}

}  // namespace windvar
