#include <cmath>

#include "windvar/errors.hpp"
#include "windvar/models.hpp"

namespace windvar {

namespace {

void check_modes_aligned(const PanelSeries& panel, const ModeSeries* modes) {
    if (modes == nullptr) throw DomainError("a mode series is required for this design");
    if (modes->start != panel.start || modes->step_hours != panel.step_hours ||
        modes->rows() != panel.rows())
        throw DomainError("mode series is not aligned with the panel; call align() first");
}

}  // namespace

DesignSet build_design(const PanelSeries& panel, const ModeSeries* modes, const DesignOptions& opts) {
    if (opts.p < 1) throw DomainError("lag order p must be >= 1");
    if (opts.tau < 1) throw DomainError("horizon tau must be >= 1");
    const Eigen::Index t_len = panel.rows();
    const Eigen::Index n = panel.cols();
    if (!opts.lags_all_sites && (opts.site < 0 || opts.site >= n))
        throw DomainError("univariate design needs a valid target site index");
    if (opts.hour_dummy && opts.hours.empty()) throw DomainError("hour dummies need an hour set");
    if (opts.condition_mode > 0 || opts.mode_dummy_count > 0) check_modes_aligned(panel, modes);
    if (opts.issue_allowed != nullptr &&
        static_cast<Eigen::Index>(opts.issue_allowed->size()) != t_len)
        throw DomainError("issue filter length does not match the panel");

    const Eigen::Index first = opts.p - 1;
    const Eigen::Index last = t_len - 1 - opts.tau;  // inclusive
    if (last < first)
        throw InsufficientDataError("panel too short for p=" + std::to_string(opts.p) +
                                    ", tau=" + std::to_string(opts.tau));

    const Eigen::Index lag_cols = opts.lags_all_sites ? n * opts.p : opts.p;
    const Eigen::Index hour_cols = opts.hour_dummy ? static_cast<Eigen::Index>(opts.hours.size()) : 0;
    const Eigen::Index mode_cols = opts.mode_dummy_count > 0 ? opts.mode_dummy_count - 1 : 0;
    const Eigen::Index f = lag_cols + hour_cols + mode_cols;
    const Eigen::Index y_cols = opts.lags_all_sites ? n : 1;

    const auto row_complete = [&](Eigen::Index j) {
        if (opts.lags_all_sites) {
            for (int d = 0; d < opts.p; ++d)
                for (Eigen::Index c = 0; c < n; ++c)
                    if (std::isnan(panel.values(j - d, c))) return false;
            for (Eigen::Index c = 0; c < n; ++c)
                if (std::isnan(panel.values(j + opts.tau, c))) return false;
        } else {
            for (int d = 0; d < opts.p; ++d)
                if (std::isnan(panel.values(j - d, opts.site))) return false;
            if (std::isnan(panel.values(j + opts.tau, opts.site))) return false;
        }
        return true;
    };

    DesignSet set;
    set.tau = opts.tau;
    set.mode = opts.condition_mode;

    // First pass: which issue times contribute a row.
    for (Eigen::Index j = first; j <= last; ++j) {
        if (opts.issue_allowed != nullptr && !(*opts.issue_allowed)[static_cast<std::size_t>(j)])
            continue;
        if (opts.condition_mode > 0 && modes->label_at(j) != opts.condition_mode) continue;
        if (!row_complete(j)) {
            ++set.dropped_missing;
            continue;
        }
        set.issue_index.push_back(j);
    }
    if (set.issue_index.empty())
        throw InsufficientDataError("no usable rows for tau=" + std::to_string(opts.tau) +
                                    (opts.condition_mode > 0
                                         ? ", mode=" + std::to_string(opts.condition_mode)
                                         : ""));

    const auto rows = static_cast<Eigen::Index>(set.issue_index.size());
    set.X = Eigen::MatrixXd::Zero(rows, f);
    set.Y.resize(rows, y_cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Eigen::Index j = set.issue_index[static_cast<std::size_t>(r)];
        Eigen::Index col = 0;
        if (opts.lags_all_sites) {
            for (int d = 0; d < opts.p; ++d)
                for (Eigen::Index c = 0; c < n; ++c) set.X(r, col++) = panel.values(j - d, c);
            set.Y.row(r) = panel.values.row(j + opts.tau);
        } else {
            for (int d = 0; d < opts.p; ++d) set.X(r, col++) = panel.values(j - d, opts.site);
            set.Y(r, 0) = panel.values(j + opts.tau, opts.site);
        }
        if (opts.hour_dummy) {
            set.X(r, col + hour_slot(panel.time_at(j + opts.tau), opts.hours)) = 1.0;
            col += hour_cols;
        }
        if (opts.mode_dummy_count > 0) {
            const int m = modes->label_at(j);
            if (m > opts.mode_dummy_count)
                throw DomainError("mode label " + std::to_string(m) + " exceeds configured M=" +
                                  std::to_string(opts.mode_dummy_count));
            if (m >= 2) set.X(r, col + (m - 2)) = 1.0;
            col += mode_cols;
        }
    }
    return set;
}

}  // namespace windvar
