#include <cmath>
#include <limits>

#include "windvar/errors.hpp"
#include "windvar/models.hpp"
#include "windvar/parallel.hpp"

namespace windvar {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<Eigen::Index> site_columns(const FittedModelSet& model, const PanelSeries& panel) {
    std::vector<Eigen::Index> cols;
    cols.reserve(model.sites.size());
    for (const auto& name : model.sites) {
        Eigen::Index found = -1;
        for (std::size_t c = 0; c < panel.sites.size(); ++c)
            if (panel.sites[c] == name) {
                found = static_cast<Eigen::Index>(c);
                break;
            }
        if (found < 0) throw DomainError("panel has no site '" + name + "' required by the model");
        cols.push_back(found);
    }
    return cols;
}

// Latest non-missing value at or before t, NaN when none exists.
double last_observed(const PanelSeries& panel, Eigen::Index col, Eigen::Index t) {
    for (Eigen::Index i = t; i >= 0; --i) {
        const double v = panel.values(i, col);
        if (!std::isnan(v)) return v;
    }
    return kNaN;
}

}  // namespace

ForecastVec forecast(const FittedModelSet& model, const PanelSeries& panel, const ModeSeries* modes,
                     Eigen::Index t, int tau) {
    const ModelSpec& spec = model.spec;
    if (t < 0 || t >= panel.rows()) throw DomainError("issue time index out of range");
    if (tau < 1) throw DomainError("horizon must be >= 1");
    const auto cols = site_columns(model, panel);
    const auto n = static_cast<Eigen::Index>(cols.size());

    ForecastVec out;
    out.value.resize(n);
    out.raw.resize(n);
    out.fallback.assign(static_cast<std::size_t>(n), 0);

    int issue_mode = 0;
    if (family_needs_modes(spec.family)) {
        if (modes == nullptr) throw DomainError(family_name(spec.family) + " requires a mode series");
        if (modes->start != panel.start || modes->step_hours != panel.step_hours ||
            modes->rows() != panel.rows())
            throw DomainError("mode series is not aligned with the panel");
        issue_mode = modes->label_at(t);
        if (issue_mode > spec.mode_count)
            throw DomainError("unknown mode label " + std::to_string(issue_mode) + " (spec has M=" +
                              std::to_string(spec.mode_count) + ")");
    }

    if (spec.family == Family::Persistence) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double now = panel.values(t, cols[static_cast<std::size_t>(i)]);
            const double v = std::isnan(now) ? last_observed(panel, cols[static_cast<std::size_t>(i)], t) : now;
            out.value(i) = v;
            out.raw(i) = v;
            out.fallback[static_cast<std::size_t>(i)] = std::isnan(now) ? 1 : 0;
        }
        return out;
    }

    const FittedModel& fm = model.at(tau, family_is_conditional(spec.family) ? issue_mode : 1);
    const HourStamp target_time = panel.start + (t + tau) * static_cast<HourStamp>(panel.step_hours);
    const bool hour_dummy = family_has_hour_dummies(spec.family);
    const Eigen::Index hour_cols = hour_dummy ? static_cast<Eigen::Index>(spec.hours.size()) : 0;
    const Eigen::Index mode_cols = family_has_mode_dummies(spec.family) ? spec.mode_count - 1 : 0;
    const Eigen::Index hour_pos = hour_dummy ? hour_slot(target_time, spec.hours) : -1;

    const auto fill_dummies = [&](Eigen::VectorXd& x, Eigen::Index lag_cols) {
        if (hour_dummy) x(lag_cols + hour_pos) = 1.0;
        if (mode_cols > 0 && issue_mode >= 2) x(lag_cols + hour_cols + (issue_mode - 2)) = 1.0;
    };

    if (family_is_univariate(spec.family)) {
        const Eigen::Index lag_cols = spec.p;
        Eigen::VectorXd x(lag_cols + hour_cols + mode_cols);
        for (Eigen::Index i = 0; i < n; ++i) {
            const Eigen::Index col = cols[static_cast<std::size_t>(i)];
            bool complete = t - spec.p + 1 >= 0;
            for (int d = 0; complete && d < spec.p; ++d)
                if (std::isnan(panel.values(t - d, col))) complete = false;
            if (!complete) {
                const double v = last_observed(panel, col, t);
                out.raw(i) = v;
                out.value(i) = v;
                out.fallback[static_cast<std::size_t>(i)] = 1;
                continue;
            }
            x.setZero();
            for (int d = 0; d < spec.p; ++d) x(d) = panel.values(t - d, col);
            fill_dummies(x, lag_cols);
            const double raw = fm.coeff.row(i).dot(x);
            out.raw(i) = raw;
            out.value(i) = spec.clamp_negative && raw < 0.0 ? 0.0 : raw;
        }
        return out;
    }

    // Vector families: the regressor needs every site's lags.
    const Eigen::Index lag_cols = n * spec.p;
    bool complete = t - spec.p + 1 >= 0;
    for (int d = 0; complete && d < spec.p; ++d)
        for (Eigen::Index i = 0; complete && i < n; ++i)
            if (std::isnan(panel.values(t - d, cols[static_cast<std::size_t>(i)]))) complete = false;
    if (!complete) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double v = last_observed(panel, cols[static_cast<std::size_t>(i)], t);
            out.raw(i) = v;
            out.value(i) = v;
            out.fallback[static_cast<std::size_t>(i)] = 1;
        }
        return out;
    }
    Eigen::VectorXd x = Eigen::VectorXd::Zero(lag_cols + hour_cols + mode_cols);
    Eigen::Index c = 0;
    for (int d = 0; d < spec.p; ++d)
        for (Eigen::Index i = 0; i < n; ++i) x(c++) = panel.values(t - d, cols[static_cast<std::size_t>(i)]);
    fill_dummies(x, lag_cols);
    out.raw = fm.coeff * x;
    for (Eigen::Index i = 0; i < n; ++i)
        out.value(i) = spec.clamp_negative && out.raw(i) < 0.0 ? 0.0 : out.raw(i);
    return out;
}

ForecastSet rolling_forecast(const FittedModelSet& model, const PanelSeries& panel,
                             const ModeSeries* modes, Eigen::Index t0, Eigen::Index t1,
                             const std::vector<int>& horizons, int jobs) {
    if (t0 < 0 || t1 >= panel.rows() || t0 > t1)
        throw DomainError("forecast window outside the panel range");
    if (horizons.empty()) throw DomainError("at least one horizon is required");

    ForecastSet set;
    set.family = family_name(model.spec.family);
    set.sites = model.sites;
    set.start = panel.start;
    set.step_hours = panel.step_hours;

    const auto n_sites = static_cast<Eigen::Index>(model.sites.size());
    const auto n_h = static_cast<Eigen::Index>(horizons.size());
    const Eigen::Index n_issues = t1 - t0 + 1;
    set.records.resize(static_cast<std::size_t>(n_issues * n_h * n_sites));
    std::vector<std::string> failures(static_cast<std::size_t>(n_issues));

    const int nj = resolve_jobs(jobs);
#pragma omp parallel for num_threads(nj) schedule(static)
    for (Eigen::Index it = 0; it < n_issues; ++it) {
        const Eigen::Index t = t0 + it;
        try {
            for (Eigen::Index hi = 0; hi < n_h; ++hi) {
                const int tau = horizons[static_cast<std::size_t>(hi)];
                const ForecastVec f = forecast(model, panel, modes, t, tau);
                for (Eigen::Index s = 0; s < n_sites; ++s) {
                    ForecastRecord& r =
                        set.records[static_cast<std::size_t>((it * n_h + hi) * n_sites + s)];
                    r.issue_index = t;
                    r.horizon = tau;
                    r.site = static_cast<int>(s);
                    r.value = f.value(s);
                    r.raw = f.raw(s);
                    r.fallback = f.fallback[static_cast<std::size_t>(s)] != 0;
                }
            }
        } catch (const std::exception& e) {
            failures[static_cast<std::size_t>(it)] = e.what();
        }
    }
    for (const auto& msg : failures)
        if (!msg.empty()) throw DomainError("rolling forecast failed: " + msg);
    return set;
}

}  // namespace windvar
