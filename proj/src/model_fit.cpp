#include <algorithm>
#include <cmath>
#include <numeric>

#include "windvar/errors.hpp"
#include "windvar/models.hpp"
#include "windvar/parallel.hpp"

namespace windvar {

namespace {

// Canonical (name-sorted) view of a panel. Fitting in a fixed site order
// makes results independent of the input column order.
PanelSeries canonical_panel(const PanelSeries& panel) {
    std::vector<std::size_t> order(panel.sites.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return panel.sites[a] < panel.sites[b]; });
    PanelSeries out;
    out.start = panel.start;
    out.step_hours = panel.step_hours;
    out.sites.reserve(order.size());
    out.values.resize(panel.rows(), panel.cols());
    for (std::size_t c = 0; c < order.size(); ++c) {
        out.sites.push_back(panel.sites[order[c]]);
        out.values.col(static_cast<Eigen::Index>(c)) =
            panel.values.col(static_cast<Eigen::Index>(order[c]));
    }
    return out;
}

std::vector<std::string> feature_names(const ModelSpec& spec, const std::vector<std::string>& sites) {
    std::vector<std::string> names;
    if (spec.family == Family::Persistence) return names;
    if (family_is_univariate(spec.family)) {
        for (int d = 0; d < spec.p; ++d) names.push_back("y_lag" + std::to_string(d));
    } else {
        for (int d = 0; d < spec.p; ++d)
            for (const auto& s : sites) names.push_back("y[" + s + "]_lag" + std::to_string(d));
    }
    if (family_has_hour_dummies(spec.family)) {
        for (int h : spec.hours) {
            char buf[16];
            std::snprintf(buf, sizeof(buf), "hour_%02d", h);
            names.emplace_back(buf);
        }
    }
    if (family_has_mode_dummies(spec.family))
        for (int m = 2; m <= spec.mode_count; ++m) names.push_back("mode_" + std::to_string(m));
    return names;
}

DesignOptions design_options(const ModelSpec& spec, int tau, int partition, Eigen::Index site) {
    DesignOptions o;
    o.p = spec.p;
    o.tau = tau;
    o.lags_all_sites = !family_is_univariate(spec.family);
    o.site = site;
    o.hour_dummy = family_has_hour_dummies(spec.family);
    if (o.hour_dummy) o.hours = spec.hours;
    o.mode_dummy_count = family_has_mode_dummies(spec.family) ? spec.mode_count : 0;
    o.condition_mode = family_is_conditional(spec.family) ? partition : 0;
    return o;
}

}  // namespace

FittedModelSet fit(const PanelSeries& panel, const ModeSeries* modes, const ModelSpec& spec,
                   int jobs, const std::vector<char>* issue_allowed) {
    spec.validate();
    if (family_needs_modes(spec.family)) {
        if (modes == nullptr)
            throw DomainError(family_name(spec.family) + " requires a mode series");
        if (modes->start != panel.start || modes->step_hours != panel.step_hours ||
            modes->rows() != panel.rows())
            throw DomainError("mode series is not aligned with the panel; call align() first");
        if (modes->mode_count != spec.mode_count)
            throw DomainError("mode series has M=" + std::to_string(modes->mode_count) +
                              " but the spec declares M=" + std::to_string(spec.mode_count));
    }

    FittedModelSet set;
    set.spec = spec;
    const PanelSeries canon = canonical_panel(panel);
    set.sites = canon.sites;
    set.features = feature_names(spec, canon.sites);
    if (spec.family == Family::Persistence) return set;

    const int parts = spec.partitions();
    const auto n_tasks = static_cast<int>(spec.horizons.size()) * parts;
    set.models.resize(static_cast<std::size_t>(n_tasks));
    std::vector<std::string> failures(static_cast<std::size_t>(n_tasks));

    const int nj = resolve_jobs(jobs);
#pragma omp parallel for num_threads(nj) schedule(dynamic)
    for (int task = 0; task < n_tasks; ++task) {
        const int tau = spec.horizons[static_cast<std::size_t>(task / parts)];
        const int part = task % parts + 1;
        FittedModel fm;
        fm.tau = tau;
        fm.mode = part;
        try {
            if (family_is_univariate(spec.family)) {
                const Eigen::Index n = canon.cols();
                Eigen::Index min_rows = -1;
                Eigen::Index dropped = 0;
                double ss = 0.0;
                Eigen::Index cells = 0;
                for (Eigen::Index site = 0; site < n; ++site) {
                    DesignOptions o = design_options(spec, tau, part, site);
                    o.issue_allowed = issue_allowed;
                    const DesignSet d = build_design(canon, modes, o);
                    const OlsResult r = ols_fit(d.X, d.Y);
                    if (fm.coeff.size() == 0) fm.coeff.resize(n, d.X.cols());
                    fm.coeff.row(site) = r.coeff.row(0);
                    fm.ridge = fm.ridge || r.ridge;
                    if (min_rows < 0 || r.rows < min_rows) min_rows = r.rows;
                    dropped = std::max(dropped, d.dropped_missing);
                    ss += r.residual_rms * r.residual_rms * static_cast<double>(r.rows);
                    cells += r.rows;
                }
                fm.rows_used = min_rows;
                fm.rows_dropped = dropped;
                fm.residual_rms = std::sqrt(ss / static_cast<double>(cells));
            } else {
                DesignOptions o = design_options(spec, tau, part, -1);
                o.issue_allowed = issue_allowed;
                const DesignSet d = build_design(canon, modes, o);
                const OlsResult r = ols_fit(d.X, d.Y);
                fm.coeff = r.coeff;
                fm.ridge = r.ridge;
                fm.residual_rms = r.residual_rms;
                fm.rows_used = r.rows;
                fm.rows_dropped = d.dropped_missing;
            }
            set.models[static_cast<std::size_t>(task)] = std::move(fm);
        } catch (const std::exception& e) {
            failures[static_cast<std::size_t>(task)] =
                "tau=" + std::to_string(tau) + ", mode=" + std::to_string(part) + ": " + e.what();
        }
    }
    for (const auto& msg : failures)
        if (!msg.empty()) throw InsufficientDataError(family_name(spec.family) + " fit failed at " + msg);
    return set;
}

}  // namespace windvar
