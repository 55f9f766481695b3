#include <algorithm>
#include <cmath>
#include <fstream>

#include "windvar/data.hpp"
#include "windvar/errors.hpp"
#include "windvar/parallel.hpp"
#include "windvar/regimes.hpp"

namespace windvar {

std::vector<int> assign_bmus(const SomModel& som, const PcaModel& pca, const FieldStack& raw,
                             int jobs) {
    const Eigen::MatrixXd scores = pca_project(pca, raw);
    const auto t = scores.rows();
    std::vector<int> bmus(static_cast<std::size_t>(t), 0);
    const int nj = resolve_jobs(jobs);
#pragma omp parallel for num_threads(nj) schedule(static)
    for (Eigen::Index i = 0; i < t; ++i)
        bmus[static_cast<std::size_t>(i)] = som_bmu(som, scores.row(i));
    return bmus;
}

ModeSeries assign_modes(const SomModel& som, const ModeGrouping& grouping, const PcaModel& pca,
                        const FieldStack& raw, int jobs) {
    if (static_cast<int>(grouping.assignment.size()) != som.nodes())
        throw DomainError("grouping does not cover the SOM lattice");
    const std::vector<int> bmus = assign_bmus(som, pca, raw, jobs);
    std::vector<int> labels(bmus.size());
    for (std::size_t i = 0; i < bmus.size(); ++i)
        labels[i] = grouping.assignment[static_cast<std::size_t>(bmus[i])];
    return ModeSeries::make(raw.start, raw.step_hours, grouping.mode_count, std::move(labels));
}

ModeStats mode_stats(const ModeSeries& modes) {
    const Eigen::Index t = modes.rows();
    const int m = modes.mode_count;
    ModeStats s;
    s.mode_count = m;
    s.total_steps = t;
    s.step_hours = modes.step_hours;
    s.frequency.assign(static_cast<std::size_t>(m), 0.0);
    s.month_count.assign(static_cast<std::size_t>(m), std::vector<Eigen::Index>(12, 0));
    s.month_total.assign(12, 0);
    s.durations_hours.assign(static_cast<std::size_t>(m), {});

    std::vector<Eigen::Index> counts(static_cast<std::size_t>(m), 0);
    for (Eigen::Index i = 0; i < t; ++i) {
        const int lbl = modes.label_at(i);
        ++counts[static_cast<std::size_t>(lbl - 1)];
        const int month = month_of(modes.time_at(i));
        ++s.month_count[static_cast<std::size_t>(lbl - 1)][static_cast<std::size_t>(month - 1)];
        ++s.month_total[static_cast<std::size_t>(month - 1)];
    }
    for (int k = 0; k < m; ++k)
        s.frequency[static_cast<std::size_t>(k)] =
            static_cast<double>(counts[static_cast<std::size_t>(k)]) / static_cast<double>(t);

    // Run-length encoding into mode events.
    Eigen::Index run_start = 0;
    for (Eigen::Index i = 1; i <= t; ++i) {
        if (i == t || modes.label_at(i) != modes.label_at(run_start)) {
            const int lbl = modes.label_at(run_start);
            const Eigen::Index len = i - run_start;
            s.events.push_back(ModeEvent{lbl, run_start, len});
            s.durations_hours[static_cast<std::size_t>(lbl - 1)].push_back(
                static_cast<double>(len) * modes.step_hours);
            run_start = i;
        }
    }

    s.mean_duration_hours.assign(static_cast<std::size_t>(m), 0.0);
    s.median_duration_hours.assign(static_cast<std::size_t>(m), 0.0);
    for (int k = 0; k < m; ++k) {
        auto& d = s.durations_hours[static_cast<std::size_t>(k)];
        if (d.empty()) continue;
        double sum = 0.0;
        for (double v : d) sum += v;
        s.mean_duration_hours[static_cast<std::size_t>(k)] = sum / static_cast<double>(d.size());
        std::vector<double> sorted = d;
        std::sort(sorted.begin(), sorted.end());
        const std::size_t h = sorted.size() / 2;
        s.median_duration_hours[static_cast<std::size_t>(k)] =
            sorted.size() % 2 == 1 ? sorted[h] : 0.5 * (sorted[h - 1] + sorted[h]);
    }
    return s;
}

void write_modestats_csv(const ModeStats& stats, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path.string());
    out << "mode,frequency,events,mean_duration_hours,median_duration_hours";
    for (int mo = 1; mo <= 12; ++mo) {
        char buf[12];
        std::snprintf(buf, sizeof(buf), ",month_%02d", mo);
        out << buf;
    }
    out << '\n';
    for (int k = 0; k < stats.mode_count; ++k) {
        const auto ik = static_cast<std::size_t>(k);
        out << (k + 1) << ',' << format_double(stats.frequency[ik]) << ','
            << stats.durations_hours[ik].size() << ',' << format_double(stats.mean_duration_hours[ik])
            << ',' << format_double(stats.median_duration_hours[ik]);
        for (int mo = 0; mo < 12; ++mo) {
            const auto imo = static_cast<std::size_t>(mo);
            const double denom = static_cast<double>(stats.month_total[imo]);
            const double f =
                denom > 0 ? static_cast<double>(stats.month_count[ik][imo]) / denom : 0.0;
            out << ',' << format_double(f);
        }
        out << '\n';
    }
}

const ModeGrouping& ClassifierBundle::grouping_for(int mode_count) const {
    for (const auto& g : groupings)
        if (g.mode_count == mode_count) return g;
    throw KeyError("no grouping with " + std::to_string(mode_count) + " modes in classifier bundle");
}

}  // namespace windvar
