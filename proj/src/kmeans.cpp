#include <cmath>
#include <limits>

#include "windvar/errors.hpp"
#include "windvar/regimes.hpp"
#include "windvar/rng.hpp"

namespace windvar {

namespace {

int nearest_centroid(const Eigen::MatrixXd& centroids, const Eigen::RowVectorXd& p) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
        const double d = (centroids.row(c) - p).squaredNorm();
        if (d < best_d) {
            best_d = d;
            best = static_cast<int>(c);
        }
    }
    return best;
}

struct LloydRun {
    std::vector<int> labels;
    Eigen::MatrixXd centroids;
    double wcss = std::numeric_limits<double>::infinity();
    std::vector<double> wcss_history;
    int reseeds = 0;
};

LloydRun lloyd(const Eigen::MatrixXd& points, Eigen::MatrixXd centroids, int max_iters) {
    const Eigen::Index n = points.rows();
    const auto k = static_cast<int>(centroids.rows());
    LloydRun run;
    run.labels.assign(static_cast<std::size_t>(n), -1);
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (int iter = 0; iter < max_iters; ++iter) {
        bool changed = false;
        std::fill(counts.begin(), counts.end(), 0);
        for (Eigen::Index i = 0; i < n; ++i) {
            const int c = nearest_centroid(centroids, points.row(i));
            if (c != run.labels[static_cast<std::size_t>(i)]) changed = true;
            run.labels[static_cast<std::size_t>(i)] = c;
            ++counts[static_cast<std::size_t>(c)];
        }
        // Rescue empty clusters: move the point that is farthest from its
        // current centroid into the empty slot.
        for (int c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) continue;
            Eigen::Index far = -1;
            double far_d = -1.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                const int li = run.labels[static_cast<std::size_t>(i)];
                if (counts[static_cast<std::size_t>(li)] <= 1) continue;  // keep donors non-empty
                const double d = (points.row(i) - centroids.row(li)).squaredNorm();
                if (d > far_d) {
                    far_d = d;
                    far = i;
                }
            }
            if (far < 0) continue;
            --counts[static_cast<std::size_t>(run.labels[static_cast<std::size_t>(far)])];
            run.labels[static_cast<std::size_t>(far)] = c;
            ++counts[static_cast<std::size_t>(c)];
            centroids.row(c) = points.row(far);
            ++run.reseeds;
            changed = true;
        }
        // Update step.
        Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, points.cols());
        for (Eigen::Index i = 0; i < n; ++i)
            sums.row(run.labels[static_cast<std::size_t>(i)]) += points.row(i);
        for (int c = 0; c < k; ++c)
            if (counts[static_cast<std::size_t>(c)] > 0)
                centroids.row(c) = sums.row(c) / counts[static_cast<std::size_t>(c)];
        double wcss = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            wcss += (points.row(i) - centroids.row(run.labels[static_cast<std::size_t>(i)])).squaredNorm();
        run.wcss_history.push_back(wcss);
        run.wcss = wcss;
        if (!changed) break;
    }
    run.centroids = std::move(centroids);
    return run;
}

}  // namespace

KmeansResult kmeans(const Eigen::MatrixXd& points, int k, int restarts, std::uint64_t seed) {
    const Eigen::Index n = points.rows();
    if (k < 1 || k > n)
        throw DomainError("k must be in [1, " + std::to_string(n) + "], got " + std::to_string(k));
    if (restarts < 1) throw DomainError("restarts must be >= 1");

    Rng rng(seed);
    LloydRun best;
    for (int r = 0; r < restarts; ++r) {
        // Greedy farthest-point seeding; only the first pick is random, so
        // restarts explore different seeds deterministically.
        Eigen::MatrixXd centroids(k, points.cols());
        centroids.row(0) = points.row(static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n))));
        Eigen::VectorXd min_d = (points.rowwise() - centroids.row(0)).rowwise().squaredNorm();
        for (int c = 1; c < k; ++c) {
            Eigen::Index far = 0;
            double far_d = -1.0;
            for (Eigen::Index i = 0; i < n; ++i)
                if (min_d(i) > far_d) {
                    far_d = min_d(i);
                    far = i;
                }
            centroids.row(c) = points.row(far);
            for (Eigen::Index i = 0; i < n; ++i)
                min_d(i) = std::min(min_d(i), (points.row(i) - centroids.row(c)).squaredNorm());
        }
        LloydRun run = lloyd(points, std::move(centroids), 100);
        if (run.wcss < best.wcss) best = std::move(run);
    }

    KmeansResult res;
    res.labels = std::move(best.labels);
    res.centroids = std::move(best.centroids);
    res.wcss = best.wcss;
    res.wcss_history = std::move(best.wcss_history);
    res.reseeds = best.reseeds;
    return res;
}

ModeGrouping kmeans_nodes(const SomModel& model, int k, int restarts, std::uint64_t seed) {
    const KmeansResult res = kmeans(model.weights, k, restarts, seed);

    // Canonicalize: number modes by first occurrence in node order.
    std::vector<int> remap(static_cast<std::size_t>(k), 0);
    int next = 0;
    ModeGrouping g;
    g.mode_count = k;
    g.assignment.resize(res.labels.size());
    for (std::size_t i = 0; i < res.labels.size(); ++i) {
        const int c = res.labels[i];
        if (remap[static_cast<std::size_t>(c)] == 0) remap[static_cast<std::size_t>(c)] = ++next;
        g.assignment[i] = remap[static_cast<std::size_t>(c)];
    }
    g.wcss = res.wcss;
    g.reseeds = res.reseeds;
    g.db_index = k >= 2 ? davies_bouldin(model.weights, g.assignment)
                        : std::numeric_limits<double>::quiet_NaN();
    return g;
}

double davies_bouldin(const Eigen::MatrixXd& points, const std::vector<int>& labels) {
    if (static_cast<Eigen::Index>(labels.size()) != points.rows())
        throw DomainError("label count does not match point count");
    int k = 0;
    for (int l : labels) {
        if (l < 1) throw DomainError("labels must be 1-based");
        k = std::max(k, l);
    }
    if (k < 2) throw DomainError("Davies-Bouldin needs at least two clusters");

    Eigen::MatrixXd centroids = Eigen::MatrixXd::Zero(k, points.cols());
    std::vector<Eigen::Index> counts(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        const int c = labels[static_cast<std::size_t>(i)] - 1;
        centroids.row(c) += points.row(i);
        ++counts[static_cast<std::size_t>(c)];
    }
    for (int c = 0; c < k; ++c) {
        if (counts[static_cast<std::size_t>(c)] == 0)
            throw DomainError("cluster " + std::to_string(c + 1) + " is empty");
        centroids.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
    }

    Eigen::VectorXd scatter = Eigen::VectorXd::Zero(k);
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        const int c = labels[static_cast<std::size_t>(i)] - 1;
        scatter(c) += (points.row(i) - centroids.row(c)).norm();
    }
    for (int c = 0; c < k; ++c) scatter(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);

    double total = 0.0;
    for (int i = 0; i < k; ++i) {
        double worst = 0.0;
        for (int j = 0; j < k; ++j) {
            if (i == j) continue;
            const double gap = (centroids.row(i) - centroids.row(j)).norm();
            if (gap == 0.0) throw DomainError("coincident centroids in Davies-Bouldin");
            worst = std::max(worst, (scatter(i) + scatter(j)) / gap);
        }
        total += worst;
    }
    return total / static_cast<double>(k);
}

}  // namespace windvar
