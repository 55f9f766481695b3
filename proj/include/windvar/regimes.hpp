#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "windvar/data.hpp"
#include "windvar/fields.hpp"

namespace windvar {

/// Per-column standardization statistics. Columns with zero variance are
/// dropped from the standardized output; `kept` maps output columns back
/// to raw input columns.
struct ColumnStats {
    Eigen::Index input_cols = 0;
    Eigen::VectorXd mean;              // length input_cols
    Eigen::VectorXd sd;                // length input_cols, sample sd (T-1)
    std::vector<Eigen::Index> kept;    // raw indices of retained columns
    std::vector<Eigen::Index> dropped; // raw indices of zero-variance columns
};

/// Standardize each column to mean 0 and sample sd 1 (denominator T-1).
/// Constant columns are dropped and recorded in the returned stats.
std::pair<FieldStack, ColumnStats> standardize(const FieldStack& fields);

struct PcaModel {
    ColumnStats stats;                // raw-space standardization
    Eigen::MatrixXd loadings;         // kept_cols x K, orthonormal columns
    Eigen::VectorXd explained_ratio;  // length K, non-increasing
    double variance_threshold = 0.95;

    Eigen::Index components() const { return loadings.cols(); }
    Eigen::Index input_cols() const { return stats.input_cols; }
};

/// Fit PCA on an already-standardized stack; `stats` are the standardize()
/// output so the model can project raw-space data later. K is the smallest
/// component count whose cumulative explained variance reaches `threshold`.
PcaModel pca_fit(const FieldStack& standardized, const ColumnStats& stats, double variance_threshold);

/// standardize + pca_fit in one step on raw fields.
PcaModel pca_fit_raw(const FieldStack& raw, double variance_threshold);

/// Project raw-space field rows to PC scores: ((X - mean)/sd) * loadings.
/// Throws DomainError when the column count does not match the model.
Eigen::MatrixXd pca_project(const PcaModel& model, const FieldStack& raw);
Eigen::MatrixXd pca_project(const PcaModel& model, const Eigen::MatrixXd& raw_rows);

struct SomConfig {
    int rows = 3;
    int cols = 7;
    int epochs = 10;
    double sigma_start = -1.0;  // < 0 means max(rows, cols) / 2
    double sigma_end = 0.5;
    double lr_start = 0.5;
    double lr_end = 0.01;
    std::uint64_t seed = 1;
};

/// Self-organising map on a hexagonal lattice. Node index = row*cols + col;
/// odd rows are offset half a cell to the right, rows are sqrt(3)/2 apart.
struct SomModel {
    int rows = 0;
    int cols = 0;
    Eigen::MatrixXd weights;         // nodes x K
    SomConfig config;                // training metadata
    std::vector<double> qe_history;  // [0] = before training, then one per epoch

    int nodes() const { return rows * cols; }
    /// Squared lattice distance between two node indices.
    double lattice_dist2(int a, int b) const;
};

/// Index of the node with minimal Euclidean distance to x; ties break to
/// the lowest node index.
int som_bmu(const SomModel& model, const Eigen::Ref<const Eigen::RowVectorXd>& x);

/// Online SOM training: per step the winner and its lattice neighbourhood
/// (Gaussian in lattice distance) move toward the input. Presentation
/// order is reshuffled every epoch; sigma and the learning rate decay
/// linearly over all steps. Deterministic for a given config.
SomModel som_train(const Eigen::MatrixXd& scores, const SomConfig& config);

/// Node -> mode assignment from k-means on the node weight vectors.
struct ModeGrouping {
    int mode_count = 1;
    std::vector<int> assignment;  // per node, 1..mode_count
    std::string method = "kmeans";
    double wcss = 0.0;
    double db_index = 0.0;  // NaN when mode_count < 2
    int reseeds = 0;        // empty-cluster rescues during Lloyd iterations
};

/// Plain k-means used on SOM node weights (and reusable elsewhere).
struct KmeansResult {
    std::vector<int> labels;  // 0-based cluster per point
    Eigen::MatrixXd centroids;
    double wcss = 0.0;
    std::vector<double> wcss_history;  // per Lloyd iteration of the best run
    int reseeds = 0;
};

/// Lloyd's algorithm with greedy farthest-point seeding; the first seed of
/// each restart is drawn from `seed`. Best of `restarts` runs by final
/// within-cluster sum of squares. Empty clusters are re-seeded at the point
/// farthest from its assigned centroid.
KmeansResult kmeans(const Eigen::MatrixXd& points, int k, int restarts, std::uint64_t seed);

/// Group SOM nodes into k modes; labels are canonicalized so that mode
/// numbers follow first occurrence in node order.
ModeGrouping kmeans_nodes(const SomModel& model, int k, int restarts, std::uint64_t seed);

/// Davies-Bouldin index: mean over clusters of the worst (S_i + S_j) /
/// d(c_i, c_j) ratio, S = mean member distance to centroid. Labels are
/// 1-based. Throws DomainError on < 2 clusters, an empty cluster, or
/// coincident centroids.
double davies_bouldin(const Eigen::MatrixXd& points, const std::vector<int>& labels);

/// Classify every field row: project, find BMU, map through the grouping.
/// `jobs` <= 0 means use all available threads.
ModeSeries assign_modes(const SomModel& som, const ModeGrouping& grouping, const PcaModel& pca,
                        const FieldStack& raw, int jobs = 0);

/// BMU node index per field row (no grouping applied).
std::vector<int> assign_bmus(const SomModel& som, const PcaModel& pca, const FieldStack& raw,
                             int jobs = 0);

struct ModeEvent {
    int mode;
    Eigen::Index start_index;
    Eigen::Index length;  // steps
};

struct ModeStats {
    int mode_count = 0;
    Eigen::Index total_steps = 0;
    int step_hours = 1;
    std::vector<double> frequency;                  // per mode, sums to 1
    std::vector<std::vector<Eigen::Index>> month_count;  // [mode][12]
    std::vector<Eigen::Index> month_total;          // [12] steps per calendar month
    std::vector<std::vector<double>> durations_hours;    // per mode event durations
    std::vector<double> mean_duration_hours;
    std::vector<double> median_duration_hours;
    std::vector<ModeEvent> events;
};

ModeStats mode_stats(const ModeSeries& modes);

void write_modestats_csv(const ModeStats& stats, const std::filesystem::path& path);

/// PCA + SOM + candidate groupings persisted as one JSON document.
struct ClassifierBundle {
    PcaModel pca;
    SomModel som;
    std::vector<ModeGrouping> groupings;  // one per candidate mode count

    const ModeGrouping& grouping_for(int mode_count) const;
};

void save_classifier(const ClassifierBundle& bundle, const std::filesystem::path& path);
ClassifierBundle load_classifier(const std::filesystem::path& path);

}  // namespace windvar
