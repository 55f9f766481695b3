#include <cmath>
#include <numeric>

#include "windvar/errors.hpp"
#include "windvar/regimes.hpp"
#include "windvar/rng.hpp"

namespace windvar {

namespace {

// Hexagonal layout: odd rows shift right half a cell, rows sqrt(3)/2 apart.
inline void node_pos(int node, int cols, double& x, double& y) {
    const int r = node / cols;
    const int c = node % cols;
    x = c + 0.5 * (r & 1);
    y = r * 0.8660254037844386;
}

int bmu_scan(const Eigen::MatrixXd& weights, const Eigen::Ref<const Eigen::RowVectorXd>& x) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (Eigen::Index n = 0; n < weights.rows(); ++n) {
        const double d = (weights.row(n) - x).squaredNorm();
        if (d < best_d) {
            best_d = d;
            best = static_cast<int>(n);
        }
    }
    return best;
}

double quantization_error(const Eigen::MatrixXd& weights, const Eigen::MatrixXd& scores) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < scores.rows(); ++i) {
        const int b = bmu_scan(weights, scores.row(i));
        sum += (weights.row(b) - scores.row(i)).norm();
    }
    return sum / static_cast<double>(scores.rows());
}

}  // namespace

double SomModel::lattice_dist2(int a, int b) const {
    double ax, ay, bx, by;
    node_pos(a, cols, ax, ay);
    node_pos(b, cols, bx, by);
    const double dx = ax - bx;
    const double dy = ay - by;
    return dx * dx + dy * dy;
}

int som_bmu(const SomModel& model, const Eigen::Ref<const Eigen::RowVectorXd>& x) {
    if (x.size() != model.weights.cols())
        throw DomainError("query dimension " + std::to_string(x.size()) + " does not match SOM (" +
                          std::to_string(model.weights.cols()) + ")");
    return bmu_scan(model.weights, x);
}

SomModel som_train(const Eigen::MatrixXd& scores, const SomConfig& config) {
    if (config.rows < 1 || config.cols < 1) throw DomainError("SOM lattice must have at least one node");
    if (config.epochs < 1) throw DomainError("SOM training needs epochs >= 1");
    const int nodes = config.rows * config.cols;
    const Eigen::Index t = scores.rows();
    if (t < nodes)
        throw DomainError("SOM training needs at least as many inputs as nodes (" +
                          std::to_string(t) + " < " + std::to_string(nodes) + ")");

    SomModel model;
    model.rows = config.rows;
    model.cols = config.cols;
    model.config = config;
    if (model.config.sigma_start < 0.0)
        model.config.sigma_start = std::max(config.rows, config.cols) / 2.0;

    Rng rng(config.seed);

    // Init from a random sample of the inputs.
    std::vector<std::size_t> order(static_cast<std::size_t>(t));
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    model.weights.resize(nodes, scores.cols());
    for (int n = 0; n < nodes; ++n) model.weights.row(n) = scores.row(static_cast<Eigen::Index>(order[n]));

    Eigen::MatrixXd dist2(nodes, nodes);
    for (int a = 0; a < nodes; ++a)
        for (int b = 0; b < nodes; ++b) dist2(a, b) = model.lattice_dist2(a, b);

    model.qe_history.push_back(quantization_error(model.weights, scores));

    const double s0 = model.config.sigma_start;
    const double s1 = model.config.sigma_end;
    const double l0 = model.config.lr_start;
    const double l1 = model.config.lr_end;
    const double total_steps = static_cast<double>(config.epochs) * static_cast<double>(t);
    double g = 0.0;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        rng.shuffle(order);
        for (std::size_t step = 0; step < order.size(); ++step, g += 1.0) {
            const double frac = total_steps > 1.0 ? g / (total_steps - 1.0) : 0.0;
            const double sigma = s0 + (s1 - s0) * frac;
            const double lr = l0 + (l1 - l0) * frac;
            const auto x = scores.row(static_cast<Eigen::Index>(order[step]));
            const int b = bmu_scan(model.weights, x);
            if (sigma > 0.0) {
                const double inv = 1.0 / (2.0 * sigma * sigma);
                for (int n = 0; n < nodes; ++n) {
                    const double h = std::exp(-dist2(n, b) * inv);
                    model.weights.row(n) += lr * h * (x - model.weights.row(n));
                }
            } else {
                model.weights.row(b) += lr * (x - model.weights.row(b));
            }
        }
        model.qe_history.push_back(quantization_error(model.weights, scores));
    }
    return model;
}

}  // namespace windvar
