#include <Eigen/SVD>
#include <cmath>

#include "windvar/errors.hpp"
#include "windvar/regimes.hpp"

namespace windvar {

std::pair<FieldStack, ColumnStats> standardize(const FieldStack& fields) {
    const Eigen::Index t = fields.rows();
    const Eigen::Index d = fields.cols();
    ColumnStats stats;
    stats.input_cols = d;
    stats.mean.resize(d);
    stats.sd.resize(d);
    for (Eigen::Index j = 0; j < d; ++j) {
        const double mu = fields.data.col(j).mean();
        stats.mean(j) = mu;
        double ss = 0.0;
        for (Eigen::Index i = 0; i < t; ++i) {
            const double dev = fields.data(i, j) - mu;
            ss += dev * dev;
        }
        const double sd = t > 1 ? std::sqrt(ss / static_cast<double>(t - 1)) : 0.0;
        stats.sd(j) = sd;
        if (sd > 1e-12 * std::max(1.0, std::abs(mu)))
            stats.kept.push_back(j);
        else
            stats.dropped.push_back(j);
    }
    if (stats.kept.empty()) throw ValidationError("all field columns are constant");

    Eigen::MatrixXd out(t, static_cast<Eigen::Index>(stats.kept.size()));
    for (std::size_t c = 0; c < stats.kept.size(); ++c) {
        const Eigen::Index j = stats.kept[c];
        out.col(static_cast<Eigen::Index>(c)) =
            (fields.data.col(j).array() - stats.mean(j)) / stats.sd(j);
    }
    FieldStack std_fields = fields;
    std_fields.data = std::move(out);
    // variables/grid metadata keep describing the raw layout; the kept
    // indices in stats define the column mapping.
    if (!stats.dropped.empty()) std_fields.variables = fields.variables;
    return {std::move(std_fields), std::move(stats)};
}

PcaModel pca_fit(const FieldStack& standardized, const ColumnStats& stats, double variance_threshold) {
    if (!(variance_threshold > 0.0 && variance_threshold <= 1.0))
        throw DomainError("variance threshold must be in (0, 1]");
    const Eigen::Index t = standardized.rows();
    if (t < 2) throw DomainError("PCA needs at least two rows");
    if (standardized.cols() != static_cast<Eigen::Index>(stats.kept.size()))
        throw DomainError("standardized stack does not match the column stats");

    Eigen::BDCSVD<Eigen::MatrixXd> svd(standardized.data, Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    Eigen::VectorXd lambda = sv.array().square() / static_cast<double>(t - 1);
    const double total = lambda.sum();
    if (total <= 0.0) throw DomainError("standardized data has zero total variance");
    Eigen::VectorXd ratio = lambda / total;

    Eigen::Index k = 0;
    double cum = 0.0;
    for (Eigen::Index i = 0; i < ratio.size(); ++i) {
        cum += ratio(i);
        k = i + 1;
        if (cum >= variance_threshold - 1e-12) break;
    }
    PcaModel model;
    model.stats = stats;
    model.loadings = svd.matrixV().leftCols(k);
    model.explained_ratio = ratio.head(k);
    model.variance_threshold = variance_threshold;
    return model;
}

PcaModel pca_fit_raw(const FieldStack& raw, double variance_threshold) {
    auto [std_fields, stats] = standardize(raw);
    return pca_fit(std_fields, stats, variance_threshold);
}

Eigen::MatrixXd pca_project(const PcaModel& model, const Eigen::MatrixXd& raw_rows) {
    if (raw_rows.cols() != model.input_cols())
        throw DomainError("field column count " + std::to_string(raw_rows.cols()) +
                          " does not match PCA model (" + std::to_string(model.input_cols()) + ")");
    const auto kept = static_cast<Eigen::Index>(model.stats.kept.size());
    Eigen::MatrixXd std_rows(raw_rows.rows(), kept);
    for (Eigen::Index c = 0; c < kept; ++c) {
        const Eigen::Index j = model.stats.kept[static_cast<std::size_t>(c)];
        std_rows.col(c) = (raw_rows.col(j).array() - model.stats.mean(j)) / model.stats.sd(j);
    }
    return std_rows * model.loadings;
}

Eigen::MatrixXd pca_project(const PcaModel& model, const FieldStack& raw) {
    return pca_project(model, raw.data);
}

}  // namespace windvar
