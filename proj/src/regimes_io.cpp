#include "windvar/regimes.hpp"

#include "json_util.hpp"

namespace windvar {

using detail::json;

namespace {

constexpr int kFormatVersion = 1;

std::vector<Eigen::Index> index_vec(const json& j) {
    std::vector<Eigen::Index> v;
    for (const auto& e : j) v.push_back(e.get<Eigen::Index>());
    return v;
}

}  // namespace

void save_classifier(const ClassifierBundle& bundle, const std::filesystem::path& path) {
    json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = "windvar-classifier";

    json pca;
    pca["input_cols"] = bundle.pca.stats.input_cols;
    pca["mean"] = detail::vector_to_json(bundle.pca.stats.mean);
    pca["sd"] = detail::vector_to_json(bundle.pca.stats.sd);
    pca["kept"] = bundle.pca.stats.kept;
    pca["dropped"] = bundle.pca.stats.dropped;
    pca["loadings"] = detail::matrix_to_json(bundle.pca.loadings);
    pca["explained_ratio"] = detail::vector_to_json(bundle.pca.explained_ratio);
    pca["variance_threshold"] = bundle.pca.variance_threshold;
    j["pca"] = std::move(pca);

    json som;
    som["rows"] = bundle.som.rows;
    som["cols"] = bundle.som.cols;
    som["topology"] = "hexagonal";
    som["weights"] = detail::matrix_to_json(bundle.som.weights);
    som["epochs"] = bundle.som.config.epochs;
    som["sigma_start"] = bundle.som.config.sigma_start;
    som["sigma_end"] = bundle.som.config.sigma_end;
    som["lr_start"] = bundle.som.config.lr_start;
    som["lr_end"] = bundle.som.config.lr_end;
    som["seed"] = bundle.som.config.seed;
    som["qe_history"] = bundle.som.qe_history;
    j["som"] = std::move(som);

    json groupings = json::array();
    for (const auto& g : bundle.groupings) {
        json gj;
        gj["mode_count"] = g.mode_count;
        gj["assignment"] = g.assignment;
        gj["method"] = g.method;
        gj["wcss"] = g.wcss;
        gj["db_index"] = detail::finite_or_null(g.db_index);
        gj["reseeds"] = g.reseeds;
        groupings.push_back(std::move(gj));
    }
    j["groupings"] = std::move(groupings);

    detail::save_json_file(j, path);
}

ClassifierBundle load_classifier(const std::filesystem::path& path) {
    const json j = detail::load_json_file(path);
    try {
        if (j.at("kind").get<std::string>() != "windvar-classifier")
            throw ParseError(path.string() + ": not a classifier document");
        if (j.at("format_version").get<int>() != kFormatVersion)
            throw ParseError(path.string() + ": unsupported format version");

        ClassifierBundle b;
        const json& pj = j.at("pca");
        b.pca.stats.input_cols = pj.at("input_cols").get<Eigen::Index>();
        b.pca.stats.mean = detail::vector_from_json(pj.at("mean"));
        b.pca.stats.sd = detail::vector_from_json(pj.at("sd"));
        b.pca.stats.kept = index_vec(pj.at("kept"));
        b.pca.stats.dropped = index_vec(pj.at("dropped"));
        b.pca.loadings = detail::matrix_from_json(pj.at("loadings"));
        b.pca.explained_ratio = detail::vector_from_json(pj.at("explained_ratio"));
        b.pca.variance_threshold = pj.at("variance_threshold").get<double>();

        const json& sj = j.at("som");
        b.som.rows = sj.at("rows").get<int>();
        b.som.cols = sj.at("cols").get<int>();
        b.som.weights = detail::matrix_from_json(sj.at("weights"));
        b.som.config.rows = b.som.rows;
        b.som.config.cols = b.som.cols;
        b.som.config.epochs = sj.at("epochs").get<int>();
        b.som.config.sigma_start = sj.at("sigma_start").get<double>();
        b.som.config.sigma_end = sj.at("sigma_end").get<double>();
        b.som.config.lr_start = sj.at("lr_start").get<double>();
        b.som.config.lr_end = sj.at("lr_end").get<double>();
        b.som.config.seed = sj.at("seed").get<std::uint64_t>();
        b.som.qe_history = sj.at("qe_history").get<std::vector<double>>();

        for (const auto& gj : j.at("groupings")) {
            ModeGrouping g;
            g.mode_count = gj.at("mode_count").get<int>();
            g.assignment = gj.at("assignment").get<std::vector<int>>();
            g.method = gj.at("method").get<std::string>();
            g.wcss = gj.at("wcss").get<double>();
            g.db_index = detail::double_or_nan(gj.at("db_index"));
            g.reseeds = gj.at("reseeds").get<int>();
            b.groupings.push_back(std::move(g));
        }
        return b;
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

}  // namespace windvar
