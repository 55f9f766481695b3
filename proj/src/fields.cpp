#include "windvar/fields.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "windvar/csv.hpp"
#include "windvar/errors.hpp"

namespace windvar {

using nlohmann::json;

FieldStack FieldStack::make(HourStamp start, int step_hours, std::vector<std::string> variables,
                            std::vector<double> lat, std::vector<double> lon, Eigen::MatrixXd data) {
    if (variables.empty()) throw ValidationError("field stack needs at least one variable");
    if (lat.empty() || lon.empty()) throw ValidationError("field grid must be non-empty");
    const auto cells = static_cast<Eigen::Index>(lat.size() * lon.size());
    if (data.cols() != cells * static_cast<Eigen::Index>(variables.size()))
        throw ValidationError("field data has " + std::to_string(data.cols()) + " columns, expected " +
                              std::to_string(cells * static_cast<Eigen::Index>(variables.size())));
    if (data.rows() < 1) throw ValidationError("field stack must have T >= 1");
    if (!data.allFinite()) throw ValidationError("field data must be complete (no missing entries)");
    FieldStack f;
    f.start = start;
    f.step_hours = step_hours;
    f.variables = std::move(variables);
    f.lat = std::move(lat);
    f.lon = std::move(lon);
    f.data = std::move(data);
    return f;
}

FieldStack load_fields(const std::filesystem::path& grid_json) {
    std::ifstream in(grid_json);
    if (!in) throw ParseError("cannot open " + grid_json.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(grid_json.string() + ": " + e.what());
    }
    if (j.value("flattening", "") != "variable-major:row-major(lat,lon)")
        throw ParseError(grid_json.string() + ": unsupported flattening order");
    const auto variables = j.at("variables").get<std::vector<std::string>>();
    auto lat = j.at("lat").get<std::vector<double>>();
    auto lon = j.at("lon").get<std::vector<double>>();
    const int step_hours = j.value("step_hours", 1);
    const auto& files = j.at("files");
    const auto cells = static_cast<Eigen::Index>(lat.size() * lon.size());

    Eigen::MatrixXd data;
    HourStamp start = 0;
    Eigen::Index t = 0;
    for (std::size_t v = 0; v < variables.size(); ++v) {
        const auto fname = files.at(variables[v]).get<std::string>();
        const auto path = grid_json.parent_path() / fname;
        TimedMatrix var = load_timed_csv(path, step_hours);
        if (static_cast<Eigen::Index>(var.columns.size()) != cells)
            throw ParseError(path.string() + ": expected " + std::to_string(cells) + " cell columns");
        if (!var.values.allFinite())
            throw ValidationError(path.string() + ": field files must have no missing entries");
        if (v == 0) {
            start = var.start;
            t = var.values.rows();
            data.resize(t, cells * static_cast<Eigen::Index>(variables.size()));
        } else if (var.start != start || var.values.rows() != t) {
            throw AlignmentError(path.string() + ": variable files disagree on the time grid");
        }
        data.middleCols(static_cast<Eigen::Index>(v) * cells, cells) = var.values;
    }
    return FieldStack::make(start, step_hours, variables, std::move(lat), std::move(lon), std::move(data));
}

void write_fields(const FieldStack& fields, const std::filesystem::path& grid_json,
                  const std::string& base) {
    json j;
    j["format_version"] = 1;
    j["flattening"] = "variable-major:row-major(lat,lon)";
    j["variables"] = fields.variables;
    j["lat"] = fields.lat;
    j["lon"] = fields.lon;
    j["step_hours"] = fields.step_hours;
    json files = json::object();
    const Eigen::Index cells = fields.cells();
    for (std::size_t v = 0; v < fields.variables.size(); ++v) {
        const std::string fname = base + "_" + fields.variables[v] + ".csv";
        files[fields.variables[v]] = fname;
        TimedMatrix m;
        m.start = fields.start;
        m.step_hours = fields.step_hours;
        m.columns.reserve(static_cast<std::size_t>(cells));
        for (Eigen::Index c = 0; c < cells; ++c) m.columns.push_back("cell_" + std::to_string(c));
        m.values = fields.data.middleCols(static_cast<Eigen::Index>(v) * cells, cells);
        write_timed_csv(m, grid_json.parent_path() / fname);
    }
    j["files"] = std::move(files);
    std::ofstream out(grid_json);
    if (!out) throw ValidationError("cannot write " + grid_json.string());
    out << j.dump(2) << '\n';
}

}  // namespace windvar
