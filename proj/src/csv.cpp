#include "windvar/csv.hpp"

#include <charconv>
#include <fstream>
#include <limits>

#include "windvar/data.hpp"
#include "windvar/errors.hpp"

namespace windvar {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

TimedMatrix load_timed_csv(const std::filesystem::path& path, int step_hours) {
    if (step_hours < 1) throw DomainError("step_hours must be >= 1");
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path.string() + ": empty file");
    auto header = split_csv_line(line);
    if (header.size() < 2 || header[0] != "timestamp")
        throw ParseError(path.string() + ": header must start with 'timestamp'");

    std::vector<HourStamp> times;
    std::vector<std::vector<double>> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw ParseError(path.string() + ":" + std::to_string(lineno) + ": expected " +
                             std::to_string(header.size()) + " fields, got " + std::to_string(fields.size()));
        HourStamp t;
        try {
            t = parse_hour_utc(fields[0]);
        } catch (const ParseError& e) {
            throw ParseError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
        if (!times.empty()) {
            if (t <= times.back())
                throw ParseError(path.string() + ":" + std::to_string(lineno) + ": non-monotone timestamp");
            if ((t - times.front()) % step_hours != 0)
                throw ParseError(path.string() + ":" + std::to_string(lineno) + ": timestamp off the " +
                                 std::to_string(step_hours) + "h grid");
        }
        times.push_back(t);
        std::vector<double> vals;
        vals.reserve(fields.size() - 1);
        for (std::size_t j = 1; j < fields.size(); ++j) {
            const std::string& f = fields[j];
            if (f.empty()) {
                vals.push_back(kNaN);
                continue;
            }
            double v = 0.0;
            const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
            if (res.ec != std::errc{} || res.ptr != f.data() + f.size())
                throw ParseError(path.string() + ":" + std::to_string(lineno) + ": bad numeric field '" + f + "'");
            vals.push_back(v);
        }
        rows.push_back(std::move(vals));
    }
    if (times.empty()) throw ParseError(path.string() + ": no data rows");

    TimedMatrix m;
    m.start = times.front();
    m.step_hours = step_hours;
    m.columns.assign(header.begin() + 1, header.end());
    const auto n = static_cast<Eigen::Index>(m.columns.size());
    const Eigen::Index t_total = (times.back() - m.start) / step_hours + 1;
    m.values = Eigen::MatrixXd::Constant(t_total, n, kNaN);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const Eigen::Index row = (times[r] - m.start) / step_hours;
        for (Eigen::Index j = 0; j < n; ++j) m.values(row, j) = rows[r][static_cast<std::size_t>(j)];
    }
    return m;
}

void write_timed_csv(const TimedMatrix& m, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path.string());
    out << "timestamp";
    for (const auto& c : m.columns) out << ',' << c;
    out << '\n';
    for (Eigen::Index i = 0; i < m.values.rows(); ++i) {
        out << format_hour_utc(m.start + static_cast<HourStamp>(i) * m.step_hours);
        for (Eigen::Index j = 0; j < m.values.cols(); ++j) {
            out << ',';
            const double v = m.values(i, j);
            if (!std::isnan(v)) out << format_double(v);
        }
        out << '\n';
    }
}

}  // namespace windvar
