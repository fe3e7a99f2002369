#include "emptysimplex/csv.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "emptysimplex/errors.hpp"

namespace emptysimplex {

std::string format_number(double x) {
    if (std::isnan(x)) return {};
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void write_result_header(std::ostream& out) {
    out << "experiment,M,n,k,T,estimate,stderr,bound_lower,bound_upper,trials,seed,elapsed_ms\n";
}

void write_result_rows(std::ostream& out, std::span<const ResultRow> rows) {
    for (const auto& r : rows) {
        out << r.experiment << ',' << r.dim << ',' << r.n << ',';
        if (r.k >= 0) out << r.k;
        out << ',' << format_number(r.t) << ',' << format_number(r.estimate) << ',' << format_number(r.stderr)
            << ',' << format_number(r.bound_lower) << ',' << format_number(r.bound_upper) << ',' << r.trials << ','
            << r.seed << ',' << format_number(r.elapsed_ms) << '\n';
    }
}

void write_points(std::ostream& out, const PointSet& points) {
    for (int j = 0; j < points.dim(); ++j) out << (j ? "," : "") << 'x' << j;
    out << '\n';
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto p = points[i];
        for (std::size_t j = 0; j < p.size(); ++j) out << (j ? "," : "") << format_number(p[j]);
        out << '\n';
    }
}

PointSet read_points(std::istream& in) {
    std::string line;
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (rows.empty() && line.find_first_of("xX") != std::string::npos) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(field, &used));
                if (field.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(field);
            } catch (const std::exception&) {
                throw ConfigError("line " + std::to_string(line_no) + ": not a number: '" + field + "'");
            }
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw DimensionError("line " + std::to_string(line_no) + " has " + std::to_string(row.size()) +
                                 " coordinates, expected " + std::to_string(rows.front().size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ConfigError("no points in input");
    PointSet out(static_cast<int>(rows.front().size()));
    for (const auto& r : rows) out.push_back(r);
    return out;
}

}  // namespace emptysimplex
