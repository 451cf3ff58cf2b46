#include "cmlab/sweep.hpp"

#include <cstdio>
#include <fstream>

#include "cmlab/geometry.hpp"

namespace cmlab {

void SweepTable::add_row(std::vector<double> row) {
    if (row.size() != columns.size())
        throw error("sweep table row width does not match the column count");
    rows.push_back(std::move(row));
}

double extrapolate_linear(const std::vector<double>& deltas, const std::vector<double>& values,
                          int k) {
    if (deltas.size() != values.size() || deltas.empty())
        throw error("extrapolation needs matching nonempty delta/value lists");
    const std::size_t n = deltas.size();
    const std::size_t use = std::min<std::size_t>(k, n);
    const std::size_t start = n - use;
    if (use == 1)
        return values[start];
    // normal equations for value = L + C * delta
    double sd = 0.0, sd2 = 0.0, sv = 0.0, sdv = 0.0;
    for (std::size_t i = start; i < n; ++i) {
        sd += deltas[i];
        sd2 += deltas[i] * deltas[i];
        sv += values[i];
        sdv += deltas[i] * values[i];
    }
    const double m = static_cast<double>(use);
    const double det = m * sd2 - sd * sd;
    if (det == 0.0)
        return sv / m;
    return (sd2 * sv - sd * sdv) / det;
}

std::string to_csv(const SweepTable& table) {
    std::string out = "# " + table.metadata.dump() + "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out += table.columns[c];
        out += (c + 1 < table.columns.size()) ? ',' : '\n';
    }
    char buf[40];
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            std::snprintf(buf, sizeof(buf), "%.15g", row[c]);
            out += buf;
            out += (c + 1 < row.size()) ? ',' : '\n';
        }
    }
    return out;
}

void write_csv(const SweepTable& table, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw error("could not open output file: " + path);
    f << to_csv(table);
}

} // namespace cmlab
