#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace cmlab {

// tabular experiment output; when a sweep extrapolates, the limit sits in the
// last row and the table carries an "is_extrapolated" indicator column
struct SweepTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    nlohmann::json metadata = nlohmann::json::object();

    void add_row(std::vector<double> row);
};

// least-squares fit value = L + C * delta on the last k points, returns L
double extrapolate_linear(const std::vector<double>& deltas, const std::vector<double>& values,
                          int k = 4);

// '#'-prefixed JSON metadata line, column header, then rows at 15 significant digits
std::string to_csv(const SweepTable& table);

void write_csv(const SweepTable& table, const std::string& path);

} // namespace cmlab
