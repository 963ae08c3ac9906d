#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "sqeiar/grid.hpp"
#include "sqeiar/oracles.hpp"

namespace sqeiar {

/// Rows m = 0, stride, 2*stride, ... plus the final row nt.
std::vector<std::size_t> sampled_rows(const Grid& grid, std::size_t stride);

/// Writes `t,x_0,...,x_{nx-1}` followed by one line per sampled row. Values
/// use the shortest decimal form that round-trips exactly. Throws
/// std::runtime_error naming the path on I/O failure.
void write_field_csv(const std::filesystem::path& path, const SpaceTimeField& field, std::size_t stride);

/// Writes `t,S,Q,E,A,I,R,N` with one line per time step.
void write_aggregates_csv(const std::filesystem::path& path, const RunMetrics& metrics);

/// A parsed rectangular CSV: header cells and numeric rows.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// Throws std::runtime_error on I/O failure, non-numeric cells or ragged rows.
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace sqeiar
