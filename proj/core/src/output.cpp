#include "sqeiar/output.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include "sqeiar/format.hpp"

namespace sqeiar {

namespace {

std::ofstream open_for_writing(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

std::vector<std::size_t> sampled_rows(const Grid& grid, std::size_t stride) {
    if (stride == 0) stride = 1;
    std::vector<std::size_t> rows;
    for (std::size_t m = 0; m <= grid.nt; m += stride) rows.push_back(m);
    if (rows.back() != grid.nt) rows.push_back(grid.nt);
    return rows;
}

void write_field_csv(const std::filesystem::path& path, const SpaceTimeField& field, std::size_t stride) {
    const Grid& grid = field.grid();
    auto out = open_for_writing(path);
    out << 't';
    for (std::size_t j = 0; j < grid.nx; ++j) out << ',' << format_number(grid.x(j));
    out << '\n';
    for (std::size_t m : sampled_rows(grid, stride)) {
        out << format_number(grid.t(m));
        for (double v : field.row(m)) out << ',' << format_number(v);
        out << '\n';
    }
    finish(out, path);
}

void write_aggregates_csv(const std::filesystem::path& path, const RunMetrics& metrics) {
    auto out = open_for_writing(path);
    out << "t,S,Q,E,A,I,R,N\n";
    for (std::size_t m = 0; m < metrics.times.size(); ++m) {
        out << format_number(metrics.times[m]);
        for (const auto& agg : metrics.aggregates) out << ',' << format_number(agg[m]);
        out << ',' << format_number(metrics.total[m]) << '\n';
    }
    finish(out, path);
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            cells.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return cells;
    };
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path.string() + " is empty");
    table.header = split(line);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const auto cells = split(line);
        if (cells.size() != table.header.size()) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": ragged row");
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& cell : cells) {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
                throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": bad number '" + cell + "'");
            }
            row.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace sqeiar
