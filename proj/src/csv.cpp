#include "crari/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include "crari/error.hpp"

namespace crari {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(std::string_view cell) {
    cell = trim(cell);
    if (cell.empty()) return std::nullopt;
    if (cell.front() == '+') cell.remove_prefix(1);
    double value = 0.0;
    const auto* end = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(cell.data(), end, value);
    if (ec != std::errc() || ptr != end) return std::nullopt;
    return value;
}

std::vector<std::string_view> split_line(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return cells;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) nl = text.size();
        auto line = text.substr(start, nl - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!trim(line).empty()) lines.push_back(line);
        start = nl + 1;
    }
    if (!lines.empty() && lines.front().substr(0, 3) == "\xEF\xBB\xBF") {
        lines.front().remove_prefix(3);
    }
    return lines;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("core_table", "cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string location(std::size_t line, std::size_t col) {
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

bool MissingCode::matches(std::string_view cell) const {
    cell = trim(cell);
    if (cell.empty()) return true;
    const std::string_view tok = trim(token);
    if (tok.empty()) return false;
    if (auto code = parse_number(tok)) {
        auto value = parse_number(cell);
        return value && *value == *code;
    }
    return cell == tok;
}

DataTable parse_csv(std::string_view text, const MissingCode& missing) {
    auto lines = split_lines(text);
    std::size_t first = 0;
    if (!lines.empty()) {
        for (auto cell : split_line(lines.front())) {
            if (!missing.matches(cell) && !parse_number(cell)) {
                first = 1;
                break;
            }
        }
    }
    if (lines.size() <= first) throw FormatError("core_table", "no data rows");

    const std::size_t cols = split_line(lines[first]).size();
    const std::size_t rows = lines.size() - first;
    std::vector<double> values;
    std::vector<std::uint8_t> mask;
    values.reserve(rows * cols);
    mask.reserve(rows * cols);
    for (std::size_t r = first; r < lines.size(); ++r) {
        auto cells = split_line(lines[r]);
        if (cells.size() != cols) {
            throw FormatError("core_table", "line " + std::to_string(r + 1) + " has " +
                                                std::to_string(cells.size()) + " cells, expected " +
                                                std::to_string(cols));
        }
        for (std::size_t c = 0; c < cols; ++c) {
            if (missing.matches(cells[c])) {
                values.push_back(std::numeric_limits<double>::quiet_NaN());
                mask.push_back(1);
                continue;
            }
            auto value = parse_number(cells[c]);
            if (!value || !std::isfinite(*value)) {
                throw FormatError("core_table", "cannot parse '" + std::string(trim(cells[c])) +
                                                    "' at " + location(r + 1, c + 1));
            }
            values.push_back(*value);
            mask.push_back(0);
        }
    }
    return {rows, cols, std::move(values), std::move(mask)};
}

DataTable load_csv(const std::filesystem::path& path, const MissingCode& missing) {
    return parse_csv(read_file(path), missing);
}

void write_csv(std::ostream& out, const DataTable& table, std::string_view missing_token) {
    char buffer[32];
    for (std::size_t i = 0; i < table.rows(); ++i) {
        for (std::size_t j = 0; j < table.cols(); ++j) {
            if (j > 0) out << ',';
            if (table.is_missing(i, j)) {
                out << missing_token;
            } else {
                auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, table.value(i, j));
                out << std::string_view(buffer, static_cast<std::size_t>(ptr - buffer));
            }
        }
        out << '\n';
    }
}

void save_csv(const DataTable& table, const std::filesystem::path& path,
              std::string_view missing_token) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("core_table", "cannot write '" + path.string() + "'");
    write_csv(out, table, missing_token);
    if (!out) throw FormatError("core_table", "write failed for '" + path.string() + "'");
}

std::vector<double> NumericGrid::column(std::size_t j) const {
    std::vector<double> out(rows);
    for (std::size_t i = 0; i < rows; ++i) out[i] = at(i, j);
    return out;
}

NumericGrid parse_matrix_csv(std::string_view text) {
    auto lines = split_lines(text);
    std::size_t first = 0;
    if (!lines.empty()) {
        for (auto cell : split_line(lines.front())) {
            if (!parse_number(cell)) {
                first = 1;
                break;
            }
        }
    }
    if (lines.size() <= first) throw FormatError("core_table", "no data rows");
    NumericGrid grid;
    grid.cols = split_line(lines[first]).size();
    grid.rows = lines.size() - first;
    grid.values.reserve(grid.rows * grid.cols);
    for (std::size_t r = first; r < lines.size(); ++r) {
        auto cells = split_line(lines[r]);
        if (cells.size() != grid.cols) {
            throw FormatError("core_table", "line " + std::to_string(r + 1) + " has " +
                                                std::to_string(cells.size()) + " cells, expected " +
                                                std::to_string(grid.cols));
        }
        for (std::size_t c = 0; c < grid.cols; ++c) {
            auto value = parse_number(cells[c]);
            if (!value || !std::isfinite(*value)) {
                throw FormatError("core_table", "cannot parse '" + std::string(trim(cells[c])) +
                                                    "' at " + location(r + 1, c + 1));
            }
            grid.values.push_back(*value);
        }
    }
    return grid;
}

NumericGrid load_matrix_csv(const std::filesystem::path& path) {
    return parse_matrix_csv(read_file(path));
}

void write_columns_csv(std::ostream& out, const std::vector<std::string>& names,
                       const std::vector<std::vector<double>>& columns) {
    for (std::size_t c = 0; c < names.size(); ++c) out << (c ? "," : "") << names[c];
    out << '\n';
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    char buffer[32];
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) out << ',';
            auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, columns[c][r]);
            out << std::string_view(buffer, static_cast<std::size_t>(ptr - buffer));
        }
        out << '\n';
    }
}

}  // namespace crari
