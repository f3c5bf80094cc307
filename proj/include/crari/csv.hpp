#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "crari/table.hpp"

namespace crari {

/**
 * @brief File-boundary sentinel for missing cells.
 *
 * An empty cell is always missing. If the token parses as a number
 * (e.g. "0", "inf") a cell is missing when its numeric value equals the
 * token's exactly; otherwise the trimmed cell text must equal the token.
 */
struct MissingCode {
    std::string token;

    [[nodiscard]] bool matches(std::string_view cell) const;
};

/// Parses comma-separated text. A first line with any non-numeric,
/// non-missing cell is treated as a header and skipped.
[[nodiscard]] DataTable parse_csv(std::string_view text, const MissingCode& missing = {});
[[nodiscard]] DataTable load_csv(const std::filesystem::path& path, const MissingCode& missing = {});

/// Writes values with round-trip precision; masked cells become @p missing_token.
void write_csv(std::ostream& out, const DataTable& table, std::string_view missing_token = "");
void save_csv(const DataTable& table, const std::filesystem::path& path,
              std::string_view missing_token = "");

/// Dense numeric grid (e.g. a predictor matrix); no missing cells allowed.
struct NumericGrid {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;  ///< row-major

    [[nodiscard]] double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
    [[nodiscard]] std::vector<double> column(std::size_t j) const;
};

[[nodiscard]] NumericGrid parse_matrix_csv(std::string_view text);
[[nodiscard]] NumericGrid load_matrix_csv(const std::filesystem::path& path);

/// Writes named columns of equal length with a header line.
void write_columns_csv(std::ostream& out, const std::vector<std::string>& names,
                       const std::vector<std::vector<double>>& columns);

}  // namespace crari
