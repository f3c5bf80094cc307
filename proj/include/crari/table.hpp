#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "crari/rng.hpp"

namespace crari {

/**
 * @brief Items-by-participants table of measurements with an explicit missing mask.
 *
 * Rows are items, columns are participants. Storage is row-major. Missing
 * cells are flagged in the mask; their stored value is NaN and must not be
 * read as data. Instances are immutable: every transform returns a new table.
 *
 * Invariants (checked by the constructor, StructuralError otherwise):
 *  - rows >= 2 and cols >= 2;
 *  - every row and every column holds at least one valid cell;
 *  - valid values are finite.
 */
class DataTable {
public:
    DataTable(std::size_t rows, std::size_t cols, std::vector<double> values,
              std::vector<std::uint8_t> missing);

    /// Table with no missing cell.
    static DataTable complete(std::size_t rows, std::size_t cols, std::vector<double> values);

    /// Builds a table from nested rows; NaN entries become missing cells.
    static DataTable from_rows(const std::vector<std::vector<double>>& rows);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] std::size_t cell_count() const noexcept { return values_.size(); }

    [[nodiscard]] double value(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }
    [[nodiscard]] bool is_missing(std::size_t i, std::size_t j) const {
        return missing_[i * cols_ + j] != 0;
    }

    [[nodiscard]] std::span<const double> row_values(std::size_t i) const {
        return {values_.data() + i * cols_, cols_};
    }
    [[nodiscard]] std::span<const std::uint8_t> row_mask(std::size_t i) const {
        return {missing_.data() + i * cols_, cols_};
    }

    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
    [[nodiscard]] const std::vector<std::uint8_t>& mask() const noexcept { return missing_; }

    [[nodiscard]] std::size_t missing_count() const noexcept { return missing_count_; }
    [[nodiscard]] std::size_t valid_count() const noexcept { return values_.size() - missing_count_; }
    [[nodiscard]] bool is_complete() const noexcept { return missing_count_ == 0; }
    /// Proportion p of masked cells, (m*n - N) / (m*n).
    [[nodiscard]] double missing_proportion() const noexcept;

    [[nodiscard]] std::size_t row_valid_count(std::size_t i) const;
    [[nodiscard]] std::size_t col_valid_count(std::size_t j) const;
    [[nodiscard]] std::size_t max_missing_per_row() const;

    /// Mean of the valid entries of row i.
    [[nodiscard]] double row_mean(std::size_t i) const;
    [[nodiscard]] std::vector<double> row_means() const;
    [[nodiscard]] std::vector<double> col_means() const;

    friend bool operator==(const DataTable& a, const DataTable& b);

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> values_;
    std::vector<std::uint8_t> missing_;
    std::size_t missing_count_ = 0;
};

/// Locations of the missing cells of a table, detached from its values.
struct MissingPattern {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint8_t> mask;

    static MissingPattern of(const DataTable& table);
    [[nodiscard]] bool at(std::size_t i, std::size_t j) const { return mask[i * cols + j] != 0; }
    [[nodiscard]] double density() const;
};

enum class StdDevConvention {
    Sample,      ///< divisor count - 1
    Population,  ///< divisor count
};

/// Per-column standardization of the valid entries. Mask unchanged.
/// NumericError when a column has fewer than two valid entries or zero spread.
[[nodiscard]] DataTable zscore(const DataTable& table,
                               StdDevConvention convention = StdDevConvention::Sample);

/// Subtracts from each valid entry the mean of the valid entries of its column.
[[nodiscard]] DataTable center_columns(const DataTable& table);

/// Randomly permutes the valid values of each row over that row's valid positions.
[[nodiscard]] DataTable mix_rows(const DataTable& table, Rng& rng);

/**
 * @brief Restructures rows into "virtual participant" columns.
 *
 * The output has as many columns as the largest per-row valid count. Each
 * row's valid values are dealt to a uniformly random set of distinct
 * columns; remaining cells are missing. Optionally re-standardizes the
 * resulting columns.
 */
[[nodiscard]] DataTable virtualize(const DataTable& table, Rng& rng, bool rescore = false);

}  // namespace crari
