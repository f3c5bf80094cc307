#include "crari/table.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "crari/error.hpp"

namespace crari {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

DataTable::DataTable(std::size_t rows, std::size_t cols, std::vector<double> values,
                     std::vector<std::uint8_t> missing)
    : rows_(rows), cols_(cols), values_(std::move(values)), missing_(std::move(missing)) {
    if (rows_ < 2 || cols_ < 2) {
        throw StructuralError("core_table", "table must have at least 2 rows and 2 columns, got " +
                                                std::to_string(rows_) + "x" + std::to_string(cols_));
    }
    if (values_.size() != rows_ * cols_ || missing_.size() != rows_ * cols_) {
        throw StructuralError("core_table", "value/mask size does not match table shape");
    }
    std::vector<std::size_t> col_counts(cols_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
        std::size_t row_count = 0;
        for (std::size_t j = 0; j < cols_; ++j) {
            const std::size_t k = i * cols_ + j;
            if (missing_[k]) {
                missing_[k] = 1;
                values_[k] = kNaN;
                ++missing_count_;
                continue;
            }
            if (!std::isfinite(values_[k])) {
                throw StructuralError("core_table", "non-finite valid value at row " +
                                                        std::to_string(i + 1) + ", column " +
                                                        std::to_string(j + 1));
            }
            ++row_count;
            ++col_counts[j];
        }
        if (row_count == 0) {
            throw StructuralError("core_table", "empty row " + std::to_string(i + 1) +
                                                    " (no valid data)");
        }
    }
    for (std::size_t j = 0; j < cols_; ++j) {
        if (col_counts[j] == 0) {
            throw StructuralError("core_table", "empty column " + std::to_string(j + 1) +
                                                    " (no valid data)");
        }
    }
}

DataTable DataTable::complete(std::size_t rows, std::size_t cols, std::vector<double> values) {
    std::vector<std::uint8_t> mask(values.size(), 0);
    return {rows, cols, std::move(values), std::move(mask)};
}

DataTable DataTable::from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t m = rows.size();
    const std::size_t n = m == 0 ? 0 : rows.front().size();
    std::vector<double> values;
    std::vector<std::uint8_t> mask;
    values.reserve(m * n);
    mask.reserve(m * n);
    for (std::size_t i = 0; i < m; ++i) {
        if (rows[i].size() != n) {
            throw StructuralError("core_table", "row " + std::to_string(i + 1) +
                                                    " has a different column count");
        }
        for (double v : rows[i]) {
            values.push_back(v);
            mask.push_back(std::isnan(v) ? 1 : 0);
        }
    }
    return {m, n, std::move(values), std::move(mask)};
}

double DataTable::missing_proportion() const noexcept {
    return static_cast<double>(missing_count_) / static_cast<double>(values_.size());
}

std::size_t DataTable::row_valid_count(std::size_t i) const {
    auto mask = row_mask(i);
    return cols_ - static_cast<std::size_t>(std::count(mask.begin(), mask.end(), 1));
}

std::size_t DataTable::col_valid_count(std::size_t j) const {
    std::size_t count = 0;
    for (std::size_t i = 0; i < rows_; ++i) count += is_missing(i, j) ? 0 : 1;
    return count;
}

std::size_t DataTable::max_missing_per_row() const {
    std::size_t worst = 0;
    for (std::size_t i = 0; i < rows_; ++i) worst = std::max(worst, cols_ - row_valid_count(i));
    return worst;
}

double DataTable::row_mean(std::size_t i) const {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t j = 0; j < cols_; ++j) {
        if (!is_missing(i, j)) {
            sum += value(i, j);
            ++count;
        }
    }
    return sum / static_cast<double>(count);
}

std::vector<double> DataTable::row_means() const {
    std::vector<double> means(rows_);
    for (std::size_t i = 0; i < rows_; ++i) means[i] = row_mean(i);
    return means;
}

std::vector<double> DataTable::col_means() const {
    std::vector<double> sums(cols_, 0.0);
    std::vector<std::size_t> counts(cols_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (!is_missing(i, j)) {
                sums[j] += value(i, j);
                ++counts[j];
            }
        }
    }
    for (std::size_t j = 0; j < cols_; ++j) sums[j] /= static_cast<double>(counts[j]);
    return sums;
}

bool operator==(const DataTable& a, const DataTable& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.missing_ != b.missing_) return false;
    for (std::size_t k = 0; k < a.values_.size(); ++k) {
        if (!a.missing_[k] && a.values_[k] != b.values_[k]) return false;
    }
    return true;
}

MissingPattern MissingPattern::of(const DataTable& table) {
    return {table.rows(), table.cols(), table.mask()};
}

double MissingPattern::density() const {
    if (mask.empty()) return 0.0;
    const auto count = std::count(mask.begin(), mask.end(), 1);
    return static_cast<double>(count) / static_cast<double>(mask.size());
}

namespace {

struct ColumnMoments {
    double mean = 0.0;
    double sd = 0.0;
    std::size_t count = 0;
};

std::vector<ColumnMoments> column_moments(const DataTable& table, StdDevConvention convention) {
    const std::size_t m = table.rows();
    const std::size_t n = table.cols();
    std::vector<ColumnMoments> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (!table.is_missing(i, j)) {
                sum += table.value(i, j);
                ++count;
            }
        }
        const double mean = sum / static_cast<double>(count);
        double ss = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (!table.is_missing(i, j)) {
                const double d = table.value(i, j) - mean;
                ss += d * d;
            }
        }
        const double divisor = convention == StdDevConvention::Sample
                                   ? static_cast<double>(count) - 1.0
                                   : static_cast<double>(count);
        out[j] = {mean, divisor > 0.0 ? std::sqrt(ss / divisor) : 0.0, count};
    }
    return out;
}

}  // namespace

DataTable zscore(const DataTable& table, StdDevConvention convention) {
    const auto moments = column_moments(table, convention);
    for (std::size_t j = 0; j < moments.size(); ++j) {
        if (moments[j].count < 2 || !(moments[j].sd > 0.0)) {
            throw NumericError("core_table", "degenerate column " + std::to_string(j + 1) +
                                                 ": fewer than 2 valid values or zero variance");
        }
    }
    std::vector<double> values = table.values();
    const std::size_t n = table.cols();
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (table.mask()[k]) continue;
        const auto& mom = moments[k % n];
        values[k] = (values[k] - mom.mean) / mom.sd;
    }
    return {table.rows(), n, std::move(values), table.mask()};
}

DataTable center_columns(const DataTable& table) {
    const auto means = table.col_means();
    std::vector<double> values = table.values();
    const std::size_t n = table.cols();
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (!table.mask()[k]) values[k] -= means[k % n];
    }
    return {table.rows(), n, std::move(values), table.mask()};
}

DataTable mix_rows(const DataTable& table, Rng& rng) {
    std::vector<double> values = table.values();
    std::vector<double> row;
    const std::size_t n = table.cols();
    for (std::size_t i = 0; i < table.rows(); ++i) {
        row.clear();
        auto mask = table.row_mask(i);
        auto vals = table.row_values(i);
        for (std::size_t j = 0; j < n; ++j) {
            if (!mask[j]) row.push_back(vals[j]);
        }
        rng.shuffle(std::span<double>(row));
        std::size_t next = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (!mask[j]) values[i * n + j] = row[next++];
        }
    }
    return {table.rows(), n, std::move(values), table.mask()};
}

DataTable virtualize(const DataTable& table, Rng& rng, bool rescore) {
    const std::size_t m = table.rows();
    std::size_t width = 0;
    for (std::size_t i = 0; i < m; ++i) width = std::max(width, table.row_valid_count(i));

    std::vector<double> values(m * width, kNaN);
    std::vector<std::uint8_t> mask(m * width, 1);
    std::vector<std::size_t> slots(width);
    for (std::size_t i = 0; i < m; ++i) {
        std::iota(slots.begin(), slots.end(), std::size_t{0});
        const std::size_t count = table.row_valid_count(i);
        rng.partial_shuffle(std::span<std::size_t>(slots), count);
        auto mrow = table.row_mask(i);
        auto vrow = table.row_values(i);
        std::size_t next = 0;
        for (std::size_t j = 0; j < table.cols(); ++j) {
            if (mrow[j]) continue;
            const std::size_t k = i * width + slots[next++];
            values[k] = vrow[j];
            mask[k] = 0;
        }
    }
    DataTable out(m, width, std::move(values), std::move(mask));
    return rescore ? zscore(out) : out;
}

}  // namespace crari
