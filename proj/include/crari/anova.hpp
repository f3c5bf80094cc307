#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "crari/table.hpp"

namespace crari {

/**
 * Two-way (items x participants) ANOVA of a table with missing cells.
 *
 * Sums of squares use the unbalanced-data convention:
 *   ss   = sum x^2 - t^2/N
 *   ssi  = sum_i t_i^2/n_i - t^2/N
 *   ssj  = sum_j t_j^2/n_j - t^2/N
 *   ssij = ss - ssi - ssj,   dfij = N - 1 - (m - 1) - (n - 1)
 * Variance components: vij = ssij/dfij, vi = max(0, (msi - vij)/n),
 * vj = max(0, (msj - vij)/m).
 */
struct AnovaDecomposition {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> row_sums;
    std::vector<std::size_t> row_counts;
    std::vector<double> col_sums;
    std::vector<std::size_t> col_counts;
    std::size_t total_count = 0;  ///< N
    double ss = 0.0;
    double ssi = 0.0;
    double ssj = 0.0;
    double ssij = 0.0;
    double dfi = 0.0;
    double dfj = 0.0;
    double dfij = 0.0;
    double msi = 0.0;
    double msj = 0.0;
    double vij = 0.0;  ///< interaction / noise variance
    double vi = 0.0;   ///< row (item) effect variance
    double vj = 0.0;   ///< column (participant) effect variance
};

/// StructuralError when dfij < 1.
[[nodiscard]] AnovaDecomposition anova(const DataTable& table);

/// ICC(C,k) of a decomposition, vi / (vi + vij/n). NumericError if vi = vij = 0.
[[nodiscard]] double icc_of(const AnovaDecomposition& decomposition);

/// Shortcut for icc_of(anova(table)).
[[nodiscard]] double table_icc(const DataTable& table);

struct ConfidenceInterval {
    double probability = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};

struct IccReport {
    double q = 0.0;        ///< vi / vij; +inf when vij = 0
    double icc = 0.0;
    double f_obs = 0.0;    ///< msi / vij
    double pmiss = 0.0;
    double icc_cor = 0.0;
    std::vector<ConfidenceInterval> conf;
    bool column_effect_warning = false;
    std::vector<double> item_means;
    AnovaDecomposition anova;
};

inline const std::vector<double> kDefaultConfidence{0.95, 0.99, 0.999};

[[nodiscard]] IccReport icc_report(const DataTable& table,
                                   std::span<const double> conf_probs = kDefaultConfidence);

/// ICC corrected for a proportion p of missing data: icc / (1 - p (1 - icc)).
[[nodiscard]] double corrected_icc(double icc_p, double p);

/// Applies corrected_icc to both bounds of an interval.
[[nodiscard]] ConfidenceInterval corrected_interval(const ConfidenceInterval& interval, double p);

/// ICC of means over @p group_size participants for a q ratio: q g / (q g + 1).
[[nodiscard]] double expected_icc(double q, std::size_t group_size);

}  // namespace crari
