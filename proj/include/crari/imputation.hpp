#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "crari/rng.hpp"
#include "crari/table.hpp"

namespace crari {

/// Adjusted random imputation of one set of donor draws: each donor value is
/// shifted so that the filled values average to @p valid_mean.
[[nodiscard]] std::vector<double> ari_adjust(std::span<const double> donors, double valid_mean);

/// Row-wise adjusted random imputation. Every missing cell receives a valid
/// value of its row drawn with replacement, then the draws are re-centred on
/// the row's valid mean.
[[nodiscard]] DataTable ari_impute(const DataTable& table, Rng& rng);

/// Which ICC the imputed table should reach.
struct IccTarget {
    enum class Kind { Low, Corrected, Explicit };
    Kind kind = Kind::Corrected;
    double value = 0.0;  ///< used by Explicit only

    static IccTarget low() { return {Kind::Low, 0.0}; }
    static IccTarget corrected() { return {Kind::Corrected, 0.0}; }
    static IccTarget explicit_value(double v) { return {Kind::Explicit, v}; }
};

struct CrariOptions {
    double c_max = 10.0;
    double c_tolerance = 1e-4;
};

struct ImputationOutcome {
    DataTable imputed;
    double c = 1.0;
    double icc_before = 0.0;
    double icc_cor = 0.0;
    double icc_after = 0.0;
    double target = 0.0;
    double pmiss = 0.0;
    bool deterministic = false;
    int iterations = 0;
    double max_item_mean_drift = 0.0;
    bool column_effect_warning = false;
    std::vector<std::string> warnings;
};

/**
 * @brief Provisional CRARI fill: column-wise ARI followed by per-row centring.
 *
 * candidate(c) keeps valid cells untouched and sets each filled cell to
 * row_valid_mean + c * centred_fill, so every candidate preserves row means.
 */
class CrariFill {
public:
    CrariFill(const DataTable& table, Rng& rng);

    [[nodiscard]] DataTable candidate(double c) const;
    [[nodiscard]] std::span<const double> centred_fill() const { return centred_; }
    [[nodiscard]] std::span<const double> row_valid_means() const { return row_means_; }

private:
    DataTable source_;
    std::vector<double> row_means_;
    std::vector<double> centred_;  ///< per cell, zero on valid cells
};

/// Column and row adjusted random imputation with a dichotomic search on c.
/// UnreachableTargetError when the target lies outside [ICC(c_max), ICC(0)].
[[nodiscard]] ImputationOutcome crari_impute(const DataTable& table, const IccTarget& target,
                                             Rng& rng, const CrariOptions& options = {});

struct AriBiasRow {
    double p = 0.0;
    double icc_exact = 0.0;
    double icc_missing = 0.0;
    double icc_ari = 0.0;
    double icc_cor = 0.0;
};

/// Degrade / ARI / correct sweep over @p p_grid, averaged over replications.
/// With @p rezscore the degraded table is re-standardized before analysis.
[[nodiscard]] std::vector<AriBiasRow> ari_bias_demo(const DataTable& table,
                                                    std::span<const double> p_grid,
                                                    std::size_t replications, Rng& rng,
                                                    bool rezscore = false);

}  // namespace crari
