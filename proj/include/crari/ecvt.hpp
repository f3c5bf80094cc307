#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "crari/rng.hpp"
#include "crari/table.hpp"

namespace crari {

struct EcvtOptions {
    /// Empty selects default_group_sizes(n).
    std::vector<std::size_t> group_sizes;
    std::size_t resamples = 200;
    double alpha = 0.05;
    /// Average Fisher-z transformed correlations instead of raw r.
    bool fisher_z = false;
};

/**
 * Outcome of the expected correlation validity test.
 *
 * For each group size g the test draws B pairs of disjoint participant
 * groups and records the correlation between the two item-mean vectors.
 * Two statistics per g enter chi2:
 *  - mean_term = (observed_mean_r - predicted_r) / (observed_sd_r / sqrt(B)),
 *    with predicted_r = q g / (q g + 1) from the table's ANOVA;
 *  - dispersion_term = ln(observed_sd_r^2 / reference_sd_r^2) / sqrt(4 / (B - 1)),
 *    where the reference spread comes from the same resampling applied to an
 *    additive surrogate (row + column effects, residuals permuted within rows).
 * A term whose spread is below 1e-12 is dropped and df decremented.
 */
struct EcvtReport {
    double q = 0.0;
    double icc = 0.0;
    std::size_t resamples = 0;
    double alpha = 0.0;
    bool fisher_z = false;
    std::vector<std::size_t> group_sizes;
    std::vector<double> observed_mean_r;
    std::vector<double> observed_sd_r;
    std::vector<double> predicted_r;
    std::vector<double> reference_sd_r;
    std::vector<double> mean_term;
    std::vector<double> dispersion_term;
    double chi2 = 0.0;
    int df = 0;
    double p_value = 1.0;
    bool compatible = true;
    std::vector<std::string> warnings;
};

/// PreconditionError for tables with missing cells or groups larger than n/2.
[[nodiscard]] EcvtReport ecvt(const DataTable& table, Rng& rng, const EcvtOptions& options = {});

/// Additive surrogate: row mean + column mean - grand mean + residual, with
/// each row's residuals randomly permuted across columns. Complete tables only.
[[nodiscard]] DataTable additive_surrogate(const DataTable& table, Rng& rng);

}  // namespace crari
