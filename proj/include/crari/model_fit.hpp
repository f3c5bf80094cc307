#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "crari/anova.hpp"
#include "crari/rng.hpp"
#include "crari/table.hpp"

namespace crari {

/// Goodness of fit of predictors against the item means of a table.
/// r2_cor = icc_cor * r2 / icc; equal to r2 when nothing is missing.
struct PredictorFit {
    std::vector<double> r2;
    std::vector<double> r2_on_icc;
    std::vector<double> r2_cor;
    /// r2_on_icc > 1, the signature of a predictor correlated with the noise.
    std::vector<bool> overfit_flag;
    IccReport icc_context;
    std::vector<std::string> warnings;
};

/// r2 / icc.
[[nodiscard]] double r2_on_icc(double r2, double icc);
/// icc_cor * r2 / icc.
[[nodiscard]] double r2_corrected(double r2, double icc, double icc_cor);

/// @p predictors holds k columns of length m (one value per item).
[[nodiscard]] PredictorFit fit_predictors(const DataTable& table,
                                          std::span<const std::vector<double>> predictors,
                                          std::span<const double> conf_probs = kDefaultConfidence);

struct R2IccPoint {
    std::size_t group_size = 0;
    double icc = 0.0;    ///< mean split-group item-mean correlation
    double r2 = 0.0;     ///< mean squared correlation of one group's item means with the predictor
    double ratio = 0.0;  ///< r2 / icc
    double excluded_items = 0.0;  ///< mean number of items dropped per resample
};

/// r2/ICC as a function of the number of participants averaged.
[[nodiscard]] std::vector<R2IccPoint> r2_icc_curve(const DataTable& table,
                                                   std::span<const double> predictor,
                                                   std::span<const std::size_t> group_sizes,
                                                   std::size_t resamples, Rng& rng);

struct R2CorBiasRow {
    double p = 0.0;
    double r2_exact = 0.0;
    double r2_observed = 0.0;
    double r2_cor = 0.0;
    double r2_cor_sd = 0.0;  ///< spread over replications
};

/// Degrade / refit sweep; r2_exact is computed once on the complete table.
[[nodiscard]] std::vector<R2CorBiasRow> r2cor_bias_demo(const DataTable& table,
                                                        std::span<const double> predictor,
                                                        std::span<const double> p_grid,
                                                        std::size_t replications, Rng& rng,
                                                        bool rezscore = false);

}  // namespace crari
