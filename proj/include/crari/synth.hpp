#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "crari/rng.hpp"
#include "crari/table.hpp"

namespace crari {

/// Parameters of the artificial data generator
///   x_ij = mu + sign(beta_i) |beta_i|^alpha_j + eps_ij,   alpha_j = 1 - s log(1 - u_j)
/// with beta ~ N(0, sigma_beta^2), eps ~ N(0, sigma_eps^2), u ~ U[0, 1).
/// s = 0 gives the additive model; the defaults give q = 0.16.
struct SynthSpec {
    std::size_t rows = 1400;
    std::size_t cols = 80;
    double mu = 0.0;
    double sigma_beta = 1.0;
    double sigma_eps = 2.5;
    double s = 0.0;
    std::uint64_t seed = 1;
};

struct SynthResult {
    DataTable table;
    std::vector<double> beta;   ///< hidden item effects
    std::vector<double> alpha;  ///< per-participant exponents
    /// q g/(q g + 1) with q = sigma_beta^2/sigma_eps^2 and g = cols; exact only for s = 0.
    double exact_icc_proxy = 0.0;
};

[[nodiscard]] SynthResult generate(const SynthSpec& spec);

/// Cumulative distribution of the participant exponent: 1 - exp(-(alpha - 1)/s).
[[nodiscard]] double alpha_cdf(double alpha, double s);

/// Masks round(p m n) additional cells drawn uniformly among the valid ones,
/// redrawing (up to 100 times) when a row or column would become empty.
[[nodiscard]] DataTable degrade_random(const DataTable& table, double p, Rng& rng);

/// Masks the cells flagged in @p pattern, after optionally sorting rows by increasing mean.
[[nodiscard]] DataTable degrade_pattern(const DataTable& table, const MissingPattern& pattern,
                                        bool sort_rows_by_mean);

/// Adds an independent N(0, sd^2) offset to every column (participant main effect).
[[nodiscard]] DataTable add_column_offsets(const DataTable& table, double sd, Rng& rng);

}  // namespace crari
