#pragma once

#include <span>

namespace crari {

[[nodiscard]] double mean(std::span<const double> xs);

/// Sample standard deviation (divisor count - 1); 0 for fewer than two values.
[[nodiscard]] double sample_sd(std::span<const double> xs);

/// Pearson correlation; NaN when either input has zero variance.
[[nodiscard]] double pearson(std::span<const double> x, std::span<const double> y);

/// Pearson correlation over the positions where both inputs are non-NaN.
[[nodiscard]] double pearson_pairwise(std::span<const double> x, std::span<const double> y);

}  // namespace crari
