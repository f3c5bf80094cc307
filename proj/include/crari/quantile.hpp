#pragma once

namespace crari {

/// Regularized incomplete beta I_x(a, b), continued fraction (modified Lentz)
/// with the symmetry switch I_x(a,b) = 1 - I_{1-x}(b,a). Relative accuracy ~1e-14.
[[nodiscard]] double regularized_beta(double x, double a, double b);

/// Regularized lower/upper incomplete gamma P(s, x), Q(s, x).
[[nodiscard]] double regularized_gamma_p(double s, double x);
[[nodiscard]] double regularized_gamma_q(double s, double x);

struct QuantileOptions {
    /// Bisection stops once |I_x(a,b) - p| <= cdf_tolerance.
    double cdf_tolerance = 1e-13;
    int max_iterations = 200;
};

/// Beta(a, b) quantile by bisection on [0, 1].
[[nodiscard]] double beta_quantile(double p, double a, double b, const QuantileOptions& options = {});

/// F(d1, d2) quantile obtained from the Beta(d1/2, d2/2) quantile.
[[nodiscard]] double f_quantile(double p, double d1, double d2, const QuantileOptions& options = {});

/// Upper-tail probability of a chi-square variable with @p df degrees of freedom.
[[nodiscard]] double chi2_upper_tail(double x, double df);

}  // namespace crari
