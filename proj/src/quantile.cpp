#include "crari/quantile.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "crari/error.hpp"

namespace crari {

namespace {

constexpr double kEps = 1e-15;
constexpr double kTiny = 1e-300;
constexpr int kMaxTerms = 100000;

// Continued fraction for I_x(a, b), valid for x < (a + 1) / (a + b + 2).
double beta_fraction(double x, double a, double b) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int k = 1; k <= kMaxTerms; ++k) {
        const double kk = k;
        const double k2 = 2.0 * kk;
        double aa = kk * (b - kk) * x / ((qam + k2) * (a + k2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + kk) * (qab + kk) * x / ((a + k2) * (qap + k2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) return h;
    }
    throw NumericError("anova_icc", "incomplete beta continued fraction did not converge");
}

}  // namespace

double regularized_beta(double x, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw PreconditionError("anova_icc", "beta parameters must be positive");
    }
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_fraction(x, a, b) / a;
    return 1.0 - front * beta_fraction(1.0 - x, b, a) / b;
}

namespace {

double gamma_series(double s, double x) {
    double sum = 1.0 / s;
    double term = sum;
    double ap = s;
    for (int k = 0; k < kMaxTerms; ++k) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEps) {
            return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
        }
    }
    throw NumericError("ecvt", "incomplete gamma series did not converge");
}

double gamma_fraction(double s, double x) {
    double b = x + 1.0 - s;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int k = 1; k <= kMaxTerms; ++k) {
        const double an = -k * (k - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) {
            return std::exp(-x + s * std::log(x) - std::lgamma(s)) * h;
        }
    }
    throw NumericError("ecvt", "incomplete gamma continued fraction did not converge");
}

}  // namespace

double regularized_gamma_p(double s, double x) {
    if (!(s > 0.0)) throw PreconditionError("ecvt", "gamma shape must be positive");
    if (x <= 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    return x < s + 1.0 ? gamma_series(s, x) : 1.0 - gamma_fraction(s, x);
}

double regularized_gamma_q(double s, double x) {
    if (!(s > 0.0)) throw PreconditionError("ecvt", "gamma shape must be positive");
    if (x <= 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    return x < s + 1.0 ? 1.0 - gamma_series(s, x) : gamma_fraction(s, x);
}

double beta_quantile(double p, double a, double b, const QuantileOptions& options) {
    if (!(p > 0.0 && p < 1.0)) {
        throw PreconditionError("anova_icc", "quantile probability must lie in (0, 1)");
    }
    double lo = 0.0;
    double hi = 1.0;
    double x = 0.5;
    double dp = regularized_beta(x, a, b) - p;
    for (int it = 0; std::fabs(dp) > options.cdf_tolerance; ++it) {
        if (it >= options.max_iterations) {
            throw NumericError("anova_icc", "beta quantile bisection exceeded " +
                                                std::to_string(options.max_iterations) +
                                                " iterations");
        }
        if (dp <= 0.0) lo = x;
        if (dp >= 0.0) hi = x;
        const double next = 0.5 * (lo + hi);
        if (next == x) break;  // bracket collapsed to adjacent doubles
        x = next;
        dp = regularized_beta(x, a, b) - p;
    }
    return x;
}

double f_quantile(double p, double d1, double d2, const QuantileOptions& options) {
    const double x = beta_quantile(p, d1 / 2.0, d2 / 2.0, options);
    if (x >= 1.0) return std::numeric_limits<double>::infinity();
    return x * d2 / ((1.0 - x) * d1);
}

double chi2_upper_tail(double x, double df) {
    if (!(df > 0.0)) throw PreconditionError("ecvt", "chi-square df must be positive");
    if (x <= 0.0) return 1.0;
    return regularized_gamma_q(df / 2.0, x / 2.0);
}

}  // namespace crari
