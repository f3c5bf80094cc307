#include "crari/anova.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "crari/error.hpp"
#include "crari/quantile.hpp"

namespace crari {

AnovaDecomposition anova(const DataTable& table) {
    const std::size_t m = table.rows();
    const std::size_t n = table.cols();
    AnovaDecomposition a;
    a.rows = m;
    a.cols = n;
    a.total_count = table.valid_count();
    a.dfi = static_cast<double>(m) - 1.0;
    a.dfj = static_cast<double>(n) - 1.0;
    a.dfij = static_cast<double>(a.total_count) - 1.0 - a.dfi - a.dfj;
    if (a.dfij < 1.0) {
        throw StructuralError("anova_icc", "insufficient data: interaction df = " +
                                               std::to_string(a.dfij));
    }

    // Accumulate around the grand mean; the sums of squares are shift invariant.
    const auto& values = table.values();
    const auto& mask = table.mask();
    double grand = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (!mask[k]) grand += values[k];
    }
    grand /= static_cast<double>(a.total_count);

    a.row_sums.assign(m, 0.0);
    a.row_counts.assign(m, 0);
    a.col_sums.assign(n, 0.0);
    a.col_counts.assign(n, 0);
    double sx2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t k = i * n + j;
            if (mask[k]) continue;
            const double x = values[k] - grand;
            a.row_sums[i] += x;
            ++a.row_counts[i];
            a.col_sums[j] += x;
            ++a.col_counts[j];
            sx2 += x * x;
        }
    }
    double t = 0.0;
    double row_part = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        t += a.row_sums[i];
        row_part += a.row_sums[i] * a.row_sums[i] / static_cast<double>(a.row_counts[i]);
    }
    double col_part = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        col_part += a.col_sums[j] * a.col_sums[j] / static_cast<double>(a.col_counts[j]);
    }
    const double correction = t * t / static_cast<double>(a.total_count);
    a.ss = sx2 - correction;
    a.ssi = row_part - correction;
    a.ssj = col_part - correction;
    a.ssij = a.ss - a.ssi - a.ssj;
    if (a.ssij < 0.0) {
        // Rounding on exactly additive tables; anything larger is a real defect of
        // the unadjusted sums on a severely unbalanced design.
        if (a.ssij < -1e-9 * std::max(1.0, a.ss)) {
            throw NumericError("anova_icc", "negative interaction sum of squares (" +
                                                std::to_string(a.ssij) +
                                                "): design too unbalanced");
        }
        a.ssij = 0.0;
    }

    // Report sums in the original (unshifted) units.
    for (std::size_t i = 0; i < m; ++i) a.row_sums[i] += grand * static_cast<double>(a.row_counts[i]);
    for (std::size_t j = 0; j < n; ++j) a.col_sums[j] += grand * static_cast<double>(a.col_counts[j]);

    a.msi = a.ssi / a.dfi;
    a.msj = a.ssj / a.dfj;
    a.vij = a.ssij / a.dfij;
    a.vi = std::max(0.0, (a.msi - a.vij) / static_cast<double>(n));
    a.vj = std::max(0.0, (a.msj - a.vij) / static_cast<double>(m));
    return a;
}

double icc_of(const AnovaDecomposition& a) {
    if (a.vi == 0.0 && a.vij == 0.0) {
        throw NumericError("anova_icc", "ICC undefined: row effect and interaction variance are both zero");
    }
    return a.vi / (a.vi + a.vij / static_cast<double>(a.cols));
}

double table_icc(const DataTable& table) { return icc_of(anova(table)); }

IccReport icc_report(const DataTable& table, std::span<const double> conf_probs) {
    for (double p : conf_probs) {
        if (!(p > 0.0 && p < 1.0)) {
            throw PreconditionError("anova_icc", "confidence probabilities must lie in (0, 1)");
        }
    }
    IccReport r;
    r.anova = anova(table);
    const auto& a = r.anova;
    r.icc = icc_of(a);
    constexpr double inf = std::numeric_limits<double>::infinity();
    r.q = a.vij > 0.0 ? a.vi / a.vij : inf;
    r.f_obs = a.vij > 0.0 ? a.msi / a.vij : inf;
    r.pmiss = table.missing_proportion();
    r.icc_cor = corrected_icc(r.icc, r.pmiss);
    r.column_effect_warning = a.vj > std::min(a.vij, a.vi) && r.pmiss > 0.05;
    r.item_means.resize(a.rows);
    for (std::size_t i = 0; i < a.rows; ++i) {
        r.item_means[i] = a.row_sums[i] / static_cast<double>(a.row_counts[i]);
    }
    for (double p : conf_probs) {
        const double level = 1.0 - (1.0 - p) / 2.0;
        ConfidenceInterval ci{p, 1.0, 1.0};
        if (std::isfinite(r.f_obs)) {
            const double q1 = f_quantile(level, a.dfi, a.dfij);
            const double q2 = f_quantile(level, a.dfij, a.dfi);
            ci.lower = 1.0 - q1 / r.f_obs;
            ci.upper = 1.0 - 1.0 / (q2 * r.f_obs);
        }
        r.conf.push_back(ci);
    }
    return r;
}

namespace {

double correct(double icc_p, double p) { return icc_p / (1.0 - p * (1.0 - icc_p)); }

}  // namespace

double corrected_icc(double icc_p, double p) {
    if (!(icc_p >= 0.0 && icc_p <= 1.0) || !(p >= 0.0 && p < 1.0)) {
        throw PreconditionError("anova_icc", "corrected_icc requires icc in [0,1] and p in [0,1)");
    }
    return correct(icc_p, p);
}

ConfidenceInterval corrected_interval(const ConfidenceInterval& interval, double p) {
    if (!(p >= 0.0 && p < 1.0)) {
        throw PreconditionError("anova_icc", "missing proportion must lie in [0,1)");
    }
    // Bounds may fall outside [0, 1]; the formula is applied as is.
    return {interval.probability, correct(interval.lower, p), correct(interval.upper, p)};
}

double expected_icc(double q, std::size_t group_size) {
    if (!(q >= 0.0) || group_size == 0) {
        throw PreconditionError("anova_icc", "expected_icc requires q >= 0 and group size >= 1");
    }
    if (std::isinf(q)) return 1.0;
    const double qg = q * static_cast<double>(group_size);
    return qg / (qg + 1.0);
}

}  // namespace crari
