#include "crari/imputation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "crari/anova.hpp"
#include "crari/error.hpp"
#include "crari/synth.hpp"

namespace crari {

namespace {

double mean_of(std::span<const double> xs) {
    double sum = 0.0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

}  // namespace

std::vector<double> ari_adjust(std::span<const double> donors, double valid_mean) {
    const double donor_mean = mean_of(donors);
    std::vector<double> out(donors.size());
    for (std::size_t k = 0; k < donors.size(); ++k) out[k] = donors[k] - donor_mean + valid_mean;
    return out;
}

DataTable ari_impute(const DataTable& table, Rng& rng) {
    const std::size_t n = table.cols();
    std::vector<double> values = table.values();
    std::vector<double> valid;
    std::vector<double> donors;
    for (std::size_t i = 0; i < table.rows(); ++i) {
        auto mask = table.row_mask(i);
        auto row = table.row_values(i);
        valid.clear();
        donors.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (!mask[j]) valid.push_back(row[j]);
        }
        if (valid.size() == n) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (mask[j]) donors.push_back(valid[rng.index(valid.size())]);
        }
        const auto filled = ari_adjust(donors, mean_of(valid));
        std::size_t next = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (mask[j]) values[i * n + j] = filled[next++];
        }
    }
    std::vector<std::uint8_t> none(values.size(), 0);
    return {table.rows(), n, std::move(values), std::move(none)};
}

CrariFill::CrariFill(const DataTable& table, Rng& rng)
    : source_(table), row_means_(table.row_means()), centred_(table.cell_count(), 0.0) {
    const std::size_t m = table.rows();
    const std::size_t n = table.cols();

    // Column-wise ARI.
    std::vector<std::size_t> valid_rows;
    std::vector<double> donors;
    for (std::size_t j = 0; j < n; ++j) {
        valid_rows.clear();
        donors.clear();
        double valid_sum = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (!table.is_missing(i, j)) {
                valid_rows.push_back(i);
                valid_sum += table.value(i, j);
            }
        }
        if (valid_rows.size() == m) continue;
        for (std::size_t i = 0; i < m; ++i) {
            if (table.is_missing(i, j)) {
                donors.push_back(table.value(valid_rows[rng.index(valid_rows.size())], j));
            }
        }
        const auto filled = ari_adjust(donors, valid_sum / static_cast<double>(valid_rows.size()));
        std::size_t next = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (table.is_missing(i, j)) centred_[i * n + j] = filled[next++];
        }
    }

    // Centre the filled values of each row on zero.
    for (std::size_t i = 0; i < m; ++i) {
        auto mask = table.row_mask(i);
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (mask[j]) {
                sum += centred_[i * n + j];
                ++count;
            }
        }
        if (count == 0) continue;
        const double mean = sum / static_cast<double>(count);
        for (std::size_t j = 0; j < n; ++j) {
            if (mask[j]) centred_[i * n + j] -= mean;
        }
    }
}

DataTable CrariFill::candidate(double c) const {
    const std::size_t n = source_.cols();
    std::vector<double> values = source_.values();
    const auto& mask = source_.mask();
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (mask[k]) values[k] = row_means_[k / n] + c * centred_[k];
    }
    std::vector<std::uint8_t> none(values.size(), 0);
    return {source_.rows(), n, std::move(values), std::move(none)};
}

namespace {

double max_mean_drift(const DataTable& input, const DataTable& imputed) {
    double worst = 0.0;
    for (std::size_t i = 0; i < input.rows(); ++i) {
        worst = std::max(worst, std::fabs(input.row_mean(i) - imputed.row_mean(i)));
    }
    return worst;
}

DataTable fill_row_means(const DataTable& table) {
    const std::size_t n = table.cols();
    std::vector<double> values = table.values();
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (table.mask()[k]) values[k] = table.row_mean(k / n);
    }
    std::vector<std::uint8_t> none(values.size(), 0);
    return {table.rows(), n, std::move(values), std::move(none)};
}

}  // namespace

ImputationOutcome crari_impute(const DataTable& table, const IccTarget& target, Rng& rng,
                               const CrariOptions& options) {
    if (!(options.c_max > 0.0) || !(options.c_tolerance > 0.0)) {
        throw PreconditionError("imputation", "c_max and c_tolerance must be positive");
    }
    const auto report = icc_report(table, {});
    ImputationOutcome out{.imputed = table, .warnings = {}};
    out.icc_before = report.icc;
    out.icc_cor = report.icc_cor;
    out.pmiss = report.pmiss;
    switch (target.kind) {
        case IccTarget::Kind::Low: out.target = report.icc; break;
        case IccTarget::Kind::Corrected: out.target = report.icc_cor; break;
        case IccTarget::Kind::Explicit: out.target = target.value; break;
    }
    if (target.kind == IccTarget::Kind::Corrected && report.column_effect_warning) {
        out.column_effect_warning = true;
        out.warnings.emplace_back("Non-negligible column effect: target ICC possibly biased");
    }

    if (table.is_complete()) {
        out.icc_after = report.icc;
        return out;
    }

    if (table.max_missing_per_row() < 2) {
        out.deterministic = true;
        out.imputed = fill_row_means(table);
        out.icc_after = table_icc(out.imputed);
        out.warnings.emplace_back(
            "Deterministic imputation (at most one missing cell per row): target ICC not enforced");
    } else {
        const CrariFill fill(table, rng);
        const double icc_at_zero = table_icc(fill.candidate(0.0));
        const double icc_at_max = table_icc(fill.candidate(options.c_max));
        if (icc_at_zero < icc_at_max) {
            throw UnreachableTargetError("ICC is not decreasing in c (ICC(0) = " + fmt(icc_at_zero) +
                                             " < ICC(c_max) = " + fmt(icc_at_max) + ")",
                                         icc_at_max, icc_at_zero);
        }
        if (!(out.target >= icc_at_max && out.target <= icc_at_zero)) {
            throw UnreachableTargetError("target ICC " + fmt(out.target) +
                                             " outside reachable range [" + fmt(icc_at_max) + ", " +
                                             fmt(icc_at_zero) + "]",
                                         icc_at_max, icc_at_zero);
        }
        double c_min = 0.0;
        double c_max = options.c_max;
        do {
            const double c = 0.5 * (c_min + c_max);
            out.imputed = fill.candidate(c);
            out.icc_after = table_icc(out.imputed);
            out.c = c;
            ++out.iterations;
            if (out.icc_after > out.target) {
                c_min = c;
            } else {
                c_max = c;
            }
        } while (c_max - c_min >= options.c_tolerance);
    }

    out.max_item_mean_drift = max_mean_drift(table, out.imputed);
    if (out.max_item_mean_drift > 1e-9) {
        out.warnings.push_back("Item mean inaccuracy: " + fmt(out.max_item_mean_drift));
    }
    return out;
}

std::vector<AriBiasRow> ari_bias_demo(const DataTable& table, std::span<const double> p_grid,
                                      std::size_t replications, Rng& rng, bool rezscore) {
    if (!table.is_complete()) {
        throw PreconditionError("imputation", "ari_bias_demo needs a complete reference table");
    }
    if (replications == 0) throw PreconditionError("imputation", "replications must be positive");
    const double exact = table_icc(table);
    std::vector<AriBiasRow> rows;
    for (double p : p_grid) {
        AriBiasRow row{p, exact, 0.0, 0.0, 0.0};
        for (std::size_t r = 0; r < replications; ++r) {
            DataTable degraded = degrade_random(table, p, rng);
            if (rezscore) degraded = zscore(degraded);
            const auto report = icc_report(degraded, {});
            row.icc_missing += report.icc;
            row.icc_cor += report.icc_cor;
            row.icc_ari += table_icc(ari_impute(degraded, rng));
        }
        const double k = static_cast<double>(replications);
        row.icc_missing /= k;
        row.icc_cor /= k;
        row.icc_ari /= k;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace crari
