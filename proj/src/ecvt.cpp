#include "crari/ecvt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "crari/anova.hpp"
#include "crari/error.hpp"
#include "crari/quantile.hpp"
#include "crari/resampling.hpp"
#include "crari/stats.hpp"

namespace crari {

namespace {

constexpr double kDegenerateSd = 1e-12;

struct Spread {
    double mean = 0.0;
    double sd = 0.0;
};

double to_scale(double r, bool fisher_z) {
    if (!fisher_z) return r;
    constexpr double kEdge = 1.0 - 1e-15;
    return std::atanh(std::clamp(r, -kEdge, kEdge));
}

Spread split_correlations(const DataTable& table, std::size_t g, std::size_t resamples,
                          bool fisher_z, Rng& rng) {
    GroupSampler sampler(table.cols());
    std::vector<double> first(table.rows());
    std::vector<double> second(table.rows());
    std::vector<double> rs(resamples);
    for (auto& r : rs) {
        sampler.draw(g, rng);
        group_item_means(table, sampler.first(), first);
        group_item_means(table, sampler.second(), second);
        const double value = pearson(first, second);
        if (std::isnan(value)) {
            throw NumericError("ecvt", "item-mean vector with zero variance at group size " +
                                           std::to_string(g));
        }
        r = to_scale(value, fisher_z);
    }
    return {mean(rs), sample_sd(rs)};
}

}  // namespace

DataTable additive_surrogate(const DataTable& table, Rng& rng) {
    if (!table.is_complete()) {
        throw PreconditionError("ecvt", "surrogate needs a complete table");
    }
    const std::size_t m = table.rows();
    const std::size_t n = table.cols();
    const auto row_means = table.row_means();
    const auto col_means = table.col_means();
    const double grand = mean(row_means);
    std::vector<double> values(m * n);
    std::vector<double> residuals(n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            residuals[j] = table.value(i, j) - row_means[i] - col_means[j] + grand;
        }
        rng.shuffle(std::span<double>(residuals));
        for (std::size_t j = 0; j < n; ++j) {
            values[i * n + j] = row_means[i] + col_means[j] - grand + residuals[j];
        }
    }
    return DataTable::complete(m, n, std::move(values));
}

EcvtReport ecvt(const DataTable& table, Rng& rng, const EcvtOptions& options) {
    if (!table.is_complete()) {
        throw PreconditionError("ecvt", "table has " + std::to_string(table.missing_count()) +
                                            " missing cells; impute them first (e.g. CRARI)");
    }
    if (options.resamples < 2) throw PreconditionError("ecvt", "need at least 2 resamples");
    if (!(options.alpha > 0.0 && options.alpha < 1.0)) {
        throw PreconditionError("ecvt", "alpha must lie in (0, 1)");
    }
    EcvtReport report;
    report.group_sizes = options.group_sizes.empty() ? default_group_sizes(table.cols())
                                                     : options.group_sizes;
    for (std::size_t g : report.group_sizes) {
        if (g == 0 || 2 * g > table.cols()) {
            throw PreconditionError("ecvt", "group size " + std::to_string(g) +
                                                " invalid for " + std::to_string(table.cols()) +
                                                " participants (need 1 <= g <= n/2)");
        }
    }
    report.resamples = options.resamples;
    report.alpha = options.alpha;
    report.fisher_z = options.fisher_z;

    const auto decomposition = anova(table);
    report.icc = icc_of(decomposition);
    report.q = decomposition.vij > 0.0 ? decomposition.vi / decomposition.vij
                                       : std::numeric_limits<double>::infinity();

    // Fixed sub-streams keep the report independent of evaluation order.
    const Rng root(rng.next_u64());
    Rng surrogate_rng = root.split(0);
    const DataTable surrogate = additive_surrogate(table, surrogate_rng);

    const double b = static_cast<double>(options.resamples);
    const double dispersion_scale = std::sqrt(4.0 / (b - 1.0));
    for (std::size_t k = 0; k < report.group_sizes.size(); ++k) {
        const std::size_t g = report.group_sizes[k];
        Rng observed_rng = root.split(2 * k + 1);
        Rng reference_rng = root.split(2 * k + 2);
        const Spread observed = split_correlations(table, g, options.resamples, options.fisher_z,
                                                   observed_rng);
        const Spread reference = split_correlations(surrogate, g, options.resamples,
                                                    options.fisher_z, reference_rng);
        const double predicted = expected_icc(report.q, g);
        report.observed_mean_r.push_back(observed.mean);
        report.observed_sd_r.push_back(observed.sd);
        report.reference_sd_r.push_back(reference.sd);
        report.predicted_r.push_back(options.fisher_z ? to_scale(predicted, true) : predicted);

        double mean_term = 0.0;
        if (observed.sd > kDegenerateSd) {
            mean_term = (observed.mean - report.predicted_r.back()) / (observed.sd / std::sqrt(b));
            report.chi2 += mean_term * mean_term;
            ++report.df;
        } else {
            report.warnings.push_back("group size " + std::to_string(g) +
                                      ": zero spread of observed correlations, mean term dropped");
        }
        double dispersion_term = 0.0;
        if (observed.sd > kDegenerateSd && reference.sd > kDegenerateSd) {
            dispersion_term = 2.0 * std::log(observed.sd / reference.sd) / dispersion_scale;
            report.chi2 += dispersion_term * dispersion_term;
            ++report.df;
        } else {
            report.warnings.push_back("group size " + std::to_string(g) +
                                      ": zero spread of correlations, dispersion term dropped");
        }
        report.mean_term.push_back(mean_term);
        report.dispersion_term.push_back(dispersion_term);
    }
    report.p_value = report.df > 0 ? chi2_upper_tail(report.chi2, report.df) : 1.0;
    report.compatible = report.p_value > options.alpha;
    return report;
}

}  // namespace crari
