#include "crari/model_fit.hpp"

#include <cmath>
#include <string>

#include "crari/error.hpp"
#include "crari/resampling.hpp"
#include "crari/stats.hpp"
#include "crari/synth.hpp"

namespace crari {

double r2_on_icc(double r2, double icc) {
    if (!(icc > 0.0)) throw NumericError("model_fit", "ICC is zero; r2/ICC undefined");
    return r2 / icc;
}

double r2_corrected(double r2, double icc, double icc_cor) { return icc_cor * r2_on_icc(r2, icc); }

PredictorFit fit_predictors(const DataTable& table,
                            std::span<const std::vector<double>> predictors,
                            std::span<const double> conf_probs) {
    PredictorFit fit;
    fit.icc_context = icc_report(table, conf_probs);
    const auto& ctx = fit.icc_context;
    if (ctx.column_effect_warning) {
        fit.warnings.emplace_back("Non-negligible column effect: *Cor statistics not reliable");
    }
    if (!(ctx.icc > 0.0)) {
        throw NumericError("model_fit", "ICC is zero; r2/ICC undefined");
    }
    for (std::size_t k = 0; k < predictors.size(); ++k) {
        const auto& predictor = predictors[k];
        if (predictor.size() != table.rows()) {
            throw StructuralError("model_fit", "predictor " + std::to_string(k + 1) + " has " +
                                                   std::to_string(predictor.size()) +
                                                   " values for " + std::to_string(table.rows()) +
                                                   " items");
        }
        const double r = pearson(ctx.item_means, predictor);
        if (std::isnan(r)) {
            throw NumericError("model_fit", "predictor " + std::to_string(k + 1) +
                                                " (or the item means) is constant");
        }
        const double r2 = r * r;
        fit.r2.push_back(r2);
        fit.r2_on_icc.push_back(r2_on_icc(r2, ctx.icc));
        fit.r2_cor.push_back(r2_corrected(r2, ctx.icc, ctx.icc_cor));
        fit.overfit_flag.push_back(fit.r2_on_icc.back() > 1.0);
        if (fit.overfit_flag.back()) {
            fit.warnings.push_back("predictor " + std::to_string(k + 1) +
                                   ": r2/ICC > 1, possible over-fitting");
        }
    }
    return fit;
}

std::vector<R2IccPoint> r2_icc_curve(const DataTable& table, std::span<const double> predictor,
                                     std::span<const std::size_t> group_sizes,
                                     std::size_t resamples, Rng& rng) {
    if (predictor.size() != table.rows()) {
        throw StructuralError("model_fit", "predictor length does not match item count");
    }
    if (resamples == 0) throw PreconditionError("model_fit", "resamples must be positive");
    const std::size_t m = table.rows();
    GroupSampler sampler(table.cols());
    std::vector<double> first(m);
    std::vector<double> second(m);
    std::vector<R2IccPoint> curve;
    for (std::size_t g : group_sizes) {
        if (g == 0 || 2 * g > table.cols()) {
            throw PreconditionError("model_fit", "group size " + std::to_string(g) +
                                                     " invalid for " +
                                                     std::to_string(table.cols()) + " participants");
        }
        R2IccPoint point{g};
        for (std::size_t b = 0; b < resamples; ++b) {
            sampler.draw(g, rng);
            group_item_means(table, sampler.first(), first);
            group_item_means(table, sampler.second(), second);
            std::size_t excluded = 0;
            for (std::size_t i = 0; i < m; ++i) {
                excluded += (std::isnan(first[i]) || std::isnan(second[i])) ? 1 : 0;
            }
            const double r_split = pearson_pairwise(first, second);
            const double r_pred = pearson_pairwise(first, predictor);
            if (std::isnan(r_split) || std::isnan(r_pred)) {
                throw NumericError("model_fit", "degenerate resample at group size " +
                                                    std::to_string(g));
            }
            point.icc += r_split;
            point.r2 += r_pred * r_pred;
            point.excluded_items += static_cast<double>(excluded);
        }
        const double k = static_cast<double>(resamples);
        point.icc /= k;
        point.r2 /= k;
        point.excluded_items /= k;
        point.ratio = point.r2 / point.icc;
        curve.push_back(point);
    }
    return curve;
}

std::vector<R2CorBiasRow> r2cor_bias_demo(const DataTable& table, std::span<const double> predictor,
                                          std::span<const double> p_grid, std::size_t replications,
                                          Rng& rng, bool rezscore) {
    if (!table.is_complete()) {
        throw PreconditionError("model_fit", "r2cor_bias_demo needs a complete reference table");
    }
    if (replications == 0) throw PreconditionError("model_fit", "replications must be positive");
    const std::vector<std::vector<double>> predictors{{predictor.begin(), predictor.end()}};
    const double exact = fit_predictors(table, predictors, {}).r2.front();
    std::vector<R2CorBiasRow> rows;
    std::vector<double> cor_values(replications);
    for (double p : p_grid) {
        R2CorBiasRow row{p, exact};
        for (std::size_t r = 0; r < replications; ++r) {
            DataTable degraded = degrade_random(table, p, rng);
            if (rezscore) degraded = zscore(degraded);
            const auto fit = fit_predictors(degraded, predictors, {});
            row.r2_observed += fit.r2.front();
            cor_values[r] = fit.r2_cor.front();
        }
        row.r2_observed /= static_cast<double>(replications);
        row.r2_cor = mean(cor_values);
        row.r2_cor_sd = sample_sd(cor_values);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace crari
