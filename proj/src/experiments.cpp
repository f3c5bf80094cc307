#include "crari/experiments.hpp"

#include <cmath>
#include <limits>

#include "crari/anova.hpp"
#include "crari/error.hpp"
#include "crari/imputation.hpp"
#include "crari/model_fit.hpp"
#include "crari/stats.hpp"

namespace crari {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> grid(double last, double step) {
    std::vector<double> out;
    for (int k = 0; k * step <= last + 1e-12; ++k) out.push_back(std::round(k * step * 1e9) / 1e9);
    return out;
}

CurveTable fig2(const ExperimentSpec& spec, const std::vector<double>& ps, Rng& rng) {
    const DataTable z = zscore(generate(spec.synth).table);
    const auto rows = ari_bias_demo(z, ps, spec.replications, rng, true);
    CurveTable out{{"p", "exact", "missing", "imputed_ari", "estimate"}, {}};
    out.data.resize(out.columns.size());
    for (const auto& r : rows) {
        out.data[0].push_back(r.p);
        out.data[1].push_back(r.icc_exact);
        out.data[2].push_back(r.icc_missing);
        out.data[3].push_back(r.icc_ari);
        out.data[4].push_back(r.icc_cor);
    }
    return out;
}

CurveTable fig3(const ExperimentSpec& spec, const std::vector<double>& ps, Rng& rng) {
    Rng offsets = rng.split(1);
    Rng mixing = rng.split(2);
    Rng degrading = rng.split(3);
    const DataTable raw = add_column_offsets(generate(spec.synth).table, spec.column_offset_sd, offsets);

    // Each version is recomputed from the (possibly degraded) raw table.
    auto version = [&](int v, const DataTable& t) -> DataTable {
        switch (v) {
            case 0: return t;
            case 1: return center_columns(t);
            case 2: return zscore(t);
            default: return mix_rows(zscore(t), mixing);
        }
    };
    const char* names[] = {"noncentered", "centered", "zscores", "mixed"};
    CurveTable out;
    out.columns.emplace_back("p");
    for (const char* n : names) {
        out.columns.push_back(std::string(n) + "_exact");
        out.columns.push_back(std::string(n) + "_missing");
        out.columns.push_back(std::string(n) + "_estimate");
    }
    out.data.resize(out.columns.size());
    double exact[4];
    for (int v = 0; v < 4; ++v) exact[v] = table_icc(version(v, raw));
    for (double p : ps) {
        double missing[4] = {0, 0, 0, 0};
        double estimate[4] = {0, 0, 0, 0};
        for (std::size_t r = 0; r < spec.replications; ++r) {
            const DataTable degraded = degrade_random(raw, p, degrading);
            for (int v = 0; v < 4; ++v) {
                const auto rep = icc_report(version(v, degraded), {});
                missing[v] += rep.icc;
                estimate[v] += rep.icc_cor;
            }
        }
        const double k = static_cast<double>(spec.replications);
        out.data[0].push_back(p);
        for (int v = 0; v < 4; ++v) {
            out.data[1 + 3 * v].push_back(exact[v]);
            out.data[2 + 3 * v].push_back(missing[v] / k);
            out.data[3 + 3 * v].push_back(estimate[v] / k);
        }
    }
    return out;
}

CurveTable crari_sweep(const ExperimentSpec& spec, const std::vector<double>& ps, Rng& rng,
                       bool with_item_means) {
    const DataTable z = zscore(generate(spec.synth).table);
    const double exact = table_icc(z);
    const auto reference_means = z.row_means();
    CurveTable out{{"p", "exact", "missing", "estimate", "imputed", "c"}, {}};
    if (with_item_means) out.columns.emplace_back("r_item_means");
    out.data.resize(out.columns.size());
    for (double p : ps) {
        double missing = 0.0, estimate = 0.0, imputed = 0.0, c = 0.0, r_means = 0.0;
        std::size_t reached = 0;
        for (std::size_t r = 0; r < spec.replications; ++r) {
            const DataTable degraded = zscore(degrade_random(z, p, rng));
            const auto rep = icc_report(degraded, {});
            missing += rep.icc;
            estimate += rep.icc_cor;
            if (with_item_means) r_means += pearson(reference_means, rep.item_means);
            try {
                const auto outcome = crari_impute(degraded, IccTarget::corrected(), rng);
                imputed += outcome.icc_after;
                c += outcome.c;
                ++reached;
            } catch (const UnreachableTargetError&) {
                // Reported as NaN below when no replication reached the target.
            }
        }
        const double k = static_cast<double>(spec.replications);
        out.data[0].push_back(p);
        out.data[1].push_back(exact);
        out.data[2].push_back(missing / k);
        out.data[3].push_back(estimate / k);
        out.data[4].push_back(reached ? imputed / static_cast<double>(reached) : kNaN);
        out.data[5].push_back(reached ? c / static_cast<double>(reached) : kNaN);
        if (with_item_means) out.data[6].push_back(r_means / k);
    }
    return out;
}

CurveTable fig11(const ExperimentSpec& spec, const std::vector<double>& ps, Rng& rng) {
    const auto synth = generate(spec.synth);
    Rng noise = rng.split(1);
    std::vector<double> predictor(synth.beta.size());
    for (std::size_t i = 0; i < predictor.size(); ++i) {
        predictor[i] = synth.beta[i] + noise.normal(0.0, spec.predictor_noise_sd);
    }
    const DataTable z = zscore(synth.table);
    Rng sweep = rng.split(2);
    const auto rows = r2cor_bias_demo(z, predictor, ps, spec.replications, sweep, true);
    CurveTable out{{"p", "exact", "observed", "estimate", "estimate_sd"}, {}};
    out.data.resize(out.columns.size());
    for (const auto& r : rows) {
        out.data[0].push_back(r.p);
        out.data[1].push_back(r.r2_exact);
        out.data[2].push_back(r.r2_observed);
        out.data[3].push_back(r.r2_cor);
        out.data[4].push_back(r.r2_cor_sd);
    }
    return out;
}

}  // namespace

const std::vector<double>& CurveTable::column(const std::string& name) const {
    for (std::size_t k = 0; k < columns.size(); ++k) {
        if (columns[k] == name) return data[k];
    }
    throw PreconditionError("experiment", "no column named '" + name + "'");
}

std::vector<std::string> experiment_names() { return {"fig2", "fig3", "fig4", "fig9", "fig11"}; }

std::vector<double> default_p_grid(const std::string& name) {
    if (name == "fig9" || name == "fig11") return grid(0.9, 0.1);
    return grid(0.3, 0.05);
}

CurveTable run_experiment(const ExperimentSpec& spec) {
    if (spec.replications == 0) throw PreconditionError("experiment", "replications must be positive");
    const auto ps = spec.p_grid.empty() ? default_p_grid(spec.name) : spec.p_grid;
    Rng rng = Rng(spec.synth.seed).split(0xE);
    if (spec.name == "fig2") return fig2(spec, ps, rng);
    if (spec.name == "fig3") return fig3(spec, ps, rng);
    if (spec.name == "fig4") return crari_sweep(spec, ps, rng, false);
    if (spec.name == "fig9") return crari_sweep(spec, ps, rng, true);
    if (spec.name == "fig11") return fig11(spec, ps, rng);
    throw PreconditionError("experiment", "unknown experiment '" + spec.name + "'");
}

}  // namespace crari
