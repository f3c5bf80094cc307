#include "crari/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "crari/anova.hpp"
#include "crari/csv.hpp"
#include "crari/ecvt.hpp"
#include "crari/error.hpp"
#include "crari/experiments.hpp"
#include "crari/imputation.hpp"
#include "crari/model_fit.hpp"
#include "crari/report.hpp"
#include "crari/resampling.hpp"
#include "crari/synth.hpp"

#ifndef CRARI_VERSION
#define CRARI_VERSION "0.0.0"
#endif

namespace crari {

namespace {

constexpr int kUsageExit = static_cast<int>(ErrorKind::Precondition);

const std::vector<std::string> kCommands = {"icc", "impute", "ecvt", "fit", "synth", "experiment"};

std::optional<double> parse_double(const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

IccTarget parse_target(const std::string& s) {
    if (s == "low") return IccTarget::low();
    if (s == "corrected") return IccTarget::corrected();
    const auto v = parse_double(s);
    if (!v || !(*v > 0.0 && *v < 1.0)) {
        throw PreconditionError("cli", "--target must be low, corrected or a number in (0, 1), got '" + s + "'");
    }
    return IccTarget::explicit_value(*v);
}

void require(bool ok, const std::string& what) {
    if (!ok) throw PreconditionError("cli", what);
}

std::string join(const std::vector<std::string>& xs, const char* sep) {
    std::string s;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (k) s += sep;
        s += xs[k];
    }
    return s;
}

bool uses_table_input(const std::string& c) { return c == "icc" || c == "impute" || c == "ecvt" || c == "fit"; }
bool uses_synth(const std::string& c) { return c == "synth" || c == "experiment"; }

void header(Report& r, const RunConfig& cfg) {
    r.section("crari");
    r.add("version", CRARI_VERSION);
    r.add("command", cfg.command);
    r.section("config");
    r.add("seed", std::to_string(cfg.seed));
    if (uses_table_input(cfg.command)) {
        r.add("input", cfg.input);
        r.add("missing_code", cfg.missing_code);
        r.add("zscore", cfg.zscore);
        r.add("mix", cfg.mix);
        r.add("virtualize", cfg.virtualize);
    }
    if (cfg.command != "ecvt") r.add("output", cfg.output);
    if (cfg.command == "icc" || cfg.command == "fit") r.add("conf", std::span<const double>(cfg.conf));
    if (cfg.command == "impute") {
        r.add("target", cfg.target);
        r.add("c_max", cfg.c_max);
        r.add("c_tolerance", cfg.c_tolerance);
    }
    if (cfg.command == "ecvt") {
        r.add("groups", std::span<const std::size_t>(cfg.groups));
        r.add("resamples", cfg.resamples);
        r.add("alpha", cfg.alpha);
        r.add("fisher_z", cfg.fisher_z);
    }
    if (cfg.command == "ecvt" || cfg.command == "fit") r.add("curve", cfg.curve);
    if (cfg.command == "fit") {
        r.add("predictors", cfg.predictors);
        r.add("groups", std::span<const std::size_t>(cfg.groups));
        r.add("resamples", cfg.resamples);
    }
    if (uses_synth(cfg.command)) {
        r.add("rows", cfg.rows);
        r.add("cols", cfg.cols);
        r.add("mu", cfg.mu);
        r.add("sigma_beta", cfg.sigma_beta);
        r.add("sigma_eps", cfg.sigma_eps);
        r.add("s", cfg.s);
    }
    if (cfg.command == "synth") {
        r.add("degrade", cfg.degrade);
        r.add("zscore", cfg.zscore);
        r.add("missing_code", cfg.missing_code);
        r.add("truth", cfg.truth);
    }
    if (cfg.command == "experiment") {
        r.add("experiment", cfg.experiment);
        r.add("p_grid", std::span<const double>(cfg.p_grid));
        r.add("replications", cfg.replications);
    }
}

void add_warnings(Report& r, const std::vector<std::string>& warnings) {
    r.section("warnings");
    r.add("count", warnings.size());
    for (std::size_t k = 0; k < warnings.size(); ++k) r.add("warning." + std::to_string(k + 1), warnings[k]);
}

void add_icc(Report& r, const IccReport& rep) {
    r.add("q", rep.q);
    r.add("icc", rep.icc);
    for (const auto& ci : rep.conf) {
        const double b[] = {ci.lower, ci.upper};
        r.add("conf." + format_number(ci.probability), std::span<const double>(b));
    }
    r.add("pmiss", rep.pmiss);
    r.add("iccCor", rep.icc_cor);
    for (const auto& ci : rep.conf) {
        const auto cc = corrected_interval(ci, rep.pmiss);
        const double b[] = {cc.lower, cc.upper};
        r.add("confCor." + format_number(ci.probability), std::span<const double>(b));
    }
    r.add("f_obs", rep.f_obs);
    r.add("column_effect_warning", rep.column_effect_warning);
}

std::vector<std::string> icc_warnings(const IccReport& rep, const char* suffix) {
    if (!rep.column_effect_warning) return {};
    return {std::string("Non-negligible column effect: ") + suffix};
}

DataTable load_input(const RunConfig& cfg, Rng& root) {
    DataTable table = load_csv(cfg.input, MissingCode{cfg.missing_code});
    if (cfg.zscore) table = zscore(table);
    if (cfg.mix) {
        Rng r = root.split(1);
        table = mix_rows(table, r);
    }
    if (cfg.virtualize) {
        Rng r = root.split(2);
        table = virtualize(table, r);
    }
    return table;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw PreconditionError("cli", "cannot open '" + path + "' for writing");
    return f;
}

void cmd_icc(const RunConfig& cfg, Report& r, Rng& root) {
    const DataTable table = load_input(cfg, root);
    const auto rep = icc_report(table, cfg.conf);
    r.section("result");
    r.add("rows", table.rows());
    r.add("cols", table.cols());
    add_icc(r, rep);
    add_warnings(r, icc_warnings(rep, "*Cor statistics not reliable"));
    if (!cfg.output.empty()) {
        auto f = open_output(cfg.output);
        write_columns_csv(f, {"item_mean"}, {rep.item_means});
    }
}

void cmd_impute(const RunConfig& cfg, Report& r, Rng& root) {
    const DataTable table = load_input(cfg, root);
    const IccTarget target = parse_target(cfg.target);
    Rng rng = root.split(3);
    const auto outcome = crari_impute(table, target, rng, CrariOptions{cfg.c_max, cfg.c_tolerance});
    save_csv(outcome.imputed, cfg.output);
    r.section("result");
    r.add("rows", table.rows());
    r.add("cols", table.cols());
    r.add("pmiss", outcome.pmiss);
    r.add("icc", outcome.icc_before);
    r.add("iccCor", outcome.icc_cor);
    r.add("target", outcome.target);
    r.add("c", outcome.c);
    r.add("icc_after", outcome.icc_after);
    r.add("deterministic", outcome.deterministic);
    r.add("iterations", outcome.iterations);
    r.add("max_item_mean_drift", outcome.max_item_mean_drift);
    r.add("column_effect_warning", outcome.column_effect_warning);
    add_warnings(r, outcome.warnings);
}

void cmd_ecvt(const RunConfig& cfg, Report& r, Rng& root) {
    const DataTable table = load_input(cfg, root);
    Rng rng = root.split(3);
    EcvtOptions opt;
    opt.group_sizes = cfg.groups;
    opt.resamples = cfg.resamples;
    opt.alpha = cfg.alpha;
    opt.fisher_z = cfg.fisher_z;
    const auto rep = ecvt(table, rng, opt);
    r.section("result");
    r.add("q", rep.q);
    r.add("icc", rep.icc);
    r.add("group_sizes", std::span<const std::size_t>(rep.group_sizes));
    r.add("predicted_r", std::span<const double>(rep.predicted_r));
    r.add("observed_mean_r", std::span<const double>(rep.observed_mean_r));
    r.add("observed_sd_r", std::span<const double>(rep.observed_sd_r));
    r.add("reference_sd_r", std::span<const double>(rep.reference_sd_r));
    r.add("chi2", rep.chi2);
    r.add("df", rep.df);
    r.add("p_value", rep.p_value);
    r.add("compatible", rep.compatible);
    add_warnings(r, rep.warnings);
    if (!cfg.curve.empty()) {
        std::vector<double> g(rep.group_sizes.begin(), rep.group_sizes.end());
        auto f = open_output(cfg.curve);
        write_columns_csv(f, {"g", "predicted", "observed_mean", "observed_sd", "reference_sd"},
                          {g, rep.predicted_r, rep.observed_mean_r, rep.observed_sd_r, rep.reference_sd_r});
    }
}

void cmd_fit(const RunConfig& cfg, Report& r, Rng& root) {
    const DataTable table = load_input(cfg, root);
    const NumericGrid grid = load_matrix_csv(cfg.predictors);
    std::vector<std::vector<double>> predictors;
    for (std::size_t j = 0; j < grid.cols; ++j) predictors.push_back(grid.column(j));
    const auto fit = fit_predictors(table, predictors, cfg.conf);
    r.section("result");
    r.add("rows", table.rows());
    r.add("cols", table.cols());
    add_icc(r, fit.icc_context);
    r.add("r2", std::span<const double>(fit.r2));
    r.add("r2onICC", std::span<const double>(fit.r2_on_icc));
    r.add("r2Cor", std::span<const double>(fit.r2_cor));
    std::string flags;
    for (std::size_t k = 0; k < fit.overfit_flag.size(); ++k) {
        if (k) flags += ',';
        flags += fit.overfit_flag[k] ? "true" : "false";
    }
    r.add("overfit", flags);
    add_warnings(r, fit.warnings);
    if (!cfg.curve.empty()) {
        const auto sizes = cfg.groups.empty() ? default_group_sizes(table.cols()) : cfg.groups;
        std::vector<std::string> names = {"g", "icc"};
        std::vector<std::vector<double>> cols(2);
        for (std::size_t k = 0; k < predictors.size(); ++k) {
            Rng rng = root.split(10 + k);
            const auto curve = r2_icc_curve(table, predictors[k], sizes, cfg.resamples, rng);
            const std::string tag = std::to_string(k + 1);
            names.push_back("r2_" + tag);
            names.push_back("ratio_" + tag);
            std::vector<double> r2s, ratios;
            for (const auto& pt : curve) {
                if (k == 0) {
                    cols[0].push_back(static_cast<double>(pt.group_size));
                    cols[1].push_back(pt.icc);
                }
                r2s.push_back(pt.r2);
                ratios.push_back(pt.ratio);
            }
            cols.push_back(std::move(r2s));
            cols.push_back(std::move(ratios));
        }
        auto f = open_output(cfg.curve);
        write_columns_csv(f, names, cols);
    }
}

SynthSpec synth_spec(const RunConfig& cfg) {
    SynthSpec spec;
    spec.rows = cfg.rows;
    spec.cols = cfg.cols;
    spec.mu = cfg.mu;
    spec.sigma_beta = cfg.sigma_beta;
    spec.sigma_eps = cfg.sigma_eps;
    spec.s = cfg.s;
    spec.seed = cfg.seed;
    return spec;
}

void cmd_synth(const RunConfig& cfg, Report& r, Rng& root) {
    const auto result = generate(synth_spec(cfg));
    DataTable table = result.table;
    if (cfg.zscore) table = zscore(table);
    if (cfg.degrade > 0.0) {
        Rng rng = root.split(3);
        table = degrade_random(table, cfg.degrade, rng);
    }
    save_csv(table, cfg.output, cfg.missing_code);
    if (!cfg.truth.empty()) {
        auto fb = open_output(cfg.truth + "_beta.csv");
        write_columns_csv(fb, {"beta"}, {result.beta});
        auto fa = open_output(cfg.truth + "_alpha.csv");
        write_columns_csv(fa, {"alpha"}, {result.alpha});
    }
    r.section("result");
    r.add("rows", table.rows());
    r.add("cols", table.cols());
    r.add("pmiss", table.missing_proportion());
    r.add("icc", table_icc(table));
}

void cmd_experiment(const RunConfig& cfg, Report& r) {
    ExperimentSpec spec;
    spec.name = cfg.experiment;
    spec.synth = synth_spec(cfg);
    spec.p_grid = cfg.p_grid;
    spec.replications = cfg.replications;
    const auto curve = run_experiment(spec);
    auto f = open_output(cfg.output);
    write_columns_csv(f, curve.columns, curve.data);
    r.section("result");
    r.add("columns", join(curve.columns, ","));
    r.add("points", curve.data.empty() ? std::size_t{0} : curve.data[0].size());
}

}  // namespace

void validate(const RunConfig& cfg) {
    bool known = false;
    for (const auto& c : kCommands) known = known || c == cfg.command;
    require(known, "unknown command '" + cfg.command + "'");
    if (uses_table_input(cfg.command)) require(!cfg.input.empty(), cfg.command + " requires --input");
    if (cfg.command == "impute" || cfg.command == "synth" || cfg.command == "experiment") {
        require(!cfg.output.empty(), cfg.command + " requires --output");
    }
    if (cfg.command == "fit") require(!cfg.predictors.empty(), "fit requires --predictors");
    if (cfg.command == "impute") {
        (void)parse_target(cfg.target);
        require(cfg.c_max > 0.0, "--c-max must be positive");
        require(cfg.c_tolerance > 0.0, "--c-tolerance must be positive");
    }
    for (double p : cfg.conf) require(p > 0.0 && p < 1.0, "--conf values must lie in (0, 1)");
    require(cfg.resamples >= 2, "--resamples must be at least 2");
    require(cfg.alpha > 0.0 && cfg.alpha < 1.0, "--alpha must lie in (0, 1)");
    for (auto g : cfg.groups) require(g >= 1, "--groups values must be positive");
    for (double p : cfg.p_grid) require(p >= 0.0 && p <= 0.95, "--p-grid values must lie in [0, 0.95]");
    require(cfg.replications >= 1, "--replications must be positive");
    require(cfg.degrade >= 0.0 && cfg.degrade <= 0.95, "--degrade must lie in [0, 0.95]");
    if (cfg.command == "experiment") {
        bool ok = false;
        for (const auto& n : experiment_names()) ok = ok || n == cfg.experiment;
        require(ok, "--name must be one of " + join(experiment_names(), ", "));
    }
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        validate(cfg);
        Report report;
        header(report, cfg);
        Rng root(cfg.seed);
        if (cfg.command == "icc") cmd_icc(cfg, report, root);
        else if (cfg.command == "impute") cmd_impute(cfg, report, root);
        else if (cfg.command == "ecvt") cmd_ecvt(cfg, report, root);
        else if (cfg.command == "fit") cmd_fit(cfg, report, root);
        else if (cfg.command == "synth") cmd_synth(cfg, report, root);
        else cmd_experiment(cfg, report);
        if (cfg.report.empty()) {
            report.write(out);
        } else {
            auto f = open_output(cfg.report);
            report.write(f);
        }
        return 0;
    } catch (const UnreachableTargetError& e) {
        err << "crari: " << e.what() << " (reachable ICC range [" << format_number(e.reachable_low()) << ", "
            << format_number(e.reachable_high()) << "])\n";
        return e.exit_code();
    } catch (const Error& e) {
        err << "crari: " << e.what() << '\n';
        return e.exit_code();
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Item-by-participant ICC analysis with missing data"};
    app.set_version_flag("--version", std::string(CRARI_VERSION));
    app.require_subcommand(1, 1);

    auto common = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
        sub->add_option("--report", cfg.report, "Report path (default: stdout)");
    };
    auto table_input = [&](CLI::App* sub) {
        sub->add_option("--input", cfg.input, "Item x participant CSV table");
        sub->add_option("--missing-code", cfg.missing_code, "Token marking missing cells (empty cells always are)");
        sub->add_flag("--zscore", cfg.zscore, "Z-score each column before analysis");
        sub->add_flag("--mix", cfg.mix, "Randomly permute valid entries within each row");
        sub->add_flag("--virtualize", cfg.virtualize, "Replace participants by virtual participants");
    };
    auto synth_opts = [&](CLI::App* sub) {
        sub->add_option("--rows", cfg.rows, "Items")->capture_default_str();
        sub->add_option("--cols", cfg.cols, "Participants")->capture_default_str();
        sub->add_option("--mu", cfg.mu, "Grand mean")->capture_default_str();
        sub->add_option("--sigma-beta", cfg.sigma_beta, "Item effect sd")->capture_default_str();
        sub->add_option("--sigma-eps", cfg.sigma_eps, "Noise sd")->capture_default_str();
        sub->add_option("--s", cfg.s, "Non-additivity parameter")->capture_default_str();
    };
    auto conf = [&](CLI::App* sub) {
        sub->add_option("--conf", cfg.conf, "Confidence probabilities")->delimiter(',')->capture_default_str();
    };

    auto* icc = app.add_subcommand("icc", "ICC statistics corrected for missing data");
    common(icc);
    table_input(icc);
    conf(icc);
    icc->add_option("--output", cfg.output, "Optional CSV of item means");

    auto* impute = app.add_subcommand("impute", "CRARI imputation");
    common(impute);
    table_input(impute);
    impute->add_option("--output", cfg.output, "Imputed table CSV");
    impute->add_option("--target", cfg.target, "low, corrected or an ICC value")->capture_default_str();
    impute->add_option("--c-max", cfg.c_max, "Upper bound of the scaling search")->capture_default_str();
    impute->add_option("--c-tolerance", cfg.c_tolerance, "Search tolerance on c")->capture_default_str();

    auto* ec = app.add_subcommand("ecvt", "Additive model validation test");
    common(ec);
    table_input(ec);
    ec->add_option("--groups", cfg.groups, "Group sizes")->delimiter(',');
    ec->add_option("--resamples", cfg.resamples, "Resamples per group size")->capture_default_str();
    ec->add_option("--alpha", cfg.alpha, "Significance level")->capture_default_str();
    ec->add_flag("--fisher-z", cfg.fisher_z, "Fisher z scale for the mean term");
    ec->add_option("--curve", cfg.curve, "Optional CSV of observed vs predicted correlations");

    auto* fit = app.add_subcommand("fit", "Predictor goodness of fit");
    common(fit);
    table_input(fit);
    conf(fit);
    fit->add_option("--predictors", cfg.predictors, "CSV with one column per predictor");
    fit->add_option("--curve", cfg.curve, "Optional CSV of r2 against ICC over group sizes");
    fit->add_option("--groups", cfg.groups, "Group sizes for --curve")->delimiter(',');
    fit->add_option("--resamples", cfg.resamples, "Resamples per group size for --curve")->capture_default_str();

    auto* synth = app.add_subcommand("synth", "Generate an artificial table");
    common(synth);
    synth_opts(synth);
    synth->add_option("--output", cfg.output, "Table CSV");
    synth->add_option("--degrade", cfg.degrade, "Proportion of cells to remove")->capture_default_str();
    synth->add_flag("--zscore", cfg.zscore, "Z-score columns before degrading");
    synth->add_option("--missing-code", cfg.missing_code, "Token written for missing cells");
    synth->add_option("--truth", cfg.truth, "Prefix for ground-truth CSVs");

    auto* exp = app.add_subcommand("experiment", "Canned study emitting a curve CSV");
    common(exp);
    synth_opts(exp);
    exp->add_option("--name", cfg.experiment, join(experiment_names(), ", "))->capture_default_str();
    exp->add_option("--output", cfg.output, "Curve CSV");
    exp->add_option("--p-grid", cfg.p_grid, "Missing proportions")->delimiter(',');
    exp->add_option("--replications", cfg.replications, "Replications per proportion")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << CRARI_VERSION << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "crari: cli: " << e.what() << '\n';
        return kUsageExit;
    }
    for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
    return run(cfg, out, err);
}

}  // namespace crari
