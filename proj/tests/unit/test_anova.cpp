#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "crari/anova.hpp"
#include "crari/error.hpp"
#include "crari/quantile.hpp"
#include "crari/synth.hpp"
#include "oracles.hpp"

using namespace crari;

namespace {

constexpr double NA = std::numeric_limits<double>::quiet_NaN();

std::vector<std::vector<double>> nested(const DataTable& t) {
    std::vector<std::vector<double>> x(t.rows(), std::vector<double>(t.cols()));
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t j = 0; j < t.cols(); ++j) x[i][j] = t.is_missing(i, j) ? NA : t.value(i, j);
    return x;
}

}  // namespace

TEST_CASE("complete 3x3 table: icc equals (msi - mse) / msi") {
    const auto t = DataTable::from_rows({{1, 2, 3}, {4, 6, 5}, {9, 7, 8}});
    // Balanced closed form.
    const double grand = 5.0;
    const double rm[] = {2.0, 5.0, 8.0};
    double msr = 0;
    for (double r : rm) msr += 3 * (r - grand) * (r - grand);
    msr /= 2;
    const auto a = anova(t);
    const double icc = (msr - a.vij) / msr;
    CHECK(table_icc(t) == doctest::Approx(icc));
    const auto rep = icc_report(t);
    CHECK(rep.pmiss == 0.0);
    CHECK(rep.icc_cor == rep.icc);
    CHECK(rep.conf.size() == 3);
}

TEST_CASE("unbalanced ANOVA matches direct transcription") {
    SynthSpec spec;
    spec.rows = 60;
    spec.cols = 12;
    spec.seed = 4;
    Rng rng(8);
    const auto t = degrade_random(generate(spec).table, 0.25, rng);
    const auto o = oracle::icc(nested(t));
    const auto rep = icc_report(t);
    CHECK(rep.icc == doctest::Approx(o.icc).epsilon(1e-10));
    CHECK(rep.q == doctest::Approx(o.q).epsilon(1e-10));
    CHECK(rep.pmiss == doctest::Approx(o.pmiss));
    CHECK(rep.anova.vj == doctest::Approx(o.vj).epsilon(1e-9));
    CHECK(rep.icc_cor == doctest::Approx(o.icc / (1 - o.pmiss * (1 - o.icc))));
}

TEST_CASE("icc relates to q through the group size") {
    const auto t = generate(SynthSpec{200, 30, 0, 1, 2.5, 0, 3}).table;
    const auto rep = icc_report(t);
    CHECK(expected_icc(rep.q, t.cols()) == doctest::Approx(rep.icc));
}

TEST_CASE("confidence interval uses F quantiles") {
    const auto t = generate(SynthSpec{100, 20, 0, 1, 2.5, 0, 5}).table;
    const double probs[] = {0.99};
    const auto rep = icc_report(t, probs);
    const auto& a = rep.anova;
    const double q1 = f_quantile(0.995, a.dfi, a.dfij);
    const double q2 = f_quantile(0.995, a.dfij, a.dfi);
    CHECK(rep.conf[0].lower == doctest::Approx(1 - q1 / rep.f_obs));
    CHECK(rep.conf[0].upper == doctest::Approx(1 - 1 / (q2 * rep.f_obs)));
    CHECK(rep.conf[0].lower < rep.icc);
    CHECK(rep.icc < rep.conf[0].upper);
}

TEST_CASE("column effect warning") {
    Rng rng(2);
    auto base = generate(SynthSpec{300, 40, 0, 1, 2.5, 0, 7}).table;
    const auto shifted = add_column_offsets(base, 6.0, rng);
    const auto degraded = degrade_random(shifted, 0.1, rng);
    CHECK(icc_report(degraded).column_effect_warning);
    CHECK_FALSE(icc_report(degrade_random(zscore(base), 0.1, rng)).column_effect_warning);
    // No warning at or below 5% missing, whatever the column effect.
    CHECK_FALSE(icc_report(degrade_random(shifted, 0.04, rng)).column_effect_warning);
}

TEST_CASE("corrected icc and interval") {
    CHECK(corrected_icc(0.5, 0.0) == 0.5);
    CHECK(corrected_icc(0.5, 0.2) == doctest::Approx(0.5 / 0.9));
    CHECK_THROWS_AS(corrected_icc(0.5, 1.0), PreconditionError);
    const auto ci = corrected_interval({0.95, 0.4, 0.6}, 0.2);
    CHECK(ci.lower == doctest::Approx(0.4 / (1 - 0.2 * 0.6)));
    CHECK(ci.upper == doctest::Approx(0.6 / (1 - 0.2 * 0.4)));
}

TEST_CASE("degenerate tables") {
    CHECK_THROWS_AS(table_icc(DataTable::from_rows({{1, 1}, {1, 1}})), NumericError);
    CHECK_THROWS_AS(anova(DataTable::from_rows({{1, NA}, {NA, 2}})), StructuralError);
    const auto perfect = icc_report(DataTable::from_rows({{1, 1, 1}, {3, 3, 3}}));
    CHECK(std::isinf(perfect.q));
    CHECK(perfect.icc == 1.0);
}
