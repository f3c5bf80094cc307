#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "crari/anova.hpp"
#include "crari/error.hpp"
#include "crari/imputation.hpp"
#include "crari/synth.hpp"

using namespace crari;

namespace {

constexpr double NA = std::numeric_limits<double>::quiet_NaN();

DataTable zdegraded(std::uint64_t seed, double p, std::size_t m = 300, std::size_t n = 40) {
    Rng rng(seed + 100);
    return zscore(degrade_random(zscore(generate(SynthSpec{m, n, 0, 1, 2.5, 0, seed}).table), p, rng));
}

void check_preserved(const DataTable& before, const DataTable& after) {
    REQUIRE(after.is_complete());
    for (std::size_t i = 0; i < before.rows(); ++i) {
        CHECK(after.row_mean(i) == doctest::Approx(before.row_mean(i)).epsilon(1e-12));
        for (std::size_t j = 0; j < before.cols(); ++j)
            if (!before.is_missing(i, j)) CHECK(after.value(i, j) == before.value(i, j));
    }
}

}  // namespace

TEST_CASE("ARI adjustment of the worked example") {
    const double donors[] = {620, 500};
    const auto filled = ari_adjust(donors, 568.0);
    CHECK(filled[0] == 628.0);
    CHECK(filled[1] == 508.0);
}

TEST_CASE("row-wise ARI keeps row means") {
    const auto t = zdegraded(1, 0.2);
    Rng rng(3);
    check_preserved(t, ari_impute(t, rng));
}

TEST_CASE("CRARI candidates keep row means for every c") {
    const auto t = zdegraded(2, 0.2, 100, 20);
    Rng rng(5);
    const CrariFill fill(t, rng);
    for (double c : {0.0, 0.5, 1.0, 4.0}) check_preserved(t, fill.candidate(c));
}

TEST_CASE("CRARI reaches low, corrected and explicit targets") {
    const auto t = zdegraded(3, 0.2);
    for (const auto& target : {IccTarget::low(), IccTarget::corrected()}) {
        Rng rng(7);
        const auto out = crari_impute(t, target, rng);
        CHECK(std::abs(out.icc_after - out.target) <= 2e-3);
        CHECK_FALSE(out.deterministic);
        CHECK(out.c > 0.0);
        check_preserved(t, out.imputed);
    }
    Rng rng(8);
    const auto rep = icc_report(t, {});
    const auto out = crari_impute(t, IccTarget::explicit_value(rep.icc_cor + 0.005), rng);
    CHECK(std::abs(out.icc_after - out.target) <= 2e-3);
}

TEST_CASE("CRARI is reproducible for a fixed seed") {
    const auto t = zdegraded(4, 0.1, 100, 20);
    Rng a(1), b(1);
    CHECK(crari_impute(t, IccTarget::corrected(), a).imputed == crari_impute(t, IccTarget::corrected(), b).imputed);
}

TEST_CASE("deterministic case fills row means") {
    const auto t = DataTable::from_rows({{1, 2, NA, 3}, {5, NA, 7, 6}, {9, 8, 7, 9}, {NA, 1, 2, 0}});
    Rng rng(1);
    const auto out = crari_impute(t, IccTarget::corrected(), rng);
    CHECK(out.deterministic);
    CHECK(out.c == 1.0);
    CHECK(out.imputed.value(0, 2) == doctest::Approx(2.0));
    CHECK(out.imputed.value(3, 0) == doctest::Approx(1.0));
}

TEST_CASE("complete input passes through") {
    const auto t = DataTable::from_rows({{1, 2, 3}, {4, 6, 5}, {9, 7, 8}});
    Rng rng(1);
    const auto out = crari_impute(t, IccTarget::corrected(), rng);
    CHECK(out.imputed == t);
    CHECK(out.icc_after == doctest::Approx(out.icc_before));
}

TEST_CASE("unreachable target reports the attainable range") {
    const auto t = zdegraded(5, 0.2, 100, 20);
    Rng rng(2);
    try {
        (void)crari_impute(t, IccTarget::explicit_value(0.999), rng);
        FAIL("expected UnreachableTargetError");
    } catch (const UnreachableTargetError& e) {
        CHECK(e.reachable_low() < e.reachable_high());
        CHECK(e.reachable_high() < 0.999);
    }
}

TEST_CASE("ARI overestimates the ICC, missing data lower it") {
    const auto z = zscore(generate(SynthSpec{400, 40, 0, 1, 2.5, 0, 6}).table);
    Rng rng(9);
    const double ps[] = {0.0, 0.2};
    const auto rows = ari_bias_demo(z, ps, 3, rng, true);
    CHECK(rows[0].icc_missing == doctest::Approx(rows[0].icc_exact));
    CHECK(rows[1].icc_missing < rows[1].icc_exact);
    CHECK(rows[1].icc_ari > rows[1].icc_exact);
}
