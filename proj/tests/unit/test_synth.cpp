#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "crari/anova.hpp"
#include "crari/error.hpp"
#include "crari/synth.hpp"

using namespace crari;

TEST_CASE("generator is reproducible and additive at s = 0") {
    SynthSpec spec{300, 40, 2.0, 1.0, 2.5, 0.0, 12};
    const auto a = generate(spec);
    const auto b = generate(spec);
    CHECK(a.table == b.table);
    for (double al : a.alpha) CHECK(al == 1.0);
    CHECK(a.beta.size() == 300);
    CHECK(a.exact_icc_proxy == doctest::Approx(0.16 * 40 / (0.16 * 40 + 1)));
    CHECK(std::abs(table_icc(a.table) - a.exact_icc_proxy) < 0.05);
}

TEST_CASE("exponents follow the shifted exponential") {
    const auto r = generate(SynthSpec{50, 500, 0, 1, 1, 2.0, 3});
    double mean = 0;
    for (double al : r.alpha) {
        CHECK(al >= 1.0);
        mean += al;
    }
    CHECK(mean / 500 == doctest::Approx(3.0).epsilon(0.1));
    CHECK(alpha_cdf(1.0, 2.0) == 0.0);
    CHECK(alpha_cdf(3.0, 2.0) == doctest::Approx(1 - std::exp(-1.0)));
}

TEST_CASE("degrade_random masks the requested proportion") {
    const auto t = generate(SynthSpec{100, 20, 0, 1, 2.5, 0, 1}).table;
    Rng rng(4);
    for (double p : {0.0, 0.1, 0.37, 0.6}) {
        const auto d = degrade_random(t, p, rng);
        CHECK(std::abs(d.missing_proportion() - p) <= 1.0 / (100 * 20));
        CHECK(icc_report(d, {}).pmiss == doctest::Approx(d.missing_proportion()));
        for (std::size_t i = 0; i < 100; ++i)
            for (std::size_t j = 0; j < 20; ++j)
                if (!d.is_missing(i, j)) CHECK(d.value(i, j) == t.value(i, j));
    }
    CHECK_THROWS_AS(degrade_random(t, 0.99, rng), PreconditionError);
}

TEST_CASE("degrade_pattern copies a recorded mask") {
    const auto src = generate(SynthSpec{40, 10, 0, 1, 2.5, 0, 2}).table;
    Rng rng(6);
    const auto ref = degrade_random(src, 0.2, rng);
    const auto pattern = MissingPattern::of(ref);
    const auto target = generate(SynthSpec{40, 10, 0, 1, 2.5, 0, 9}).table;
    const auto d = degrade_pattern(target, pattern, false);
    CHECK(MissingPattern::of(d).mask == pattern.mask);
    MissingPattern none{40, 10, std::vector<std::uint8_t>(400, 0)};
    const auto means = degrade_pattern(target, none, true).row_means();
    CHECK(std::is_sorted(means.begin(), means.end()));
    CHECK_THROWS_AS(degrade_pattern(generate(SynthSpec{41, 10, 0, 1, 2.5, 0, 9}).table, pattern, false),
                    StructuralError);
}
