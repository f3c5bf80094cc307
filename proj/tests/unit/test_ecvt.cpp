#include <doctest.h>

#include <cmath>

#include "crari/ecvt.hpp"
#include "crari/error.hpp"
#include "crari/resampling.hpp"
#include "crari/synth.hpp"

using namespace crari;

TEST_CASE("default group sizes") {
    CHECK(default_group_sizes(80) == std::vector<std::size_t>{1, 2, 4, 8, 16, 32, 40});
    CHECK(default_group_sizes(64) == std::vector<std::size_t>{1, 2, 4, 8, 16, 32});
    CHECK(default_group_sizes(3) == std::vector<std::size_t>{1});
}

TEST_CASE("group sampler draws disjoint groups") {
    GroupSampler s(10);
    Rng rng(1);
    s.draw(5, rng);
    std::vector<int> seen(10, 0);
    for (auto j : s.first()) seen[j]++;
    for (auto j : s.second()) seen[j]++;
    for (int c : seen) CHECK(c == 1);
    CHECK_THROWS_AS(s.draw(6, rng), PreconditionError);
}

TEST_CASE("additive tables are compatible, reproducibly") {
    const auto t = zscore(generate(SynthSpec{400, 40, 0, 1, 2.5, 0, 3}).table);
    EcvtOptions opt;
    opt.resamples = 100;
    opt.alpha = 0.01;
    Rng a(5), b(5);
    const auto ra = ecvt(t, a, opt);
    const auto rb = ecvt(t, b, opt);
    CHECK(ra.chi2 == rb.chi2);
    CHECK(ra.compatible);
    CHECK(ra.df == 2 * static_cast<int>(ra.group_sizes.size()));
    for (std::size_t k = 0; k < ra.group_sizes.size(); ++k) {
        CHECK(std::abs(ra.observed_mean_r[k] - ra.predicted_r[k]) < 0.05);
    }
}

TEST_CASE("strongly non-additive tables are rejected") {
    const auto t = zscore(generate(SynthSpec{400, 40, 0, 1, 2.5, 2.0, 3}).table);
    EcvtOptions opt;
    opt.resamples = 100;
    opt.alpha = 0.01;
    Rng rng(5);
    const auto r = ecvt(t, rng, opt);
    CHECK_FALSE(r.compatible);
    CHECK(r.p_value < 0.01);
}

TEST_CASE("ecvt preconditions") {
    Rng rng(1);
    const auto t = generate(SynthSpec{50, 10, 0, 1, 2.5, 0, 1}).table;
    CHECK_THROWS_AS(ecvt(degrade_random(t, 0.1, rng), rng), PreconditionError);
    EcvtOptions opt;
    opt.group_sizes = {6};
    CHECK_THROWS_AS(ecvt(t, rng, opt), PreconditionError);
    opt.group_sizes = {};
    opt.resamples = 1;
    CHECK_THROWS_AS(ecvt(t, rng, opt), PreconditionError);
}

TEST_CASE("additive surrogate keeps the shape and row means") {
    const auto t = generate(SynthSpec{50, 10, 0, 1, 2.5, 2.0, 1}).table;
    Rng rng(2);
    const auto s = additive_surrogate(t, rng);
    CHECK(s.rows() == 50);
    for (std::size_t i = 0; i < 50; ++i) CHECK(s.row_mean(i) == doctest::Approx(t.row_mean(i)));
}
