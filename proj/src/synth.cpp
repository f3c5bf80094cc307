#include "crari/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "crari/error.hpp"

namespace crari {

SynthResult generate(const SynthSpec& spec) {
    if (spec.rows < 2 || spec.cols < 2) {
        throw PreconditionError("synth", "need at least 2 rows and 2 columns");
    }
    if (!(spec.sigma_beta > 0.0) || !(spec.sigma_eps > 0.0) || !(spec.s >= 0.0)) {
        throw PreconditionError("synth", "require sigma_beta > 0, sigma_eps > 0, s >= 0");
    }
    const Rng root(spec.seed);
    Rng alpha_rng = root.split(0);
    Rng beta_rng = root.split(1);
    Rng noise_rng = root.split(2);

    std::vector<double> alpha(spec.cols);
    for (auto& a : alpha) a = 1.0 - spec.s * std::log1p(-alpha_rng.uniform());
    std::vector<double> beta(spec.rows);
    for (auto& b : beta) b = beta_rng.normal(0.0, spec.sigma_beta);

    std::vector<double> values(spec.rows * spec.cols);
    for (std::size_t i = 0; i < spec.rows; ++i) {
        const double b = beta[i];
        const double sign = b > 0.0 ? 1.0 : (b < 0.0 ? -1.0 : 0.0);
        const double mag = std::fabs(b);
        for (std::size_t j = 0; j < spec.cols; ++j) {
            const double item = alpha[j] == 1.0 ? b : sign * std::pow(mag, alpha[j]);
            values[i * spec.cols + j] = spec.mu + item + noise_rng.normal(0.0, spec.sigma_eps);
        }
    }
    const double q = (spec.sigma_beta * spec.sigma_beta) / (spec.sigma_eps * spec.sigma_eps);
    const double qn = q * static_cast<double>(spec.cols);
    return {DataTable::complete(spec.rows, spec.cols, std::move(values)), std::move(beta),
            std::move(alpha), qn / (qn + 1.0)};
}

double alpha_cdf(double alpha, double s) {
    if (!(s > 0.0)) throw PreconditionError("synth", "alpha_cdf requires s > 0");
    if (alpha <= 1.0) return 0.0;
    return -std::expm1(-(alpha - 1.0) / s);
}

DataTable degrade_random(const DataTable& table, double p, Rng& rng) {
    if (!(p >= 0.0 && p <= 0.95)) {
        throw PreconditionError("synth", "degradation proportion must lie in [0, 0.95]");
    }
    const std::size_t m = table.rows();
    const std::size_t n = table.cols();
    const auto target = static_cast<std::size_t>(std::llround(p * static_cast<double>(m * n)));
    if (target == 0) return table;

    std::vector<std::size_t> candidates;
    candidates.reserve(table.valid_count());
    for (std::size_t k = 0; k < table.cell_count(); ++k) {
        if (!table.mask()[k]) candidates.push_back(k);
    }
    if (target >= candidates.size()) {
        throw StructuralError("synth", "cannot mask " + std::to_string(target) + " of " +
                                           std::to_string(candidates.size()) + " valid cells");
    }

    std::vector<std::size_t> row_left(m);
    std::vector<std::size_t> col_left(n);
    constexpr int kAttempts = 100;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        rng.partial_shuffle(std::span<std::size_t>(candidates), target);
        for (std::size_t i = 0; i < m; ++i) row_left[i] = table.row_valid_count(i);
        for (std::size_t j = 0; j < n; ++j) col_left[j] = table.col_valid_count(j);
        bool ok = true;
        for (std::size_t t = 0; t < target && ok; ++t) {
            const std::size_t k = candidates[t];
            ok = --row_left[k / n] > 0 && --col_left[k % n] > 0;
        }
        if (!ok) continue;
        std::vector<double> values = table.values();
        std::vector<std::uint8_t> mask = table.mask();
        for (std::size_t t = 0; t < target; ++t) mask[candidates[t]] = 1;
        return {m, n, std::move(values), std::move(mask)};
    }
    throw StructuralError("synth", "degradation left an empty row or column after " +
                                       std::to_string(kAttempts) + " attempts");
}

DataTable degrade_pattern(const DataTable& table, const MissingPattern& pattern,
                          bool sort_rows_by_mean) {
    const std::size_t m = table.rows();
    const std::size_t n = table.cols();
    if (pattern.rows != m || pattern.cols != n || pattern.mask.size() != m * n) {
        throw StructuralError("synth", "pattern shape " + std::to_string(pattern.rows) + "x" +
                                           std::to_string(pattern.cols) +
                                           " does not match table " + std::to_string(m) + "x" +
                                           std::to_string(n));
    }
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (sort_rows_by_mean) {
        const auto means = table.row_means();
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return means[a] < means[b]; });
    }
    std::vector<double> values(m * n);
    std::vector<std::uint8_t> mask(m * n);
    for (std::size_t r = 0; r < m; ++r) {
        const std::size_t src = order[r];
        for (std::size_t j = 0; j < n; ++j) {
            values[r * n + j] = table.value(src, j);
            mask[r * n + j] = (table.is_missing(src, j) || pattern.at(r, j)) ? 1 : 0;
        }
    }
    return {m, n, std::move(values), std::move(mask)};
}

DataTable add_column_offsets(const DataTable& table, double sd, Rng& rng) {
    std::vector<double> offsets(table.cols());
    for (auto& o : offsets) o = rng.normal(0.0, sd);
    std::vector<double> values = table.values();
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (!table.mask()[k]) values[k] += offsets[k % table.cols()];
    }
    return {table.rows(), table.cols(), std::move(values), table.mask()};
}

}  // namespace crari
