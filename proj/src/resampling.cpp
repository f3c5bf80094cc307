#include "crari/resampling.hpp"

#include <limits>
#include <numeric>

#include "crari/error.hpp"

namespace crari {

GroupSampler::GroupSampler(std::size_t participants) : order_(participants) {
    std::iota(order_.begin(), order_.end(), std::size_t{0});
}

void GroupSampler::draw(std::size_t group_size, Rng& rng) {
    if (2 * group_size > order_.size()) {
        throw PreconditionError("ecvt", "two disjoint groups of " + std::to_string(group_size) +
                                            " need at least " + std::to_string(2 * group_size) +
                                            " participants");
    }
    size_ = group_size;
    rng.partial_shuffle(std::span<std::size_t>(order_), 2 * group_size);
}

void group_item_means(const DataTable& table, std::span<const std::size_t> columns,
                      std::span<double> out) {
    for (std::size_t i = 0; i < table.rows(); ++i) {
        auto values = table.row_values(i);
        auto mask = table.row_mask(i);
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t j : columns) {
            if (mask[j]) continue;
            sum += values[j];
            ++count;
        }
        out[i] = count ? sum / static_cast<double>(count)
                       : std::numeric_limits<double>::quiet_NaN();
    }
}

std::vector<std::size_t> default_group_sizes(std::size_t participants) {
    std::vector<std::size_t> sizes;
    const std::size_t half = participants / 2;
    for (std::size_t g = 1; g <= half; g *= 2) sizes.push_back(g);
    if (half >= 1 && sizes.back() != half) sizes.push_back(half);
    return sizes;
}

}  // namespace crari
