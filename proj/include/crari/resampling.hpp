#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "crari/rng.hpp"
#include "crari/table.hpp"

namespace crari {

/// Reusable state for drawing pairs of disjoint participant groups.
class GroupSampler {
public:
    explicit GroupSampler(std::size_t participants);

    /// Redraws; afterwards first() and second() are disjoint uniform g-subsets.
    void draw(std::size_t group_size, Rng& rng);

    [[nodiscard]] std::span<const std::size_t> first() const { return {order_.data(), size_}; }
    [[nodiscard]] std::span<const std::size_t> second() const {
        return {order_.data() + size_, size_};
    }

private:
    std::vector<std::size_t> order_;
    std::size_t size_ = 0;
};

/// Per-item mean over @p columns; NaN for items without a valid cell among them.
void group_item_means(const DataTable& table, std::span<const std::size_t> columns,
                      std::span<double> out);

/// Power-of-two group sizes 1, 2, 4, ... up to floor(n/2), plus floor(n/2) itself.
[[nodiscard]] std::vector<std::size_t> default_group_sizes(std::size_t participants);

}  // namespace crari
