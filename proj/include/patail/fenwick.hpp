#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace patail {

// Fenwick (binary indexed) tree over per-node weights w_i = D_i + delta.
// Degrees are kept as exact integers and the delta offset is applied
// affinely, so the running total (2+delta)*count never drifts and the
// cumulative-weight inversion stays strictly monotone for any delta > -1.
// Point update and inversion are O(log capacity).
class WeightIndex {
public:
    WeightIndex(double delta, std::int64_t capacity)
        : delta_(delta), cap_(capacity), count_(0), deg_sum_(0),
          tree_(static_cast<std::size_t>(capacity) + 1, 0) {
        if (delta <= -1.0) throw std::invalid_argument("WeightIndex: delta must be > -1");
        if (capacity < 1) throw std::invalid_argument("WeightIndex: capacity must be >= 1");
        high_ = std::bit_floor(static_cast<std::uint64_t>(capacity));
    }

    std::int64_t size() const { return count_; }
    std::int64_t capacity() const { return cap_; }
    double delta() const { return delta_; }
    std::int64_t degree_sum() const { return deg_sum_; }

    double total_weight() const {
        return static_cast<double>(deg_sum_) + static_cast<double>(count_) * delta_;
    }

    // append node count_+1 with the given initial degree
    void push_node(std::int64_t degree) {
        if (count_ >= cap_) throw std::length_error("WeightIndex: capacity exceeded");
        ++count_;
        add(count_, degree);
    }

    void increment_degree(std::int64_t node, std::int64_t by = 1) {
        if (node < 1 || node > count_) throw std::out_of_range("WeightIndex: node out of range");
        add(node, by);
    }

    // sum of (D_i + delta) over i <= node
    double prefix_weight(std::int64_t node) const {
        std::int64_t s = 0;
        for (std::int64_t i = node; i > 0; i -= i & -i) s += tree_[static_cast<std::size_t>(i)];
        return static_cast<double>(s) + static_cast<double>(node) * delta_;
    }

    // smallest node index with prefix_weight(node) > target, for 0 <= target < total
    std::int64_t find(double target) const {
        std::int64_t pos = 0;
        std::int64_t acc = 0;
        for (std::int64_t step = static_cast<std::int64_t>(high_); step > 0; step >>= 1) {
            std::int64_t next = pos + step;
            if (next > count_) continue;
            std::int64_t cum = acc + tree_[static_cast<std::size_t>(next)];
            if (static_cast<double>(cum) + static_cast<double>(next) * delta_ <= target) {
                pos = next;
                acc = cum;
            }
        }
        // rounding at the very top edge maps onto the last node
        return pos < count_ ? pos + 1 : count_;
    }

private:
    double delta_;
    std::int64_t cap_, count_, deg_sum_;
    std::uint64_t high_;
    std::vector<std::int64_t> tree_;

    void add(std::int64_t i, std::int64_t v) {
        deg_sum_ += v;
        for (; i <= cap_; i += i & -i) tree_[static_cast<std::size_t>(i)] += v;
    }
};

} // namespace patail
