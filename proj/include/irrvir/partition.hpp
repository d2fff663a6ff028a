#pragma once

#include <compare>
#include <string>
#include <vector>

namespace irrvir {

/// Weakly decreasing list of positive integers.
class Partition {
public:
    Partition() = default;
    /// Sorts the parts descending; throws on a non-positive part.
    explicit Partition(std::vector<int> parts);

    const std::vector<int>& parts() const noexcept { return parts_; }
    int weight() const noexcept { return weight_; }
    std::size_t length() const noexcept { return parts_.size(); }
    bool empty() const noexcept { return parts_.empty(); }
    int operator[](std::size_t i) const { return parts_.at(i); }

    /// Drops the first (largest) part.
    Partition tail() const;
    /// Prepends a part that is >= every existing part.
    Partition prepended(int part) const;

    std::string to_string() const;

    /// Block order: by weight, then lexicographically descending.
    friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) noexcept;
    friend bool operator==(const Partition& a, const Partition& b) noexcept { return a.parts_ == b.parts_; }

private:
    std::vector<int> parts_;
    int weight_ = 0;
};

/// Partitions of n in block order.
std::vector<Partition> partitions_of(int n);
/// All partitions with lo <= weight <= hi, in block order.
std::vector<Partition> partitions_between(int lo, int hi);
/// Number of partitions of n.
long partition_count(int n);

}  // namespace irrvir
