#include "irrvir/partition.hpp"

#include <algorithm>
#include <functional>

#include "irrvir/errors.hpp"

namespace irrvir {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
    for (int p : parts_) {
        if (p < 1) throw Error(ErrorKind::InternalConsistency, "partition with non-positive part");
        weight_ += p;
    }
}

Partition Partition::tail() const {
    Partition r;
    r.parts_.assign(parts_.begin() + (parts_.empty() ? 0 : 1), parts_.end());
    r.weight_ = weight_ - (parts_.empty() ? 0 : parts_.front());
    return r;
}

Partition Partition::prepended(int part) const {
    if (part < 1 || (!parts_.empty() && part < parts_.front()))
        throw Error(ErrorKind::InternalConsistency, "prepended part breaks ordering");
    Partition r;
    r.parts_.reserve(parts_.size() + 1);
    r.parts_.push_back(part);
    r.parts_.insert(r.parts_.end(), parts_.begin(), parts_.end());
    r.weight_ = weight_ + part;
    return r;
}

std::string Partition::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(parts_[i]);
    }
    return s + ")";
}

std::strong_ordering operator<=>(const Partition& a, const Partition& b) noexcept {
    if (auto c = a.weight_ <=> b.weight_; c != 0) return c;
    // Descending lexicographic inside one weight.
    return b.parts_ <=> a.parts_;
}

namespace {

void generate(int n, int max_part, std::vector<int>& cur, std::vector<Partition>& out) {
    if (n == 0) {
        out.emplace_back(cur);
        return;
    }
    for (int p = std::min(n, max_part); p >= 1; --p) {
        cur.push_back(p);
        generate(n - p, p, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    if (n < 0) return out;
    std::vector<int> cur;
    generate(n, n, cur, out);
    return out;
}

std::vector<Partition> partitions_between(int lo, int hi) {
    std::vector<Partition> out;
    for (int n = std::max(lo, 0); n <= hi; ++n) {
        auto level = partitions_of(n);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

long partition_count(int n) {
    if (n < 0) return 0;
    std::vector<long> p(static_cast<std::size_t>(n) + 1, 0);
    p[0] = 1;
    for (int k = 1; k <= n; ++k)
        for (int m = k; m <= n; ++m) p[static_cast<std::size_t>(m)] += p[static_cast<std::size_t>(m - k)];
    return p[static_cast<std::size_t>(n)];
}

}  // namespace irrvir
