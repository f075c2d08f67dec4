#include "distmod/partition.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace distmod {

std::vector<std::size_t> canonical_labels(std::span<const std::size_t> labels) {
    std::unordered_map<std::size_t, std::size_t> remap;
    std::vector<std::size_t> out;
    out.reserve(labels.size());
    for (std::size_t l : labels) {
        auto [it, inserted] = remap.try_emplace(l, remap.size());
        out.push_back(it->second);
    }
    return out;
}

Partition::Partition(std::vector<std::size_t> labels) : labels_(canonical_labels(labels)) {
    for (std::size_t l : labels_) count_ = std::max(count_, l + 1);
}

Partition Partition::singletons(std::size_t n) {
    std::vector<std::size_t> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = i;
    return Partition(std::move(labels));
}

Partition Partition::all_in_one(std::size_t n) {
    return Partition(std::vector<std::size_t>(n, 0));
}

std::vector<std::vector<std::size_t>> Partition::communities() const {
    std::vector<std::vector<std::size_t>> out(count_);
    for (std::size_t i = 0; i < labels_.size(); ++i) out[labels_[i]].push_back(i);
    return out;
}

bool Partition::refines(const Partition& coarser) const {
    if (coarser.size() != size()) return false;
    constexpr auto unset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> image(count_, unset);
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        std::size_t& target = image[labels_[i]];
        if (target == unset) {
            target = coarser[i];
        } else if (target != coarser[i]) {
            return false;
        }
    }
    return true;
}

}  // namespace distmod
