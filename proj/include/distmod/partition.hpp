#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace distmod {

/// Community-assignment vector. Construction canonicalizes the labels so that
/// communities are numbered 0..c-1 in order of their smallest member.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<std::size_t> labels);

    static Partition singletons(std::size_t n);
    static Partition all_in_one(std::size_t n);

    std::size_t size() const noexcept { return labels_.size(); }
    std::size_t community_count() const noexcept { return count_; }
    std::size_t operator[](std::size_t i) const noexcept { return labels_[i]; }
    std::span<const std::size_t> labels() const noexcept { return labels_; }

    /// Member lists C_g, each sorted ascending.
    std::vector<std::vector<std::size_t>> communities() const;

    /// True if every block of *this lies inside a block of `coarser`.
    bool refines(const Partition& coarser) const;

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<std::size_t> labels_;
    std::size_t count_ = 0;
};

/// Relabels arbitrary labels to canonical 0..c-1 form by smallest member.
std::vector<std::size_t> canonical_labels(std::span<const std::size_t> labels);

}  // namespace distmod
