#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace hw {

/// A point k of N_0^d. Entries are nonnegative and the length is at least one.
class MultiIndex {
public:
    MultiIndex() = default;
    MultiIndex(std::initializer_list<int> entries);
    explicit MultiIndex(std::vector<int> entries);

    /// The all-zero index of length d.
    static MultiIndex zero(std::size_t d);

    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] int operator[](std::size_t j) const noexcept { return entries_[j]; }
    [[nodiscard]] std::span<const int> entries() const noexcept { return entries_; }
    [[nodiscard]] auto begin() const noexcept { return entries_.begin(); }
    [[nodiscard]] auto end() const noexcept { return entries_.end(); }

    [[nodiscard]] int max_entry() const noexcept;
    [[nodiscard]] std::string to_string() const;

    friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

private:
    std::vector<int> entries_;
};

/// Duplicate-free, lexicographically ordered set of multi-indices of one dimension.
class IndexSet {
public:
    explicit IndexSet(std::size_t d) : d_(d) {}
    IndexSet(std::size_t d, std::vector<MultiIndex> members);

    [[nodiscard]] std::size_t dimension() const noexcept { return d_; }
    [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }
    [[nodiscard]] bool empty() const noexcept { return members_.empty(); }
    [[nodiscard]] const std::vector<MultiIndex>& members() const noexcept { return members_; }
    [[nodiscard]] const MultiIndex& operator[](std::size_t i) const noexcept { return members_[i]; }
    [[nodiscard]] auto begin() const noexcept { return members_.begin(); }
    [[nodiscard]] auto end() const noexcept { return members_.end(); }

    [[nodiscard]] bool contains(const MultiIndex& k) const;
    [[nodiscard]] bool is_subset_of(const IndexSet& other) const;
    /// Largest single coordinate over all members (0 for an empty set).
    [[nodiscard]] int max_coordinate() const noexcept;

    friend bool operator==(const IndexSet&, const IndexSet&) = default;

private:
    std::size_t d_;
    std::vector<MultiIndex> members_;
};

}  // namespace hw
