#include "hw/multi_index.hpp"

#include "hw/error.hpp"

#include <algorithm>

namespace hw {

namespace {

void check_entries(const std::vector<int>& entries) {
    if (entries.empty()) throw InvalidArgument("multi-index must have length >= 1");
    for (int e : entries)
        if (e < 0) throw InvalidArgument("multi-index entries must be nonnegative");
}

}  // namespace

MultiIndex::MultiIndex(std::initializer_list<int> entries) : entries_(entries) {
    check_entries(entries_);
}

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
    check_entries(entries_);
}

MultiIndex MultiIndex::zero(std::size_t d) {
    return MultiIndex(std::vector<int>(d, 0));
}

int MultiIndex::max_entry() const noexcept {
    return entries_.empty() ? 0 : *std::max_element(entries_.begin(), entries_.end());
}

std::string MultiIndex::to_string() const {
    std::string out = "(";
    for (std::size_t j = 0; j < entries_.size(); ++j) {
        if (j) out += ',';
        out += std::to_string(entries_[j]);
    }
    return out + ")";
}

IndexSet::IndexSet(std::size_t d, std::vector<MultiIndex> members)
    : d_(d), members_(std::move(members)) {
    for (const auto& k : members_)
        if (k.size() != d_)
            throw DimensionMismatch("index " + k.to_string() + " does not have length " +
                                    std::to_string(d_));
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool IndexSet::contains(const MultiIndex& k) const {
    return k.size() == d_ && std::binary_search(members_.begin(), members_.end(), k);
}

bool IndexSet::is_subset_of(const IndexSet& other) const {
    if (other.d_ != d_) return false;
    return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                         members_.end());
}

int IndexSet::max_coordinate() const noexcept {
    int m = 0;
    for (const auto& k : members_) m = std::max(m, k.max_entry());
    return m;
}

}  // namespace hw
