#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pkp/field.hpp"
#include "pkp/matrix.hpp"

namespace pkp {

/// Flat list of (partial, tag) pairs: partial is a sequence of values taken
/// from c, tag a vector over GF(q).
class TaggedList {
public:
    TaggedList(std::size_t partial_width, std::size_t tag_width)
        : partial_width_(partial_width), tag_width_(tag_width) {}

    std::size_t partial_width() const noexcept { return partial_width_; }
    std::size_t tag_width() const noexcept { return tag_width_; }
    std::size_t size() const noexcept { return count_; }
    bool empty() const noexcept { return count_ == 0; }

    void reserve(std::size_t entries);
    void push_back(std::span<const Elem> partial, std::span<const Elem> tag);

    std::span<const Elem> partial(std::size_t i) const {
        return {partials_.data() + i * partial_width_, partial_width_};
    }
    std::span<const Elem> tag(std::size_t i) const { return {tags_.data() + i * tag_width_, tag_width_}; }

    /// Lexicographic by (tag, partial).
    void sort();
    bool is_sorted() const;

    /// Copy with every tag recomputed as offset -/+ partial * columns^T, sorted.
    TaggedList retag(const Matrix& columns, std::span<const Elem> offset, bool negate) const;

private:
    bool less(std::size_t a, std::size_t b) const;

    std::size_t partial_width_;
    std::size_t tag_width_;
    std::size_t count_ = 0;
    std::vector<Elem> partials_;
    std::vector<Elem> tags_;
};

/// Builds {(x, offset + sign * x * columns^T) : x in S_l(c)} with l = columns.cols().
/// `negate` selects offset - x*columns^T. The result is sorted.
TaggedList build_tagged_list(std::span<const Elem> c, const Matrix& columns, std::span<const Elem> offset,
                             bool negate);

struct MergeOptions {
    std::size_t max_entries = std::size_t{1} << 28;
};

/// Join on equal tags keeping only pairs with disjoint value sets. Inputs
/// must be sorted; the output holds the concatenations (x, y) with empty
/// tags, sorted. Throws ResourceCapExceeded past options.max_entries.
TaggedList merge(const TaggedList& left, const TaggedList& right, const MergeOptions& options = {});

/// Predicted-size guard shared by the solvers.
void check_list_cap(const char* list_name, double predicted_log2, std::size_t max_entries);

}  // namespace pkp
