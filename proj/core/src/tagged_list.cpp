#include "pkp/tagged_list.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "pkp/error.hpp"

namespace pkp {

void TaggedList::reserve(std::size_t entries) {
    partials_.reserve(entries * partial_width_);
    tags_.reserve(entries * tag_width_);
}

void TaggedList::push_back(std::span<const Elem> partial, std::span<const Elem> tag) {
    partials_.insert(partials_.end(), partial.begin(), partial.end());
    tags_.insert(tags_.end(), tag.begin(), tag.end());
    ++count_;
}

bool TaggedList::less(std::size_t a, std::size_t b) const {
    const auto ta = tag(a), tb = tag(b);
    for (std::size_t i = 0; i < tag_width_; ++i) {
        if (ta[i] != tb[i]) return ta[i] < tb[i];
    }
    const auto pa = partial(a), pb = partial(b);
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
}

void TaggedList::sort() {
    std::vector<std::size_t> order(count_);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::ranges::sort(order, [this](std::size_t a, std::size_t b) { return less(a, b); });
    std::vector<Elem> partials(partials_.size());
    std::vector<Elem> tags(tags_.size());
    for (std::size_t i = 0; i < count_; ++i) {
        std::ranges::copy(partial(order[i]), partials.begin() + static_cast<std::ptrdiff_t>(i * partial_width_));
        std::ranges::copy(tag(order[i]), tags.begin() + static_cast<std::ptrdiff_t>(i * tag_width_));
    }
    partials_ = std::move(partials);
    tags_ = std::move(tags);
}

bool TaggedList::is_sorted() const {
    for (std::size_t i = 1; i < count_; ++i) {
        if (less(i, i - 1)) return false;
    }
    return true;
}

TaggedList TaggedList::retag(const Matrix& columns, std::span<const Elem> offset, bool negate) const {
    if (columns.cols() != partial_width_) throw InvalidParameters("retag: column block width mismatch");
    if (!offset.empty() && offset.size() != columns.rows()) throw InvalidParameters("retag: offset width mismatch");
    const auto& f = columns.field();
    TaggedList out(partial_width_, columns.rows());
    out.reserve(count_);
    Vector tag(columns.rows());
    for (std::size_t i = 0; i < count_; ++i) {
        const auto x = partial(i);
        for (std::size_t t = 0; t < columns.rows(); ++t) {
            const Elem dot = f.dot(x, columns.row(t));
            const Elem base = offset.empty() ? 0 : offset[t];
            tag[t] = negate ? f.sub(base, dot) : f.add(base, dot);
        }
        out.push_back(x, tag);
    }
    out.sort();
    return out;
}

TaggedList build_tagged_list(std::span<const Elem> c, const Matrix& columns, std::span<const Elem> offset,
                             bool negate) {
    const std::size_t n = c.size();
    const std::size_t length = columns.cols();
    const std::size_t width = columns.rows();
    if (!offset.empty() && offset.size() != width) throw InvalidParameters("build_tagged_list: offset width mismatch");
    const auto& f = columns.field();

    TaggedList out(length, width);
    if (length > n) return out;

    // colvec[p] = column p of the block
    std::vector<Vector> colvec(length);
    for (std::size_t p = 0; p < length; ++p) colvec[p] = columns.column(p);

    std::size_t expected = 1;
    for (std::size_t i = 0; i < length; ++i) expected *= (n - i);
    out.reserve(expected);

    // sums[depth] = partial syndrome of the first `depth` chosen values
    std::vector<Vector> sums(length + 1, Vector(width, 0));
    std::vector<std::size_t> idx(length, 0);
    Vector values(length);
    Vector tag(width);
    std::vector<bool> used(n, false);

    auto emit = [&] {
        const Vector& s = sums[length];
        for (std::size_t t = 0; t < width; ++t) {
            const Elem base = offset.empty() ? 0 : offset[t];
            tag[t] = negate ? f.sub(base, s[t]) : f.add(base, s[t]);
        }
        out.push_back(values, tag);
    };

    if (length == 0) {
        emit();
        out.sort();
        return out;
    }

    std::size_t depth = 0;
    idx[0] = 0;
    for (;;) {
        std::size_t& cur = idx[depth];
        while (cur < n && used[cur]) ++cur;
        if (cur == n) {
            if (depth == 0) break;
            --depth;
            used[idx[depth]] = false;
            ++idx[depth];
            continue;
        }
        values[depth] = c[cur];
        for (std::size_t t = 0; t < width; ++t) sums[depth + 1][t] = f.fma(sums[depth][t], c[cur], colvec[depth][t]);
        if (depth + 1 == length) {
            emit();
            ++cur;
            continue;
        }
        used[cur] = true;
        ++depth;
        idx[depth] = 0;
    }
    out.sort();
    return out;
}

namespace {

bool sorted_disjoint(std::span<const Elem> a, std::span<const Elem> b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return false;
        if (a[i] < b[j]) ++i;
        else ++j;
    }
    return true;
}

std::vector<Elem> sorted_partials(const TaggedList& list) {
    const std::size_t w = list.partial_width();
    std::vector<Elem> out(list.size() * w);
    for (std::size_t i = 0; i < list.size(); ++i) {
        auto dst = out.begin() + static_cast<std::ptrdiff_t>(i * w);
        std::ranges::copy(list.partial(i), dst);
        std::sort(dst, dst + static_cast<std::ptrdiff_t>(w));
    }
    return out;
}

int compare_tags(std::span<const Elem> a, std::span<const Elem> b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

}  // namespace

TaggedList merge(const TaggedList& left, const TaggedList& right, const MergeOptions& options) {
    if (left.tag_width() != right.tag_width()) throw InvalidParameters("merge: tag widths differ");
    const std::size_t wl = left.partial_width();
    const std::size_t wr = right.partial_width();
    TaggedList out(wl + wr, 0);
    if (left.empty() || right.empty()) return out;

    const auto left_sorted = sorted_partials(left);
    const auto right_sorted = sorted_partials(right);
    Vector joined(wl + wr);

    std::size_t i = 0, j = 0;
    while (i < left.size() && j < right.size()) {
        const int cmp = compare_tags(left.tag(i), right.tag(j));
        if (cmp < 0) { ++i; continue; }
        if (cmp > 0) { ++j; continue; }
        std::size_t i_end = i + 1, j_end = j + 1;
        while (i_end < left.size() && compare_tags(left.tag(i_end), left.tag(i)) == 0) ++i_end;
        while (j_end < right.size() && compare_tags(right.tag(j_end), right.tag(j)) == 0) ++j_end;
        for (std::size_t a = i; a < i_end; ++a) {
            const std::span<const Elem> sa(left_sorted.data() + a * wl, wl);
            for (std::size_t b = j; b < j_end; ++b) {
                const std::span<const Elem> sb(right_sorted.data() + b * wr, wr);
                if (!sorted_disjoint(sa, sb)) continue;
                if (out.size() >= options.max_entries) {
                    throw ResourceCapExceeded("merge output exceeds the cap of " +
                                              std::to_string(options.max_entries) + " entries");
                }
                std::ranges::copy(left.partial(a), joined.begin());
                std::ranges::copy(right.partial(b), joined.begin() + static_cast<std::ptrdiff_t>(wl));
                out.push_back(joined, {});
            }
        }
        i = i_end;
        j = j_end;
    }
    out.sort();
    return out;
}

void check_list_cap(const char* list_name, double predicted_log2, std::size_t max_entries) {
    if (predicted_log2 > std::log2(static_cast<double>(max_entries))) {
        std::ostringstream msg;
        msg << "list " << list_name << " is predicted to hold 2^" << predicted_log2 << " entries, above the cap of "
            << max_entries;
        throw ResourceCapExceeded(msg.str());
    }
}

}  // namespace pkp
