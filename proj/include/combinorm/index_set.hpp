#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace combinorm {

/// A finite set of positive integers, kept strictly increasing.
using IndexSet = std::vector<int>;

inline bool is_canonical(const IndexSet& a) {
    if (!a.empty() && a.front() < 1) return false;
    for (std::size_t i = 1; i < a.size(); ++i)
        if (a[i] <= a[i - 1]) return false;
    return true;
}

inline IndexSet canonical(IndexSet a) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    if (!a.empty() && a.front() < 1) throw std::invalid_argument("indices must be >= 1");
    return a;
}

inline bool contains(const IndexSet& a, int k) {
    return std::binary_search(a.begin(), a.end(), k);
}

inline bool is_subset(const IndexSet& a, const IndexSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline IndexSet set_union(const IndexSet& a, const IndexSet& b) {
    IndexSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
    IndexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
    IndexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline bool disjoint(const IndexSet& a, const IndexSet& b) {
    return set_intersection(a, b).empty();
}

/// Block order: every element of a precedes every element of b.
inline bool block_before(const IndexSet& a, const IndexSet& b) {
    if (a.empty() || b.empty()) return true;
    return a.back() < b.front();
}

}  // namespace combinorm
