#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>

#include "index_set.hpp"

namespace combinorm {

/// Explicit finite collection of subsets of [1..window], canonically sorted.
/// Instances are immutable after construction except for the maximal-set
/// antichain, which is cached on first use; share across threads only after
/// that first call.
class SetFamily {
public:
    SetFamily() : window_(1) { sets_ = {IndexSet{}}; }

    /// Canonicalizes, validates the window, and measures the hereditary and
    /// covering flags from the data.
    static SetFamily from_sets(int window, std::vector<IndexSet> sets) {
        if (window < 1) throw std::invalid_argument("window must be >= 1");
        std::set<IndexSet> canon;
        canon.insert(IndexSet{});
        for (auto& s : sets) {
            IndexSet c = canonical(std::move(s));
            if (!c.empty() && c.back() > window)
                throw std::invalid_argument("set exceeds window");
            canon.insert(std::move(c));
        }
        SetFamily f;
        f.window_ = window;
        f.sets_.assign(canon.begin(), canon.end());
        f.measure_flags();
        return f;
    }

    int window() const { return window_; }
    const std::vector<IndexSet>& sets() const { return sets_; }
    std::size_t size() const { return sets_.size(); }
    bool hereditary() const { return hereditary_; }
    bool covers_window() const { return covering_; }

    bool contains(const IndexSet& a) const {
        return std::binary_search(sets_.begin(), sets_.end(), a);
    }

    /// Antichain of members with no proper superset within the window.
    const std::vector<IndexSet>& maximal_sets() const {
        if (!maximal_done_) {
            for (const auto& a : sets_) {
                bool maximal = true;
                IndexSet probe = a;
                for (int k = 1; k <= window_ && maximal; ++k) {
                    if (combinorm::contains(a, k)) continue;
                    probe.insert(std::upper_bound(probe.begin(), probe.end(), k), k);
                    if (contains(probe)) maximal = false;
                    probe.erase(std::find(probe.begin(), probe.end(), k));
                }
                if (maximal && !(a.empty() && sets_.size() > 1)) maximal_.push_back(a);
            }
            maximal_done_ = true;
        }
        return maximal_;
    }

private:
    void measure_flags() {
        hereditary_ = true;
        for (const auto& a : sets_) {
            IndexSet sub = a;
            for (std::size_t i = 0; i < a.size() && hereditary_; ++i) {
                sub.erase(sub.begin() + static_cast<long>(i));
                if (!contains(sub)) hereditary_ = false;
                sub.insert(sub.begin() + static_cast<long>(i), a[i]);
            }
            if (!hereditary_) break;
        }
        std::vector<bool> hit(static_cast<std::size_t>(window_) + 1, false);
        for (const auto& a : sets_)
            for (int k : a) hit[static_cast<std::size_t>(k)] = true;
        covering_ = true;
        for (int k = 1; k <= window_; ++k)
            if (!hit[static_cast<std::size_t>(k)]) covering_ = false;
    }

    int window_;
    std::vector<IndexSet> sets_;
    bool hereditary_ = true;
    bool covering_ = false;
    mutable bool maximal_done_ = false;
    mutable std::vector<IndexSet> maximal_;
};

inline std::vector<IndexSet> maximal_sets(const SetFamily& f) { return f.maximal_sets(); }

/// Downward closure under inclusion of the given generators.
inline SetFamily hereditary_closure(const std::vector<IndexSet>& generators, int window) {
    std::set<IndexSet> closed;
    closed.insert(IndexSet{});
    std::vector<IndexSet> stack;
    for (const auto& g : generators) {
        IndexSet c = canonical(g);
        if (!c.empty() && c.back() > window)
            throw std::invalid_argument("generator exceeds window");
        if (closed.insert(c).second) stack.push_back(std::move(c));
    }
    while (!stack.empty()) {
        IndexSet a = std::move(stack.back());
        stack.pop_back();
        for (std::size_t i = 0; i < a.size(); ++i) {
            IndexSet sub;
            sub.reserve(a.size() - 1);
            for (std::size_t j = 0; j < a.size(); ++j)
                if (j != i) sub.push_back(a[j]);
            if (closed.insert(sub).second) stack.push_back(std::move(sub));
        }
    }
    return SetFamily::from_sets(window, {closed.begin(), closed.end()});
}

namespace detail {

inline void schreier_extend(IndexSet& cur, int next, int cap, int window,
                            std::vector<IndexSet>& out) {
    out.push_back(cur);
    if (static_cast<int>(cur.size()) == cap) return;
    for (int k = next; k <= window; ++k) {
        cur.push_back(k);
        schreier_extend(cur, k + 1, cap, window, out);
        cur.pop_back();
    }
}

}  // namespace detail

/// All A within the window with |A| <= min(A), plus the empty set.
inline SetFamily schreier(int window) {
    if (window < 1) throw std::invalid_argument("window must be >= 1");
    std::vector<IndexSet> sets;
    for (int m = 1; m <= window; ++m) {
        IndexSet cur{m};
        detail::schreier_extend(cur, m + 1, m, window, sets);
    }
    return SetFamily::from_sets(window, std::move(sets));
}

namespace detail {

inline void admissible_unions(const std::vector<IndexSet>& members, IndexSet& acc,
                              std::size_t blocks_used, std::size_t blocks_allowed,
                              std::set<IndexSet>& out) {
    out.insert(acc);
    if (blocks_used > 0 && blocks_used >= blocks_allowed) return;
    int floor = acc.empty() ? 0 : acc.back();
    for (const auto& e : members) {
        if (e.empty() || e.front() <= floor) continue;
        std::size_t n = acc.size();
        acc.insert(acc.end(), e.begin(), e.end());
        std::size_t allowed = blocks_used == 0 ? static_cast<std::size_t>(e.front())
                                               : blocks_allowed;
        admissible_unions(members, acc, blocks_used + 1, allowed, out);
        acc.resize(n);
    }
}

}  // namespace detail

/// Higher-order Schreier family on the window: S_1 is the Schreier family and
/// S_{k+1} collects unions of at most n block-ordered S_k members, n bounded by
/// the minimum of the first block. Enumeration is explicit, so this is meant
/// for small windows only.
inline SetFamily schreier_order(int order, int window) {
    if (order < 1) throw std::invalid_argument("order must be >= 1");
    SetFamily fam = schreier(window);
    for (int k = 2; k <= order; ++k) {
        std::set<IndexSet> next;
        IndexSet acc;
        detail::admissible_unions(fam.sets(), acc, 0, 0, next);
        fam = SetFamily::from_sets(window, {next.begin(), next.end()});
    }
    return fam;
}

/// Hereditary closure of a partition of [1..window] into finite pieces.
inline SetFamily partition_family(const std::vector<IndexSet>& pieces, int window) {
    std::vector<bool> seen(static_cast<std::size_t>(window) + 1, false);
    for (const auto& p : pieces) {
        IndexSet c = canonical(p);
        for (int k : c) {
            if (k > window) throw std::invalid_argument("piece exceeds window");
            if (seen[static_cast<std::size_t>(k)])
                throw std::invalid_argument("pieces overlap");
            seen[static_cast<std::size_t>(k)] = true;
        }
    }
    for (int k = 1; k <= window; ++k)
        if (!seen[static_cast<std::size_t>(k)])
            throw std::invalid_argument("pieces do not cover the window");
    return hereditary_closure(pieces, window);
}

/// Node of the dyadic tree {0,1}^{<=N}.
struct DyadicNode {
    std::vector<int> bits;

    auto operator<=>(const DyadicNode&) const = default;
};

/// Breadth-first enumeration of the dyadic tree: the root is 1 and the
/// children of index i are 2i and 2i+1.
inline int tree_node_index(const DyadicNode& node) {
    int idx = 1;
    for (int b : node.bits) idx = 2 * idx + b;
    return idx;
}

inline DyadicNode tree_node_of_index(int index) {
    std::vector<int> bits;
    for (int i = index; i > 1; i /= 2) bits.push_back(i % 2);
    std::reverse(bits.begin(), bits.end());
    return DyadicNode{std::move(bits)};
}

struct TreeFamily {
    SetFamily family;
    int depth = 0;
    std::map<DyadicNode, int> index_of;
};

/// Hereditary closure of the 2^N root-to-leaf branches of the dyadic tree of
/// depth N, under the breadth-first index map.
inline TreeFamily tree_family(int N) {
    if (N < 1) throw std::invalid_argument("tree depth must be >= 1");
    int window = (1 << (N + 1)) - 1;
    std::vector<IndexSet> branches;
    for (int leaf = 1 << N; leaf < 1 << (N + 1); ++leaf) {
        IndexSet branch;
        for (int i = leaf; i >= 1; i /= 2) branch.push_back(i);
        branches.push_back(canonical(branch));
    }
    TreeFamily out{hereditary_closure(branches, window), N, {}};
    for (int i = 1; i <= window; ++i) out.index_of[tree_node_of_index(i)] = i;
    return out;
}

struct DisjointSum {
    SetFamily family;
    std::vector<int> offsets;  // offsets[i] is added to indices of family i
};

/// Relabels each family past the windows of all previous ones and unions them.
inline DisjointSum disjoint_sum(const std::vector<SetFamily>& families) {
    std::vector<int> offsets;
    std::vector<IndexSet> sets;
    int offset = 0;
    for (const auto& f : families) {
        offsets.push_back(offset);
        for (const auto& a : f.sets()) {
            IndexSet shifted;
            shifted.reserve(a.size());
            for (int k : a) shifted.push_back(k + offset);
            sets.push_back(std::move(shifted));
        }
        offset += f.window();
    }
    if (offset == 0) offset = 1;
    return DisjointSum{SetFamily::from_sets(offset, std::move(sets)), std::move(offsets)};
}

struct LargenessReport {
    bool large = false;
    int failing_size = 0;   // meaningful when !large
    int failing_tail = 0;
};

/// Finite truncation proxy for largeness: a necessary condition only. Checks
/// that for every k <= n and tail start m with m + 2k <= W some member of size
/// k lives in [m..W]. The margin keeps window-edge truncation from producing
/// spurious failures.
inline LargenessReport is_large_proxy(const SetFamily& f, int n) {
    int W = f.window();
    for (int k = 1; k <= n; ++k) {
        // best[m] = 1 if some member of size k is contained in [m..W]
        std::vector<int> best(static_cast<std::size_t>(W) + 2, 0);
        for (const auto& a : f.sets())
            if (static_cast<int>(a.size()) == k) best[static_cast<std::size_t>(a.front())] = 1;
        for (int m = W - 1; m >= 1; --m)
            best[static_cast<std::size_t>(m)] |= best[static_cast<std::size_t>(m) + 1];
        for (int m = 1; m + 2 * k <= W; ++m)
            if (!best[static_cast<std::size_t>(m)]) return {false, k, m};
    }
    return {true, 0, 0};
}

}  // namespace combinorm
