#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "index_set.hpp"

namespace combinorm {

/// Closed integer interval [lo, hi].
struct Interval {
    std::int64_t lo = 0;
    std::int64_t hi = -1;

    std::int64_t size() const { return hi < lo ? 0 : hi - lo + 1; }
    auto operator<=>(const Interval&) const = default;
};

/// Finite set of positive integers stored as sorted disjoint runs. Lets the
/// witness constructions work with sets far too large to enumerate.
class IntervalSet {
public:
    IntervalSet() = default;
    explicit IntervalSet(Interval iv) { append(iv); }

    static IntervalSet from_index_set(const IndexSet& a) {
        IntervalSet out;
        for (int k : a) {
            if (!out.runs_.empty() && out.runs_.back().hi + 1 == k)
                ++out.runs_.back().hi;
            else
                out.append({k, k});
        }
        return out;
    }

    void append(Interval iv) {
        if (iv.size() <= 0) return;
        if (iv.lo < 1) throw std::invalid_argument("interval below 1");
        if (!runs_.empty() && iv.lo <= runs_.back().hi)
            throw std::invalid_argument("intervals must be appended in order");
        if (!runs_.empty() && runs_.back().hi + 1 == iv.lo)
            runs_.back().hi = iv.hi;
        else
            runs_.push_back(iv);
    }

    const std::vector<Interval>& runs() const { return runs_; }
    bool empty() const { return runs_.empty(); }

    std::int64_t size() const {
        std::int64_t n = 0;
        for (const auto& r : runs_) n += r.size();
        return n;
    }

    std::int64_t min() const {
        if (empty()) throw std::invalid_argument("min of empty interval set");
        return runs_.front().lo;
    }

    std::int64_t max() const {
        if (empty()) throw std::invalid_argument("max of empty interval set");
        return runs_.back().hi;
    }

    bool contains(std::int64_t k) const {
        for (const auto& r : runs_)
            if (r.lo <= k && k <= r.hi) return true;
        return false;
    }

    static IntervalSet merge(const IntervalSet& a, const IntervalSet& b) {
        std::vector<Interval> all = a.runs_;
        all.insert(all.end(), b.runs_.begin(), b.runs_.end());
        std::sort(all.begin(), all.end());
        IntervalSet out;
        for (const auto& r : all) out.append(r);
        return out;
    }

    static bool disjoint(const IntervalSet& a, const IntervalSet& b) {
        std::size_t i = 0, j = 0;
        while (i < a.runs_.size() && j < b.runs_.size()) {
            const auto& x = a.runs_[i];
            const auto& y = b.runs_[j];
            if (x.hi < y.lo) ++i;
            else if (y.hi < x.lo) ++j;
            else return false;
        }
        return true;
    }

    IndexSet to_index_set(std::int64_t limit = 1 << 22) const {
        if (size() > limit)
            throw std::invalid_argument("interval set too large to enumerate");
        IndexSet out;
        out.reserve(static_cast<std::size_t>(size()));
        for (const auto& r : runs_)
            for (std::int64_t k = r.lo; k <= r.hi; ++k) out.push_back(static_cast<int>(k));
        return out;
    }

    friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

private:
    std::vector<Interval> runs_;
};

/// Left-greedy consecutive Schreier chunking on a run-length set: each block
/// takes min(block) elements. Works on sets whose elements do not fit in
/// memory, as long as the block count stays moderate.
inline std::int64_t phi_intervals(const IntervalSet& a) {
    if (a.empty()) throw std::invalid_argument("phi of empty set");
    std::int64_t blocks = 0;
    std::size_t run = 0;
    std::int64_t pos = a.runs()[0].lo;  // next unconsumed element
    std::int64_t remaining = a.size();
    while (remaining > 0) {
        std::int64_t take = std::min(pos, remaining);
        remaining -= take;
        ++blocks;
        // consume `take` elements starting at pos
        while (take > 0) {
            std::int64_t in_run = a.runs()[run].hi - pos + 1;
            if (take < in_run) {
                pos += take;
                take = 0;
            } else {
                take -= in_run;
                ++run;
                if (run < a.runs().size()) pos = a.runs()[run].lo;
            }
        }
    }
    return blocks;
}

}  // namespace combinorm
