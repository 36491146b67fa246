#pragma once

#include <map>
#include <stdexcept>

#include "index_set.hpp"
#include "rational.hpp"

namespace combinorm {

/// Finitely supported sequence of rationals indexed from 1. Zero entries are
/// never stored.
class SparseVector {
public:
    SparseVector() = default;

    static SparseVector unit(int index, const Rational& value = 1) {
        SparseVector v;
        v.set(index, value);
        return v;
    }

    static SparseVector characteristic(const IndexSet& a, const Rational& value = 1) {
        SparseVector v;
        for (int i : a) v.set(i, value);
        return v;
    }

    void set(int index, const Rational& value) {
        if (index < 1) throw std::invalid_argument("vector index must be >= 1");
        if (value == 0)
            entries_.erase(index);
        else
            entries_[index] = value;
    }

    Rational at(int index) const {
        auto it = entries_.find(index);
        return it == entries_.end() ? Rational(0) : it->second;
    }

    const std::map<int, Rational>& entries() const { return entries_; }

    IndexSet support() const {
        IndexSet s;
        s.reserve(entries_.size());
        for (const auto& [i, _] : entries_) s.push_back(i);
        return s;
    }

    bool zero() const { return entries_.empty(); }
    int max_support() const { return entries_.empty() ? 0 : entries_.rbegin()->first; }
    int min_support() const { return entries_.empty() ? 0 : entries_.begin()->first; }

    SparseVector restrict(const IndexSet& a) const {
        SparseVector out;
        for (int i : a) {
            auto it = entries_.find(i);
            if (it != entries_.end()) out.entries_[i] = it->second;
        }
        return out;
    }

    friend SparseVector operator+(const SparseVector& a, const SparseVector& b) {
        SparseVector out = a;
        for (const auto& [i, v] : b.entries_) out.set(i, out.at(i) + v);
        return out;
    }

    friend SparseVector operator-(const SparseVector& a, const SparseVector& b) {
        SparseVector out = a;
        for (const auto& [i, v] : b.entries_) out.set(i, out.at(i) - v);
        return out;
    }

    friend SparseVector operator*(const Rational& c, const SparseVector& a) {
        SparseVector out;
        if (c == 0) return out;
        for (const auto& [i, v] : a.entries_) out.entries_[i] = c * v;
        return out;
    }

    friend bool operator==(const SparseVector& a, const SparseVector& b) {
        return a.entries_ == b.entries_;
    }

private:
    std::map<int, Rational> entries_;
};

inline Rational sup_norm(const SparseVector& x) {
    Rational best = 0;
    for (const auto& [_, v] : x.entries())
        if (abs(v) > best) best = abs(v);
    return best;
}

inline Rational l1_norm(const SparseVector& x) {
    Rational s = 0;
    for (const auto& [_, v] : x.entries()) s += abs(v);
    return s;
}

inline Rational dot(const SparseVector& a, const SparseVector& b) {
    Rational s = 0;
    for (const auto& [i, v] : a.entries()) s += v * b.at(i);
    return s;
}

}  // namespace combinorm
