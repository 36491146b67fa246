#pragma once

#include <bit>
#include <chrono>
#include <cstdint>
#include <limits>
#include <unordered_map>

#include "family.hpp"
#include "sparse_vector.hpp"

namespace combinorm {

struct PartitionCertificate {
    std::vector<IndexSet> pieces;
    Rational value = 0;
};

struct UpperNormResult {
    Rational value = 0;
    PartitionCertificate certificate;
};

enum class SolveStatus { Exact, Incomplete };

struct SolveCaps {
    int dp_support_limit = 22;        // bitmask DP up to this support size
    long long time_cap_ms = -1;       // <0: no cap
    long long node_cap = -1;          // <0: no cap (branch-and-bound nodes)
};

struct BoundedNormResult {
    SolveStatus status = SolveStatus::Exact;
    Rational lower = 0;               // valid lower bound on the norm
    Rational upper = 0;               // value of the certificate below
    PartitionCertificate certificate; // feasible, optimal when status == Exact
};

struct ResourceCapExceeded : std::runtime_error {
    ResourceCapExceeded(std::string what, BoundedNormResult partial)
        : std::runtime_error(std::move(what)), best(std::move(partial)) {}
    BoundedNormResult best;
};

/// sup over family members of the l1 mass on the member. The sup is attained
/// on a maximal set, so only the antichain is scanned.
inline Rational norm_lower(const SparseVector& x, const SetFamily& f) {
    if (x.max_support() > f.window())
        throw std::invalid_argument("support exceeds family window");
    Rational best = 0;
    for (const auto& m : f.maximal_sets()) {
        Rational s = 0;
        for (int k : m) s += abs(x.at(k));
        if (s > best) best = s;
    }
    return best;
}

/// Sum of per-piece sups; pieces must be disjoint and cover the support.
inline Rational norm_for_partition(const SparseVector& x,
                                   const std::vector<IndexSet>& pieces) {
    std::set<int> covered;
    Rational total = 0;
    for (const auto& p : pieces) {
        Rational piece_max = 0;
        for (int k : p) {
            if (!covered.insert(k).second)
                throw std::invalid_argument("partition pieces overlap");
            Rational a = abs(x.at(k));
            if (a > piece_max) piece_max = a;
        }
        total += piece_max;
    }
    for (int k : x.support())
        if (!covered.count(k))
            throw std::invalid_argument("partition does not cover the support");
    return total;
}

/// Same, but additionally requires every piece to be a family member.
inline Rational norm_for_partition(const SparseVector& x,
                                   const std::vector<IndexSet>& pieces,
                                   const SetFamily& f) {
    for (const auto& p : pieces)
        if (!f.contains(p))
            throw std::invalid_argument("partition piece is not a family member");
    return norm_for_partition(x, pieces);
}

/// Inclusion-maximal traces of the family's maximal sets on the given support.
/// By hereditarity a set is a member iff it lies inside some trace, so these
/// are exactly the admissible-piece generators for the partition problem.
inline std::vector<IndexSet> support_traces(const SetFamily& f, const IndexSet& supp) {
    std::set<IndexSet> traces;
    for (const auto& m : f.maximal_sets()) {
        IndexSet t = set_intersection(m, supp);
        if (!t.empty()) traces.insert(std::move(t));
    }
    std::vector<IndexSet> out;
    for (const auto& t : traces) {
        bool dominated = false;
        for (const auto& u : traces)
            if (t != u && is_subset(t, u)) { dominated = true; break; }
        if (!dominated) out.push_back(t);
    }
    return out;
}

namespace detail {

/// Shared machinery for the exact minimum-cost partition of the support into
/// family members. Positions index the sorted support; sets are uint64 masks.
class PartitionSolver {
public:
    PartitionSolver(const SparseVector& x, const SetFamily& f, SolveCaps caps)
        : caps_(caps), start_(std::chrono::steady_clock::now()) {
        if (!f.hereditary()) throw std::invalid_argument("family is not hereditary");
        if (x.max_support() > f.window())
            throw std::invalid_argument("support exceeds family window");
        supp_ = x.support();
        if (supp_.size() > 63)
            throw std::invalid_argument("support too large for the exact solver");
        vals_.reserve(supp_.size());
        for (int k : supp_) vals_.push_back(abs(x.at(k)));
        full_ = supp_.empty() ? 0 : (~0ULL >> (64 - supp_.size()));
        std::uint64_t covered = 0;
        for (const auto& t : support_traces(f, supp_)) {
            std::uint64_t m = mask_of(t);
            traces_.push_back(m);
            covered |= m;
        }
        if (covered != full_)
            throw std::invalid_argument(
                "infeasible: some support point lies in no family member");
    }

    BoundedNormResult solve() {
        if (full_ == 0) return {};
        BoundedNormResult greedy = greedy_result();
        if (static_cast<int>(supp_.size()) <= caps_.dp_support_limit) {
            try {
                Rational value = dp(full_);
                BoundedNormResult out;
                out.status = SolveStatus::Exact;
                out.lower = out.upper = value;
                out.certificate = dp_certificate();
                return out;
            } catch (const ResourceCapExceeded&) {
                throw;
            } catch (const std::runtime_error& e) {
                throw ResourceCapExceeded(e.what(), std::move(greedy));
            }
        }
        return branch_and_bound(std::move(greedy));
    }

    BoundedNormResult greedy_result() {
        std::uint64_t u = full_;
        PartitionCertificate cert;
        while (u) {
            int j = largest_value_position(u);
            // Pieces containing the current largest value are whole traces:
            // any value threshold admitting j admits everything available.
            std::uint64_t best_piece = 0;
            for (std::uint64_t t : traces_) {
                if (!(t & (1ULL << j))) continue;
                std::uint64_t avail = t & u;
                if (better_greedy_piece(avail, best_piece, j)) best_piece = avail;
            }
            cert.pieces.push_back(set_of(best_piece));
            cert.value += piece_cost(best_piece);
            u &= ~best_piece;
        }
        BoundedNormResult out;
        out.status = SolveStatus::Incomplete;
        out.upper = cert.value;
        out.lower = trivial_lower_bound(full_);
        out.certificate = std::move(cert);
        return out;
    }

private:
    std::uint64_t mask_of(const IndexSet& t) const {
        std::uint64_t m = 0;
        std::size_t p = 0;
        for (int k : t) {
            while (p < supp_.size() && supp_[p] < k) ++p;
            if (p < supp_.size() && supp_[p] == k) m |= 1ULL << p;
        }
        return m;
    }

    IndexSet set_of(std::uint64_t m) const {
        IndexSet out;
        for (std::size_t p = 0; p < supp_.size(); ++p)
            if (m & (1ULL << p)) out.push_back(supp_[p]);
        return out;
    }

    Rational piece_cost(std::uint64_t m) const {
        Rational best = 0;
        for (std::size_t p = 0; p < supp_.size(); ++p)
            if ((m & (1ULL << p)) && vals_[p] > best) best = vals_[p];
        return best;
    }

    int largest_value_position(std::uint64_t u) const {
        int best = -1;
        for (std::size_t p = 0; p < supp_.size(); ++p)
            if (u & (1ULL << p))
                if (best < 0 || vals_[p] > vals_[static_cast<std::size_t>(best)]) best = static_cast<int>(p);
        return best;
    }

    bool better_greedy_piece(std::uint64_t cand, std::uint64_t incumbent, int j) const {
        (void)j;
        if (!cand) return false;
        if (!incumbent) return true;
        // minimize (piece max)/(piece size); ties by lexicographically
        // smallest index list
        Rational lhs = piece_cost(cand) * std::popcount(incumbent);
        Rational rhs = piece_cost(incumbent) * std::popcount(cand);
        if (lhs != rhs) return lhs < rhs;
        return set_of(cand) < set_of(incumbent);
    }

    /// Candidate pieces that contain the lowest uncovered position. For every
    /// trace through it, enlarging a piece to all available values at or below
    /// its max is free and never hurts, so only value-downward-closed pieces
    /// within a trace need to be enumerated.
    std::vector<std::uint64_t> candidates_lowest(std::uint64_t u) const {
        int i = std::countr_zero(u);
        std::set<std::uint64_t> pieces;
        for (std::uint64_t t : traces_) {
            if (!(t & (1ULL << i))) continue;
            std::uint64_t avail = t & u;
            std::vector<std::size_t> pos;
            for (std::size_t p = 0; p < supp_.size(); ++p)
                if (avail & (1ULL << p)) pos.push_back(p);
            for (std::size_t pt : pos) {
                const Rational& c = vals_[pt];
                if (c < vals_[static_cast<std::size_t>(i)]) continue;
                std::uint64_t piece = 0;
                for (std::size_t p : pos)
                    if (vals_[p] <= c) piece |= 1ULL << p;
                pieces.insert(piece);
            }
        }
        return {pieces.begin(), pieces.end()};
    }

    void check_caps(long long nodes) {
        if (caps_.node_cap >= 0 && nodes > caps_.node_cap)
            throw std::runtime_error("node cap exceeded");
        if (caps_.time_cap_ms >= 0 && (nodes & 0x3ff) == 0) {
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start_)
                          .count();
            if (ms > caps_.time_cap_ms) throw std::runtime_error("time cap exceeded");
        }
    }

    const Rational& dp(std::uint64_t u) {
        auto it = memo_.find(u);
        if (it != memo_.end()) return it->second.first;
        check_caps(static_cast<long long>(memo_.size()));
        Rational best = 0;
        std::uint64_t best_piece = 0;
        if (u != 0) {
            bool have = false;
            for (std::uint64_t piece : candidates_lowest(u)) {
                Rational cost = piece_cost(piece) + dp(u & ~piece);
                if (!have || cost < best ||
                    (cost == best && set_of(piece) < set_of(best_piece))) {
                    best = cost;
                    best_piece = piece;
                    have = true;
                }
            }
        }
        auto [ins, _] = memo_.emplace(u, std::make_pair(best, best_piece));
        return ins->second.first;
    }

    PartitionCertificate dp_certificate() {
        PartitionCertificate cert;
        std::uint64_t u = full_;
        while (u) {
            std::uint64_t piece = memo_.at(u).second;
            cert.pieces.push_back(set_of(piece));
            cert.value += piece_cost(piece);
            u &= ~piece;
        }
        return cert;
    }

    Rational trivial_lower_bound(std::uint64_t u) const {
        int j = largest_value_position(u);
        if (j < 0) return 0;
        Rational lb = vals_[static_cast<std::size_t>(j)];
        // Two-level bound: whatever single admissible piece absorbs the
        // largest value, the largest value left outside it is paid again.
        Rational second_term;
        bool have = false;
        for (std::uint64_t t : traces_) {
            if (!(t & (1ULL << j))) continue;
            std::uint64_t rest = u & ~t;
            Rational outside = 0;
            if (rest) outside = vals_[static_cast<std::size_t>(largest_value_position(rest))];
            if (!have || outside < second_term) { second_term = outside; have = true; }
        }
        return have ? lb + second_term : lb;
    }

    BoundedNormResult branch_and_bound(BoundedNormResult incumbent) {
        long long nodes = 0;
        PartitionCertificate current;
        try {
            bb_recurse(full_, Rational(0), current, incumbent, nodes);
            incumbent.status = SolveStatus::Exact;
            incumbent.lower = incumbent.upper = incumbent.certificate.value;
            return incumbent;
        } catch (const std::runtime_error& e) {
            incumbent.status = SolveStatus::Incomplete;
            throw ResourceCapExceeded(e.what(), incumbent);
        }
    }

    void bb_recurse(std::uint64_t u, Rational acc, PartitionCertificate& current,
                    BoundedNormResult& incumbent, long long& nodes) {
        check_caps(++nodes);
        if (!u) {
            if (acc < incumbent.upper ||
                (acc == incumbent.upper &&
                 current.pieces < incumbent.certificate.pieces)) {
                incumbent.upper = acc;
                incumbent.certificate = current;
                incumbent.certificate.value = acc;
            }
            return;
        }
        if (acc + bb_lower_bound(u) > incumbent.upper) return;
        // branch on the largest uncovered |x|; candidate pieces are the
        // value-downward-closed trace pieces through it
        int j = largest_value_position(u);
        std::set<std::uint64_t> pieces;
        for (std::uint64_t t : traces_) {
            if (!(t & (1ULL << j))) continue;
            pieces.insert(t & u);  // threshold >= vals_[j] keeps everything
        }
        std::vector<std::pair<Rational, std::uint64_t>> ordered;
        for (std::uint64_t p : pieces) ordered.emplace_back(piece_cost(p), p);
        std::sort(ordered.begin(), ordered.end());
        for (const auto& [cost, piece] : ordered) {
            current.pieces.push_back(set_of(piece));
            bb_recurse(u & ~piece, acc + cost, current, incumbent, nodes);
            current.pieces.pop_back();
        }
    }

    Rational bb_lower_bound(std::uint64_t u) const { return trivial_lower_bound(u); }

    SolveCaps caps_;
    std::chrono::steady_clock::time_point start_;
    IndexSet supp_;
    std::vector<Rational> vals_;
    std::uint64_t full_ = 0;
    std::vector<std::uint64_t> traces_;
    std::unordered_map<std::uint64_t, std::pair<Rational, std::uint64_t>> memo_;
};

}  // namespace detail

/// Exact minimum of sum-of-piece-maxima over partitions of the support into
/// family members, with an optimal certificate. Bitmask DP over support
/// subsets up to the DP limit, branch-and-bound above it.
inline UpperNormResult norm_upper_exact(const SparseVector& x, const SetFamily& f,
                                        SolveCaps caps = {}) {
    if (x.zero()) return {};
    detail::PartitionSolver solver(x, f, caps);
    BoundedNormResult r = solver.solve();
    return {r.upper, std::move(r.certificate)};
}

/// Capped variant for the CLI: never throws on resource exhaustion, reports
/// (lower bound, greedy/best certificate) with an incomplete status instead.
inline BoundedNormResult norm_upper_bounded(const SparseVector& x, const SetFamily& f,
                                            SolveCaps caps = {}) {
    if (x.zero()) return {};
    detail::PartitionSolver solver(x, f, caps);
    try {
        return solver.solve();
    } catch (const ResourceCapExceeded& e) {
        return e.best;
    }
}

/// Feasible certificate by repeatedly absorbing the largest uncovered value
/// into the widest admissible piece (smallest max/size ratio).
inline UpperNormResult norm_upper_greedy(const SparseVector& x, const SetFamily& f) {
    if (x.zero()) return {};
    detail::PartitionSolver solver(x, f, {});
    BoundedNormResult r = solver.greedy_result();
    return {r.upper, std::move(r.certificate)};
}

/// Exact comparison sup-norm <= quasi-norm / 4k against a precomputed norm.
inline bool is_k_stable_value(const SparseVector& x, int k, const Rational& upper_norm) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    return sup_norm(x) * Rational(4 * k) <= upper_norm;
}

inline bool is_k_stable(const SparseVector& x, int k, const SetFamily& f) {
    return is_k_stable_value(x, k, norm_upper_exact(x, f).value);
}

struct PhiResult {
    int count = 0;
    std::vector<IndexSet> blocks;
};

/// Minimal number of consecutive Schreier blocks partitioning A, by left
/// greedy maximal chunks: each block takes min(block) elements.
inline PhiResult phi_consecutive_schreier(const IndexSet& a) {
    if (a.empty()) throw std::invalid_argument("phi of the empty set");
    if (!is_canonical(a)) throw std::invalid_argument("set not canonical");
    PhiResult out;
    std::size_t i = 0;
    while (i < a.size()) {
        std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(a[i]),
                                                 a.size() - i);
        out.blocks.emplace_back(a.begin() + static_cast<long>(i),
                                a.begin() + static_cast<long>(i + take));
        i += take;
        ++out.count;
    }
    return out;
}

}  // namespace combinorm
