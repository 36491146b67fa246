#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "interval_set.hpp"
#include "norms.hpp"

namespace combinorm {

/// Quasi-norm evaluator interface: lets the block-sequence builder run either
/// against an explicit family or against the Schreier family on a window far
/// too wide to enumerate.
class UpperNormEvaluator {
public:
    virtual ~UpperNormEvaluator() = default;
    virtual Rational upper_norm(const SparseVector& x) const = 0;
    virtual int window() const = 0;
};

class FamilyEvaluator final : public UpperNormEvaluator {
public:
    explicit FamilyEvaluator(SetFamily f) : f_(std::move(f)) {}
    Rational upper_norm(const SparseVector& x) const override {
        return norm_upper_exact(x, f_).value;
    }
    int window() const override { return f_.window(); }
    const SetFamily& family() const { return f_; }

private:
    SetFamily f_;
};

namespace detail {

/// Exact partition quasi-norm over the Schreier family restricted to small
/// supports: bitmask DP where the piece through the lowest uncovered index i
/// may take at most i-1 further elements, all to the right is not required
/// (Schreier membership only constrains size against the minimum).
inline Rational schreier_small_support_norm(const SparseVector& x) {
    IndexSet supp = x.support();
    const std::size_t n = supp.size();
    if (n == 0) return 0;
    if (n > 20) throw std::invalid_argument("support too large for the Schreier DP");
    std::vector<Rational> vals(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = abs(x.at(supp[i]));
    std::vector<std::optional<Rational>> memo(std::size_t(1) << n);
    std::function<Rational(std::uint64_t)> best = [&](std::uint64_t u) -> Rational {
        if (u == 0) return 0;
        auto& slot = memo[u];
        if (slot) return *slot;
        const int i = std::countr_zero(u);
        const int cap = supp[static_cast<std::size_t>(i)] - 1;  // companions of i
        std::uint64_t avail = u & ~(1ULL << i);
        // enumerate subsets of avail of size <= cap as the piece through i
        std::vector<int> av;
        for (std::uint64_t v = avail; v != 0; v &= v - 1) av.push_back(std::countr_zero(v));
        Rational out;
        bool first = true;
        std::function<void(std::size_t, int, std::uint64_t, Rational)> rec =
            [&](std::size_t pos, int taken, std::uint64_t mask, Rational mx) {
                Rational cand = mx + best(u & ~mask);
                if (first || cand < out) { out = cand; first = false; }
                if (taken == cap) return;
                for (std::size_t p = pos; p < av.size(); ++p) {
                    int j = av[p];
                    Rational m2 = vals[static_cast<std::size_t>(j)] > mx
                                      ? vals[static_cast<std::size_t>(j)] : mx;
                    rec(p + 1, taken + 1, mask | (1ULL << j), m2);
                }
            };
        rec(0, 0, 1ULL << i, vals[static_cast<std::size_t>(i)]);
        slot = out;
        return out;
    };
    return best((std::uint64_t(1) << n) - 1);
}

}  // namespace detail

/// Exact Schreier quasi-norm without materializing the family. Handles the
/// shapes the block construction produces: index 1 forces a singleton piece,
/// flat vectors cost sup times the consecutive-block count, and anything else
/// must have a small support for the subset DP. Throws otherwise.
class SchreierEvaluator final : public UpperNormEvaluator {
public:
    explicit SchreierEvaluator(int window) : window_(window) {
        if (window < 1) throw std::invalid_argument("window must be >= 1");
    }

    Rational upper_norm(const SparseVector& x) const override {
        if (x.zero()) return 0;
        if (x.max_support() > window_)
            throw std::invalid_argument("support exceeds window");
        SparseVector rest = x;
        Rational head = 0;
        if (rest.at(1) != 0) {
            // any Schreier set containing 1 is {1}
            head = abs(rest.at(1));
            rest.set(1, 0);
            if (rest.zero()) return head;
        }
        IndexSet supp = rest.support();
        Rational top = sup_norm(rest);
        bool flat = true;
        for (int k : supp)
            if (abs(rest.at(k)) != top) { flat = false; break; }
        if (flat) return head + top * Rational(phi_consecutive_schreier(supp).count);
        if (supp.size() <= 20) return head + detail::schreier_small_support_norm(rest);
        throw std::invalid_argument(
            "Schreier evaluator: vector is neither flat nor small-support");
    }

    int window() const override { return window_; }

private:
    int window_;
};

/// x(t) = number of leaves below t on the depth-N dyadic tree, together with
/// the branch characteristic vectors it sums.
inline std::pair<SparseVector, std::vector<SparseVector>> tree_example_vector(int N) {
    if (N < 1) throw std::invalid_argument("tree depth must be >= 1");
    SparseVector x;
    std::vector<SparseVector> branches;
    for (int leaf = 1 << N; leaf < 1 << (N + 1); ++leaf) {
        SparseVector b;
        for (int i = leaf; i >= 1; i /= 2) b.set(i, 1);
        x = x + b;
        branches.push_back(std::move(b));
    }
    return {std::move(x), std::move(branches)};
}

/// Interval system attached to the dyadic tree of depth N. Nodes are visited
/// in post-order with the 1-child first, so the all-ones leaf comes first and
/// the root last, and every node follows its descendants. Interval sets are
/// run-length encoded: beyond depth 2 their sizes explode far past anything
/// enumerable.
struct SchreierWitness {
    int N = 0;
    std::vector<std::vector<int>> order;            // nodes in visiting order
    std::map<std::vector<int>, IntervalSet> node_set;  // F_s per node
    std::vector<IntervalSet> branch_sets;           // union of F_s along each branch
    std::map<int, IntervalSet> levels;              // r -> A_r, nodes of depth N-r
    // the witness vector takes the value 2^r on levels[r]

    SparseVector x(std::int64_t limit = 1 << 22) const {
        SparseVector out;
        for (const auto& [r, a] : levels)
            for (int k : a.to_index_set(limit)) out.set(k, Rational(BigInt(1) << r));
        return out;
    }

    std::vector<IndexSet> branch_index_sets(std::int64_t limit = 1 << 22) const {
        std::vector<IndexSet> out;
        for (const auto& b : branch_sets) out.push_back(b.to_index_set(limit));
        return out;
    }
};

inline SchreierWitness schreier_witness(int N) {
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    SchreierWitness w;
    w.N = N;

    // post-order, 1-child before 0-child
    std::function<void(std::vector<int>&)> visit = [&](std::vector<int>& node) {
        if (static_cast<int>(node.size()) < N) {
            for (int b : {1, 0}) {
                node.push_back(b);
                visit(node);
                node.pop_back();
            }
        }
        w.order.push_back(node);
    };
    std::vector<int> root;
    visit(root);

    std::int64_t prev_max = 0;
    for (const auto& s : w.order) {
        const bool terminal = static_cast<int>(s.size()) == N;
        IntervalSet f;
        if (prev_max == 0) {
            f.append({N + 1, N + 1});  // first node, the all-ones leaf
        } else if (terminal) {
            std::int64_t lo = (2 * N + 1) * prev_max;
            f.append({lo, lo + 2 * prev_max - 1});
        } else if (!s.empty()) {
            // least terminal descendant: extend by ones
            std::vector<int> t = s;
            t.resize(static_cast<std::size_t>(N), 1);
            std::int64_t len = w.node_set.at(t).size();
            f.append({prev_max + 1, prev_max + len});
        } else {
            f.append({prev_max + 1, prev_max + 1});  // root singleton
        }
        prev_max = f.max();
        w.node_set.emplace(s, std::move(f));
    }

    for (int leaf = 0; leaf < 1 << N; ++leaf) {
        IntervalSet b;
        std::vector<int> node;
        b = IntervalSet::merge(b, w.node_set.at(node));
        for (int d = N - 1; d >= 0; --d) {
            node.push_back((leaf >> d) & 1);
            b = IntervalSet::merge(b, w.node_set.at(node));
        }
        w.branch_sets.push_back(std::move(b));
    }

    for (int r = 0; r <= N; ++r) {
        IntervalSet a;
        for (const auto& [s, f] : w.node_set)
            if (static_cast<int>(s.size()) == N - r) a = IntervalSet::merge(a, f);
        w.levels.emplace(r, std::move(a));
    }
    return w;
}

struct WitnessPropertyReport {
    bool interval_order = false;     // max F_s < min F_t along the visiting order
    bool levels_partition = false;   // the A_r are disjoint and exhaust the F_s
    bool size_dominance = false;     // 2 max F_{s1} <= |F_{s2}| on same-level pairs
    bool branches_schreier = false;  // |F_B| <= min F_B for every branch
    bool values_dyadic = false;      // the witness vector only takes values 2^r
    bool phi_growth = false;         // phi(A_r) >= 2^{N-r}
    std::vector<std::int64_t> phi_values;  // phi(A_r) for r = 0..N

    bool all() const {
        return interval_order && levels_partition && size_dominance &&
               branches_schreier && values_dyadic && phi_growth;
    }
};

inline WitnessPropertyReport verify_schreier_witness(const SchreierWitness& w) {
    WitnessPropertyReport rep;
    const int N = w.N;

    rep.interval_order = true;
    std::int64_t prev = 0;
    for (const auto& s : w.order) {
        const IntervalSet& f = w.node_set.at(s);
        if (f.empty() || f.min() <= prev) rep.interval_order = false;
        else prev = f.max();
    }

    rep.levels_partition = true;
    std::int64_t total = 0;
    for (const auto& [r, a] : w.levels) {
        (void)r;
        total += a.size();
    }
    std::int64_t node_total = 0;
    for (const auto& [s, f] : w.node_set) {
        node_total += f.size();
        const int r = N - static_cast<int>(s.size());
        const IntervalSet& level = w.levels.at(r);
        for (const auto& run : f.runs())
            if (!level.contains(run.lo) || !level.contains(run.hi))
                rep.levels_partition = false;
    }
    if (total != node_total) rep.levels_partition = false;
    for (int r = 0; r <= N; ++r)
        for (int q = r + 1; q <= N; ++q)
            if (!IntervalSet::disjoint(w.levels.at(r), w.levels.at(q)))
                rep.levels_partition = false;

    // same-level ordered pairs: twice the max of the earlier set is at most
    // the size of the later one; this is the finite inequality behind the
    // norm-growth argument
    rep.size_dominance = true;
    for (int r = 0; r < N; ++r) {
        std::vector<const IntervalSet*> level;
        for (const auto& s : w.order)
            if (static_cast<int>(s.size()) == N - r) level.push_back(&w.node_set.at(s));
        for (std::size_t i = 0; i < level.size(); ++i)
            for (std::size_t j = i + 1; j < level.size(); ++j)
                if (2 * level[i]->max() > level[j]->size()) rep.size_dominance = false;
    }

    rep.branches_schreier = true;
    for (const auto& b : w.branch_sets)
        if (b.size() > b.min()) rep.branches_schreier = false;

    rep.values_dyadic = true;  // by construction the value on A_r is 2^r; check
                               // the levels cover every attached interval
    if (static_cast<int>(w.levels.size()) != N + 1) rep.values_dyadic = false;

    rep.phi_growth = true;
    for (int r = 0; r <= N; ++r) {
        std::int64_t phi = phi_intervals(w.levels.at(r));
        rep.phi_values.push_back(phi);
        if (phi < (std::int64_t(1) << (N - r))) rep.phi_growth = false;
    }
    return rep;
}

/// Partition of the witness support into the per-node intervals. Each piece is
/// a Schreier set sitting inside one level, so the piece counts per value are
/// exactly the level cardinalities of the tree.
inline std::vector<IntervalSet> witness_node_certificate(const SchreierWitness& w) {
    std::vector<IntervalSet> pieces;
    for (const auto& s : w.order) pieces.push_back(w.node_set.at(s));
    return pieces;
}

struct GrowthReport {
    bool certificate_valid = false;
    bool chain_ok = false;             // 2^{N-r} <= l_r + ... + l_N for all r
    std::vector<std::int64_t> piece_counts;  // l_r indexed by r
    Rational certificate_cost = 0;     // sum l_r 2^r
    Rational proof_bound = 0;          // N 2^N / (2 (M+2)^2)
    bool consistent_with_cap = false;  // certificate_cost <= 2^{M+N}
};

/// Counting check on a partition certificate for the witness vector: validates
/// the pieces, tallies them by their maximal value, checks the coverage chain
/// forced by phi on each level, and compares the certificate cost against the
/// growth bound with parameter M.
inline GrowthReport verify_growth_lower_bound(const SchreierWitness& w, int M,
                                              const std::vector<IntervalSet>& pieces) {
    const int N = w.N;
    GrowthReport rep;
    rep.certificate_valid = true;
    std::int64_t covered = 0;
    for (const auto& p : pieces) {
        if (p.empty() || p.size() > p.min()) rep.certificate_valid = false;
        covered += p.size();
    }
    for (std::size_t i = 0; i < pieces.size() && rep.certificate_valid; ++i)
        for (std::size_t j = i + 1; j < pieces.size(); ++j)
            if (!IntervalSet::disjoint(pieces[i], pieces[j])) rep.certificate_valid = false;
    std::int64_t support = 0;
    for (const auto& [r, a] : w.levels) {
        (void)r;
        support += a.size();
    }
    if (covered != support) rep.certificate_valid = false;
    for (const auto& p : pieces) {
        bool inside = false;
        for (const auto& [r, a] : w.levels) {
            (void)r;
            if (a.contains(p.min())) inside = true;
        }
        if (!inside) rep.certificate_valid = false;
    }
    if (!rep.certificate_valid) throw std::invalid_argument("malformed certificate");

    // l_r = number of pieces whose maximal witness value is 2^r; the maximal
    // value of a piece sits at its smallest level (levels carry 2^r on A_r and
    // interleave arbitrarily, so scan all)
    rep.piece_counts.assign(static_cast<std::size_t>(N) + 1, 0);
    for (const auto& p : pieces) {
        int best_r = 0;
        for (const auto& [r, a] : w.levels)
            if (r > best_r && !IntervalSet::disjoint(p, a)) best_r = r;
        rep.piece_counts[static_cast<std::size_t>(best_r)] += 1;
    }

    rep.chain_ok = true;
    std::int64_t suffix = 0;
    for (int r = N; r >= 0; --r) {
        suffix += rep.piece_counts[static_cast<std::size_t>(r)];
        if (suffix < (std::int64_t(1) << (N - r))) rep.chain_ok = false;
    }

    for (int r = 0; r <= N; ++r)
        rep.certificate_cost +=
            Rational(rep.piece_counts[static_cast<std::size_t>(r)]) * Rational(BigInt(1) << r);
    rep.proof_bound = Rational(N) * Rational(BigInt(1) << N) /
                      Rational(2 * (M + 2) * (M + 2));
    rep.consistent_with_cap = rep.certificate_cost <= Rational(BigInt(1) << (M + N));
    return rep;
}

/// Exact check of the stability inequality |x + lam y| >= |x| + (|lam|/2)|y|
/// in the partition quasi-norm. Preconditions (support separation, stability
/// of y at the edge of x) are hard errors, not a false return.
inline bool verify_stable_inequality(const SparseVector& x, const SparseVector& y,
                                     const Rational& lam, const UpperNormEvaluator& ev) {
    if (y.zero()) throw std::invalid_argument("y must be nonzero");
    if (!x.zero() && x.max_support() >= y.min_support())
        throw std::invalid_argument("supports of x and y must be separated");
    const int k0 = x.zero() ? 1 : x.max_support();
    Rational ny = ev.upper_norm(y);
    if (!(sup_norm(y) * Rational(4 * k0) <= ny))
        throw std::invalid_argument("y is not stable at the support edge of x");
    Rational lhs = ev.upper_norm(x + lam * y);
    Rational rhs = ev.upper_norm(x) + abs(lam) / 2 * ny;
    return lhs >= rhs;
}

inline bool verify_stable_inequality(const SparseVector& x, const SparseVector& y,
                                     const Rational& lam, const SetFamily& f) {
    return verify_stable_inequality(x, y, lam, FamilyEvaluator(f));
}

struct BlockSequenceState {
    int n = 0;                 // block index, 1-based
    int k = 0;                 // max support of the normalized block
    long long l = 0;           // inputs consumed up to and including this block
    SparseVector y;            // normalized block
    Rational block_norm = 0;   // quasi-norm of the unnormalized block
    int stability_k = 0;       // the block is stability_k-stable (prior k)
};

struct L1BlockBuild {
    std::vector<BlockSequenceState> blocks;
    bool window_exhausted = false;
    std::string message;  // set when window_exhausted
};

/// Inductive block-sequence builder: starting from a stream of normalized
/// vectors with strictly increasing supports, greedily extends each block
/// until it is k-stable for the previous block's support edge k, then
/// normalizes. Stops with an exhaustion report when the window cap is hit
/// before stability; that signals the window is too small, nothing else.
inline L1BlockBuild build_l1_blocks(
    const std::function<std::optional<SparseVector>(long long)>& xs, int count,
    const UpperNormEvaluator& ev, int max_window) {
    if (count < 1) throw std::invalid_argument("count must be >= 1");
    if (max_window > ev.window())
        throw std::invalid_argument("window cap exceeds the evaluator window");
    L1BlockBuild out;
    long long pos = 0;
    int prev_k = 0;
    int prev_max_supp = 0;
    while (static_cast<int>(out.blocks.size()) < count) {
        SparseVector block;
        Rational bn = 0;
        bool stable = false;
        while (!stable) {
            std::optional<SparseVector> next = xs(pos);
            if (!next || next->zero()) {
                out.window_exhausted = true;
                out.message = "input stream ended before the block stabilized";
                return out;
            }
            if (next->min_support() <= prev_max_supp)
                throw std::invalid_argument("input supports must be strictly increasing");
            if (next->max_support() > max_window) {
                out.window_exhausted = true;
                out.message = "window cap " + std::to_string(max_window) +
                              " reached before k-stability at k = " +
                              std::to_string(prev_k);
                return out;
            }
            if (ev.upper_norm(*next) != 1)
                throw std::invalid_argument("inputs must have unit quasi-norm");
            prev_max_supp = next->max_support();
            block = block + *next;
            ++pos;
            bn = ev.upper_norm(block);
            stable = out.blocks.empty() ||
                     sup_norm(block) * Rational(4 * prev_k) <= bn;
        }
        BlockSequenceState st;
        st.n = static_cast<int>(out.blocks.size()) + 1;
        st.y = (Rational(1) / bn) * block;
        st.k = st.y.max_support();
        st.l = pos;
        st.block_norm = bn;
        st.stability_k = prev_k;
        prev_k = st.k;
        out.blocks.push_back(std::move(st));
    }
    return out;
}

inline L1BlockBuild build_l1_blocks(
    const std::function<std::optional<SparseVector>(long long)>& xs, int count,
    const SetFamily& f, int max_window) {
    return build_l1_blocks(xs, count, FamilyEvaluator(f), max_window);
}

/// Stream of coordinate unit vectors e_1, e_2, ...
inline std::function<std::optional<SparseVector>(long long)> unit_vector_stream() {
    return [](long long i) -> std::optional<SparseVector> {
        if (i >= std::numeric_limits<int>::max() - 1) return std::nullopt;
        return SparseVector::unit(static_cast<int>(i) + 1, 1);
    };
}

struct SchurReport {
    bool refused = false;
    std::string reason;
    bool all_units_norm_one = false;   // |e_k|^F = 1 for every window index
    std::vector<int> offending_units;  // indices with |e_k|^F != 1
    Rational functional_lower = 0;     // norm_lower of the supplied functional
    std::vector<std::pair<int, Rational>> functional_decay;  // (k, |y(k)|)
};

/// Finite shadow of the weak-null unit-vector argument: on a large family
/// every coordinate vector has quasi-norm one, so the unit basis cannot be
/// norm-null, while any fixed functional decays along it.
inline SchurReport schur_witness(const SetFamily& f, int n,
                                 const std::optional<SparseVector>& y = {}) {
    SchurReport rep;
    LargenessReport large = is_large_proxy(f, n);
    if (!large.large) {
        rep.refused = true;
        rep.reason = "family fails the largeness proxy at size " +
                     std::to_string(large.failing_size) + ", tail start " +
                     std::to_string(large.failing_tail);
        return rep;
    }
    rep.all_units_norm_one = true;
    for (int k = 1; k <= f.window(); ++k) {
        if (norm_upper_exact(SparseVector::unit(k, 1), f).value != 1) {
            rep.all_units_norm_one = false;
            rep.offending_units.push_back(k);
        }
    }
    if (y) {
        rep.functional_lower = norm_lower(*y, f);
        for (int k : y->support()) rep.functional_decay.emplace_back(k, abs(y->at(k)));
    }
    return rep;
}

}  // namespace combinorm
