#pragma once

#include "norms.hpp"
#include "simplex.hpp"

namespace combinorm {

/// A window-maximal family member with a total sign assignment. As a vector it
/// lies on both unit spheres (quasi-ball and dual ball).
struct ExtremePoint {
    IndexSet base;
    std::vector<int> signs;  // aligned with base, entries in {-1,+1}

    SparseVector to_vector() const {
        SparseVector v;
        for (std::size_t i = 0; i < base.size(); ++i)
            v.set(base[i], Rational(signs[i]));
        return v;
    }

    auto operator<=>(const ExtremePoint&) const = default;
};

/// All (maximal set, sign) pairs. With restrict_to, bases are first
/// intersected with the given set and deduplicated, mirroring the projection
/// of extreme points onto a finite support.
inline std::vector<ExtremePoint> extreme_points(
    const SetFamily& f, const std::optional<IndexSet>& restrict_to = {}) {
    std::set<IndexSet> bases;
    for (const auto& m : f.maximal_sets()) {
        IndexSet b = restrict_to ? set_intersection(m, *restrict_to) : m;
        if (!b.empty()) bases.insert(std::move(b));
    }
    std::vector<ExtremePoint> out;
    for (const auto& b : bases) {
        const std::size_t n = b.size();
        for (std::uint64_t bits = 0; bits < (1ULL << n); ++bits) {
            ExtremePoint e{b, std::vector<int>(n, 1)};
            for (std::size_t i = 0; i < n; ++i)
                if (bits & (1ULL << i)) e.signs[i] = -1;
            out.push_back(std::move(e));
        }
    }
    return out;
}

namespace detail {

struct TraceTable {
    IndexSet supp;
    std::vector<IndexSet> traces;          // inclusion-maximal, deduped
    std::vector<IndexSet> trace_parent;    // a maximal set containing the trace
};

inline TraceTable build_traces(const SparseVector& y, const SetFamily& f) {
    if (y.max_support() > f.window())
        throw std::invalid_argument("support exceeds family window");
    TraceTable t;
    t.supp = y.support();
    t.traces = support_traces(f, t.supp);
    for (const auto& g : t.traces)
        for (const auto& m : f.maximal_sets())
            if (is_subset(g, m)) { t.trace_parent.push_back(m); break; }
    return t;
}

}  // namespace detail

/// Dual (Banach-envelope) norm by the packing LP over |y|: maximize the
/// weighted mass subject to unit capacity on every maximal-set trace.
inline Rational dual_norm(const SparseVector& y, const SetFamily& f) {
    if (y.zero()) return 0;
    detail::TraceTable t = detail::build_traces(y, f);
    const std::size_t n = t.supp.size();
    LinearProgram lp;
    lp.sense = Objective::Maximize;
    lp.objective.reserve(n);
    for (int k : t.supp) lp.objective.push_back(abs(y.at(k)));
    for (const auto& g : t.traces) {
        LinearProgram::Row row;
        row.coeffs.assign(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            if (contains(g, t.supp[i])) row.coeffs[i] = 1;
        row.rel = Relation::LessEq;
        row.rhs = 1;
        lp.rows.push_back(std::move(row));
    }
    LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal)
        throw std::runtime_error("packing LP did not solve");
    return sol.value;
}

struct EnvelopeGaugeResult {
    Rational value = 0;
    std::vector<std::pair<Rational, ExtremePoint>> decomposition;
};

/// Same value as dual_norm, computed independently by the covering LP:
/// minimize total weight of trace characteristic vectors dominating |y|.
/// The optimal weights give a scaled convex decomposition into extreme points
/// signed like y.
inline EnvelopeGaugeResult envelope_gauge(const SparseVector& y, const SetFamily& f) {
    if (y.zero()) return {};
    detail::TraceTable t = detail::build_traces(y, f);
    const std::size_t n = t.supp.size();
    const std::size_t g = t.traces.size();
    LinearProgram lp;
    lp.sense = Objective::Minimize;
    lp.objective.assign(g, 1);
    for (std::size_t i = 0; i < n; ++i) {
        LinearProgram::Row row;
        row.coeffs.assign(g, 0);
        for (std::size_t j = 0; j < g; ++j)
            if (contains(t.traces[j], t.supp[i])) row.coeffs[j] = 1;
        row.rel = Relation::GreaterEq;
        row.rhs = abs(y.at(t.supp[i]));
        lp.rows.push_back(std::move(row));
    }
    LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal)
        throw std::runtime_error("covering LP did not solve");
    EnvelopeGaugeResult out;
    out.value = sol.value;
    for (std::size_t j = 0; j < g; ++j) {
        if (sol.x[j] == 0) continue;
        const IndexSet& base = t.trace_parent[j];
        ExtremePoint e{base, std::vector<int>(base.size(), 1)};
        for (std::size_t i = 0; i < base.size(); ++i) {
            int s = sgn(y.at(base[i]));
            if (s != 0) e.signs[i] = s;
        }
        out.decomposition.emplace_back(sol.x[j], std::move(e));
    }
    return out;
}

/// Structured upper-bound probe on the envelope norm: recursively peels the
/// pieces of an optimal certificate, either as a support restriction or as a
/// flat signed strip, down to the given number of parts. Beam-limited; always
/// a true decomposition sum, so it is sandwiched between envelope_gauge and
/// the quasi-norm.
inline Rational envelope_decomposition_search(const SparseVector& y, const SetFamily& f,
                                              int parts) {
    if (parts < 1) throw std::invalid_argument("parts must be >= 1");
    if (y.zero()) return 0;
    UpperNormResult whole = norm_upper_exact(y, f);
    if (parts == 1) return whole.value;

    struct Candidate {
        Rational immediate;
        SparseVector first, rest;
    };
    std::vector<Candidate> cands;
    auto consider = [&](const SparseVector& first, const SparseVector& rest) {
        if (first.zero() || rest.zero()) return;
        cands.push_back({norm_upper_exact(first, f).value + norm_upper_exact(rest, f).value,
                         first, rest});
    };
    for (const auto& piece : whole.certificate.pieces) {
        SparseVector split = y.restrict(piece);
        consider(split, y - split);
        // flat strip: peel min |y| over the piece with the signs of y
        Rational c;
        bool first_elem = true, full = true;
        for (int k : piece) {
            Rational a = abs(y.at(k));
            if (a == 0) { full = false; break; }
            if (first_elem || a < c) c = a;
            first_elem = false;
        }
        if (full && !piece.empty()) {
            SparseVector strip;
            for (int k : piece) strip.set(k, c * sgn(y.at(k)));
            consider(strip, y - strip);
        }
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        return a.immediate < b.immediate;
    });
    Rational best = whole.value;
    const std::size_t beam = 3;
    for (std::size_t i = 0; i < cands.size() && i < beam; ++i) {
        Rational v = norm_upper_exact(cands[i].first, f).value +
                     envelope_decomposition_search(cands[i].rest, f, parts - 1);
        if (v < best) best = v;
    }
    return best;
}

/// sup of <x,y> over the extreme points of the quasi-ball; agrees with the
/// family norm of y.
inline Rational quasi_dual_functional_norm(const SparseVector& y, const SetFamily& f) {
    Rational best = 0;
    for (const auto& e : extreme_points(f)) {
        Rational v = dot(e.to_vector(), y);
        if (v > best) best = v;
    }
    return best;
}

/// Finite discretization of the segment test for extremality in the
/// quasi-ball: a unit vector fails as soon as some probe u keeps both v+u and
/// v-u inside the ball. Probes are scaled unit coordinates plus signed
/// differences of optimal-certificate pieces. A heuristic test, not a
/// theorem; on maximal-set sign vectors and their negations it is exact.
inline bool passes_extreme_perturbation_test(const SparseVector& v, const SetFamily& f) {
    if (norm_upper_exact(v, f).value != 1) return false;
    auto survives = [&](const SparseVector& u) {
        return norm_upper_exact(v + u, f).value <= 1 &&
               norm_upper_exact(v - u, f).value <= 1;
    };
    for (int j = 1; j <= f.window(); ++j)
        for (const Rational& eta : {Rational(1), Rational(1, 2)})
            if (survives(SparseVector::unit(j, eta))) return false;
    const auto pieces = norm_upper_exact(v, f).certificate.pieces;
    for (std::size_t a = 0; a < pieces.size(); ++a)
        for (std::size_t b = 0; b < pieces.size(); ++b) {
            if (a == b) continue;
            SparseVector u = SparseVector::characteristic(pieces[a], Rational(1, 2)) -
                             SparseVector::characteristic(pieces[b], Rational(1, 2));
            if (survives(u)) return false;
        }
    return true;
}

/// ||sum xs|| / sum ||x_i|| as an exact rational.
inline Rational convexity_ratio(const std::vector<SparseVector>& xs, const SetFamily& f) {
    if (xs.empty()) throw std::invalid_argument("empty vector list");
    SparseVector total;
    Rational denom = 0;
    for (const auto& x : xs) {
        total = total + x;
        denom += norm_upper_exact(x, f).value;
    }
    if (denom == 0) throw std::invalid_argument("all-zero input");
    return norm_upper_exact(total, f).value / denom;
}

}  // namespace combinorm
