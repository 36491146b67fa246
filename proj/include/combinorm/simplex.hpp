#pragma once

#include <vector>

#include "rational.hpp"

namespace combinorm {

enum class Relation { LessEq, GreaterEq, Eq };
enum class Objective { Maximize, Minimize };
enum class LpStatus { Optimal, Infeasible, Unbounded };

/// Dense rational linear program over nonnegative variables.
struct LinearProgram {
    struct Row {
        std::vector<Rational> coeffs;
        Relation rel = Relation::LessEq;
        Rational rhs = 0;
    };

    Objective sense = Objective::Maximize;
    std::vector<Rational> objective;
    std::vector<Row> rows;
};

struct LpSolution {
    LpStatus status = LpStatus::Optimal;
    Rational value = 0;
    std::vector<Rational> x;
};

namespace detail {

/// Tableau simplex; Bland's rule on both the entering and leaving choice, so
/// cycling on degenerate instances is impossible.
class Simplex {
public:
    Simplex(std::size_t rows, std::size_t cols)
        : m_(rows), n_(cols), t_(rows + 1, std::vector<Rational>(cols + 1, 0)),
          basis_(rows, 0) {}

    std::vector<Rational>& row(std::size_t i) { return t_[i]; }
    std::vector<Rational>& cost() { return t_[m_]; }
    std::vector<std::size_t>& basis() { return basis_; }

    void price_out_basis() {
        for (std::size_t i = 0; i < m_; ++i) {
            const Rational c = t_[m_][basis_[i]];
            if (c == 0) continue;
            for (std::size_t j = 0; j <= n_; ++j) t_[m_][j] -= c * t_[i][j];
        }
    }

    /// Runs to optimality of the current cost row (minimization).
    /// Returns false when unbounded.
    bool iterate(std::size_t usable_cols) {
        for (;;) {
            std::size_t enter = n_;
            for (std::size_t j = 0; j < usable_cols; ++j)
                if (t_[m_][j] < 0) { enter = j; break; }
            if (enter == n_) return true;
            std::size_t leave = m_;
            for (std::size_t i = 0; i < m_; ++i) {
                if (t_[i][enter] <= 0) continue;
                if (leave == m_) { leave = i; continue; }
                Rational cur = t_[i][n_] * t_[leave][enter];
                Rational best = t_[leave][n_] * t_[i][enter];
                if (cur < best || (cur == best && basis_[i] < basis_[leave]))
                    leave = i;
            }
            if (leave == m_) return false;
            pivot(leave, enter);
        }
    }

    void pivot(std::size_t r, std::size_t c) {
        const Rational p = t_[r][c];
        for (auto& v : t_[r]) v /= p;
        for (std::size_t i = 0; i <= m_; ++i) {
            if (i == r) continue;
            const Rational f = t_[i][c];
            if (f == 0) continue;
            for (std::size_t j = 0; j <= n_; ++j) t_[i][j] -= f * t_[r][j];
        }
        basis_[r] = c;
    }

    std::size_t rows() const { return m_; }
    std::size_t cols() const { return n_; }

private:
    std::size_t m_, n_;
    std::vector<std::vector<Rational>> t_;
    std::vector<std::size_t> basis_;
};

}  // namespace detail

/// Exact two-phase simplex. Returns the optimal basic solution (in the
/// original variables) or an infeasible/unbounded status.
inline LpSolution solve_lp(const LinearProgram& p) {
    const std::size_t m = p.rows.size();
    const std::size_t n = p.objective.size();
    for (const auto& r : p.rows)
        if (r.coeffs.size() != n)
            throw std::invalid_argument("inconsistent LP row width");

    // column layout: [0..n) structural, then one slack/surplus per inequality
    // row, then one artificial per row that needs one
    std::size_t n_slack = 0;
    for (const auto& r : p.rows)
        if (r.rel != Relation::Eq) ++n_slack;

    // rhs is normalized nonnegative; a row needs an artificial unless its
    // slack can start basic (<= with rhs >= 0 after normalization)
    std::vector<int> sign(m, 1);
    std::vector<Relation> rel(m);
    for (std::size_t i = 0; i < m; ++i) {
        rel[i] = p.rows[i].rel;
        if (p.rows[i].rhs < 0) {
            sign[i] = -1;
            if (rel[i] == Relation::LessEq) rel[i] = Relation::GreaterEq;
            else if (rel[i] == Relation::GreaterEq) rel[i] = Relation::LessEq;
        }
    }
    std::size_t n_art = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (rel[i] != Relation::LessEq) ++n_art;

    const std::size_t total = n + n_slack + n_art;
    detail::Simplex s(m, total);

    std::size_t slack_col = n, art_col = n + n_slack;
    for (std::size_t i = 0; i < m; ++i) {
        auto& row = s.row(i);
        for (std::size_t j = 0; j < n; ++j) row[j] = sign[i] * p.rows[i].coeffs[j];
        row[total] = sign[i] * p.rows[i].rhs;
        if (rel[i] != Relation::Eq) {
            row[slack_col] = rel[i] == Relation::LessEq ? 1 : -1;
            if (rel[i] == Relation::LessEq) s.basis()[i] = slack_col;
            ++slack_col;
        }
        if (rel[i] != Relation::LessEq) {
            row[art_col] = 1;
            s.basis()[i] = art_col;
            ++art_col;
        }
    }

    if (n_art > 0) {
        for (std::size_t j = n + n_slack; j < total; ++j) s.cost()[j] = 1;
        s.price_out_basis();
        if (!s.iterate(total)) return {LpStatus::Infeasible, 0, {}};
        if (s.cost()[total] < 0) return {LpStatus::Infeasible, 0, {}};
        // pivot any artificial still basic (at zero) out, or note the row as
        // redundant by leaving it; artificial columns are excluded below
        for (std::size_t i = 0; i < m; ++i) {
            if (s.basis()[i] < n + n_slack) continue;
            for (std::size_t j = 0; j < n + n_slack; ++j)
                if (s.row(i)[j] != 0) { s.pivot(i, j); break; }
        }
    }

    // phase 2: rebuild the cost row for the original objective
    for (std::size_t j = 0; j <= total; ++j) s.cost()[j] = 0;
    for (std::size_t j = 0; j < n; ++j)
        s.cost()[j] = p.sense == Objective::Minimize ? p.objective[j] : -p.objective[j];
    s.price_out_basis();
    if (!s.iterate(n + n_slack)) return {LpStatus::Unbounded, 0, {}};

    LpSolution sol;
    sol.status = LpStatus::Optimal;
    sol.x.assign(n, 0);
    for (std::size_t i = 0; i < m; ++i)
        if (s.basis()[i] < n) sol.x[s.basis()[i]] = s.row(i)[total];
    Rational z = -s.cost()[total];
    sol.value = p.sense == Objective::Minimize ? z : -z;
    return sol;
}

}  // namespace combinorm
