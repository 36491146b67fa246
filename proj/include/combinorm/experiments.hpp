#pragma once

#include <random>

#include "json_io.hpp"

namespace combinorm {

struct ExperimentResult {
    bool pass = false;
    ordered_json report;
};

namespace detail {

/// Seeded random vector with small rational entries; support drawn inside the
/// window with at most max_support points.
inline SparseVector random_vector(std::mt19937& rng, int window, int max_support) {
    std::uniform_int_distribution<int> size_d(1, max_support);
    std::uniform_int_distribution<int> idx_d(1, window);
    std::uniform_int_distribution<int> num_d(1, 9);
    std::uniform_int_distribution<int> den_d(1, 4);
    std::uniform_int_distribution<int> sign_d(0, 1);
    SparseVector v;
    int size = size_d(rng);
    for (int i = 0; i < size; ++i) {
        Rational q(num_d(rng), den_d(rng));
        v.set(idx_d(rng), sign_d(rng) ? q : -q);
    }
    return v;
}

}  // namespace detail

/// Quasi-triangle counterexample: the canonical pair whose sum triples in the
/// partition quasi-norm.
inline ExperimentResult experiment_notnorm() {
    SetFamily f = schreier(5);
    SparseVector x = SparseVector::characteristic({2, 3}, 1);
    SparseVector y = SparseVector::characteristic({3, 4, 5}, 1);
    Rational nx = norm_upper_exact(x, f).value;
    Rational ny = norm_upper_exact(y, f).value;
    Rational ns = norm_upper_exact(x + y, f).value;
    ExperimentResult r;
    r.pass = nx == 1 && ny == 1 && ns == 3;
    r.report = ordered_json{{"experiment", "notnorm"},
                            {"norm_x", to_string(nx)},
                            {"norm_y", to_string(ny)},
                            {"norm_sum", to_string(ns)},
                            {"triangle_violated", ns > nx + ny},
                            {"pass", r.pass}};
    return r;
}

/// Dyadic tree vectors: exact norm 2^N (1 + N/2) and convexity ratio 1 + N/2.
inline ExperimentResult experiment_tree_growth(int max_n) {
    if (max_n < 1) throw std::invalid_argument("max-n must be >= 1");
    ExperimentResult r;
    r.pass = true;
    ordered_json rows = ordered_json::array();
    for (int N = 1; N <= max_n; ++N) {
        TreeFamily tf = tree_family(N);
        auto [x, branches] = tree_example_vector(N);
        Rational norm = norm_upper_exact(x, tf.family).value;
        Rational ratio = convexity_ratio(branches, tf.family);
        Rational expect_ratio = 1 + Rational(N, 2);
        Rational expect_norm = Rational(BigInt(1) << N) * expect_ratio;
        bool ok = norm == expect_norm && ratio == expect_ratio;
        r.pass = r.pass && ok;
        rows.push_back(ordered_json{{"N", N},
                                    {"norm", to_string(norm)},
                                    {"expected_norm", to_string(expect_norm)},
                                    {"ratio", to_string(ratio)},
                                    {"expected_ratio", to_string(expect_ratio)},
                                    {"pass", ok}});
    }
    r.report = ordered_json{{"experiment", "tree-growth"}, {"rows", std::move(rows)},
                            {"pass", r.pass}};
    return r;
}

/// Interval witness system: all structural properties plus the counting check
/// on the per-node certificate, for depths 1..max_n.
inline ExperimentResult experiment_schreier_witness(int max_n, int M = 0) {
    if (max_n < 1) throw std::invalid_argument("n must be >= 1");
    ExperimentResult r;
    r.pass = true;
    ordered_json rows = ordered_json::array();
    for (int N = 1; N <= max_n; ++N) {
        SchreierWitness w = schreier_witness(N);
        WitnessPropertyReport props = verify_schreier_witness(w);
        GrowthReport growth = verify_growth_lower_bound(w, M, witness_node_certificate(w));
        bool ok = props.all() && growth.certificate_valid && growth.chain_ok;
        r.pass = r.pass && ok;
        rows.push_back(ordered_json{{"N", N},
                                    {"properties", to_json(props)},
                                    {"growth", to_json(growth)},
                                    {"pass", ok}});
    }
    r.report = ordered_json{{"experiment", "schreier-witness"}, {"M", M},
                            {"rows", std::move(rows)}, {"pass", r.pass}};
    return r;
}

/// Block-sequence construction over the Schreier family from unit vectors,
/// then seeded coefficient sweeps against the lower-l1 inequality and the
/// stability inequality on consecutive prefixes. Reaching fewer blocks than
/// asked only reflects the window cap; the inequalities are still exercised
/// on what was built.
inline ExperimentResult experiment_l1_blocks(int count, int window, int trials,
                                             unsigned seed) {
    SchreierEvaluator ev(window);
    L1BlockBuild build = build_l1_blocks(unit_vector_stream(), count, ev, window);
    const std::size_t n = build.blocks.size();

    ordered_json blocks = ordered_json::array();
    for (const auto& b : build.blocks)
        blocks.push_back(ordered_json{{"n", b.n},
                                      {"k", b.k},
                                      {"inputs_consumed", b.l},
                                      {"block_norm", to_string(b.block_norm)},
                                      {"stability_k", b.stability_k}});

    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> coeff_d(0, 3);
    const Rational palette[4] = {-2, -1, 1, 2};
    bool l1_ok = true;
    int l1_failures = 0;
    for (int t = 0; t < trials && n > 0; ++t) {
        SparseVector combo;
        Rational mass = 0;
        std::vector<Rational> lams;
        for (std::size_t i = 0; i < n; ++i) {
            Rational lam = palette[coeff_d(rng)];
            lams.push_back(lam);
            combo = combo + lam * build.blocks[i].y;
            mass += abs(lam);
        }
        if (!(ev.upper_norm(combo) >= mass / 2)) {
            l1_ok = false;
            ++l1_failures;
        }
    }

    bool stable_ok = true;
    std::mt19937 rng2(seed + 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        SparseVector prefix;
        for (std::size_t j = 0; j <= i; ++j) {
            Rational lam = palette[coeff_d(rng2)];
            prefix = prefix + lam * build.blocks[j].y;
        }
        Rational lam = palette[coeff_d(rng2)];
        if (!verify_stable_inequality(prefix, build.blocks[i + 1].y, lam, ev))
            stable_ok = false;
    }

    ExperimentResult r;
    r.pass = !build.window_exhausted && l1_ok && stable_ok;
    r.report = ordered_json{{"experiment", "l1-blocks"},
                            {"requested_blocks", count},
                            {"window", window},
                            {"blocks", std::move(blocks)},
                            {"window_exhausted", build.window_exhausted},
                            {"message", build.message},
                            {"l1_inequality_trials", trials},
                            {"l1_inequality_failures", l1_failures},
                            {"stability_prefix_ok", stable_ok},
                            {"pass", r.pass}};
    return r;
}

/// Seeded sweep of the quasi-triangle bound with modulus 2, plus plain
/// subadditivity on disjointly supported pairs.
inline ExperimentResult experiment_quasi_constant_sweep(const SetFamily& f, int trials,
                                                        int max_support, unsigned seed) {
    std::mt19937 rng(seed);
    bool ok = true;
    int failures = 0;
    Rational worst = 0;  // max of ||x+y|| / (||x|| + ||y||)
    for (int t = 0; t < trials; ++t) {
        SparseVector x = detail::random_vector(rng, f.window(), max_support);
        SparseVector y = detail::random_vector(rng, f.window(), max_support);
        Rational nx = norm_upper_exact(x, f).value;
        Rational ny = norm_upper_exact(y, f).value;
        Rational ns = norm_upper_exact(x + y, f).value;
        if (nx + ny > 0 && ns / (nx + ny) > worst) worst = ns / (nx + ny);
        if (ns > 2 * (nx + ny)) { ok = false; ++failures; }
        if (disjoint(x.support(), y.support()) && ns > nx + ny) { ok = false; ++failures; }
    }
    ExperimentResult r;
    r.pass = ok;
    r.report = ordered_json{{"experiment", "quasi-constant-sweep"},
                            {"window", f.window()},
                            {"trials", trials},
                            {"max_support", max_support},
                            {"seed", seed},
                            {"worst_ratio", to_string(worst)},
                            {"failures", failures},
                            {"pass", ok}};
    return r;
}

/// Seeded sweep of the exact duality identities: packing equals covering,
/// the dual never exceeds the quasi-norm, the functional norm over extreme
/// points equals the lower family norm, and on partition families the dual
/// collapses onto the quasi-norm.
inline ExperimentResult experiment_duality_identities(const SetFamily& f, int trials,
                                                      int max_support, unsigned seed,
                                                      bool expect_partition_collapse) {
    std::mt19937 rng(seed);
    int fail_strong = 0, fail_dominated = 0, fail_functional = 0, fail_collapse = 0;
    for (int t = 0; t < trials; ++t) {
        SparseVector y = detail::random_vector(rng, f.window(), max_support);
        Rational dual = dual_norm(y, f);
        if (dual != envelope_gauge(y, f).value) ++fail_strong;
        Rational upper = norm_upper_exact(y, f).value;
        if (!(dual <= upper)) ++fail_dominated;
        if (quasi_dual_functional_norm(y, f) != norm_lower(y, f)) ++fail_functional;
        if (expect_partition_collapse && dual != upper) ++fail_collapse;
    }
    ExperimentResult r;
    r.pass = fail_strong + fail_dominated + fail_functional + fail_collapse == 0;
    r.report = ordered_json{{"experiment", "duality-identities"},
                            {"window", f.window()},
                            {"trials", trials},
                            {"seed", seed},
                            {"strong_duality_failures", fail_strong},
                            {"domination_failures", fail_dominated},
                            {"functional_norm_failures", fail_functional},
                            {"partition_collapse_failures", fail_collapse},
                            {"pass", r.pass}};
    return r;
}

}  // namespace combinorm
