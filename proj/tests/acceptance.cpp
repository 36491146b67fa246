// Acceptance gate: one criterion per invocation, selected by argv[1] (1..9).
// Prints a single summary line "criterion N: PASS|FAIL (details)" plus
// supporting detail lines, and exits 0 on pass, 1 on fail.

#include <chrono>
#include <iostream>
#include <sstream>

#include "combinorm/experiments.hpp"
#include "oracles.hpp"

using namespace combinorm;

namespace {

using Clock = std::chrono::steady_clock;

long long ms_since(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0)
        .count();
}

struct Criterion {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << "  failed: " << what << "\n";
        }
    }
};

// 1. the quasi-norm triple 1, 1, 3 on the canonical pair, under a second
void criterion1(Criterion& c) {
    auto t0 = Clock::now();
    SetFamily f = schreier(5);
    SparseVector x = SparseVector::characteristic({2, 3}, 1);
    SparseVector y = SparseVector::characteristic({3, 4, 5}, 1);
    Rational nx = norm_upper_exact(x, f).value;
    Rational ny = norm_upper_exact(y, f).value;
    Rational ns = norm_upper_exact(x + y, f).value;
    c.detail << "  values: " << to_string(nx) << ", " << to_string(ny) << ", "
             << to_string(ns) << "\n";
    c.require(nx == 1, "norm of x is 1");
    c.require(ny == 1, "norm of y is 1");
    c.require(ns == 3, "norm of x+y is 3");
    long long ms = ms_since(t0);
    c.detail << "  runtime: " << ms << " ms\n";
    c.require(ms < 1000, "runtime under 1 s");
}

// 2. tree vectors: exact norm 2^N (1 + N/2) and convexity ratio 1 + N/2
void criterion2(Criterion& c) {
    auto t0 = Clock::now();
    for (int N = 1; N <= 3; ++N) {
        TreeFamily tf = tree_family(N);
        auto [x, branches] = tree_example_vector(N);
        Rational expect_ratio = 1 + Rational(N, 2);
        Rational expect_norm = Rational(BigInt(1) << N) * expect_ratio;
        Rational norm = norm_upper_exact(x, tf.family).value;
        Rational ratio = convexity_ratio(branches, tf.family);
        c.detail << "  N=" << N << ": norm " << to_string(norm) << " (expect "
                 << to_string(expect_norm) << "), ratio " << to_string(ratio)
                 << " (expect " << to_string(expect_ratio) << ")\n";
        c.require(norm == expect_norm, "tree norm at N=" + std::to_string(N));
        c.require(ratio == expect_ratio, "convexity ratio at N=" + std::to_string(N));
    }
    long long ms = ms_since(t0);
    c.detail << "  runtime: " << ms << " ms\n";
    c.require(ms < 60000, "runtime under 60 s");
}

// 3. 10,000 seeded pairs: modulus-2 quasi-triangle, disjoint subadditivity
void criterion3(Criterion& c) {
    SetFamily f = schreier(12);
    std::mt19937 rng(2024);
    int quasi_failures = 0, disjoint_failures = 0, disjoint_pairs = 0;
    for (int t = 0; t < 10000; ++t) {
        SparseVector x = oracles::random_vector(rng, 12, 8);
        SparseVector y = oracles::random_vector(rng, 12, 8);
        if (t % 2 == 0) {
            // force a disjoint pair by moving y off the support of x
            SparseVector shifted;
            for (const auto& [k, v] : y.entries())
                if (!contains(x.support(), k)) shifted.set(k, v);
            y = shifted;
        }
        Rational nx = norm_upper_exact(x, f).value;
        Rational ny = norm_upper_exact(y, f).value;
        Rational ns = norm_upper_exact(x + y, f).value;
        if (!(ns <= 2 * (nx + ny))) ++quasi_failures;
        if (disjoint(x.support(), y.support())) {
            ++disjoint_pairs;
            if (!(ns <= nx + ny)) ++disjoint_failures;
        }
    }
    c.detail << "  pairs: 10000, disjoint pairs: " << disjoint_pairs << "\n";
    c.detail << "  quasi-triangle failures: " << quasi_failures
             << ", disjoint subadditivity failures: " << disjoint_failures << "\n";
    c.require(quasi_failures == 0, "quasi-triangle with modulus 2");
    c.require(disjoint_failures == 0, "disjoint-support subadditivity");
}

// 4. exact solver against the exhaustive partition oracle
void criterion4(Criterion& c) {
    std::mt19937 rng(4096);
    int discrepancies = 0, checked = 0;
    for (int fam = 0; fam < 50; ++fam) {
        SetFamily f = oracles::random_hereditary_family(rng, 10);
        for (int v = 0; v < 20; ++v) {
            SparseVector x = oracles::random_vector(rng, f.window(), 8);
            auto expect = oracles::brute_upper_norm(x, f);
            if (!expect) continue;
            ++checked;
            if (norm_upper_exact(x, f).value != *expect) ++discrepancies;
        }
    }
    c.detail << "  families: 50, vectors checked: " << checked
             << ", discrepancies: " << discrepancies << "\n";
    c.require(checked >= 900, "oracle coverage");
    c.require(discrepancies == 0, "solver equals the exhaustive oracle");
}

// 5. duality identities, exact
void criterion5(Criterion& c) {
    std::mt19937 rng(555);
    SetFamily s10 = schreier(10);
    int fail_strong = 0, fail_dom = 0, fail_fun = 0;
    for (int t = 0; t < 200; ++t) {
        SparseVector y = oracles::random_vector(rng, 10, 6);
        Rational dual = dual_norm(y, s10);
        if (dual != envelope_gauge(y, s10).value) ++fail_strong;
        if (!(dual <= norm_upper_exact(y, s10).value)) ++fail_dom;
        if (quasi_dual_functional_norm(y, s10) != norm_lower(y, s10)) ++fail_fun;
    }
    c.detail << "  schreier(10): strong-duality failures " << fail_strong
             << ", domination failures " << fail_dom << ", functional failures "
             << fail_fun << "\n";

    int fail_collapse = 0;
    std::uniform_int_distribution<int> cut_d(1, 3);
    for (int fam = 0; fam < 20; ++fam) {
        // random partition of [1..8] into consecutive pieces
        std::vector<IndexSet> pieces;
        IndexSet cur;
        for (int k = 1; k <= 8; ++k) {
            cur.push_back(k);
            if (static_cast<int>(cur.size()) == cut_d(rng) || k == 8) {
                pieces.push_back(cur);
                cur.clear();
            }
        }
        SetFamily f = partition_family(pieces, 8);
        for (int t = 0; t < 10; ++t) {
            SparseVector y = oracles::random_vector(rng, 8, 6);
            Rational dual = dual_norm(y, f);
            if (dual != envelope_gauge(y, f).value) ++fail_strong;
            if (dual != norm_upper_exact(y, f).value) ++fail_collapse;
        }
    }
    c.detail << "  partition families: collapse failures " << fail_collapse << "\n";
    c.require(fail_strong == 0, "packing LP equals covering LP");
    c.require(fail_dom == 0, "dual norm dominated by the quasi-norm");
    c.require(fail_fun == 0, "extreme-point functional norm equals the lower norm");
    c.require(fail_collapse == 0, "partition families collapse dual onto quasi-norm");
}

// 6. extreme points: count formula, unit norms, perturbation separation
void criterion6(Criterion& c) {
    std::vector<std::pair<std::string, SetFamily>> families;
    families.emplace_back("schreier(5)", schreier(5));
    families.emplace_back("partition", partition_family({{1, 2}, {3, 4, 5}, {6}}, 6));
    families.emplace_back("tree(2)", tree_family(2).family);
    for (const auto& [name, f] : families) {
        auto pts = extreme_points(f);
        std::size_t expect = 0;
        for (const auto& m : f.maximal_sets()) expect += std::size_t(1) << m.size();
        c.detail << "  " << name << ": " << pts.size() << " points (expect " << expect
                 << ")\n";
        c.require(pts.size() == expect, name + ": count formula");
        bool norms_ok = true, pert_ok = true;
        for (const auto& e : pts) {
            SparseVector v = e.to_vector();
            if (norm_upper_exact(v, f).value != 1 ||
                norm_lower(v, f) != Rational(static_cast<int>(e.base.size())))
                norms_ok = false;
            if (!passes_extreme_perturbation_test(v, f)) pert_ok = false;
        }
        c.require(norms_ok, name + ": unit norms on every point");
        c.require(pert_ok, name + ": perturbation test passes on every point");
        bool nonmax_ok = true;
        const auto& maxl = f.maximal_sets();
        for (const auto& a : f.sets()) {
            if (a.empty()) continue;
            if (std::find(maxl.begin(), maxl.end(), a) != maxl.end()) continue;
            if (passes_extreme_perturbation_test(SparseVector::characteristic(a, 1), f))
                nonmax_ok = false;
        }
        c.require(nonmax_ok, name + ": non-maximal sign vectors fail the test");
    }
}

// 7. interval witness system and the phi oracle
void criterion7(Criterion& c) {
    for (int N = 1; N <= 4; ++N) {
        SchreierWitness w = schreier_witness(N);
        WitnessPropertyReport rep = verify_schreier_witness(w);
        c.detail << "  N=" << N << ": order " << rep.interval_order << " levels "
                 << rep.levels_partition << " dominance " << rep.size_dominance
                 << " branches " << rep.branches_schreier << " values "
                 << rep.values_dyadic << " phi " << rep.phi_growth << " [phi values";
        for (auto p : rep.phi_values) c.detail << " " << p;
        c.detail << "]\n";
        c.require(rep.all(), "witness properties at N=" + std::to_string(N));
        GrowthReport growth = verify_growth_lower_bound(w, 0, witness_node_certificate(w));
        c.require(growth.certificate_valid && growth.chain_ok,
                  "certificate counting at N=" + std::to_string(N));
    }
    int phi_mismatches = 0;
    for (unsigned mask = 1; mask < (1u << 16); ++mask) {
        IndexSet a;
        for (int k = 1; k <= 16; ++k)
            if (mask & (1u << (k - 1))) a.push_back(k);
        if (phi_consecutive_schreier(a).count != oracles::brute_phi(a)) ++phi_mismatches;
    }
    c.detail << "  phi greedy vs split DP over all subsets of [1..16]: "
             << phi_mismatches << " mismatches\n";
    c.require(phi_mismatches == 0, "phi greedy equals the split DP");
}

// 8. block construction over the Schreier family on window 2000
void criterion8(Criterion& c) {
    SchreierEvaluator ev(2000);
    L1BlockBuild build = build_l1_blocks(unit_vector_stream(), 4, ev, 2000);
    c.detail << "  blocks built: " << build.blocks.size();
    for (const auto& b : build.blocks)
        c.detail << " [n=" << b.n << " k=" << b.k << " norm "
                 << to_string(b.block_norm) << "]";
    c.detail << "\n";
    if (build.window_exhausted) c.detail << "  " << build.message << "\n";
    c.require(build.blocks.size() >= 4, "at least 4 blocks inside window 2000");

    const std::size_t n = build.blocks.size();
    std::mt19937 rng(808);
    std::uniform_int_distribution<int> coeff_d(0, 3);
    const Rational palette[4] = {-2, -1, 1, 2};
    int l1_failures = 0;
    for (int t = 0; t < 500 && n > 0; ++t) {
        SparseVector combo;
        Rational mass = 0;
        for (std::size_t i = 0; i < n; ++i) {
            Rational lam = palette[coeff_d(rng)];
            combo = combo + lam * build.blocks[i].y;
            mass += abs(lam);
        }
        if (!(ev.upper_norm(combo) >= mass / 2)) ++l1_failures;
    }
    c.detail << "  l1 lower-bound trials: 500, failures: " << l1_failures << "\n";
    c.require(l1_failures == 0, "l1 lower bound on coefficient sweeps");

    bool stable_ok = true;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        SparseVector prefix;
        for (std::size_t j = 0; j <= i; ++j) {
            Rational lam = palette[coeff_d(rng)];
            prefix = prefix + lam * build.blocks[j].y;
        }
        Rational lam = palette[coeff_d(rng)];
        if (!verify_stable_inequality(prefix, build.blocks[i + 1].y, lam, ev))
            stable_ok = false;
    }
    c.detail << "  stability inequality on consecutive prefixes: "
             << (stable_ok ? "ok" : "violated") << "\n";
    c.require(stable_ok, "stability inequality on consecutive prefixes");
}

// 9. byte-identical reruns of every experiment at a fixed seed
void criterion9(Criterion& c) {
    auto check = [&](const std::string& name, auto&& run) {
        std::string a = run().report.dump();
        std::string b = run().report.dump();
        c.detail << "  " << name << ": " << (a == b ? "identical" : "DIFFERS") << "\n";
        c.require(a == b, name + " deterministic");
    };
    check("notnorm", [] { return experiment_notnorm(); });
    check("tree-growth", [] { return experiment_tree_growth(2); });
    check("schreier-witness", [] { return experiment_schreier_witness(3); });
    check("l1-blocks", [] { return experiment_l1_blocks(2, 200, 50, 5); });
    check("quasi-constant-sweep",
          [] { return experiment_quasi_constant_sweep(schreier(8), 50, 5, 5); });
    check("duality-identities",
          [] { return experiment_duality_identities(schreier(8), 50, 5, 5, false); });
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: acceptance <criterion 1..9>\n";
        return 2;
    }
    const int which = std::atoi(argv[1]);
    if (which < 1 || which > 9) {
        std::cerr << "criterion must be 1..9\n";
        return 2;
    }
    Criterion c;
    try {
        switch (which) {
            case 1: criterion1(c); break;
            case 2: criterion2(c); break;
            case 3: criterion3(c); break;
            case 4: criterion4(c); break;
            case 5: criterion5(c); break;
            case 6: criterion6(c); break;
            case 7: criterion7(c); break;
            case 8: criterion8(c); break;
            case 9: criterion9(c); break;
        }
    } catch (const std::exception& e) {
        c.pass = false;
        c.detail << "  exception: " << e.what() << "\n";
    }
    std::cout << "criterion " << which << ": " << (c.pass ? "PASS" : "FAIL") << "\n"
              << c.detail.str();
    return c.pass ? 0 : 1;
}
