#include <doctest.h>

#include "oracles.hpp"

using namespace combinorm;

TEST_CASE("schreier family on a small window") {
    SetFamily f = schreier(5);
    CHECK(f.size() == 13);  // empty set, 5 singletons, 2-sets from min 2, {3,4,5}
    CHECK(f.hereditary());
    CHECK(f.covers_window());
    CHECK(f.contains({2, 4}));
    CHECK(f.contains({3, 4, 5}));
    CHECK_FALSE(f.contains({1, 2}));
    CHECK_FALSE(f.contains({2, 3, 4}));
}

TEST_CASE("canonicalization and window validation") {
    SetFamily f = SetFamily::from_sets(4, {{3, 1}, {1, 3}});
    CHECK(f.size() == 2);  // {} and {1,3}
    CHECK_THROWS_AS(SetFamily::from_sets(3, {{4}}), std::invalid_argument);
    CHECK_THROWS_AS(SetFamily::from_sets(0, {}), std::invalid_argument);
}

TEST_CASE("hereditary closure is downward closed and idempotent") {
    std::mt19937 rng(11);
    for (int t = 0; t < 20; ++t) {
        SetFamily f = oracles::random_hereditary_family(rng, 8);
        CHECK(f.hereditary());
        for (const auto& a : f.sets())
            for (std::size_t i = 0; i < a.size(); ++i) {
                IndexSet sub;
                for (std::size_t j = 0; j < a.size(); ++j)
                    if (j != i) sub.push_back(a[j]);
                CHECK(f.contains(sub));
            }
        SetFamily again = hereditary_closure(f.sets(), f.window());
        CHECK(again.sets() == f.sets());
    }
}

TEST_CASE("maximal sets match the pairwise oracle") {
    std::mt19937 rng(23);
    for (int t = 0; t < 20; ++t) {
        SetFamily f = oracles::random_hereditary_family(rng, 8);
        auto fast = f.maximal_sets();
        auto slow = oracles::brute_maximal_sets(f);
        std::sort(fast.begin(), fast.end());
        std::sort(slow.begin(), slow.end());
        CHECK(fast == slow);
    }
}

TEST_CASE("maximal sets of non-hereditary families") {
    SetFamily f = SetFamily::from_sets(4, {{1, 2}, {2, 3, 4}, {2}});
    auto m = f.maximal_sets();
    std::sort(m.begin(), m.end());
    CHECK(m == std::vector<IndexSet>{{1, 2}, {2, 3, 4}});
}

TEST_CASE("iterated schreier unions") {
    CHECK(schreier_order(1, 8).sets() == schreier(8).sets());
    SetFamily s2 = schreier_order(2, 6);
    // two blocks allowed when the first starts at 2
    CHECK(s2.contains({2, 3, 4, 5}));
    CHECK(s2.contains({2, 3, 4, 5, 6}));
    // a set through 1 admits one block only
    CHECK(s2.contains({1}));
    CHECK_FALSE(s2.contains({1, 2}));
    CHECK(s2.hereditary());
    // the iterate strictly extends the base family on this window
    CHECK(s2.size() > schreier(6).size());
    CHECK_FALSE(schreier(6).contains({2, 3, 4, 5}));
}

TEST_CASE("partition family") {
    SetFamily f = partition_family({{1}, {2, 3}}, 3);
    CHECK(f.size() == 5);  // {}, {1}, {2}, {3}, {2,3}
    CHECK(f.hereditary());
    CHECK_THROWS_AS(partition_family({{1, 2}, {2, 3}}, 3), std::invalid_argument);
    CHECK_THROWS_AS(partition_family({{1}}, 2), std::invalid_argument);
}

TEST_CASE("dyadic tree family") {
    TreeFamily tf = tree_family(2);
    CHECK(tf.family.window() == 7);
    CHECK(tf.family.maximal_sets().size() == 4);
    for (const auto& m : tf.family.maximal_sets()) CHECK(m.size() == 3);
    CHECK(tree_node_index(DyadicNode{{0, 1}}) == 5);
    CHECK(tree_node_of_index(5) == DyadicNode{{0, 1}});
}

TEST_CASE("disjoint sum relabels past previous windows") {
    DisjointSum s = disjoint_sum({schreier(3), schreier(2)});
    CHECK(s.family.window() == 5);
    CHECK(s.offsets == std::vector<int>{0, 3});
    CHECK(s.family.contains({2, 3}));
    CHECK(s.family.contains({5}));       // relabeled {2} of the second family
    CHECK_FALSE(s.family.contains({3, 4}));  // straddles the two summands
}

TEST_CASE("largeness proxy") {
    CHECK(is_large_proxy(schreier(20), 3).large);
    std::vector<IndexSet> singletons;
    for (int k = 1; k <= 10; ++k) singletons.push_back({k});
    SetFamily thin = SetFamily::from_sets(10, std::move(singletons));
    LargenessReport r = is_large_proxy(thin, 2);
    CHECK_FALSE(r.large);
    CHECK(r.failing_size == 2);
}
