#include <doctest.h>

#include "combinorm/simplex.hpp"

using namespace combinorm;

namespace {

LinearProgram::Row row(std::vector<Rational> c, Relation r, Rational b) {
    return {std::move(c), r, std::move(b)};
}

}  // namespace

TEST_CASE("two-variable maximization") {
    LinearProgram p;
    p.sense = Objective::Maximize;
    p.objective = {3, 2};
    p.rows.push_back(row({1, 1}, Relation::LessEq, 4));
    p.rows.push_back(row({1, 3}, Relation::LessEq, 6));
    LpSolution s = solve_lp(p);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.value == 12);
    CHECK(s.x == std::vector<Rational>{4, 0});
}

TEST_CASE("minimization with >= rows needs phase one") {
    LinearProgram p;
    p.sense = Objective::Minimize;
    p.objective = {2, 3};
    p.rows.push_back(row({1, 1}, Relation::GreaterEq, 4));
    p.rows.push_back(row({1, 2}, Relation::GreaterEq, 6));
    LpSolution s = solve_lp(p);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.value == 10);  // x = (2, 2)
    CHECK(s.x == std::vector<Rational>{2, 2});
}

TEST_CASE("equality rows") {
    LinearProgram p;
    p.sense = Objective::Maximize;
    p.objective = {1, 1};
    p.rows.push_back(row({1, 1}, Relation::Eq, 3));
    p.rows.push_back(row({1, 0}, Relation::LessEq, 2));
    LpSolution s = solve_lp(p);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.value == 3);
}

TEST_CASE("negative right-hand sides are normalized") {
    LinearProgram p;
    p.sense = Objective::Minimize;
    p.objective = {1};
    p.rows.push_back(row({-1}, Relation::LessEq, -2));  // x >= 2
    LpSolution s = solve_lp(p);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.value == 2);
}

TEST_CASE("infeasible program detected in phase one") {
    LinearProgram p;
    p.sense = Objective::Maximize;
    p.objective = {1};
    p.rows.push_back(row({1}, Relation::LessEq, 1));
    p.rows.push_back(row({1}, Relation::GreaterEq, 2));
    CHECK(solve_lp(p).status == LpStatus::Infeasible);
}

TEST_CASE("unbounded program detected in phase two") {
    LinearProgram p;
    p.sense = Objective::Maximize;
    p.objective = {1, 0};
    p.rows.push_back(row({0, 1}, Relation::LessEq, 1));
    CHECK(solve_lp(p).status == LpStatus::Unbounded);
}

TEST_CASE("degenerate cycling instance terminates under the pivot rule") {
    // classic cycling example for the most-negative-cost rule
    LinearProgram p;
    p.sense = Objective::Minimize;
    p.objective = {rat(-3, 4), 150, rat(-1, 50), 6};
    p.rows.push_back(row({rat(1, 4), -60, rat(-1, 25), 9}, Relation::LessEq, 0));
    p.rows.push_back(row({rat(1, 2), -90, rat(-1, 50), 3}, Relation::LessEq, 0));
    p.rows.push_back(row({0, 0, 1, 0}, Relation::LessEq, 1));
    LpSolution s = solve_lp(p);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.value == rat(-1, 20));
}

TEST_CASE("fractional data stays exact") {
    LinearProgram p;
    p.sense = Objective::Maximize;
    p.objective = {rat(1, 3), rat(1, 7)};
    p.rows.push_back(row({rat(2, 3), rat(1, 7)}, Relation::LessEq, rat(5, 21)));
    LpSolution s = solve_lp(p);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.value == rat(5, 21));  // all mass on the second variable
    CHECK(s.x == std::vector<Rational>{0, rat(5, 3)});
}
