#include <doctest.h>

#include <limits>

#include "sgc/simplex.hpp"

using namespace sgc::lp;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_SUITE("simplex") {

TEST_CASE("bounded maximisation") {
    LpProblem p;
    p.num_vars = 2;
    p.maximize = true;
    p.objective = {1.0, 1.0};
    p.lower = {0.0, 0.0};
    p.upper = {1.0, 1.0};
    p.rows = {{{{0, 1.0}, {1, 1.0}}, -1, 1.5}};
    const LpResult r = solve_lp(p);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.objective == doctest::Approx(1.5));
    CHECK(r.values[0] + r.values[1] == doctest::Approx(1.5));
}

TEST_CASE("equalities with nonzero lower bounds") {
    // min 3a + b  s.t.  a + b = 1, a,b in [0.1, 1]
    LpProblem p;
    p.num_vars = 2;
    p.objective = {3.0, 1.0};
    p.lower = {0.1, 0.1};
    p.upper = {1.0, 1.0};
    p.rows = {{{{0, 1.0}, {1, 1.0}}, 0, 1.0}};
    const LpResult r = solve_lp(p);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.values[0] == doctest::Approx(0.1));
    CHECK(r.values[1] == doctest::Approx(0.9));
    CHECK(r.objective == doctest::Approx(1.2));
}

TEST_CASE("infeasibility detected") {
    SUBCASE("bound conflict through a row") {
        LpProblem p;
        p.num_vars = 1;
        p.objective = {1.0};
        p.lower = {0.0};
        p.upper = {1.0};
        p.rows = {{{{0, 1.0}}, 1, 2.0}};  // x >= 2
        CHECK(solve_lp(p).status == LpStatus::Infeasible);
    }
    SUBCASE("contradicting equalities") {
        LpProblem p;
        p.num_vars = 2;
        p.objective = {0.0, 0.0};
        p.lower = {0.0, 0.0};
        p.upper = {kInf, kInf};
        p.rows = {{{{0, 1.0}, {1, 1.0}}, 0, 1.0}, {{{0, 1.0}, {1, 1.0}}, 0, 2.0}};
        CHECK(solve_lp(p).status == LpStatus::Infeasible);
    }
    SUBCASE("crossed bounds") {
        LpProblem p;
        p.num_vars = 1;
        p.objective = {1.0};
        p.lower = {2.0};
        p.upper = {1.0};
        CHECK(solve_lp(p).status == LpStatus::Infeasible);
    }
}

TEST_CASE("unbounded detected") {
    LpProblem p;
    p.num_vars = 1;
    p.maximize = true;
    p.objective = {1.0};
    p.lower = {0.0};
    p.upper = {kInf};
    const LpResult r = solve_lp(p);
    CHECK(r.status == LpStatus::Unbounded);
}

TEST_CASE("membership-style restriction") {
    // Two vertices in both of two clusters; minimise x00 subject to the
    // sum-to-one rows and a 20% balance band. Hand optimum: x00 = 0.1.
    LpProblem p;
    p.num_vars = 4;  // x00 x01 x10 x11
    p.objective = {1.0, 0.0, 0.0, 0.0};
    p.lower.assign(4, 0.1);
    p.upper.assign(4, 1.0);
    p.rows.push_back({{{0, 1.0}, {1, 1.0}}, 0, 1.0});
    p.rows.push_back({{{2, 1.0}, {3, 1.0}}, 0, 1.0});
    // S1 - (1-d) S0 >= 0 and S1 - (1+d) S0 <= 0, both orderings, d = 0.2
    p.rows.push_back({{{1, 1.0}, {3, 1.0}, {0, -0.8}, {2, -0.8}}, 1, 0.0});
    p.rows.push_back({{{1, 1.0}, {3, 1.0}, {0, -1.2}, {2, -1.2}}, -1, 0.0});
    p.rows.push_back({{{0, 1.0}, {2, 1.0}, {1, -0.8}, {3, -0.8}}, 1, 0.0});
    p.rows.push_back({{{0, 1.0}, {2, 1.0}, {1, -1.2}, {3, -1.2}}, -1, 0.0});
    const LpResult r = solve_lp(p);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.objective == doctest::Approx(0.1));
    const double s0 = r.values[0] + r.values[2];
    const double s1 = r.values[1] + r.values[3];
    CHECK(s1 >= 0.8 * s0 - 1e-9);
    CHECK(s1 <= 1.2 * s0 + 1e-9);
}

TEST_CASE("degenerate and redundant rows") {
    LpProblem p;
    p.num_vars = 2;
    p.objective = {-1.0, -2.0};
    p.lower = {0.0, 0.0};
    p.upper = {kInf, kInf};
    p.rows = {{{{0, 1.0}, {1, 1.0}}, -1, 2.0},
              {{{0, 1.0}, {1, 1.0}}, -1, 2.0},   // duplicate
              {{{0, 2.0}, {1, 2.0}}, -1, 4.0},   // scaled duplicate
              {{{0, 1.0}}, -1, 2.0}};
    const LpResult r = solve_lp(p);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.objective == doctest::Approx(-4.0));  // all weight on the second variable
}

TEST_CASE("zero-variable problems") {
    LpProblem p;
    p.num_vars = 0;
    SUBCASE("vacuously feasible") {
        p.rows = {{{}, -1, 0.5}};
        CHECK(solve_lp(p).status == LpStatus::Optimal);
    }
    SUBCASE("constant infeasible row") {
        p.rows = {{{}, 1, 0.5}};  // 0 >= 0.5
        CHECK(solve_lp(p).status == LpStatus::Infeasible);
    }
}

}  // TEST_SUITE
