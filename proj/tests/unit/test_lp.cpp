#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "edgeoff/errors.hpp"
#include "edgeoff/lp.hpp"
#include "lp_oracle.hpp"
#include "random_lp.hpp"

using namespace edgeoff;
using lp::LinearProgram;
using lp::Relation;
using lp::Sense;
using lp::Status;

TEST_CASE("simplex face: max x1 + x2 with x1 + x2 <= 1") {
    LinearProgram p(2);
    p.objective = {1.0, 1.0};
    p.add_row({1.0, 1.0}, Relation::less_equal, 1.0);
    const auto sol = lp::solve(p);
    REQUIRE(sol.optimal());
    CHECK(*sol.objective_value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sol.x[0] + sol.x[1] == doctest::Approx(1.0));
    CHECK(testing::vertex_enumeration(p).objective == doctest::Approx(1.0));
}

TEST_CASE("contradictory bounds are infeasible") {
    LinearProgram p(1);
    p.objective = {1.0};
    p.add_row({1.0}, Relation::greater_equal, 2.0);
    p.add_row({1.0}, Relation::less_equal, 1.0);
    CHECK(lp::solve(p).status == Status::infeasible);
    CHECK(testing::vertex_enumeration(p).status == Status::infeasible);
}

TEST_CASE("unbounded objective is reported") {
    LinearProgram p(2);
    p.objective = {1.0, 0.0};
    p.add_row({1.0, -1.0}, Relation::less_equal, 1.0);
    CHECK(lp::solve(p).status == Status::unbounded);
    CHECK_THROWS_AS(testing::vertex_enumeration(p), testing::UnboundedRegion);
}

TEST_CASE("dimension mismatch is a parameter error") {
    LinearProgram p(2);
    p.objective = {1.0, 1.0};
    p.add_row({1.0}, Relation::less_equal, 1.0);
    CHECK_THROWS_AS(lp::solve(p), ParameterError);
    LinearProgram q(2);
    q.objective = {1.0};
    CHECK_THROWS_AS(lp::solve(q), ParameterError);
}

TEST_CASE("vertex oracle on a hand-drawn triangle") {
    // vertices (0,0), (1,0), (0,2)
    LinearProgram p(2);
    p.objective = {1.0, 1.0};
    p.add_row({2.0, 1.0}, Relation::less_equal, 2.0);
    CHECK(testing::vertex_enumeration(p).objective == doctest::Approx(2.0));
    CHECK(*lp::solve(p).objective_value == doctest::Approx(2.0));
}

TEST_CASE("Beale's cycling example terminates under Bland's rule") {
    LinearProgram p(4);
    p.objective = {0.75, -150.0, 0.02, -6.0};
    p.add_row({0.25, -60.0, -0.04, 9.0}, Relation::less_equal, 0.0);
    p.add_row({0.5, -90.0, -0.02, 3.0}, Relation::less_equal, 0.0);
    p.add_row({0.0, 0.0, 1.0, 0.0}, Relation::less_equal, 1.0);
    const auto sol = lp::solve(p);
    REQUIRE(sol.optimal());
    CHECK(*sol.objective_value == doctest::Approx(0.05).epsilon(1e-10));
}

TEST_CASE("equality rows and minimization") {
    // min x + 2y  s.t. x + y = 3, x <= 2  -> x = 2, y = 1, value 4
    LinearProgram p(2, Sense::minimize);
    p.objective = {1.0, 2.0};
    p.add_row({1.0, 1.0}, Relation::equal, 3.0);
    p.add_row({1.0, 0.0}, Relation::less_equal, 2.0);
    const auto sol = lp::solve(p);
    REQUIRE(sol.optimal());
    CHECK(*sol.objective_value == doctest::Approx(4.0));
    CHECK(sol.x[0] == doctest::Approx(2.0));
    // d(obj)/d(rhs): raising the equality rhs costs 2, raising the cap on x saves 1.
    CHECK(sol.duals[0] == doctest::Approx(2.0));
    CHECK(sol.duals[1] == doctest::Approx(-1.0));
}

TEST_CASE("duals are objective sensitivities") {
    // max 3x + 2y s.t. x + y <= 4, x + 3y <= 7, x <= 3 -> (3, 1), value 11
    LinearProgram p(2);
    p.objective = {3.0, 2.0};
    p.add_row({1.0, 1.0}, Relation::less_equal, 4.0);
    p.add_row({1.0, 3.0}, Relation::less_equal, 7.0);
    p.add_row({1.0, 0.0}, Relation::less_equal, 3.0);
    const auto sol = lp::solve(p);
    REQUIRE(sol.optimal());
    CHECK(*sol.objective_value == doctest::Approx(11.0));
    CHECK(sol.duals[0] == doctest::Approx(2.0));
    CHECK(sol.duals[1] == doctest::Approx(0.0));
    CHECK(sol.duals[2] == doctest::Approx(1.0));
}

TEST_CASE("badly scaled rows are equilibrated") {
    // Same shape as the scheme LPs: rates ~1e7 bits/s against times ~1 s.
    LinearProgram p(3);
    p.objective = {2e7, 0.0, 0.0};
    p.add_row({1.0, 1.0, 1.0}, Relation::less_equal, 1.0);
    p.add_row({2e7, -5e5, 0.0}, Relation::less_equal, 0.0);
    p.add_row({2e7, 0.0, -1e7}, Relation::less_equal, 0.0);
    const auto sol = lp::solve(p);
    REQUIRE(sol.optimal());
    CHECK(*sol.objective_value == doctest::Approx(testing::vertex_enumeration(p).objective).epsilon(1e-10));
    CHECK(lp::max_violation(p, sol.x) < 1e-12);
}

TEST_CASE("random bounded LPs agree with vertex enumeration") {
    std::mt19937_64 rng(2024);
    int optimal = 0, infeasible = 0;
    for (int k = 0; k < 300; ++k) {
        const auto p = testing::random_bounded_lp(rng);
        const auto sol = lp::solve(p);
        const auto ref = testing::vertex_enumeration(p);
        REQUIRE(sol.status == ref.status);
        if (ref.status == Status::optimal) {
            ++optimal;
            CHECK(std::abs(*sol.objective_value - ref.objective) <= 1e-9 * (1.0 + std::abs(ref.objective)));
            CHECK(lp::max_violation(p, sol.x) <= 1e-9);
        } else {
            ++infeasible;
        }
    }
    CHECK(optimal > 150);
    CHECK(infeasible > 0);
}

TEST_CASE("weak duality smoke check: feasible points never beat the optimum") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < 50; ++k) {
        auto p = testing::random_bounded_lp(rng);
        const auto sol = lp::solve(p);
        if (!sol.optimal()) continue;
        const double best = *sol.objective_value;
        const double sign = p.sense == Sense::maximize ? 1.0 : -1.0;
        for (int t = 0; t < 200; ++t) {
            std::vector<double> x(p.n_vars);
            for (double& v : x) v = unit(rng) * 2.0 / static_cast<double>(p.n_vars);
            if (lp::max_violation(p, x) > 0.0) continue;
            CHECK(sign * lp::objective_at(p, x) <= sign * best + 1e-9 * (1.0 + std::abs(best)));
        }
    }
}

TEST_CASE("positive objective scaling scales the optimum") {
    std::mt19937_64 rng(99);
    for (int k = 0; k < 50; ++k) {
        auto p = testing::random_bounded_lp(rng);
        const auto a = lp::solve(p);
        for (double& c : p.objective) c *= 37.5;
        const auto b = lp::solve(p);
        REQUIRE(a.status == b.status);
        if (a.optimal())
            CHECK(*b.objective_value == doctest::Approx(37.5 * *a.objective_value).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("text dump reproduces the program") {
    std::mt19937_64 rng(5);
    const auto p = testing::random_bounded_lp(rng);
    const auto q = lp::from_text(lp::to_text(p));
    CHECK(q.sense == p.sense);
    CHECK(q.objective == p.objective);
    REQUIRE(q.rows.size() == p.rows.size());
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
        CHECK(q.rows[i].coeffs == p.rows[i].coeffs);
        CHECK(q.rows[i].relation == p.rows[i].relation);
        CHECK(q.rows[i].rhs == p.rows[i].rhs);
    }
    CHECK_THROWS_AS(lp::from_text("max 2\nobj 1\n"), ParameterError);
}

TEST_CASE("relaxed scheduling programs with wide coefficient ranges") {
    // Reference optima computed offline with an independent LP code.
    const std::pair<const char*, double> cases[] = {{"relaxed_n8.lp", 2757779.405731694},
                                                    {"relaxed_n24.lp", 3358739.755238861}};
    for (const auto& [file, expected] : cases) {
        std::ifstream in(std::string(EDGEOFF_TEST_DATA) + "/" + file);
        REQUIRE(in.good());
        std::stringstream buf;
        buf << in.rdbuf();
        const LinearProgram p = lp::from_text(buf.str());
        const auto sol = lp::solve(p);
        REQUIRE(sol.optimal());
        CHECK(*sol.objective_value == doctest::Approx(expected).epsilon(1e-9));
        CHECK(lp::max_violation(p, sol.x) <= 1e-9);
    }
}
