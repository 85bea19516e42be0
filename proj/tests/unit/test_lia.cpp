// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include "limitdl/frontend.hpp"
#include "limitdl/lia.hpp"
#include "support/generators.hpp"

using namespace limitdl;
using namespace limitdl::lia;

namespace {

LinearExpr var(std::size_t i, long k = 1) {
    LinearExpr e;
    e.coeffs[i] = k;
    return e;
}

LinearExpr num(long k) {
    LinearExpr e;
    e.constant = k;
    return e;
}

LinearExpr sum(LinearExpr a, const LinearExpr& b) {
    a += b;
    return a;
}

// 2 <= x <= 3 over a single variable.
LinearConstraintSystem two_to_three() {
    LinearConstraintSystem c;
    c.add_var("x");
    c.add(Constraint::make(num(2), Rel::LessEq, var(0)));
    c.add(Constraint::make(var(0), Rel::LessEq, num(3)));
    return c;
}

const char* kRule = "pred a(max int).\npred b(max int).\nb(X + 1) :- a(X), (2 <= X).\n";

std::vector<BigInt> solutions_in_box(const LinearConstraintSystem& c, long box) {
    std::vector<BigInt> out;
    for (long x = -box; x <= box; ++x) {
        if (c.holds({BigInt(x)})) {
            out.emplace_back(x);
        }
    }
    return out;
}

} // namespace

TEST_CASE("constraint system of a rule with an absent body fact") {
    Program p = frontend::parse_program(kRule);
    const Rule& r = p.rules[0];
    auto sig = std::make_shared<const Signature>(p.signature);
    LinearConstraintSystem c = build_constraint_system(r, PseudoInterpretation(sig));
    CHECK(c.constraints.size() == 2);
    CHECK(check_feasible(c).kind == SolveOutcome::Kind::Infeasible);
    CHECK(solutions_in_box(c, 20).empty());
}

TEST_CASE("constraint system of a rule with a bounded max atom") {
    Program p = frontend::parse_program(kRule);
    auto sig = std::make_shared<const Signature>(p.signature);
    PseudoInterpretation j(sig);
    j.join(Fact{"a", {}, ExtInt(3)});
    LinearConstraintSystem c = build_constraint_system(p.rules[0], j);
    CHECK(c.constraints.size() == 2);
    CHECK(solutions_in_box(c, 20) == std::vector<BigInt>{2, 3});
    auto opt = rule_optimum(p.rules[0], j);
    REQUIRE(opt.has_value());
    CHECK(*opt == ExtInt(4));

    j.assign(LimitKey{"a", {}}, ExtInt::infinity());
    c = build_constraint_system(p.rules[0], j);
    CHECK(c.constraints.size() == 1);
    CHECK(rule_optimum(p.rules[0], j)->is_infinite());
}

TEST_CASE("min body atoms bound from below") {
    Program p = frontend::parse_program("pred c(min int).\npred d(min int).\nd(Y) :- c(Y).\n");
    auto sig = std::make_shared<const Signature>(p.signature);
    PseudoInterpretation j(sig);
    j.join(Fact{"c", {}, ExtInt(2)});
    LinearConstraintSystem c = build_constraint_system(p.rules[0], j);
    REQUIRE(c.constraints.size() == 1);
    CHECK(c.holds({BigInt(2)}));
    CHECK(c.holds({BigInt(9)}));
    CHECK_FALSE(c.holds({BigInt(1)}));
    CHECK(*rule_optimum(p.rules[0], j) == ExtInt(2));
}

TEST_CASE("rules that are not semi-ground are refused") {
    Program p = frontend::parse_program("pred e(obj).\npred a(max int).\na(1) :- e(X).\n");
    auto sig = std::make_shared<const Signature>(p.signature);
    CHECK_THROWS_AS(build_constraint_system(p.rules[0], PseudoInterpretation(sig)), ContractViolation);
}

TEST_CASE("feasibility") {
    auto c = two_to_three();
    auto res = check_feasible(c);
    REQUIRE(res.kind == SolveOutcome::Kind::Feasible);
    CHECK(c.holds(res.witness));
    CHECK((res.witness[0] == 2 || res.witness[0] == 3));

    LinearConstraintSystem bad;
    bad.add_false();
    CHECK(check_feasible(bad).kind == SolveOutcome::Kind::Infeasible);

    LinearConstraintSystem none;
    auto empty = check_feasible(none);
    CHECK(empty.kind == SolveOutcome::Kind::Feasible);
    CHECK(empty.witness.empty());
}

TEST_CASE("strict constraints over the integers") {
    LinearConstraintSystem c;
    c.add_var("x");
    c.add(Constraint::make(num(0), Rel::Less, var(0, 2)));
    c.add(Constraint::make(var(0, 2), Rel::Less, num(2)));
    CHECK(check_feasible(c).kind == SolveOutcome::Kind::Infeasible);
}

TEST_CASE("optimisation") {
    auto c = two_to_three();
    Objective up{Direction::Maximize, sum(var(0), num(1))};
    auto res = optimize(c, up);
    CHECK(res.kind == SolveOutcome::Kind::Optimal);
    CHECK(res.value == 4);

    LinearConstraintSystem half;
    half.add_var("x");
    half.add(Constraint::make(num(2), Rel::LessEq, var(0)));
    CHECK(optimize(half, up).kind == SolveOutcome::Kind::Unbounded);

    LinearConstraintSystem cover;
    cover.add_var("x");
    cover.add_var("y");
    cover.add(Constraint::make(num(0), Rel::LessEq, var(0)));
    cover.add(Constraint::make(num(0), Rel::LessEq, var(1)));
    cover.add(Constraint::make(num(5), Rel::LessEq, sum(var(0), var(1))));
    Objective cost{Direction::Minimize, sum(var(0, 2), var(1, 3))};
    auto best = optimize(cover, cost);
    CHECK(best.kind == SolveOutcome::Kind::Optimal);
    CHECK(best.value == 10);
    CHECK(cover.holds(best.witness));

    auto box_best = brute_force_box(cover, cost, 10);
    CHECK(box_best.kind == SolveOutcome::Kind::Optimal);
    CHECK(box_best.value == 10);
    auto box_up = brute_force_box(c, up, 10);
    CHECK(box_up.value == 4);
    CHECK(brute_force_box(half, up, 10).value == 11);
}

TEST_CASE("brute force box edge cases") {
    LinearConstraintSystem bad;
    bad.add_false();
    CHECK(brute_force_box(bad, std::nullopt, 1).kind == SolveOutcome::Kind::Infeasible);
    LinearConstraintSystem none;
    CHECK(brute_force_box(none, std::nullopt, 1).kind == SolveOutcome::Kind::Feasible);
}

TEST_CASE("optimize agrees with the box oracle", "[property]") {
    testing::Rng rng(31);
    for (int i = 0; i < 400; ++i) {
        const int n = testing::uniform(rng, 1, 3);
        auto c = testing::random_system(rng, n, testing::uniform(rng, 1, 4), 5, 8, 10);
        Objective obj;
        obj.direction = testing::coin(rng) ? Direction::Maximize : Direction::Minimize;
        for (int v = 0; v < n; ++v) {
            obj.expr.coeffs[static_cast<std::size_t>(v)] = testing::uniform(rng, -5, 5);
        }
        auto fast = optimize(c, obj);
        auto slow = brute_force_box(c, obj, 10);
        REQUIRE(fast.kind == slow.kind);
        if (fast.kind == SolveOutcome::Kind::Optimal) {
            CHECK(fast.value == slow.value);
            CHECK(c.holds(fast.witness));
            CHECK(obj.expr.evaluate(fast.witness) == fast.value);
        }
        auto feas = check_feasible(c);
        CHECK(feas.has_solution() == slow.has_solution());
        if (feas.has_solution()) {
            CHECK(c.holds(feas.witness));
        }
    }
}

TEST_CASE("unbounded answers keep improving as the box doubles", "[property]") {
    testing::Rng rng(32);
    int unbounded = 0;
    for (int i = 0; i < 300; ++i) {
        const int n = testing::uniform(rng, 1, 2);
        auto c = testing::random_system(rng, n, testing::uniform(rng, 1, 3), 4, 6, 0);
        Objective obj{Direction::Maximize, {}};
        for (int v = 0; v < n; ++v) {
            obj.expr.coeffs[static_cast<std::size_t>(v)] = testing::uniform(rng, -3, 3);
        }
        auto res = optimize(c, obj);
        if (res.kind != SolveOutcome::Kind::Unbounded) {
            continue;
        }
        ++unbounded;
        BigInt box = 16;
        BigInt prev = brute_force_box(c, obj, box).value;
        for (int k = 0; k < 3; ++k) {
            box *= 2;
            auto wider = brute_force_box(c, obj, box);
            REQUIRE(wider.kind == SolveOutcome::Kind::Optimal);
            CHECK(wider.value > prev);
            prev = wider.value;
        }
    }
    CHECK(unbounded > 10);
}
