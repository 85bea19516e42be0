// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include <catch_amalgamated.hpp>

#include "limitdl/frontend.hpp"
#include "limitdl/verifier.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace limitdl;
using namespace limitdl::frontend;

namespace {

const char* kShortestPath = R"(
pred edge(obj, obj, int).
pred sp(obj, min int).
sp(v0, 0).
sp(Y, M + N) :- sp(X, M), edge(X, Y, N).
edge(v0, v1, 3).
edge(v1, v2, 4).
edge(v0, v2, 10).
)";

bool has_code(const std::vector<Diagnostic>& ds, const std::string& code) {
    return std::ranges::any_of(ds, [&](const Diagnostic& d) { return d.code == code; });
}

std::size_t count_pred(const Rule& r, const std::string& pred) {
    return std::ranges::count_if(r.body, [&](const Atom& a) { return a.pred == pred; });
}

bool clean(const verifier::DoublingResult& d) {
    return !d.result.inconclusive && !d.result.window_exceeded && d.settled.empty();
}

} // namespace

TEST_CASE("shortest path program parses") {
    Program p = parse_program(kShortestPath);
    CHECK(p.rules.size() == 5);
    CHECK(p.decl("sp").kind == PredKind::Min);
    CHECK(p.decl("edge").kind == PredKind::Ordinary);
    CHECK(validate(p).empty());
    CHECK(to_string(p.rules[1]) == "sp(Y, (M + N)) :- sp(X, M), edge(X, Y, N).");
}

TEST_CASE("ground arithmetic in facts is folded") {
    Program p = parse_program("pred a(max int).\na(2 + 3).\n");
    REQUIRE(p.rules.size() == 1);
    CHECK(p.rules[0].head.args.back().evaluate() == 5);
    PseudoInterpretation j = verifier::naive_fixpoint_oracle(p).closure;
    CHECK(to_string(j) == "{a(5)}");
}

TEST_CASE("syntax errors carry a location") {
    try {
        (void)parse_program("pred a(max int).\na(1) :- .\n");
        FAIL("no error");
    } catch (const InputError& e) {
        CHECK(e.loc().line == 2);
    }
    CHECK_THROWS_AS(parse_program("pred a(max int).\na(1)"), InputError);
    CHECK_THROWS_AS(parse_program("pred a(max int).\na(1x).\n"), InputError);
    CHECK_THROWS_AS(parse_program("pred a(max int).\nb(1).\n"), InputError);
    CHECK_THROWS_AS(parse_program("pred a(max int).\npred a(min int).\n"), InputError);
    CHECK_THROWS_AS(parse_program("pred a(obj).\na(1).\n"), InputError);
}

TEST_CASE("unsafe variables are rejected") {
    CHECK_THROWS_AS(parse_program("pred b(max int).\nb(X) :- (X < 3).\n"), InputError);
}

TEST_CASE("validate reports limit program violations") {
    Program p = parse_program_unchecked("pred e(int).\npred a(max int).\na(0).\ne(M) :- a(M).\n");
    CHECK(has_code(validate(p), "numeric-head"));

    Program q = parse_program_unchecked("pred q(int, obj).\nq(1, x).\n");
    CHECK(has_code(validate(q), "predicate-shape"));
    CHECK_THROWS_AS(parse_program("pred q(int, obj).\nq(1, x).\n"), InputError);
}

TEST_CASE("parse_fact evaluates and checks") {
    Program p = parse_program(kShortestPath);
    Fact f = parse_fact("sp(v2, 4 + 4)", p.signature);
    CHECK(f == Fact{"sp", {"v2"}, ExtInt(8)});
    CHECK(parse_fact("sp(v2, -1).", p.signature).value == ExtInt(-1));
    CHECK_THROWS_AS(parse_fact("sp(v2, inf)", p.signature), InputError);
    CHECK_THROWS_AS(parse_fact("sp(v2, X)", p.signature), InputError);
    CHECK_THROWS_AS(parse_fact("sp(v2)", p.signature), InputError);
}

TEST_CASE("normalize replaces arithmetic in body atoms") {
    Program p = parse_program("pred a(obj, max int).\npred b(obj, max int).\na(t, 1).\nb(T, 0) :- a(T, M1 + M2).\n");
    CHECK_FALSE(is_normalized(p));
    Program n = normalize(p);
    CHECK(is_normalized(n));
    const Rule& r = n.rules.back();
    CHECK(count_pred(r, "a") == 1);
    CHECK(count_pred(r, kIntegersPredicate) == 2);
    CHECK(r.comparisons.size() == 2);
    CHECK(n.signature.contains(kIntegersPredicate));
}

TEST_CASE("normalize splits shared numeric variables") {
    Program p = parse_program(
        "pred a1(obj, max int).\npred a2(obj, max int).\npred c(obj).\na1(t, 1).\na2(t, 1).\n"
        "c(T) :- a1(T, M), a2(T, M).\n");
    Program n = normalize(p);
    CHECK(is_normalized(n));
    const Rule& r = n.rules.back();
    CHECK(r.comparisons.size() == 2);
    CHECK_FALSE(n.signature.contains(kIntegersPredicate));
    std::vector<std::string> a1_vars, a2_vars;
    r.body[0].args.back().collect_variables(a1_vars);
    r.body[1].args.back().collect_variables(a2_vars);
    CHECK(a1_vars != a2_vars);
}

TEST_CASE("normalize is idempotent on normal programs") {
    Program p = parse_program(kShortestPath);
    Program n = normalize(p);
    CHECK(is_normalized(n));
    CHECK(normalize(n).rules.size() == n.rules.size());
    CHECK(to_string(normalize(n)) == to_string(n));
}

TEST_CASE("homogenise negates min predicates") {
    Program p = parse_program(kShortestPath);
    auto [h, q] = homogenise(p, Fact{"sp", {"v2"}, ExtInt(8)});
    CHECK(q.value == ExtInt(-8));
    for (const auto& [name, d] : h.signature.decls()) {
        CHECK(d.kind != PredKind::Min);
    }
    const auto orig = verifier::naive_fixpoint_oracle(p).closure;
    const auto flipped = verifier::naive_fixpoint_oracle(h).closure;
    std::size_t seen = 0;
    for (const auto& [k, v] : orig.limit_values()) {
        auto w = flipped.limit_value(LimitKey{q.pred, k.objects});
        REQUIRE(w.has_value());
        CHECK(*w == ExtInt(BigInt(-v.value())));
        ++seen;
    }
    CHECK(seen == 3);
}

TEST_CASE("homogenise leaves all-max programs alone") {
    Program p = parse_program("pred a(max int).\npred b(max int).\na(0).\nb(M) :- a(M).\n");
    auto [h, q] = homogenise(p, Fact{"b", {}, ExtInt(0)});
    CHECK(q == Fact{"b", {}, ExtInt(0)});
    CHECK(h.rules.size() == p.rules.size());
    CHECK(to_string(h) == to_string(p));
}

TEST_CASE("semi-grounding enumerates non-limit variables") {
    Program p = parse_program(
        "pred edge(obj, obj, int).\npred sp(obj, min int).\nsp(v0, 0).\nedge(v0, v1, 3).\n"
        "sp(Y, M + N) :- sp(X, M), edge(X, Y, N).\n");
    SemiGroundProgram g = semi_ground(p);
    CHECK(std::ranges::count(g.origin, std::size_t{2}) == 8);
    CHECK(std::ranges::count(g.origin, std::size_t{0}) == 1);
    for (const auto& r : g.program.rules) {
        CHECK(is_semi_ground(r, g.program.signature));
        CHECK(limit_variables(r, g.program.signature).size() <= 1);
    }
    SemiGroundProgram again = semi_ground(g.program);
    CHECK(again.size() == g.size());
}

TEST_CASE("semi-grounding without object constants warns") {
    Program p = parse_program("pred e(obj).\npred a(max int).\na(0).\na(M) :- a(M), e(X).\n");
    SemiGroundProgram g = semi_ground(p);
    CHECK(g.size() == 1);
    REQUIRE_FALSE(g.diagnostics.empty());
    CHECK(g.diagnostics[0].code == "empty-instantiation");
    CHECK(g.diagnostics[0].severity == Severity::Warning);
}

TEST_CASE("print then parse is the identity", "[property]") {
    testing::Rng rng(71);
    for (int i = 0; i < 200; ++i) {
        Program p = parse_program(testing::random_limit_linear_program(rng));
        Program again = parse_program(to_string(p));
        CHECK(again.rules == p.rules);
        CHECK(again.signature == p.signature);
    }
}

TEST_CASE("rewrites preserve entailment", "[property]") {
    testing::Rng rng(72);
    testing::ProgramShape shape;
    shape.non_normal = true;
    shape.max_rules = 4;
    int compared = 0;
    for (int i = 0; i < 60; ++i) {
        Program p = parse_program(testing::random_type_consistent_program(rng, shape));
        auto before = verifier::naive_oracle_with_doubling(p, 12);
        auto after = verifier::naive_oracle_with_doubling(normalize(p), 12);
        if (!clean(before) || !clean(after)) {
            continue;
        }
        for (const auto& f : before.result.closure.all_facts()) {
            CHECK(satisfies(after.result.closure, f));
        }
        for (const auto& f : after.result.closure.all_facts()) {
            if (p.signature.contains(f.pred)) {
                CHECK(satisfies(before.result.closure, f));
            }
        }
        ++compared;
    }
    CHECK(compared >= 30);
}
