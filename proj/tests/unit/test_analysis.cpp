// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <functional>

#include <catch_amalgamated.hpp>

#include "limitdl/analysis.hpp"
#include "limitdl/frontend.hpp"
#include "support/generators.hpp"

using namespace limitdl;
using namespace limitdl::analysis;

namespace {

const char* kShortestPath = R"(
pred edge(obj, obj, int).
pred sp(obj, min int).
sp(v0, 0).
sp(Y, M + N) :- sp(X, M), edge(X, Y, N).
edge(v0, v1, 3).
)";

const char* kCycle = "pred a(max int).\npred b(max int).\na(0).\nb(0).\nb(M) :- a(M).\na(M + 1) :- b(M).\n";

const char* kGuarded =
    "pred a(max int).\npred b(max int).\npred c(max int).\na(0).\nb(0).\nc(5).\n"
    "b(M) :- a(M), c(N), (M <= N).\na(M + 1) :- b(M).\n";

Program parse(const char* text) { return frontend::parse_program(text); }

SignSet brute_signs(const BigInt& coeff, const std::vector<std::string>& vars, const IntegerPool& pool) {
    SignSet s;
    std::vector<BigInt> values(pool.begin(), pool.end());
    if (!vars.empty() && values.empty()) {
        return s;
    }
    std::map<std::string, std::size_t> index;
    for (const auto& v : vars) {
        index.emplace(v, index.size());
    }
    std::vector<std::size_t> pick(index.size(), 0);
    while (true) {
        BigInt prod = coeff;
        for (const auto& v : vars) {
            prod *= values[pick[index[v]]];
        }
        (sgn(prod) < 0 ? s.negative : sgn(prod) == 0 ? s.zero : s.positive) = true;
        std::size_t k = 0;
        while (k < pick.size() && ++pick[k] == values.size()) {
            pick[k++] = 0;
        }
        if (k == pick.size()) {
            break;
        }
    }
    return s;
}

} // namespace

TEST_CASE("predicate roles") {
    auto roles = classify_predicates(parse(kShortestPath));
    CHECK(roles.at("edge") == PredicateRole::Extensional);
    CHECK(roles.at("sp") == PredicateRole::Intensional);

    auto facts = classify_predicates(parse("pred a(max int).\npred e(obj).\na(1).\ne(x).\n"));
    CHECK(facts.at("a") == PredicateRole::Extensional);
    CHECK(facts.at("e") == PredicateRole::Extensional);

    auto norm = frontend::normalize(parse("pred a(max int).\npred b(max int).\na(1).\nb(0) :- a(M + 1).\n"));
    CHECK(classify_predicates(norm).at(kIntegersPredicate) == PredicateRole::Builtin);
}

TEST_CASE("limit-linearity") {
    CHECK(check_limit_linear(parse(kShortestPath)).empty());
    CHECK(check_limit_linear(parse(kCycle)).empty());
    auto squared = check_limit_linear(parse("pred a(max int).\npred b(max int).\na(2).\nb(M * M) :- a(M).\n"));
    REQUIRE_FALSE(squared.empty());
    CHECK(squared[0].code == "not-limit-linear");
    auto products = parse(
        "pred e(int).\npred a(max int).\ne(2).\ne(-1).\na(0).\n"
        "a(M) :- a(M), e(X1), e(X2), e(X3), (X1 * X2 * X3 - X1 * X1 <= 0).\n");
    CHECK(check_limit_linear(products).empty());
    auto scaled = parse("pred e(int).\npred a(max int).\ne(2).\na(0).\na(X * M + 1) :- a(M), e(X).\n");
    CHECK(check_limit_linear(scaled).empty());
}

TEST_CASE("sign possibilities of fixed terms") {
    CHECK(sign_possibilities(BigInt(5), {}, {BigInt(-1)}) == SignSet{false, false, true});
    CHECK(sign_possibilities(BigInt(2), {{"u", 1}}, {BigInt(-1), BigInt(3)}) == SignSet{true, false, true});
    CHECK(sign_possibilities(BigInt(1), {{"u", 2}}, {BigInt(-2)}) == SignSet{false, false, true});
    CHECK(sign_possibilities(BigInt(0), {{"u", 1}}, {BigInt(4)}) == SignSet{false, true, false});
    CHECK(sign_possibilities(BigInt(3), {{"u", 1}}, {BigInt(0), BigInt(4)}) == SignSet{false, true, true});

    std::vector<Diagnostic> diags;
    Term t = Term::compound(ArithOp::Mul, Term::integer(2), Term::numeric_var("u"));
    CHECK(sign_possibilities(t, {}, &diags).empty());
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].code == "empty-pool");
    CHECK(sign_possibilities(t, {BigInt(-1), BigInt(3)}) == SignSet{true, false, true});
}

TEST_CASE("sign possibilities agree with enumeration", "[property]") {
    testing::Rng rng(41);
    const std::vector<std::string> names{"u", "v", "w"};
    for (int i = 0; i < 2000; ++i) {
        IntegerPool pool;
        const int size = testing::uniform(rng, 0, 4);
        for (int k = 0; k < size; ++k) {
            pool.insert(BigInt(testing::uniform(rng, -3, 3)));
        }
        const BigInt coeff = testing::uniform(rng, -3, 3);
        std::vector<std::string> vars;
        Monomial m;
        const int occurrences = testing::uniform(rng, 0, 3);
        for (int k = 0; k < occurrences; ++k) {
            const auto& v = names[static_cast<std::size_t>(testing::uniform(rng, 0, 2))];
            vars.push_back(v);
            ++m[v];
        }
        INFO("coeff " << coeff.get_str() << " occurrences " << occurrences << " pool " << pool.size());
        CHECK(sign_possibilities(coeff, m, pool) == brute_signs(coeff, vars, pool));
    }
}

TEST_CASE("type consistency of sample programs") {
    CHECK(check_type_consistent(parse(kCycle)).empty());
    CHECK(check_type_consistent(parse(kShortestPath)).empty());

    auto guarded = check_type_consistent(parse(kGuarded));
    REQUIRE_FALSE(guarded.empty());
    CHECK(std::ranges::any_of(guarded, [](const TypeViolation& v) {
        return v.bullet == Bullet::ComparisonPolarity && v.diagnostic.code == "comparison-polarity";
    }));
    auto report = analyze(parse(kGuarded));
    CHECK(report.is_limit_linear());
    CHECK_FALSE(report.is_type_consistent());
}

TEST_CASE("zero coefficients are rejected") {
    auto v = check_type_consistent(
        parse("pred e(int).\npred a(max int).\ne(0).\na(0).\na(X * M + 1) :- a(M), e(X).\n"));
    REQUIRE_FALSE(v.empty());
    CHECK(v[0].bullet == Bullet::Coefficient);
    CHECK(v[0].diagnostic.code == "zero-coefficient");

    auto folded = check_type_consistent(parse("pred a(max int).\na(0).\na(0 * M + 1) :- a(M).\n"));
    CHECK(std::ranges::any_of(folded, [](const TypeViolation& t) { return t.bullet == Bullet::Coefficient; }));
}

TEST_CASE("head polarity") {
    auto mixed = check_type_consistent(parse("pred a(max int).\npred c(min int).\na(0).\nc(M) :- a(M).\n"));
    REQUIRE_FALSE(mixed.empty());
    CHECK(mixed[0].bullet == Bullet::HeadPolarity);
    CHECK(check_type_consistent(parse("pred a(max int).\npred c(min int).\na(0).\nc(0 - M) :- a(M).\n")).empty());
}

TEST_CASE("negative pool constants flip coefficient signs") {
    const char* text = "pred e(int).\npred a(max int).\ne(2).\na(1).\na(X * M) :- a(M), e(X).\n";
    CHECK(check_type_consistent(parse(text)).empty());
    const Fact negative{"e", {}, ExtInt(-1)};
    auto v = check_type_consistent(parse(text), std::span<const Fact>(&negative, 1));
    REQUIRE_FALSE(v.empty());
    CHECK(v[0].signs.negative);
}

TEST_CASE("generated type-consistent programs pass the check", "[property]") {
    testing::Rng rng(42);
    for (int i = 0; i < 300; ++i) {
        const std::string text = testing::random_type_consistent_program(rng);
        INFO(text);
        auto report = analyze(parse(text.c_str()));
        CHECK(report.is_type_consistent());
    }
}
