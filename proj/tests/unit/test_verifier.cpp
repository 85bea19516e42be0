// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include "limitdl/engine.hpp"
#include "limitdl/frontend.hpp"
#include "limitdl/verifier.hpp"

using namespace limitdl;
using namespace limitdl::verifier;

namespace {

const char* kCycle = "pred a(max int).\npred b(max int).\na(0).\nb(0).\nb(M) :- a(M).\na(M + 1) :- b(M).\n";

const char* kGuarded =
    "pred a(max int).\npred b(max int).\npred c(max int).\na(0).\nb(0).\nc(5).\n"
    "b(M) :- a(M), c(N), (M <= N).\na(M + 1) :- b(M).\n";

Program parse(const std::string& text) { return frontend::parse_program(text); }

ShortestPathInstance triangle() {
    ShortestPathInstance g;
    g.edges = {{"v0", "v1", 3}, {"v1", "v2", 4}, {"v0", "v2", 10}};
    g.sources = {{"v0", 0}};
    return g;
}

PathCountInstance diamond() {
    PathCountInstance g;
    g.nodes = {"a", "b", "c", "d"};
    g.edges = {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}};
    return g;
}

} // namespace

TEST_CASE("oracle on a converging program") {
    OracleOptions opts;
    opts.value_cap = 10;
    auto res = naive_fixpoint_oracle(parse(kGuarded), opts);
    CHECK(to_string(res.closure) == "{a(6), b(5), c(5)}");
    CHECK(res.overflowed_keys.empty());
    CHECK_FALSE(res.inconclusive);
    CHECK_FALSE(res.window_exceeded);
}

TEST_CASE("oracle flags divergence") {
    OracleOptions opts;
    opts.value_cap = 10;
    auto res = naive_fixpoint_oracle(parse(kCycle), opts);
    CHECK(res.overflowed_keys == std::set<LimitKey>{{"a", {}}, {"b", {}}});
    CHECK(to_string(res.closure) == "{a(inf), b(inf)}");

    auto doubled = naive_oracle_with_doubling(parse(kCycle), 10);
    CHECK(doubled.divergent.size() == 2);
    CHECK(doubled.settled.empty());
}

TEST_CASE("oracle on facts only") {
    auto res = naive_fixpoint_oracle(parse("pred a(max int).\npred e(obj).\na(3).\na(1).\ne(x).\n"));
    CHECK(to_string(res.closure) == "{a(3), e(x)}");
    CHECK(res.iterations == 1);
}

TEST_CASE("oracle reports an exhausted iteration cap") {
    OracleOptions opts;
    opts.value_cap = 1000;
    opts.iteration_cap = 5;
    CHECK(naive_fixpoint_oracle(parse(kCycle), opts).inconclusive);
}

TEST_CASE("counter-model search") {
    Program one = parse("pred a(max int).\na(3).\n");
    auto found = counter_model_search(one, Fact{"a", {}, ExtInt(5)}, 5);
    REQUIRE(found.has_value());
    CHECK(to_string(*found) == "{a(3)}");
    CHECK_FALSE(counter_model_search(one, Fact{"a", {}, ExtInt(2)}, 5).has_value());
    CHECK_FALSE(counter_model_search(one, Fact{"a", {}, ExtInt(2)}, 40).has_value());

    Program sp = parse(shortest_path_program(triangle()));
    const Fact six{"sp", {"v2"}, ExtInt(6)};
    auto refuted = counter_model_search(sp, six, 16);
    REQUIRE(refuted.has_value());
    CHECK_FALSE(satisfies(*refuted, six));
    CHECK(engine::is_pseudo_model(frontend::semi_ground(frontend::normalize(sp), std::span<const Fact>(&six, 1)),
                                  *refuted));
    CHECK_FALSE(engine::entails(sp, six));
    CHECK_FALSE(counter_model_search(sp, Fact{"sp", {"v2"}, ExtInt(8)}, 16).has_value());
}

TEST_CASE("graph references") {
    auto dist = shortest_path(triangle());
    CHECK(dist.at("v2") == 7);
    CHECK(dist.at("v1") == 3);

    auto counts = dag_path_count(diamond());
    CHECK(counts.at({"a", "d"}) == 2);
    CHECK(counts.at({"a", "a"}) == 1);

    auto cyclic = diamond();
    cyclic.edges.emplace_back("d", "a");
    CHECK_THROWS_AS(dag_path_count(cyclic), InputError);

    auto negative = triangle();
    negative.edges.push_back({"v2", "v0", -1});
    CHECK_THROWS_AS(shortest_path(negative), InputError);

    DiffusionInstance star;
    star.agents = {"s", "a1"};
    star.follows = {{"a1", "s"}};
    star.threshold = {{"a1", 1}};
    star.sources = {"s"};
    CHECK(diffusion(star) == std::set<std::string>{"s", "a1"});
}

TEST_CASE("instances round-trip through program text") {
    auto sp = shortest_path_instance(parse(shortest_path_program(triangle())));
    CHECK(shortest_path(sp) == shortest_path(triangle()));
    auto pc = path_count_instance(parse(path_count_program(diamond())));
    CHECK(pc.nodes == diamond().nodes);
    CHECK(dag_path_count(pc) == dag_path_count(diamond()));
}

TEST_CASE("engine agrees with the references on the samples") {
    auto closure = engine::materialize(parse(path_count_program(diamond()))).result.closure;
    CHECK(*closure.limit_value(LimitKey{"np", {"a", "d"}}) == ExtInt(2));
    auto sp = engine::materialize(parse(shortest_path_program(triangle()))).result.closure;
    CHECK(*sp.limit_value(LimitKey{"sp", {"v2"}}) == ExtInt(7));
}
