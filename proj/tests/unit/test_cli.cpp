// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include <filesystem>
#include <fstream>
#include <sstream>

#include <catch_amalgamated.hpp>
#include <json.hpp>

#include "limitdl/cli.hpp"
#include "limitdl/frontend.hpp"

using namespace limitdl;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string sample(const char* name) { return std::string(LIMITDL_PROGRAMS_DIR) + "/" + name + ".lgl"; }

std::string scratch(const std::string& name, const std::string& text) {
    auto path = std::filesystem::temp_directory_path() / ("limitdl_unit_" + name);
    std::ofstream(path) << text;
    return path.string();
}

} // namespace

TEST_CASE("exit codes") {
    CHECK(run({"check", sample("shortest_path")}).code == cli::kOk);
    CHECK(run({"check", sample("pc_prime")}).code == cli::kRejected);
    CHECK(run({"solve", sample("shortest_path"), "--query", "sp(v2, 8)"}).code == cli::kOk);
    CHECK(run({"solve", sample("shortest_path"), "--query", "sp(v2, 6)"}).code == cli::kNotEntailed);
    CHECK(run({"solve", sample("pc_prime"), "--query", "a(1)"}).code == cli::kRejected);
    CHECK(run({"solve", sample("pc_prime"), "--query", "c(5)", "--unsafe-skip-stability-gate"}).code == cli::kOk);
    CHECK(run({"solve", sample("shortest_path"), "--query", "sp(v2, 8)", "--max-iterations", "1"}).code ==
          cli::kBudgetExceeded);
    CHECK(run({"materialize", sample("pc")}).code == cli::kOk);
    CHECK(run({"counter-model", sample("shortest_path"), "--query", "sp(v2, 6)"}).code == cli::kNotEntailed);
    CHECK(run({"counter-model", sample("shortest_path"), "--query", "sp(v2, 8)"}).code == cli::kOk);
    CHECK(run({"oracle", "shortest-path", sample("shortest_path")}).code == cli::kOk);
}

TEST_CASE("usage and input errors exit with 2") {
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"frobnicate"}).code == cli::kUsage);
    CHECK(run({"solve", sample("shortest_path")}).code == cli::kUsage);
    CHECK(run({"check", "/nonexistent/file.lgl"}).code == cli::kUsage);
    CHECK(run({"solve", sample("shortest_path"), "--query", "nope(1)"}).code == cli::kUsage);
    auto bad = run({"check", scratch("bad.lgl", "pred a(max int).\na(1) :- .\n")});
    CHECK(bad.code == cli::kUsage);
    CHECK(bad.err.find("2:9") != std::string::npos);
}

TEST_CASE("materialize prints the closure") {
    auto r = run({"materialize", sample("shortest_path")});
    REQUIRE(r.code == cli::kOk);
    CHECK(r.out.find("sp(v2, 7)") != std::string::npos);
    auto pc = run({"materialize", sample("pc")});
    CHECK(pc.out.find("a(inf)") != std::string::npos);
    CHECK(pc.out.find("b(inf)") != std::string::npos);
}

TEST_CASE("json output is stable and parses back") {
    auto first = run({"materialize", sample("shortest_path"), "--json"});
    auto second = run({"materialize", sample("shortest_path"), "--json"});
    REQUIRE(first.code == cli::kOk);
    CHECK(first.out == second.out);

    auto doc = nlohmann::json::parse(first.out);
    CHECK(doc.at("status") == "ok");
    CHECK(doc.at("stats").contains("iterations"));
    CHECK(doc.at("stats").contains("rules_semiground"));
    CHECK_FALSE(doc.at("stats").contains("time_ms"));
    const Program p = frontend::parse_program(
        std::string(std::istreambuf_iterator<char>(std::ifstream(sample("shortest_path")).rdbuf()), {}));
    std::size_t limits = 0;
    for (const auto& f : doc.at("facts")) {
        std::string text = f.at("pred").get<std::string>() + "(";
        bool sep = false;
        for (const auto& a : f.at("args")) {
            text += (sep ? ", " : "") + a.get<std::string>();
            sep = true;
        }
        if (!f.at("value").is_null()) {
            text += (sep ? ", " : "") + f.at("value").get<std::string>();
            ++limits;
        }
        text += ")";
        CHECK_NOTHROW(frontend::parse_fact(text, p.signature));
    }
    CHECK(limits >= 6);

    auto timed = nlohmann::json::parse(run({"materialize", sample("shortest_path"), "--json", "--timing"}).out);
    CHECK(timed.at("stats").contains("time_ms"));
}

TEST_CASE("rejections carry diagnostics in json") {
    auto r = run({"check", sample("pc_prime"), "--json"});
    CHECK(r.code == cli::kRejected);
    auto doc = nlohmann::json::parse(r.out);
    REQUIRE_FALSE(doc.at("diagnostics").empty());
    CHECK(doc.at("diagnostics")[0].at("code") == "comparison-polarity");
}

TEST_CASE("trace goes to the error stream") {
    auto r = run({"solve", sample("shortest_path"), "--query", "sp(v2, 8)", "--trace"});
    CHECK(r.code == cli::kOk);
    CHECK_FALSE(r.err.empty());
    CHECK(r.err.front() == '{');
}
