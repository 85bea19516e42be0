// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include "limitdl/cli.hpp"

#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "limitdl/analysis.hpp"
#include "limitdl/engine.hpp"
#include "limitdl/frontend.hpp"
#include "limitdl/verifier.hpp"

namespace limitdl::cli {
namespace {

using Json = nlohmann::ordered_json;

struct Options {
    std::string file;
    std::string query;
    std::string task;
    std::int64_t bound = 8;
    bool json = false;
    bool skip_gate = false;
    bool trace = false;
    bool timing = false;
    std::optional<std::uint64_t> max_iterations;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot read " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Json diagnostic_json(const Diagnostic& d) {
    Json j;
    j["severity"] = d.severity == Severity::Error ? "error" : "warning";
    j["code"] = d.code;
    j["message"] = d.message;
    if (d.loc.known()) {
        j["line"] = d.loc.line;
        j["column"] = d.loc.column;
    }
    return j;
}

Json fact_json(const Fact& f) {
    Json j;
    j["pred"] = f.pred;
    j["args"] = f.objects;
    j["value"] = f.value ? Json(f.value->to_string()) : Json(nullptr);
    return j;
}

Json diagnostics_json(const std::vector<Diagnostic>& diags) {
    Json arr = Json::array();
    for (const auto& d : diags) {
        arr.push_back(diagnostic_json(d));
    }
    return arr;
}

void print_diagnostics(std::ostream& os, const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags) {
        os << d.to_string() << "\n";
    }
}

engine::EngineConfig config(const Options& o, std::ostream& err) {
    engine::EngineConfig cfg;
    cfg.max_iterations = o.max_iterations;
    cfg.trace = o.trace;
    cfg.trace_stream = &err;
    cfg.enforce_stability_precondition = !o.skip_gate;
    return cfg;
}

struct Document {
    std::string status;
    std::vector<Fact> facts;
    std::vector<Diagnostic> diagnostics;
    std::optional<engine::Materialization> run;
    std::optional<double> millis;

    [[nodiscard]] std::string dump() const {
        Json j;
        j["status"] = status;
        Json fs = Json::array();
        for (const auto& f : facts) {
            fs.push_back(fact_json(f));
        }
        j["facts"] = fs;
        j["diagnostics"] = diagnostics_json(diagnostics);
        Json stats = Json::object();
        if (run) {
            stats["iterations"] = run->result.iterations;
            stats["rules_semiground"] = run->semi_ground.size();
        }
        if (millis) {
            stats["time_ms"] = *millis;
        }
        j["stats"] = stats;
        return j.dump(2) + "\n";
    }
};

std::vector<Fact> visible_facts(const PseudoInterpretation& j) {
    std::vector<Fact> out;
    for (auto& f : j.all_facts()) {
        if (f.pred != kIntegersPredicate) {
            out.push_back(std::move(f));
        }
    }
    return out;
}

int cmd_check(const Options& o, std::ostream& out) {
    const Program p = frontend::parse_program_unchecked(read_file(o.file));
    auto diags = frontend::validate(p);
    const bool invalid = std::ranges::any_of(diags, [](const Diagnostic& d) { return d.severity == Severity::Error; });
    int code = kUsage;
    std::string status = "invalid";
    if (!invalid) {
        const auto report = analysis::analyze(p);
        auto more = report.diagnostics();
        diags.insert(diags.end(), more.begin(), more.end());
        if (!report.is_limit_linear()) {
            status = "not-limit-linear";
            code = kRejected;
        } else if (!report.is_type_consistent()) {
            status = "not-type-consistent";
            code = kRejected;
        } else {
            status = "ok";
            code = kOk;
        }
    }
    if (o.json) {
        out << Document{status, {}, diags, std::nullopt, std::nullopt}.dump();
    } else {
        print_diagnostics(out, diags);
        if (code == kOk) {
            out << "ok: limit-linear and type-consistent\n";
        } else {
            out << status << "\n";
        }
    }
    return code;
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
    const Program p = frontend::parse_program(read_file(o.file));
    const Fact alpha = frontend::parse_fact(o.query, p.signature);
    const auto start = std::chrono::steady_clock::now();
    const Fact extra[] = {alpha};
    auto m = engine::materialize(p, config(o, err), extra);
    const bool yes = satisfies(m.result.closure, alpha);
    const std::chrono::duration<double, std::milli> took = std::chrono::steady_clock::now() - start;
    if (o.json) {
        Document d{yes ? "entailed" : "not-entailed", {alpha}, m.semi_ground.diagnostics, std::move(m), std::nullopt};
        if (o.timing) {
            d.millis = took.count();
        }
        out << d.dump();
    } else {
        out << (yes ? "entailed: " : "not entailed: ") << to_string(alpha) << "\n";
    }
    return yes ? kOk : kNotEntailed;
}

int cmd_materialize(const Options& o, std::ostream& out, std::ostream& err) {
    const Program p = frontend::parse_program(read_file(o.file));
    const auto start = std::chrono::steady_clock::now();
    auto m = engine::materialize(p, config(o, err));
    const std::chrono::duration<double, std::milli> took = std::chrono::steady_clock::now() - start;
    auto facts = visible_facts(m.result.closure);
    if (o.json) {
        Document d{"ok", std::move(facts), m.semi_ground.diagnostics, std::move(m), std::nullopt};
        if (o.timing) {
            d.millis = took.count();
        }
        out << d.dump();
        return kOk;
    }
    for (const auto& f : facts) {
        out << to_string(f) << ".\n";
    }
    if (o.timing) {
        err << "time_ms: " << took.count() << "\n";
    }
    return kOk;
}

int cmd_counter_model(const Options& o, std::ostream& out) {
    const Program p = frontend::parse_program(read_file(o.file));
    const Fact alpha = frontend::parse_fact(o.query, p.signature);
    auto found = verifier::counter_model_search(p, alpha, o.bound);
    if (o.json) {
        Document d{found ? "counter-model" : "none-within-bound", {}, {}, std::nullopt, std::nullopt};
        if (found) {
            d.facts = visible_facts(*found);
        }
        out << d.dump();
    } else if (found) {
        out << "counter-model for " << to_string(alpha) << ":\n";
        for (const auto& f : visible_facts(*found)) {
            out << to_string(f) << ".\n";
        }
    } else {
        out << "no counter-model with values in [-" << o.bound << ", " << o.bound << "]\n";
    }
    return found ? kNotEntailed : kOk;
}

int cmd_oracle(const Options& o, std::ostream& out) {
    const Program p = frontend::parse_program(read_file(o.file));
    std::vector<Fact> facts;
    if (o.task == "shortest-path") {
        for (const auto& [node, d] : verifier::shortest_path(verifier::shortest_path_instance(p))) {
            facts.push_back(Fact{"sp", {node}, ExtInt(d)});
        }
    } else if (o.task == "path-count") {
        for (const auto& [pair, n] : verifier::dag_path_count(verifier::path_count_instance(p))) {
            facts.push_back(Fact{"np", {pair.first, pair.second}, ExtInt(n)});
        }
    } else {
        for (const auto& agent : verifier::diffusion(verifier::diffusion_instance(p))) {
            facts.push_back(Fact{"tw", {agent}, std::nullopt});
        }
    }
    if (o.json) {
        out << Document{"ok", facts, {}, std::nullopt, std::nullopt}.dump();
    } else {
        for (const auto& f : facts) {
            out << to_string(f) << ".\n";
        }
    }
    return kOk;
}

void engine_flags(CLI::App* cmd, Options& o) {
    cmd->add_flag("--unsafe-skip-stability-gate", o.skip_gate,
                  "Saturate even if the program is not type-consistent (termination and "
                  "correctness are then not guaranteed)");
    cmd->add_option("--max-iterations", o.max_iterations, "Override the iteration budget");
    cmd->add_flag("--trace", o.trace, "Write one JSON record per iteration to standard error");
    cmd->add_flag("--timing", o.timing, "Report wall-clock time");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Reasoning engine for limit Datalog programs", "limitdl"};
    app.require_subcommand(1);

    auto* check = app.add_subcommand("check", "Parse a program and run the static checks");
    check->add_option("file", o.file, "Program (.lgl)")->required();
    check->add_flag("--json", o.json, "Machine-readable output");

    auto* solve = app.add_subcommand("solve", "Decide whether the program entails a fact");
    solve->add_option("file", o.file, "Program (.lgl)")->required();
    solve->add_option("--query", o.query, "Ground fact, e.g. 'sp(v2, 8)'")->required();
    solve->add_flag("--json", o.json, "Machine-readable output");
    engine_flags(solve, o);

    auto* mat = app.add_subcommand("materialize", "Print the closure of the program");
    mat->add_option("file", o.file, "Program (.lgl)")->required();
    mat->add_flag("--json", o.json, "Machine-readable output");
    engine_flags(mat, o);

    auto* cm = app.add_subcommand("counter-model", "Search for a pseudo-model that does not satisfy a fact");
    cm->add_option("file", o.file, "Program (.lgl)")->required();
    cm->add_option("--query", o.query, "Ground fact")->required();
    cm->add_option("--bound", o.bound, "Largest magnitude of a candidate value")
        ->check(CLI::NonNegativeNumber)
        ->default_val(8);
    cm->add_flag("--json", o.json, "Machine-readable output");

    auto* oracle = app.add_subcommand("oracle", "Reference answers for the sample graph programs");
    oracle->add_option("task", o.task, "shortest-path | path-count | diffusion")
        ->required()
        ->check(CLI::IsMember({"shortest-path", "path-count", "diffusion"}));
    oracle->add_option("file", o.file, "Program (.lgl) holding the instance facts")->required();
    oracle->add_flag("--json", o.json, "Machine-readable output");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (check->parsed()) {
            return cmd_check(o, out);
        }
        if (solve->parsed()) {
            return cmd_solve(o, out, err);
        }
        if (mat->parsed()) {
            return cmd_materialize(o, out, err);
        }
        if (cm->parsed()) {
            return cmd_counter_model(o, out);
        }
        return cmd_oracle(o, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const AnalysisRejected& e) {
        err << "error: " << e.what() << "\n";
        print_diagnostics(err, e.diagnostics());
        return kRejected;
    } catch (const IterationBudgetExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kBudgetExceeded;
    }
}

} // namespace limitdl::cli
