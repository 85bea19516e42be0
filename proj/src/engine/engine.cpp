// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include <iostream>
#include <limits>

#include <json.hpp>

#include "compiled_program.hpp"
#include "limitdl/analysis.hpp"
#include "limitdl/engine.hpp"
#include "limitdl/lia.hpp"

namespace limitdl::engine {

using detail::CompiledProgram;
using detail::Outcome;
using detail::State;

std::optional<Fact> evaluate_rule(const Rule& r, const PseudoInterpretation& j) {
    lia::LinearConstraintSystem c = lia::build_constraint_system(r, j);
    const auto& d = j.signature().at(r.head.pred);
    Fact head{r.head.pred, {}, std::nullopt};
    for (std::size_t i = 0; i < d.object_arity(); ++i) {
        head.objects.push_back(r.head.args[i].name);
    }
    if (!d.is_limit()) {
        if (!lia::check_feasible(c).has_solution()) {
            return std::nullopt;
        }
        if (d.is_numeric()) {
            head.value = ExtInt(r.head.args.back().evaluate());
        }
        return head;
    }
    const auto obj = lia::head_objective(r, j.signature(), c);
    const lia::SolveOutcome res = lia::optimize(c, *obj);
    switch (res.kind) {
    case lia::SolveOutcome::Kind::Optimal: head.value = ExtInt(res.value); return head;
    case lia::SolveOutcome::Kind::Unbounded: head.value = ExtInt::infinity(); return head;
    default: return std::nullopt;
    }
}

PseudoInterpretation tp_step(const frontend::SemiGroundProgram& p, const PseudoInterpretation& j) {
    PseudoInterpretation out(j.signature_ptr());
    for (const auto& r : p.program.rules) {
        if (auto f = evaluate_rule(r, j)) {
            out.join(*f);
        }
    }
    return out;
}

bool is_pseudo_model(const frontend::SemiGroundProgram& p, const PseudoInterpretation& j) {
    return preceq(tp_step(p, j), j);
}

std::optional<std::size_t> ValuePropagationGraph::node_index(const LimitKey& k) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), k);
    if (it == nodes.end() || !(*it == k)) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - nodes.begin());
}

std::optional<ExtInt> ValuePropagationGraph::weight(const LimitKey& from, const LimitKey& to) const {
    auto a = node_index(from);
    auto b = node_index(to);
    if (!a || !b) {
        return std::nullopt;
    }
    auto it = weights.find({*a, *b});
    if (it == weights.end()) {
        return std::nullopt;
    }
    return it->second;
}

ValuePropagationGraph build_vpg(const frontend::SemiGroundProgram& p, const PseudoInterpretation& j) {
    const CompiledProgram cp(p, j.signature_ptr());
    const State s = cp.load(j);
    std::vector<Outcome> outcomes(cp.rule_count());
    for (std::size_t i = 0; i < cp.rule_count(); ++i) {
        outcomes[i] = cp.evaluate(i, s);
    }
    ValuePropagationGraph g;
    for (const auto& [k, v] : j.limit_values()) {
        g.nodes.push_back(k);
    }
    for (const auto& [e, w] : cp.edges(outcomes, s)) {
        g.weights.emplace(std::make_pair(*g.node_index(cp.key(e.first)), *g.node_index(cp.key(e.second))), w);
    }
    return g;
}

std::uint64_t iteration_budget(std::size_t semi_ground_rules) {
    BigInt n(static_cast<unsigned long>(semi_ground_rules));
    BigInt b;
    mpz_pow_ui(b.get_mpz_t(), n.get_mpz_t(), 6);
    b *= 8;
    if (b > BigInt(std::to_string(std::numeric_limits<std::uint64_t>::max()), 10)) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return std::stoull(b.get_str());
}

void require_static_checks(const Program& p, bool type_consistency, std::span<const Fact> extra) {
    const auto linear = analysis::check_limit_linear(p);
    if (!linear.empty()) {
        throw AnalysisRejected("program is not limit-linear", linear);
    }
    if (!type_consistency) {
        return;
    }
    const auto violations = analysis::check_type_consistent(p, extra);
    if (!violations.empty()) {
        std::vector<Diagnostic> diags;
        for (const auto& v : violations) {
            diags.push_back(v.diagnostic);
        }
        throw AnalysisRejected("program is not type-consistent, so stability cannot be guaranteed", std::move(diags));
    }
}

namespace {

std::size_t differences(const State& a, const State& b) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.facts.size(); ++i) {
        n += a.facts[i] != b.facts[i] ? 1 : 0;
    }
    for (std::size_t i = 0; i < a.limits.size(); ++i) {
        n += a.limits[i] != b.limits[i] ? 1 : 0;
    }
    return n;
}

SaturationResult run(const frontend::SemiGroundProgram& p, const EngineConfig& cfg) {
    auto sig = std::make_shared<const Signature>(p.program.signature);
    const CompiledProgram cp(p, sig);
    const std::uint64_t budget = cfg.max_iterations ? *cfg.max_iterations : iteration_budget(p.size());
    std::ostream& trace = cfg.trace_stream != nullptr ? *cfg.trace_stream : std::cerr;

    std::vector<Outcome> outcomes(cp.rule_count());
    std::vector<char> dirty(cp.rule_count(), 1);
    auto mark_readers = [&](const State& before, const State& after) {
        for (std::size_t i = 0; i < before.facts.size(); ++i) {
            if (before.facts[i] != after.facts[i]) {
                for (std::size_t r : cp.fact_readers(i)) {
                    dirty[r] = 1;
                }
            }
        }
        for (std::size_t i = 0; i < before.limits.size(); ++i) {
            if (before.limits[i] != after.limits[i]) {
                for (std::size_t r : cp.key_readers(i)) {
                    dirty[r] = 1;
                }
            }
        }
    };
    auto refresh = [&](const State& s) {
        for (std::size_t r = 0; r < cp.rule_count(); ++r) {
            if (dirty[r] != 0) {
                outcomes[r] = cp.evaluate(r, s);
                dirty[r] = 0;
            }
        }
    };

    SaturationResult result{PseudoInterpretation(sig), 0, budget, 0};
    State next = cp.empty_state();
    State j = next;
    while (true) {
        if (result.iterations == budget) {
            throw IterationBudgetExceeded(budget);
        }
        ++result.iterations;
        mark_readers(j, next);
        j = next;
        refresh(j);

        std::size_t promoted = 0;
        const State before = j;
        for (std::size_t k : positive_cycle_indices(cp.key_count(), cp.edges(outcomes, j))) {
            if (j.limits[k] && j.limits[k]->is_finite()) {
                j.limits[k] = ExtInt::infinity();
                ++promoted;
            }
        }
        if (promoted != 0) {
            mark_readers(before, j);
            refresh(j);
        }
        result.promotions += promoted;

        next = j;
        cp.join_heads(outcomes, next);
        const std::size_t changed = differences(j, next);
        if (cfg.trace) {
            nlohmann::json line{{"iteration", result.iterations}, {"changed", changed}, {"promoted", promoted}};
            trace << line.dump() << "\n";
        }
        if (changed == 0) {
            break;
        }
    }
    result.closure = cp.to_interpretation(j);
    return result;
}

} // namespace

SaturationResult saturate_with_stats(const frontend::SemiGroundProgram& p, const EngineConfig& cfg) {
    require_static_checks(p.program, cfg.enforce_stability_precondition);
    return run(p, cfg);
}

PseudoInterpretation saturate(const frontend::SemiGroundProgram& p, const EngineConfig& cfg) {
    return saturate_with_stats(p, cfg).closure;
}

Materialization materialize(const Program& p, const EngineConfig& cfg, std::span<const Fact> extra) {
    require_static_checks(p, cfg.enforce_stability_precondition, extra);
    Materialization m{frontend::semi_ground(frontend::normalize(p), extra), SaturationResult{PseudoInterpretation(std::make_shared<const Signature>()), 0, 0, 0}};
    m.result = run(m.semi_ground, cfg);
    return m;
}

bool entails(const Program& p, const Fact& alpha, const EngineConfig& cfg) {
    check_fact(p.signature, alpha);
    const Fact extra[] = {alpha};
    const Materialization m = materialize(p, cfg, extra);
    return satisfies(m.result.closure, alpha);
}

} // namespace limitdl::engine
