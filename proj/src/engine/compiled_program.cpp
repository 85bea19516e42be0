// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include "compiled_program.hpp"

#include <algorithm>

namespace limitdl::engine::detail {

std::size_t CompiledProgram::intern_fact(const Fact& f) {
    auto [it, inserted] = fact_ids_.emplace(f, facts_.size());
    if (inserted) {
        facts_.push_back(f);
        fact_readers_.emplace_back();
    }
    return it->second;
}

std::size_t CompiledProgram::intern_key(const LimitKey& k) {
    auto [it, inserted] = key_ids_.emplace(k, keys_.size());
    if (inserted) {
        keys_.push_back(k);
        key_kinds_.push_back(sig_->at(k.pred).kind);
        key_readers_.emplace_back();
    }
    return it->second;
}

std::optional<std::size_t> CompiledProgram::key_id(const LimitKey& k) const {
    auto it = key_ids_.find(k);
    if (it == key_ids_.end()) {
        return std::nullopt;
    }
    return it->second;
}

CompiledProgram::CompiledProgram(const frontend::SemiGroundProgram& p, std::shared_ptr<const Signature> sig)
    : sig_(std::move(sig)) {
    rules_.reserve(p.program.rules.size());
    for (std::size_t index = 0; index < p.program.rules.size(); ++index) {
        const Rule& r = p.program.rules[index];
        if (!frontend::is_semi_ground(r, *sig_)) {
            throw ContractViolation("rule " + to_string(r) + " is not semi-ground");
        }
        Compiled c;
        for (const auto& v : r.variables()) {
            c.base.add_var(v);
        }
        for (const auto& cmp : r.comparisons) {
            c.base.add(lia::Constraint::make(lia::linearize(cmp.lhs, c.base),
                                             cmp.op == CmpOp::Less ? lia::Rel::Less : lia::Rel::LessEq,
                                             lia::linearize(cmp.rhs, c.base)));
        }
        const auto& hd = sig_->at(r.head.pred);
        for (const auto& a : r.body) {
            const auto& d = sig_->at(a.pred);
            if (d.kind == PredKind::Integers) {
                continue;
            }
            std::vector<std::string> objects;
            for (std::size_t i = 0; i < d.object_arity(); ++i) {
                objects.push_back(a.args[i].name);
            }
            if (!d.is_limit()) {
                Fact f{a.pred, std::move(objects), std::nullopt};
                if (d.is_numeric()) {
                    f.value = ExtInt(a.args.back().evaluate());
                }
                const std::size_t id = intern_fact(f);
                c.required_facts.push_back(id);
                fact_readers_[id].push_back(index);
                continue;
            }
            const std::size_t id = intern_key(LimitKey{a.pred, std::move(objects)});
            std::vector<std::string> vars;
            a.args.back().collect_variables(vars);
            const bool feeds = hd.is_limit() && std::ranges::any_of(vars, [&](const std::string& v) {
                                   return r.head.args.back().mentions(v);
                               });
            c.limits.push_back(LimitUse{id, d.kind, lia::linearize(a.args.back(), c.base), feeds});
            key_readers_[id].push_back(index);
        }
        std::vector<std::string> head_objects;
        for (std::size_t i = 0; i < hd.object_arity(); ++i) {
            head_objects.push_back(r.head.args[i].name);
        }
        c.head_kind = hd.kind;
        if (hd.is_limit()) {
            c.limit_head = true;
            c.head = intern_key(LimitKey{r.head.pred, std::move(head_objects)});
            c.objective = lia::Objective{hd.kind == PredKind::Max ? lia::Direction::Maximize : lia::Direction::Minimize,
                                         lia::linearize(r.head.args.back(), c.base)};
        } else {
            Fact f{r.head.pred, std::move(head_objects), std::nullopt};
            if (hd.is_numeric()) {
                f.value = ExtInt(r.head.args.back().evaluate());
            }
            c.head = intern_fact(f);
        }
        rules_.push_back(std::move(c));
    }
}

std::optional<std::size_t> CompiledProgram::fact_id(const Fact& f) const {
    auto it = fact_ids_.find(f);
    if (it == fact_ids_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::vector<std::size_t> CompiledProgram::read_keys(std::size_t rule) const {
    std::vector<std::size_t> out;
    for (const auto& lu : rules_[rule].limits) {
        out.push_back(lu.key);
    }
    return out;
}

bool CompiledProgram::satisfied(std::size_t rule, const Outcome& o, const State& s) const {
    if (!o.applicable) {
        return true;
    }
    const Compiled& c = rules_[rule];
    if (!c.limit_head) {
        return s.facts[c.head] != 0;
    }
    const auto& slot = s.limits[c.head];
    return slot && dominates(c.head_kind, *slot, o.value);
}

State CompiledProgram::empty_state() const {
    return State{std::vector<char>(facts_.size(), 0), std::vector<std::optional<ExtInt>>(keys_.size())};
}

State CompiledProgram::load(const PseudoInterpretation& j) const {
    State s = empty_state();
    for (const auto& f : j.facts()) {
        auto it = fact_ids_.find(f);
        if (it != fact_ids_.end()) {
            s.facts[it->second] = 1;
        }
    }
    for (const auto& [k, v] : j.limit_values()) {
        auto it = key_ids_.find(k);
        if (it != key_ids_.end()) {
            s.limits[it->second] = v;
        }
    }
    return s;
}

PseudoInterpretation CompiledProgram::to_interpretation(const State& s) const {
    PseudoInterpretation j(sig_);
    for (std::size_t i = 0; i < facts_.size(); ++i) {
        if (s.facts[i] != 0) {
            j.join(facts_[i]);
        }
    }
    for (std::size_t i = 0; i < keys_.size(); ++i) {
        if (s.limits[i]) {
            j.assign(keys_[i], *s.limits[i]);
        }
    }
    return j;
}

Outcome CompiledProgram::evaluate(std::size_t rule, const State& s) const {
    const Compiled& c = rules_[rule];
    for (std::size_t f : c.required_facts) {
        if (s.facts[f] == 0) {
            return {};
        }
    }
    for (const auto& lu : c.limits) {
        if (!s.limits[lu.key]) {
            return {};
        }
    }
    lia::LinearConstraintSystem sys = c.base;
    for (const auto& lu : c.limits) {
        const ExtInt& v = *s.limits[lu.key];
        if (v.is_infinite()) {
            continue;
        }
        lia::LinearExpr bound;
        bound.constant = v.value();
        sys.add(lu.kind == PredKind::Min ? lia::Constraint::make(bound, lia::Rel::LessEq, lu.arg)
                                         : lia::Constraint::make(lu.arg, lia::Rel::LessEq, bound));
    }
    if (!c.limit_head) {
        return Outcome{lia::check_feasible(sys).has_solution(), ExtInt()};
    }
    const lia::SolveOutcome res = lia::optimize(sys, c.objective);
    switch (res.kind) {
    case lia::SolveOutcome::Kind::Optimal: return Outcome{true, ExtInt(res.value)};
    case lia::SolveOutcome::Kind::Unbounded: return Outcome{true, ExtInt::infinity()};
    default: return {};
    }
}

void CompiledProgram::join_heads(const std::vector<Outcome>& outcomes, State& into) const {
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        if (!outcomes[i].applicable) {
            continue;
        }
        const Compiled& c = rules_[i];
        if (!c.limit_head) {
            into.facts[c.head] = 1;
            continue;
        }
        auto& slot = into.limits[c.head];
        if (!slot || !dominates(c.head_kind, *slot, outcomes[i].value)) {
            slot = outcomes[i].value;
        }
    }
}

ExtInt edge_delta(PredKind from, PredKind to, const ExtInt& opt, const ExtInt& ell) {
    if (opt.is_infinite()) {
        return opt;
    }
    if (ell.is_infinite()) {
        return opt;
    }
    const BigInt& o = opt.value();
    const BigInt& l = ell.value();
    if (from == PredKind::Max && to == PredKind::Max) {
        return ExtInt(BigInt(o - l));
    }
    if (from == PredKind::Max && to == PredKind::Min) {
        return ExtInt(BigInt(-o - l));
    }
    if (from == PredKind::Min && to == PredKind::Min) {
        return ExtInt(BigInt(-o + l));
    }
    return ExtInt(BigInt(o + l));
}

std::map<std::pair<std::size_t, std::size_t>, ExtInt> CompiledProgram::edges(const std::vector<Outcome>& outcomes,
                                                                             const State& s) const {
    std::map<std::pair<std::size_t, std::size_t>, ExtInt> out;
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        const Compiled& c = rules_[i];
        if (!outcomes[i].applicable || !c.limit_head || !s.limits[c.head]) {
            continue;
        }
        for (const auto& lu : c.limits) {
            if (!lu.feeds_head) {
                continue;
            }
            ExtInt d = edge_delta(lu.kind, c.head_kind, outcomes[i].value, *s.limits[lu.key]);
            auto [it, inserted] = out.emplace(std::make_pair(lu.key, c.head), d);
            if (!inserted && it->second < d) {
                it->second = d;
            }
        }
    }
    return out;
}

} // namespace limitdl::engine::detail
