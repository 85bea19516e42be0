// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <map>

#include "limitdl/frontend.hpp"

namespace limitdl::frontend {

namespace {

void collect_constants(const Term& t, ConstantPool& pool) {
    switch (t.kind) {
    case Term::Kind::ObjectConst: pool.objects.insert(t.name); break;
    case Term::Kind::Integer: pool.integers.insert(t.value); break;
    case Term::Kind::Compound:
        collect_constants(t.operands[0], pool);
        collect_constants(t.operands[1], pool);
        break;
    default: break;
    }
}

bool keeps_variables_symbolic(const PredicateDecl& d) { return d.is_limit() || d.kind == PredKind::Integers; }

Term instantiate(const Term& t, const std::map<std::string, Term>& sub) {
    if (t.is_variable()) {
        auto it = sub.find(t.name);
        return it == sub.end() ? t : it->second;
    }
    if (t.kind == Term::Kind::Compound) {
        Term l = instantiate(t.operands[0], sub);
        Term r = instantiate(t.operands[1], sub);
        Term out = Term::compound(t.op, std::move(l), std::move(r));
        if (out.operands[0].kind == Term::Kind::Integer && out.operands[1].kind == Term::Kind::Integer) {
            return Term::integer(out.evaluate());
        }
        return out;
    }
    return t;
}

} // namespace

ConstantPool constants_of(const Program& p, std::span<const Fact> extra) {
    ConstantPool pool;
    for (const auto& r : p.rules) {
        for (const auto& t : r.head.args) {
            collect_constants(t, pool);
        }
        for (const auto& a : r.body) {
            for (const auto& t : a.args) {
                collect_constants(t, pool);
            }
        }
        for (const auto& c : r.comparisons) {
            collect_constants(c.lhs, pool);
            collect_constants(c.rhs, pool);
        }
    }
    for (const auto& f : extra) {
        pool.objects.insert(f.objects.begin(), f.objects.end());
        if (f.value && f.value->is_finite()) {
            pool.integers.insert(f.value->value());
        }
    }
    return pool;
}

std::vector<std::string> limit_variables(const Rule& r, const Signature& sig) {
    std::vector<std::string> out;
    for (const auto& a : r.body) {
        const auto* d = sig.find(a.pred);
        if (d != nullptr && keeps_variables_symbolic(*d) && !a.args.empty()) {
            a.args.back().collect_variables(out);
        }
    }
    return out;
}

bool is_semi_ground(const Rule& r, const Signature& sig) {
    const auto keep = limit_variables(r, sig);
    return std::ranges::all_of(r.variables(),
                               [&](const std::string& v) { return std::ranges::find(keep, v) != keep.end(); });
}

SemiGroundProgram semi_ground(const Program& p, std::span<const Fact> extra) {
    SemiGroundProgram out;
    out.program.signature = p.signature;
    const ConstantPool pool = constants_of(p, extra);
    const std::vector<Term> objects = [&] {
        std::vector<Term> v;
        for (const auto& o : pool.objects) {
            v.push_back(Term::object(o));
        }
        return v;
    }();
    const std::vector<Term> integers = [&] {
        std::vector<Term> v;
        for (const auto& k : pool.integers) {
            v.push_back(Term::integer(k));
        }
        return v;
    }();

    for (std::size_t index = 0; index < p.rules.size(); ++index) {
        const Rule& r = p.rules[index];
        const auto keep = limit_variables(r, p.signature);
        std::vector<std::pair<std::string, const std::vector<Term>*>> ground;
        std::vector<std::string> all;
        for (const auto& a : r.body) {
            for (const auto& t : a.args) {
                if (t.kind == Term::Kind::ObjectVar && std::ranges::find(all, t.name) == all.end()) {
                    all.push_back(t.name);
                    ground.emplace_back(t.name, &objects);
                }
            }
        }
        for (const auto& v : r.variables()) {
            if (std::ranges::find(all, v) == all.end() && std::ranges::find(keep, v) == keep.end()) {
                all.push_back(v);
                ground.emplace_back(v, &integers);
            }
        }
        if (std::ranges::any_of(ground, [](const auto& g) { return g.second->empty(); })) {
            out.diagnostics.push_back(Diagnostic{
                Severity::Warning, r.loc, "empty-instantiation",
                "rule " + to_string(r) + " has no instances: the program has no constants of the sort of one of its variables"});
            continue;
        }
        std::vector<std::size_t> digits(ground.size(), 0);
        std::map<std::string, Term> sub;
        while (true) {
            for (std::size_t i = 0; i < ground.size(); ++i) {
                sub.insert_or_assign(ground[i].first, (*ground[i].second)[digits[i]]);
            }
            Rule inst;
            inst.loc = r.loc;
            inst.head.pred = r.head.pred;
            for (const auto& t : r.head.args) {
                inst.head.args.push_back(instantiate(t, sub));
            }
            for (const auto& a : r.body) {
                Atom b{a.pred, {}};
                for (const auto& t : a.args) {
                    b.args.push_back(instantiate(t, sub));
                }
                inst.body.push_back(std::move(b));
            }
            for (const auto& c : r.comparisons) {
                inst.comparisons.push_back(Comparison{c.op, instantiate(c.lhs, sub), instantiate(c.rhs, sub)});
            }
            out.program.rules.push_back(std::move(inst));
            out.origin.push_back(index);

            std::size_t i = 0;
            while (i < ground.size()) {
                if (++digits[i] < ground[i].second->size()) {
                    break;
                }
                digits[i] = 0;
                ++i;
            }
            if (i == ground.size()) {
                break;
            }
        }
    }
    return out;
}

} // namespace limitdl::frontend
