// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include <map>
#include <set>

#include "limitdl/frontend.hpp"

namespace limitdl::frontend {

namespace {

Term substitute(const Term& t, const std::string& var, const Term& by) {
    if (t.is_variable() && t.name == var) {
        return by;
    }
    if (t.kind == Term::Kind::Compound) {
        return Term::compound(t.op, substitute(t.operands[0], var, by), substitute(t.operands[1], var, by));
    }
    return t;
}

void substitute(Rule& r, const std::string& var, const Term& by) {
    for (auto& t : r.head.args) {
        t = substitute(t, var, by);
    }
    for (auto& a : r.body) {
        for (auto& t : a.args) {
            t = substitute(t, var, by);
        }
    }
    for (auto& c : r.comparisons) {
        c.lhs = substitute(c.lhs, var, by);
        c.rhs = substitute(c.rhs, var, by);
    }
}

} // namespace

std::pair<Program, Fact> homogenise(const Program& p, const Fact& query, HomogeneousKind target) {
    const PredKind keep = target == HomogeneousKind::Max ? PredKind::Max : PredKind::Min;
    const PredKind flip = target == HomogeneousKind::Max ? PredKind::Min : PredKind::Max;

    std::map<std::string, std::string> renamed;
    Program out;
    for (const auto& [name, d] : p.signature.decls()) {
        if (d.kind != flip) {
            continue;
        }
        std::string fresh = name + "'";
        while (p.signature.contains(fresh) || out.signature.contains(fresh)) {
            fresh += "'";
        }
        PredicateDecl nd = d;
        nd.name = fresh;
        nd.kind = keep;
        out.signature.declare(std::move(nd));
        renamed.emplace(name, fresh);
    }
    for (const auto& [name, d] : p.signature.decls()) {
        if (!renamed.contains(name)) {
            out.signature.declare(d);
        }
    }

    std::set<std::string> taken;
    for (const auto& r : p.rules) {
        for (auto& v : r.variables()) {
            taken.insert(std::move(v));
        }
    }
    std::size_t counter = 0;
    auto fresh_var = [&] {
        std::string name;
        do {
            name = "_H" + std::to_string(counter++);
        } while (taken.contains(name));
        taken.insert(name);
        return name;
    };

    for (const auto& in : p.rules) {
        Rule r = in;
        for (std::size_t i = 0; i < r.body.size(); ++i) {
            auto it = renamed.find(r.body[i].pred);
            if (it == renamed.end()) {
                continue;
            }
            Term& s = r.body[i].args.back();
            if (s.kind == Term::Kind::NumericVar) {
                const std::string n = s.name;
                Term m = Term::numeric_var(fresh_var());
                s = m;
                substitute(r, n, Term::negate(m));
            } else {
                s = Term::negate(s);
            }
            r.body[i].pred = it->second;
        }
        if (auto it = renamed.find(r.head.pred); it != renamed.end()) {
            r.head.pred = it->second;
            r.head.args.back() = Term::negate(r.head.args.back());
        }
        out.rules.push_back(std::move(r));
    }

    Fact q = query;
    if (auto it = renamed.find(q.pred); it != renamed.end()) {
        q.pred = it->second;
        if (q.value && q.value->is_finite()) {
            q.value = ExtInt(BigInt(-q.value->value()));
        }
    }
    return {std::move(out), std::move(q)};
}

} // namespace limitdl::frontend
