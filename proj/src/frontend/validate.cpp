// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include "limitdl/frontend.hpp"

namespace limitdl::frontend {

namespace {

bool sort_matches(const Term& t, Sort s) {
    if (s == Sort::Object) {
        return t.kind == Term::Kind::ObjectConst || t.kind == Term::Kind::ObjectVar;
    }
    if (t.kind == Term::Kind::Compound) {
        return sort_matches(t.operands[0], Sort::Numeric) && sort_matches(t.operands[1], Sort::Numeric);
    }
    return t.kind == Term::Kind::Integer || t.kind == Term::Kind::NumericVar;
}

} // namespace

std::vector<Diagnostic> validate(const Program& p) {
    std::vector<Diagnostic> out;
    auto error = [&](SourceLoc loc, const char* code, std::string msg) {
        out.push_back(Diagnostic{Severity::Error, loc, code, std::move(msg)});
    };
    for (const auto& [name, d] : p.signature.decls()) {
        if (d.kind == PredKind::Integers) {
            continue;
        }
        if (!d.well_shaped()) {
            error(d.loc, "predicate-shape",
                  d.kind == PredKind::Object
                      ? "predicate '" + name + "' has a numeric position but no numeric kind"
                      : "predicate '" + name + "' must have exactly one numeric position, and it must be the last");
        }
    }
    for (const auto& r : p.rules) {
        const auto* hd = p.signature.find(r.head.pred);
        bool known = hd != nullptr;
        auto check_atom = [&](const Atom& a) {
            const auto* d = p.signature.find(a.pred);
            if (d == nullptr) {
                error(r.loc, "undeclared", "undeclared predicate '" + a.pred + "'");
                known = false;
                return;
            }
            if (a.args.size() != d->arity()) {
                error(r.loc, "arity", "atom " + to_string(a) + " does not match the arity of " + a.pred);
                return;
            }
            for (std::size_t i = 0; i < a.args.size(); ++i) {
                if (!sort_matches(a.args[i], d->sorts[i])) {
                    error(r.loc, "sort", "argument " + std::to_string(i + 1) + " of " + to_string(a) + " has the wrong sort");
                }
            }
        };
        check_atom(r.head);
        for (const auto& a : r.body) {
            check_atom(a);
        }
        std::vector<std::string> bound;
        for (const auto& a : r.body) {
            for (const auto& t : a.args) {
                t.collect_variables(bound);
            }
        }
        for (const auto& v : r.variables()) {
            if (std::ranges::find(bound, v) == bound.end()) {
                error(r.loc, "unsafe-variable", "unsafe variable " + v + " in rule " + to_string(r));
            }
        }
        if (!known) {
            continue;
        }
        if (hd->kind == PredKind::Integers) {
            error(r.loc, "builtin-head", "the built-in predicate " + r.head.pred + " cannot head a rule");
        } else if (!r.is_fact() && hd->kind == PredKind::Ordinary) {
            error(r.loc, "numeric-head",
                  "rule with a nonempty body has ordinary numeric head " + to_string(r.head) +
                      "; heads of such rules must be object or limit atoms");
        }
    }
    return out;
}

} // namespace limitdl::frontend
