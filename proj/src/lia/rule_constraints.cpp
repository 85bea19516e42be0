// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include "limitdl/frontend.hpp"
#include "limitdl/lia.hpp"

namespace limitdl::lia {

LinearExpr linearize(const Term& t, LinearConstraintSystem& c) {
    switch (t.kind) {
    case Term::Kind::Integer: {
        LinearExpr e;
        e.constant = t.value;
        return e;
    }
    case Term::Kind::NumericVar: {
        auto idx = c.index_of(t.name);
        LinearExpr e;
        e.coeffs.emplace(idx ? *idx : c.add_var(t.name), 1);
        return e;
    }
    case Term::Kind::Compound: {
        LinearExpr l = linearize(t.operands[0], c);
        LinearExpr r = linearize(t.operands[1], c);
        switch (t.op) {
        case ArithOp::Add: l += r; return l;
        case ArithOp::Sub: l -= r; return l;
        case ArithOp::Mul:
            if (l.is_constant()) {
                r *= l.constant;
                return r;
            }
            if (r.is_constant()) {
                l *= r.constant;
                return l;
            }
            throw ContractViolation("term " + to_string(t) + " is not linear");
        }
        break;
    }
    default: break;
    }
    throw ContractViolation("term " + to_string(t) + " is not numeric");
}

LinearConstraintSystem build_constraint_system(const Rule& r, const PseudoInterpretation& j) {
    const Signature& sig = j.signature();
    if (!frontend::is_semi_ground(r, sig)) {
        throw ContractViolation("rule " + to_string(r) + " is not semi-ground");
    }
    LinearConstraintSystem c;
    for (const auto& v : r.variables()) {
        c.add_var(v);
    }
    for (const auto& cmp : r.comparisons) {
        c.add(Constraint::make(linearize(cmp.lhs, c), cmp.op == CmpOp::Less ? Rel::Less : Rel::LessEq,
                               linearize(cmp.rhs, c)));
    }
    bool missing = false;
    for (const auto& a : r.body) {
        const auto& d = sig.at(a.pred);
        if (d.kind == PredKind::Integers) {
            continue;
        }
        Fact f{a.pred, {}, std::nullopt};
        for (std::size_t i = 0; i < d.object_arity(); ++i) {
            f.objects.push_back(a.args[i].name);
        }
        if (!d.is_limit()) {
            if (d.is_numeric()) {
                f.value = ExtInt(a.args.back().evaluate());
            }
            missing = missing || !satisfies(j, f);
            continue;
        }
        auto value = j.limit_value(LimitKey{a.pred, f.objects});
        if (!value) {
            missing = true;
            continue;
        }
        if (value->is_infinite()) {
            continue;
        }
        LinearExpr bound;
        bound.constant = value->value();
        const LinearExpr s = linearize(a.args.back(), c);
        if (d.kind == PredKind::Min) {
            c.add(Constraint::make(bound, Rel::LessEq, s));
        } else {
            c.add(Constraint::make(s, Rel::LessEq, bound));
        }
    }
    if (missing) {
        c.add_false();
    }
    return c;
}

std::optional<Objective> head_objective(const Rule& r, const Signature& sig, LinearConstraintSystem& c) {
    const auto& d = sig.at(r.head.pred);
    if (!d.is_limit()) {
        return std::nullopt;
    }
    return Objective{d.kind == PredKind::Max ? Direction::Maximize : Direction::Minimize,
                     linearize(r.head.args.back(), c)};
}

std::optional<ExtInt> rule_optimum(const Rule& r, const PseudoInterpretation& j) {
    LinearConstraintSystem c = build_constraint_system(r, j);
    auto obj = head_objective(r, j.signature(), c);
    if (!obj) {
        throw ContractViolation("rule_optimum needs a limit head: " + to_string(r));
    }
    const SolveOutcome out = optimize(c, *obj);
    switch (out.kind) {
    case SolveOutcome::Kind::Unbounded: return ExtInt::infinity();
    case SolveOutcome::Kind::Optimal: return ExtInt(out.value);
    default: return std::nullopt;
    }
}

} // namespace limitdl::lia
