// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <sstream>

#include "limitdl/core.hpp"

namespace limitdl {

const char* to_string(PredKind k) noexcept {
    switch (k) {
    case PredKind::Object: return "object";
    case PredKind::Ordinary: return "ordinary";
    case PredKind::Min: return "min";
    case PredKind::Max: return "max";
    case PredKind::Integers: return "integers";
    }
    return "?";
}

bool PredicateDecl::well_shaped() const noexcept {
    if (kind == PredKind::Object) {
        return std::ranges::none_of(sorts, [](Sort s) { return s == Sort::Numeric; });
    }
    if (sorts.empty() || sorts.back() != Sort::Numeric) {
        return false;
    }
    return std::none_of(sorts.begin(), sorts.end() - 1, [](Sort s) { return s == Sort::Numeric; });
}

PredicateDecl PredicateDecl::integers() {
    return PredicateDecl{kIntegersPredicate, {Sort::Numeric}, PredKind::Integers, {}};
}

bool operator==(const PredicateDecl& a, const PredicateDecl& b) {
    return a.name == b.name && a.sorts == b.sorts && a.kind == b.kind;
}

void Signature::declare(PredicateDecl decl) {
    if (decls_.contains(decl.name)) {
        throw InputError("predicate '" + decl.name + "' declared more than once", decl.loc);
    }
    auto name = decl.name;
    decls_.emplace(std::move(name), std::move(decl));
}

const PredicateDecl* Signature::find(const std::string& name) const {
    auto it = decls_.find(name);
    return it == decls_.end() ? nullptr : &it->second;
}

const PredicateDecl& Signature::at(const std::string& name) const {
    if (const auto* d = find(name)) {
        return *d;
    }
    throw InputError("undeclared predicate '" + name + "'");
}

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------
Term Term::object(std::string name) {
    Term t;
    t.kind = Kind::ObjectConst;
    t.name = std::move(name);
    return t;
}

Term Term::object_var(std::string name) {
    Term t;
    t.kind = Kind::ObjectVar;
    t.name = std::move(name);
    return t;
}

Term Term::integer(BigInt v) {
    Term t;
    t.kind = Kind::Integer;
    t.value = std::move(v);
    return t;
}

Term Term::numeric_var(std::string name) {
    Term t;
    t.kind = Kind::NumericVar;
    t.name = std::move(name);
    return t;
}

Term Term::compound(ArithOp op, Term lhs, Term rhs) {
    Term t;
    t.kind = Kind::Compound;
    t.op = op;
    t.operands.reserve(2);
    t.operands.push_back(std::move(lhs));
    t.operands.push_back(std::move(rhs));
    return t;
}

Term Term::negate(Term t) {
    if (t.kind == Kind::Integer) {
        t.value = -t.value;
        return t;
    }
    return compound(ArithOp::Sub, integer(0), std::move(t));
}

bool Term::is_ground() const {
    switch (kind) {
    case Kind::ObjectVar:
    case Kind::NumericVar: return false;
    case Kind::Compound: return operands[0].is_ground() && operands[1].is_ground();
    default: return true;
    }
}

BigInt Term::evaluate() const {
    switch (kind) {
    case Kind::Integer: return value;
    case Kind::Compound: {
        BigInt l = operands[0].evaluate();
        BigInt r = operands[1].evaluate();
        switch (op) {
        case ArithOp::Add: return l + r;
        case ArithOp::Sub: return l - r;
        case ArithOp::Mul: return l * r;
        }
        break;
    }
    default: break;
    }
    throw ContractViolation("cannot evaluate non-ground or non-numeric term " + to_string(*this));
}

void Term::collect_variables(std::vector<std::string>& out) const {
    if (is_variable()) {
        if (std::ranges::find(out, name) == out.end()) {
            out.push_back(name);
        }
    } else if (kind == Kind::Compound) {
        operands[0].collect_variables(out);
        operands[1].collect_variables(out);
    }
}

bool Term::mentions(const std::string& var) const {
    if (is_variable()) {
        return name == var;
    }
    if (kind == Kind::Compound) {
        return operands[0].mentions(var) || operands[1].mentions(var);
    }
    return false;
}

bool operator==(const Term& a, const Term& b) {
    if (a.kind != b.kind) {
        return false;
    }
    switch (a.kind) {
    case Term::Kind::Integer: return cmp(a.value, b.value) == 0;
    case Term::Kind::Compound: return a.op == b.op && a.operands == b.operands;
    default: return a.name == b.name;
    }
}

std::vector<std::string> Rule::variables() const {
    std::vector<std::string> out;
    for (const auto& a : body) {
        for (const auto& t : a.args) {
            t.collect_variables(out);
        }
    }
    for (const auto& c : comparisons) {
        c.lhs.collect_variables(out);
        c.rhs.collect_variables(out);
    }
    for (const auto& t : head.args) {
        t.collect_variables(out);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------
namespace {

const char* op_symbol(ArithOp op) {
    switch (op) {
    case ArithOp::Add: return " + ";
    case ArithOp::Sub: return " - ";
    case ArithOp::Mul: return " * ";
    }
    return " ? ";
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i != 0) {
            out += sep;
        }
        out += parts[i];
    }
    return out;
}

} // namespace

std::string to_string(const Term& t) {
    switch (t.kind) {
    case Term::Kind::Integer: return t.value.get_str();
    case Term::Kind::Compound:
        return "(" + to_string(t.operands[0]) + op_symbol(t.op) + to_string(t.operands[1]) + ")";
    default: return t.name;
    }
}

std::string to_string(const Atom& a) {
    if (a.args.empty()) {
        return a.pred;
    }
    std::vector<std::string> parts;
    parts.reserve(a.args.size());
    for (const auto& t : a.args) {
        parts.push_back(to_string(t));
    }
    return a.pred + "(" + join(parts, ", ") + ")";
}

std::string to_string(const Comparison& c) {
    return "(" + to_string(c.lhs) + (c.op == CmpOp::Less ? " < " : " <= ") + to_string(c.rhs) + ")";
}

std::string to_string(const Rule& r) {
    std::string out = to_string(r.head);
    if (!r.is_fact()) {
        std::vector<std::string> parts;
        for (const auto& a : r.body) {
            parts.push_back(to_string(a));
        }
        for (const auto& c : r.comparisons) {
            parts.push_back(to_string(c));
        }
        out += " :- " + join(parts, ", ");
    }
    return out + ".";
}

std::string to_string(const PredicateDecl& d) {
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < d.sorts.size(); ++i) {
        if (d.sorts[i] == Sort::Object) {
            parts.emplace_back("obj");
        } else if (i + 1 == d.sorts.size() && d.kind == PredKind::Min) {
            parts.emplace_back("min int");
        } else if (i + 1 == d.sorts.size() && d.kind == PredKind::Max) {
            parts.emplace_back("max int");
        } else {
            parts.emplace_back("int");
        }
    }
    return "pred " + d.name + "(" + join(parts, ", ") + ").";
}

std::string to_string(const Program& p) {
    std::ostringstream out;
    for (const auto& [name, decl] : p.signature.decls()) {
        if (decl.kind != PredKind::Integers) {
            out << to_string(decl) << "\n";
        }
    }
    for (const auto& r : p.rules) {
        out << to_string(r) << "\n";
    }
    return out.str();
}

std::string to_string(const Fact& f) {
    std::vector<std::string> parts = f.objects;
    if (f.value) {
        parts.push_back(f.value->to_string());
    }
    if (parts.empty()) {
        return f.pred;
    }
    return f.pred + "(" + join(parts, ", ") + ")";
}

std::string to_string(const LimitKey& k) {
    if (k.objects.empty()) {
        return k.pred;
    }
    return k.pred + "(" + join(k.objects, ", ") + ")";
}

std::string to_string(const PseudoInterpretation& j) {
    std::vector<std::string> parts;
    for (const auto& f : j.all_facts()) {
        parts.push_back(to_string(f));
    }
    return "{" + join(parts, ", ") + "}";
}

} // namespace limitdl
