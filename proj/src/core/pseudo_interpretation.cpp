// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include "limitdl/core.hpp"

namespace limitdl {

void check_fact(const Signature& sig, const Fact& f) {
    const auto* decl = sig.find(f.pred);
    if (decl == nullptr) {
        throw InputError("undeclared predicate '" + f.pred + "' in fact " + to_string(f));
    }
    if (f.objects.size() != decl->object_arity()) {
        throw InputError("fact " + to_string(f) + " has the wrong number of object arguments for " + f.pred);
    }
    if (decl->is_numeric() != f.value.has_value()) {
        throw InputError("fact " + to_string(f) + (decl->is_numeric() ? " is missing its numeric argument"
                                                                        : " has a numeric argument"));
    }
    if (f.value && f.value->is_infinite() && !decl->is_limit()) {
        throw InputError("'inf' is only allowed as the value of a limit predicate: " + to_string(f));
    }
}

bool dominates(PredKind kind, const ExtInt& a, const ExtInt& b) {
    if (a.is_infinite()) {
        return true;
    }
    if (b.is_infinite()) {
        return false;
    }
    return kind == PredKind::Max ? b <= a : a <= b;
}

PseudoInterpretation::PseudoInterpretation(std::shared_ptr<const Signature> sig) : sig_(std::move(sig)) {
    if (!sig_) {
        throw ContractViolation("pseudo-interpretation needs a signature");
    }
}

std::optional<ExtInt> PseudoInterpretation::limit_value(const LimitKey& key) const {
    auto it = limits_.find(key);
    if (it == limits_.end()) {
        return std::nullopt;
    }
    return it->second;
}

bool PseudoInterpretation::join(const Fact& f) {
    check_fact(*sig_, f);
    const auto& decl = sig_->at(f.pred);
    if (decl.kind == PredKind::Integers) {
        return false;
    }
    if (!decl.is_limit()) {
        return facts_.insert(f).second;
    }
    LimitKey key{f.pred, f.objects};
    auto it = limits_.find(key);
    if (it == limits_.end()) {
        limits_.emplace(std::move(key), *f.value);
        return true;
    }
    if (dominates(decl.kind, it->second, *f.value)) {
        return false;
    }
    it->second = *f.value;
    return true;
}

void PseudoInterpretation::assign(const LimitKey& key, ExtInt value) { limits_[key] = std::move(value); }

std::vector<Fact> PseudoInterpretation::all_facts() const {
    std::vector<Fact> out(facts_.begin(), facts_.end());
    for (const auto& [key, value] : limits_) {
        out.push_back(Fact{key.pred, key.objects, value});
    }
    std::ranges::sort(out);
    return out;
}

bool satisfies(const PseudoInterpretation& j, const Fact& alpha) {
    const auto& sig = j.signature();
    check_fact(sig, alpha);
    const auto& decl = sig.at(alpha.pred);
    if (decl.kind == PredKind::Integers) {
        return alpha.value->is_finite();
    }
    if (!decl.is_limit()) {
        return j.facts().contains(alpha);
    }
    auto v = j.limit_value(LimitKey{alpha.pred, alpha.objects});
    return v && dominates(decl.kind, *v, *alpha.value);
}

bool preceq(const PseudoInterpretation& j, const PseudoInterpretation& jp) {
    for (const auto& f : j.facts()) {
        if (!jp.facts().contains(f)) {
            return false;
        }
    }
    for (const auto& [key, value] : j.limit_values()) {
        auto other = jp.limit_value(key);
        if (!other) {
            return false;
        }
        const auto* decl = jp.signature().find(key.pred);
        if (decl == nullptr) {
            decl = &j.signature().at(key.pred);
        }
        if (!dominates(decl->kind, *other, value)) {
            return false;
        }
    }
    return true;
}

PseudoInterpretation join_fact(PseudoInterpretation j, const Fact& f) {
    j.join(f);
    return j;
}

} // namespace limitdl
