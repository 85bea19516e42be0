// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include "limitdl/analysis.hpp"
#include "limitdl/frontend.hpp"

namespace limitdl::analysis {

const char* to_string(PredicateRole r) noexcept {
    switch (r) {
    case PredicateRole::Extensional: return "EDB";
    case PredicateRole::Intensional: return "IDB";
    case PredicateRole::Builtin: return "built-in";
    }
    return "?";
}

std::map<std::string, PredicateRole> classify_predicates(const Program& p) {
    std::map<std::string, PredicateRole> out;
    for (const auto& [name, d] : p.signature.decls()) {
        out.emplace(name, d.kind == PredKind::Integers ? PredicateRole::Builtin : PredicateRole::Extensional);
    }
    for (const auto& r : p.rules) {
        if (!r.is_fact()) {
            auto it = out.find(r.head.pred);
            if (it != out.end() && it->second != PredicateRole::Builtin) {
                it->second = PredicateRole::Intensional;
            }
        }
    }
    return out;
}

namespace {

const Program& normal_form(const Program& p, Program& storage) {
    if (frontend::is_normalized(p)) {
        return p;
    }
    storage = frontend::normalize(p);
    return storage;
}

struct NumericTerm {
    const Term* term;
    enum class Place { Head, BodyAtom, CmpLeft, CmpRight } place;
    const Comparison* comparison = nullptr;
};

std::vector<NumericTerm> numeric_terms(const Rule& r, const Signature& sig) {
    std::vector<NumericTerm> out;
    const auto& hd = sig.at(r.head.pred);
    if (hd.is_numeric() && !r.head.args.empty()) {
        out.push_back({&r.head.args.back(), NumericTerm::Place::Head});
    }
    for (const auto& a : r.body) {
        if (sig.at(a.pred).is_numeric() && !a.args.empty()) {
            out.push_back({&a.args.back(), NumericTerm::Place::BodyAtom});
        }
    }
    for (const auto& c : r.comparisons) {
        out.push_back({&c.lhs, NumericTerm::Place::CmpLeft, &c});
        out.push_back({&c.rhs, NumericTerm::Place::CmpRight, &c});
    }
    return out;
}

std::set<std::string> limit_var_set(const Rule& r, const Signature& sig) {
    auto v = frontend::limit_variables(r, sig);
    return {v.begin(), v.end()};
}

const char* kind_name(PredKind k) { return k == PredKind::Min ? "min" : k == PredKind::Max ? "max" : "built-in"; }

} // namespace

std::vector<Diagnostic> check_limit_linear(const Program& input) {
    Program storage;
    const Program& p = normal_form(input, storage);
    std::vector<Diagnostic> out;
    for (const auto& r : p.rules) {
        const auto lvars = limit_var_set(r, p.signature);
        for (const auto& nt : numeric_terms(r, p.signature)) {
            const Polynomial poly = Polynomial::from_term(*nt.term);
            std::map<std::string, int> monomials_with;
            for (const auto& [m, k] : poly.terms()) {
                if (Polynomial::degree_in(m, lvars) > 1) {
                    out.push_back(Diagnostic{Severity::Error, r.loc, "not-limit-linear",
                                             "term " + to_string(*nt.term) + " in rule " + to_string(r) +
                                                 " multiplies variables that occur in limit body atoms"});
                }
                for (const auto& [v, e] : m) {
                    if (lvars.contains(v)) {
                        ++monomials_with[v];
                    }
                }
            }
            for (const auto& [v, n] : monomials_with) {
                if (n > 1) {
                    out.push_back(Diagnostic{Severity::Error, r.loc, "not-limit-linear",
                                             "in term " + to_string(*nt.term) + " of rule " + to_string(r) +
                                                 ", the coefficient of " + v + " is not a product of integers and "
                                                 "variables outside limit body atoms"});
                }
            }
        }
    }
    return out;
}

std::vector<TypeViolation> check_type_consistent(const Program& input, std::span<const Fact> extra) {
    Program storage;
    const Program& p = normal_form(input, storage);
    const IntegerPool pool = frontend::constants_of(input, extra).integers;
    std::vector<TypeViolation> out;
    for (std::size_t index = 0; index < p.rules.size(); ++index) {
        const Rule& r = p.rules[index];
        std::map<std::string, PredKind> kind_of;
        std::map<std::string, const Atom*> atom_of;
        for (const auto& a : r.body) {
            const auto& d = p.signature.at(a.pred);
            if (!(d.is_limit() || d.kind == PredKind::Integers) || a.args.empty()) {
                continue;
            }
            std::vector<std::string> vs;
            a.args.back().collect_variables(vs);
            for (const auto& v : vs) {
                if (kind_of.contains(v)) {
                    out.push_back(TypeViolation{index, Bullet::Shape, to_string(a), v, {},
                                                Diagnostic{Severity::Error, r.loc, "not-normalized",
                                                           "variable " + v + " occurs in more than one limit body atom of " +
                                                               to_string(r)}});
                }
                kind_of[v] = d.kind;
                atom_of[v] = &a;
            }
        }
        const auto& hd = p.signature.at(r.head.pred);
        for (const auto& nt : numeric_terms(r, p.signature)) {
            const Polynomial poly = Polynomial::from_term(*nt.term);
            for (const auto& [v, kind] : kind_of) {
                if (!nt.term->mentions(v)) {
                    continue;
                }
                SignSet signs;
                bool found = false;
                for (const auto& [m, k] : poly.terms()) {
                    auto it = m.find(v);
                    if (it == m.end()) {
                        continue;
                    }
                    Monomial rest = m;
                    rest.erase(v);
                    found = true;
                    signs = sign_possibilities(k, rest, pool);
                    break;
                }
                if (!found) {
                    signs.zero = true;
                }
                if (signs.empty()) {
                    continue; // no instances of this rule exist
                }
                const std::string term = to_string(*nt.term);
                auto violation = [&](Bullet b, const char* code, const std::string& msg) {
                    out.push_back(TypeViolation{index, b, term, v, signs,
                                                Diagnostic{Severity::Error, r.loc, code, msg + " in rule " + to_string(r)}});
                };
                if (signs.zero) {
                    violation(Bullet::Coefficient, "zero-coefficient",
                              "the coefficient of " + v + " in " + term + " can be zero after instantiation (possible signs " +
                                  signs.to_string() + ")");
                }
                if (kind == PredKind::Integers) {
                    continue;
                }
                const std::string where = "atom " + to_string(*atom_of[v]) + " is " + kind_name(kind);
                if (nt.place == NumericTerm::Place::Head && hd.is_limit()) {
                    if (signs.positive && kind != hd.kind) {
                        violation(Bullet::HeadPolarity, "head-polarity",
                                  v + " has a positive coefficient in head term " + term + " of a " + kind_name(hd.kind) +
                                      " head, but its body " + where);
                    }
                    if (signs.negative && kind == hd.kind) {
                        violation(Bullet::HeadPolarity, "head-polarity",
                                  v + " has a negative coefficient in head term " + term + " of a " + kind_name(hd.kind) +
                                      " head, and its body " + where + " too");
                    }
                }
                if (nt.place == NumericTerm::Place::CmpLeft || nt.place == NumericTerm::Place::CmpRight) {
                    const bool left = nt.place == NumericTerm::Place::CmpLeft;
                    const std::string cmp = to_string(*nt.comparison);
                    // left side: positive needs min, negative needs max; right side: the reverse
                    const PredKind pos_needs = left ? PredKind::Min : PredKind::Max;
                    const PredKind neg_needs = left ? PredKind::Max : PredKind::Min;
                    const char* side = left ? "left" : "right";
                    if (signs.positive && kind != pos_needs) {
                        violation(Bullet::ComparisonPolarity, "comparison-polarity",
                                  v + " occurs with a positive coefficient on the " + side + " of comparison " + cmp +
                                      " but its body " + where + "; it must be " + kind_name(pos_needs));
                    }
                    if (signs.negative && kind != neg_needs) {
                        violation(Bullet::ComparisonPolarity, "comparison-polarity",
                                  v + " occurs with a negative coefficient on the " + side + " of comparison " + cmp +
                                      " but its body " + where + "; it must be " + kind_name(neg_needs));
                    }
                }
            }
        }
    }
    return out;
}

std::vector<Diagnostic> AnalysisReport::diagnostics() const {
    std::vector<Diagnostic> out = limit_linear;
    for (const auto& v : type_consistent) {
        out.push_back(v.diagnostic);
    }
    return out;
}

AnalysisReport analyze(const Program& p, std::span<const Fact> extra) {
    AnalysisReport report;
    report.roles = classify_predicates(p);
    report.limit_linear = check_limit_linear(p);
    if (report.limit_linear.empty()) {
        report.type_consistent = check_type_consistent(p, extra);
    }
    return report;
}

} // namespace limitdl::analysis
