// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <map>
#include <set>

#include "limitdl/frontend.hpp"

namespace limitdl::frontend {

namespace {

Term fold_ground(const Term& t) {
    if (t.kind != Term::Kind::Compound) {
        return t;
    }
    if (t.is_ground()) {
        return Term::integer(t.evaluate());
    }
    return Term::compound(t.op, fold_ground(t.operands[0]), fold_ground(t.operands[1]));
}

Term rename(const Term& t, const std::map<std::string, std::string>& names) {
    if (t.is_variable()) {
        auto it = names.find(t.name);
        if (it == names.end()) {
            return t;
        }
        Term out = t;
        out.name = it->second;
        return out;
    }
    if (t.kind == Term::Kind::Compound) {
        return Term::compound(t.op, rename(t.operands[0], names), rename(t.operands[1], names));
    }
    return t;
}

Rule rename(const Rule& r, const std::map<std::string, std::string>& names) {
    Rule out = r;
    for (auto& t : out.head.args) {
        t = rename(t, names);
    }
    for (auto& a : out.body) {
        for (auto& t : a.args) {
            t = rename(t, names);
        }
    }
    for (auto& c : out.comparisons) {
        c.lhs = rename(c.lhs, names);
        c.rhs = rename(c.rhs, names);
    }
    return out;
}

class FreshNames {
  public:
    explicit FreshNames(std::set<std::string> taken) : taken_(std::move(taken)) {}

    std::string make(const std::string& base) {
        std::string name = base;
        for (std::size_t k = 1; taken_.contains(name); ++k) {
            name = base + "_" + std::to_string(k);
        }
        taken_.insert(name);
        return name;
    }

    void take(const std::string& name) { taken_.insert(name); }

  private:
    std::set<std::string> taken_;
};

bool numeric_slot(const Program& p, const Atom& a, std::size_t i) {
    const auto& d = p.signature.at(a.pred);
    return d.is_numeric() && i + 1 == d.arity();
}

Rule normalize_rule(const Program& p, const Rule& in, std::size_t index, FreshNames& fresh) {
    Rule r = in;
    for (auto& t : r.head.args) {
        t = fold_ground(t);
    }
    for (auto& a : r.body) {
        for (auto& t : a.args) {
            t = fold_ground(t);
        }
    }
    const std::string prefix = "_M" + std::to_string(index);

    // Arithmetic inside body atoms becomes a fresh variable pinned by two comparisons.
    std::vector<std::string> compound_vars;
    std::vector<Comparison> extra;
    for (auto& a : r.body) {
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            if (a.args[i].kind != Term::Kind::Compound || !numeric_slot(p, a, i)) {
                continue;
            }
            Term m = Term::numeric_var(fresh.make(prefix));
            a.args[i].collect_variables(compound_vars);
            extra.push_back(Comparison{CmpOp::LessEq, m, a.args[i]});
            extra.push_back(Comparison{CmpOp::LessEq, a.args[i], m});
            a.args[i] = std::move(m);
        }
    }
    for (const auto& v : compound_vars) {
        const bool bound = std::ranges::any_of(r.body, [&](const Atom& a) {
            return std::ranges::any_of(a.args, [&](const Term& t) { return t.mentions(v); });
        });
        if (!bound) {
            r.body.push_back(Atom{kIntegersPredicate, {Term::numeric_var(v)}});
        }
    }

    // A numeric variable may occur in at most one standard body atom.
    std::set<std::string> seen;
    for (auto& a : r.body) {
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            Term& t = a.args[i];
            if (t.kind != Term::Kind::NumericVar) {
                continue;
            }
            if (seen.insert(t.name).second) {
                continue;
            }
            Term m = Term::numeric_var(fresh.make(prefix));
            extra.push_back(Comparison{CmpOp::LessEq, t, m});
            extra.push_back(Comparison{CmpOp::LessEq, m, t});
            t = std::move(m);
        }
    }
    r.comparisons.insert(r.comparisons.end(), extra.begin(), extra.end());
    return r;
}

std::set<std::string> all_variables(const Program& p) {
    std::set<std::string> out;
    for (const auto& r : p.rules) {
        for (auto& v : r.variables()) {
            out.insert(std::move(v));
        }
    }
    return out;
}

} // namespace

Program normalize(const Program& p) {
    Program out;
    out.signature = p.signature;
    FreshNames fresh(all_variables(p));
    std::set<std::string> used; // variables of rules already emitted
    bool uses_integers = false;
    for (std::size_t i = 0; i < p.rules.size(); ++i) {
        Rule r = normalize_rule(p, p.rules[i], i, fresh);
        std::map<std::string, std::string> names;
        for (const auto& v : r.variables()) {
            if (used.contains(v)) {
                names.emplace(v, fresh.make(v + "_" + std::to_string(i)));
            }
        }
        if (!names.empty()) {
            r = rename(r, names);
        }
        for (auto& v : r.variables()) {
            used.insert(std::move(v));
        }
        uses_integers = uses_integers || std::ranges::any_of(r.body, [](const Atom& a) {
                            return a.pred == kIntegersPredicate;
                        });
        out.rules.push_back(std::move(r));
    }
    if (uses_integers && !out.signature.contains(kIntegersPredicate)) {
        out.signature.declare(PredicateDecl::integers());
    }
    return out;
}

bool is_normalized(const Program& p) {
    std::set<std::string> used;
    for (const auto& r : p.rules) {
        std::set<std::string> seen;
        for (const auto& a : r.body) {
            for (std::size_t i = 0; i < a.args.size(); ++i) {
                const Term& t = a.args[i];
                if (t.kind == Term::Kind::Compound && numeric_slot(p, a, i)) {
                    return false;
                }
                if (t.kind == Term::Kind::NumericVar && !seen.insert(t.name).second) {
                    return false;
                }
            }
        }
        const auto vars = r.variables();
        if (std::ranges::any_of(vars, [&](const std::string& v) { return used.contains(v); })) {
            return false;
        }
        used.insert(vars.begin(), vars.end());
    }
    return true;
}

} // namespace limitdl::frontend
