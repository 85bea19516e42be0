// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <functional>
#include <limits>
#include <memory>

#include "limitdl/verifier.hpp"

namespace limitdl::verifier {
namespace {

using i64 = std::int64_t;

i64 narrow(__int128 v) {
    if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min()) {
        throw ContractViolation("naive oracle: arithmetic left the 64-bit range");
    }
    return static_cast<i64>(v);
}

i64 to_i64(const BigInt& v) {
    if (!v.fits_slong_p()) {
        throw ContractViolation("naive oracle: constant " + v.get_str() + " does not fit in 64 bits");
    }
    return v.get_si();
}

struct Expr {
    enum class Op { Const, Var, Add, Sub, Mul } op = Op::Const;
    i64 value = 0;
    int slot = -1;
    std::unique_ptr<Expr> lhs, rhs;
};

struct Val {
    bool inf = false;
    i64 v = 0;
};

struct Arg {
    bool is_var = false;
    int id = -1; // object id or object-variable slot
};

struct CAtom {
    std::string pred;
    PredKind kind = PredKind::Object;
    std::vector<Arg> objects;
    std::unique_ptr<Expr> numeric;
    std::vector<int> numeric_vars;
};

struct CCmp {
    bool strict = false;
    std::unique_ptr<Expr> lhs, rhs;
};

struct CRule {
    CAtom head;
    std::vector<CAtom> body;
    std::vector<CCmp> comparisons;
    std::size_t object_slots = 0;
    std::size_t numeric_slots = 0;
    std::vector<std::string> reads;
};

using Tuple = std::vector<int>;

struct Store {
    std::map<std::string, std::set<std::pair<Tuple, i64>>> numeric;
    std::map<std::string, std::set<Tuple>> plain;
    std::map<std::string, std::map<Tuple, Val>> limits;
    std::map<std::string, std::uint64_t> version;
};

class Oracle {
  public:
    Oracle(const Program& p, const OracleOptions& opts) : program_(p), opts_(opts) {
        if (opts.value_cap < 0 || opts.window_margin < 0) {
            throw ContractViolation("naive oracle: negative cap or margin");
        }
        window_ = opts.value_cap + opts.window_margin;
        for (const auto& r : p.rules) {
            rules_.push_back(compile(r));
        }
    }

    OracleResult run() {
        OracleResult res{PseudoInterpretation(std::make_shared<const Signature>(program_.signature)), {}, 0, false,
                         false};
        std::vector<std::map<std::string, std::uint64_t>> seen(rules_.size());
        std::vector<bool> evaluated(rules_.size(), false);
        bool changed = true;
        while (changed) {
            if (res.iterations == opts_.iteration_cap) {
                res.inconclusive = true;
                break;
            }
            ++res.iterations;
            changed = false;
            for (std::size_t i = 0; i < rules_.size(); ++i) {
                const auto& r = rules_[i];
                bool stale = !evaluated[i];
                for (const auto& pred : r.reads) {
                    if (seen[i][pred] != store_.version[pred]) {
                        stale = true;
                    }
                }
                if (!stale) {
                    continue;
                }
                evaluated[i] = true;
                for (const auto& pred : r.reads) {
                    seen[i][pred] = store_.version[pred];
                }
                changed = apply(r, res) || changed;
            }
            if (!changed) {
                --res.iterations;
            }
        }
        res.window_exceeded = res.window_exceeded || truncated_;
        export_closure(res);
        return res;
    }

  private:
    const Program& program_;
    OracleOptions opts_;
    i64 window_ = 0;
    std::vector<CRule> rules_;
    Store store_;
    std::vector<std::string> object_names_;
    std::map<std::string, int> object_ids_;

    // Per-evaluation binding state.
    std::vector<int> obj_;
    std::vector<i64> num_;
    std::vector<bool> num_bound_;
    std::vector<bool> at_edge_;
    bool truncated_ = false;

    int intern(const std::string& name) {
        auto [it, fresh] = object_ids_.emplace(name, static_cast<int>(object_names_.size()));
        if (fresh) {
            object_names_.push_back(name);
        }
        return it->second;
    }

    std::unique_ptr<Expr> compile_term(const Term& t, std::map<std::string, int>& slots) {
        auto e = std::make_unique<Expr>();
        switch (t.kind) {
        case Term::Kind::Integer:
            e->op = Expr::Op::Const;
            e->value = to_i64(t.value);
            break;
        case Term::Kind::NumericVar: {
            e->op = Expr::Op::Var;
            auto [it, fresh] = slots.emplace(t.name, static_cast<int>(slots.size()));
            e->slot = it->second;
            break;
        }
        case Term::Kind::Compound:
            e->op = t.op == ArithOp::Add ? Expr::Op::Add : t.op == ArithOp::Sub ? Expr::Op::Sub : Expr::Op::Mul;
            e->lhs = compile_term(t.operands[0], slots);
            e->rhs = compile_term(t.operands[1], slots);
            break;
        default: throw ContractViolation("naive oracle: object term in a numeric position");
        }
        return e;
    }

    static void collect_slots(const Expr& e, std::vector<int>& out) {
        if (e.op == Expr::Op::Var) {
            if (std::ranges::find(out, e.slot) == out.end()) {
                out.push_back(e.slot);
            }
        } else if (e.lhs) {
            collect_slots(*e.lhs, out);
            collect_slots(*e.rhs, out);
        }
    }

    CAtom compile_atom(const Atom& a, std::map<std::string, int>& oslots, std::map<std::string, int>& nslots) {
        const auto& decl = program_.decl(a.pred);
        CAtom out;
        out.pred = a.pred;
        out.kind = decl.kind;
        for (std::size_t k = 0; k < decl.object_arity(); ++k) {
            const auto& t = a.args[k];
            Arg arg;
            if (t.kind == Term::Kind::ObjectVar) {
                arg.is_var = true;
                auto [it, fresh] = oslots.emplace(t.name, static_cast<int>(oslots.size()));
                arg.id = it->second;
            } else {
                arg.id = intern(t.name);
            }
            out.objects.push_back(arg);
        }
        if (decl.is_numeric()) {
            out.numeric = compile_term(a.args.back(), nslots);
            collect_slots(*out.numeric, out.numeric_vars);
        }
        return out;
    }

    CRule compile(const Rule& r) {
        std::map<std::string, int> oslots, nslots;
        CRule out;
        for (const auto& a : r.body) {
            out.body.push_back(compile_atom(a, oslots, nslots));
            if (std::ranges::find(out.reads, a.pred) == out.reads.end()) {
                out.reads.push_back(a.pred);
            }
        }
        for (const auto& c : r.comparisons) {
            out.comparisons.push_back(
                CCmp{c.op == CmpOp::Less, compile_term(c.lhs, nslots), compile_term(c.rhs, nslots)});
        }
        out.head = compile_atom(r.head, oslots, nslots);
        out.object_slots = oslots.size();
        out.numeric_slots = nslots.size();
        return out;
    }

    i64 eval(const Expr& e) const {
        switch (e.op) {
        case Expr::Op::Const: return e.value;
        case Expr::Op::Var: return num_[e.slot];
        case Expr::Op::Add: return narrow(static_cast<__int128>(eval(*e.lhs)) + eval(*e.rhs));
        case Expr::Op::Sub: return narrow(static_cast<__int128>(eval(*e.lhs)) - eval(*e.rhs));
        case Expr::Op::Mul: return narrow(static_cast<__int128>(eval(*e.lhs)) * eval(*e.rhs));
        }
        return 0;
    }

    // Binds the unbound variables among `vars` to every window value in turn,
    // then calls `k`.
    void enumerate(const std::vector<int>& vars, std::size_t i, const std::function<void()>& k) {
        while (i < vars.size() && num_bound_[vars[i]]) {
            ++i;
        }
        if (i == vars.size()) {
            k();
            return;
        }
        const int s = vars[i];
        num_bound_[s] = true;
        for (i64 v = -window_; v <= window_; ++v) {
            num_[s] = v;
            at_edge_[s] = v == -window_ || v == window_;
            enumerate(vars, i + 1, k);
        }
        num_bound_[s] = false;
        at_edge_[s] = false;
    }

    bool unify_objects(const CAtom& a, const Tuple& objs, std::vector<int>& newly) {
        for (std::size_t k = 0; k < a.objects.size(); ++k) {
            const auto& arg = a.objects[k];
            if (!arg.is_var) {
                if (arg.id != objs[k]) {
                    return false;
                }
            } else if (obj_[arg.id] < 0) {
                obj_[arg.id] = objs[k];
                newly.push_back(arg.id);
            } else if (obj_[arg.id] != objs[k]) {
                return false;
            }
        }
        return true;
    }

    void release(const std::vector<int>& newly) {
        for (int s : newly) {
            obj_[s] = -1;
        }
    }

    static bool allowed(PredKind kind, const Val& bound, i64 s) {
        if (bound.inf) {
            return true;
        }
        return kind == PredKind::Max ? s <= bound.v : s >= bound.v;
    }

    void join(const CRule& r, std::size_t i, const std::function<void()>& emit) {
        if (i == r.body.size()) {
            for (const auto& c : r.comparisons) {
                const i64 l = eval(*c.lhs);
                const i64 rv = eval(*c.rhs);
                if (c.strict ? !(l < rv) : !(l <= rv)) {
                    return;
                }
            }
            emit();
            return;
        }
        const auto& a = r.body[i];
        auto next = [&] { join(r, i + 1, emit); };
        switch (a.kind) {
        case PredKind::Integers: enumerate(a.numeric_vars, 0, next); return;
        case PredKind::Object: {
            const auto& facts = store_.plain[a.pred];
            for (const auto& objs : facts) {
                std::vector<int> newly;
                if (unify_objects(a, objs, newly)) {
                    next();
                }
                release(newly);
            }
            return;
        }
        case PredKind::Ordinary: {
            const auto& facts = store_.numeric[a.pred];
            for (const auto& [objs, value] : facts) {
                std::vector<int> newly;
                if (unify_objects(a, objs, newly)) {
                    const i64 fv = value;
                    if (a.numeric->op == Expr::Op::Var && !num_bound_[a.numeric->slot]) {
                        const int s = a.numeric->slot;
                        num_bound_[s] = true;
                        num_[s] = fv;
                        next();
                        num_bound_[s] = false;
                    } else {
                        enumerate(a.numeric_vars, 0, [&] {
                            if (eval(*a.numeric) == fv) {
                                next();
                            }
                        });
                    }
                }
                release(newly);
            }
            return;
        }
        case PredKind::Min:
        case PredKind::Max: {
            const auto& keys = store_.limits[a.pred];
            for (const auto& [objs, bound] : keys) {
                std::vector<int> newly;
                if (unify_objects(a, objs, newly)) {
                    const Val b = bound;
                    if (!b.inf && (a.kind == PredKind::Max ? b.v < -window_ : b.v > window_)) {
                        truncated_ = true;
                    }
                    if (a.numeric->op == Expr::Op::Var && !num_bound_[a.numeric->slot]) {
                        const int s = a.numeric->slot;
                        i64 lo = -window_;
                        i64 hi = window_;
                        if (!b.inf) {
                            (a.kind == PredKind::Max ? hi : lo) = a.kind == PredKind::Max ? std::min(hi, b.v)
                                                                                         : std::max(lo, b.v);
                        }
                        num_bound_[s] = true;
                        for (i64 v = lo; v <= hi; ++v) {
                            num_[s] = v;
                            at_edge_[s] = v == -window_ || v == window_;
                            next();
                        }
                        num_bound_[s] = false;
                        at_edge_[s] = false;
                    } else {
                        enumerate(a.numeric_vars, 0, [&] {
                            if (allowed(a.kind, b, eval(*a.numeric))) {
                                next();
                            }
                        });
                    }
                }
                release(newly);
            }
            return;
        }
        }
    }

    Tuple head_objects(const CAtom& h) const {
        Tuple out;
        for (const auto& arg : h.objects) {
            out.push_back(arg.is_var ? obj_[arg.id] : arg.id);
        }
        return out;
    }

    bool apply(const CRule& r, OracleResult& res) {
        obj_.assign(r.object_slots, -1);
        num_.assign(r.numeric_slots, 0);
        num_bound_.assign(r.numeric_slots, false);
        at_edge_.assign(r.numeric_slots, false);

        struct Best {
            Val value;
            bool inside = false; // attained with every enumerated variable off the window edge
        };
        std::map<Tuple, Best> best;
        std::set<Tuple> plain;
        std::set<std::pair<Tuple, i64>> numeric;
        const auto& h = r.head;
        const i64 cap = opts_.value_cap;

        join(r, 0, [&] {
            Tuple objs = head_objects(h);
            if (h.kind == PredKind::Object) {
                plain.insert(std::move(objs));
                return;
            }
            const i64 v = eval(*h.numeric);
            if (h.kind == PredKind::Ordinary) {
                numeric.emplace(std::move(objs), v);
                return;
            }
            const bool inside = std::ranges::none_of(at_edge_, [](bool b) { return b; });
            const bool over = h.kind == PredKind::Max ? v > cap : v < -cap;
            Val cand = over ? Val{true, 0} : Val{false, v};
            auto [it, fresh] = best.emplace(std::move(objs), Best{cand, inside});
            if (fresh || it->second.value.inf) {
                return;
            }
            if (cand.inf || (h.kind == PredKind::Max ? cand.v > it->second.value.v : cand.v < it->second.value.v)) {
                it->second = Best{cand, inside};
            } else if (cand.v == it->second.value.v) {
                it->second.inside = it->second.inside || inside;
            }
        });

        bool changed = false;
        auto bump = [&] {
            changed = true;
            ++store_.version[h.pred];
        };
        for (auto& t : plain) {
            if (store_.plain[h.pred].insert(t).second) {
                bump();
            }
        }
        for (auto& t : numeric) {
            if (store_.numeric[h.pred].insert(t).second) {
                bump();
            }
        }
        auto& table = store_.limits[h.pred];
        for (auto& [objs, b] : best) {
            auto it = table.find(objs);
            bool improves = it == table.end();
            if (!improves && !it->second.inf) {
                improves = b.value.inf ||
                           (h.kind == PredKind::Max ? b.value.v > it->second.v : b.value.v < it->second.v);
            }
            if (!improves) {
                continue;
            }
            table[objs] = b.value;
            if (b.value.inf) {
                LimitKey key{h.pred, {}};
                for (int id : objs) {
                    key.objects.push_back(object_names_[id]);
                }
                res.overflowed_keys.insert(std::move(key));
            } else if (!b.inside) {
                res.window_exceeded = true;
            }
            bump();
        }
        return changed;
    }

    void export_closure(OracleResult& res) const {
        auto names = [&](const Tuple& t) {
            std::vector<std::string> out;
            for (int id : t) {
                out.push_back(object_names_[id]);
            }
            return out;
        };
        for (const auto& [pred, set] : store_.plain) {
            for (const auto& t : set) {
                res.closure.join(Fact{pred, names(t), std::nullopt});
            }
        }
        for (const auto& [pred, set] : store_.numeric) {
            for (const auto& [t, v] : set) {
                res.closure.join(Fact{pred, names(t), ExtInt(static_cast<long>(v))});
            }
        }
        for (const auto& [pred, table] : store_.limits) {
            for (const auto& [t, v] : table) {
                res.closure.join(Fact{pred, names(t), v.inf ? ExtInt::infinity() : ExtInt(static_cast<long>(v.v))});
            }
        }
    }
};

} // namespace

OracleResult naive_fixpoint_oracle(const Program& p, const OracleOptions& opts) { return Oracle(p, opts).run(); }

DoublingResult naive_oracle_with_doubling(const Program& p, std::int64_t base_cap, const OracleOptions& opts) {
    DoublingResult out{OracleResult{PseudoInterpretation(std::make_shared<const Signature>(p.signature)), {}, 0,
                                    false, false},
                       {},
                       {}};
    std::set<LimitKey> every;
    std::set<LimitKey> any;
    for (int step = 0; step < 3; ++step) {
        OracleOptions o = opts;
        o.value_cap = base_cap << step;
        auto r = naive_fixpoint_oracle(p, o);
        if (step == 0) {
            every = r.overflowed_keys;
        } else {
            std::set<LimitKey> keep;
            std::ranges::set_intersection(every, r.overflowed_keys, std::inserter(keep, keep.end()));
            every = std::move(keep);
        }
        any.insert(r.overflowed_keys.begin(), r.overflowed_keys.end());
        out.result = std::move(r);
    }
    out.divergent = every;
    for (const auto& k : any) {
        if (!every.contains(k)) {
            out.settled.insert(k);
        }
    }
    return out;
}

} // namespace limitdl::verifier
