// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <map>
#include <optional>

#include "lexer.hpp"
#include "limitdl/frontend.hpp"

namespace limitdl::frontend {

using detail::Tok;
using detail::Token;

namespace {

struct RawRule {
    Atom head;
    std::vector<Atom> body;
    std::vector<Comparison> comparisons;
    SourceLoc loc;
    std::vector<SourceLoc> atom_locs; // head first, then body atoms
};

class Parser {
  public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    void parse_all(std::vector<PredicateDecl>& decls, std::vector<RawRule>& rules) {
        while (peek().kind != Tok::End) {
            if (peek().kind == Tok::Ident && peek().text == "pred" && peek(1).kind == Tok::Ident) {
                decls.push_back(declaration());
            } else {
                rules.push_back(rule());
            }
        }
    }

    Atom lone_atom(SourceLoc& loc) {
        loc = peek().loc;
        Atom a = atom();
        if (peek().kind == Tok::Dot) {
            next();
        }
        expect(Tok::End);
        return a;
    }

  private:
    const Token& peek(std::size_t ahead = 0) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    const Token& next() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) {
            ++pos_;
        }
        return t;
    }
    const Token& expect(Tok kind) {
        if (peek().kind != kind) {
            throw InputError(std::string("expected ") + detail::describe(kind) + " but found " +
                                 (peek().kind == Tok::End ? std::string("end of input") : "'" + peek().text + "'"),
                             peek().loc);
        }
        return next();
    }

    PredicateDecl declaration() {
        next(); // pred
        PredicateDecl d;
        d.loc = peek().loc;
        d.name = expect(Tok::Ident).text;
        if (d.name == kIntegersPredicate) {
            throw InputError("predicate name '" + d.name + "' is reserved", d.loc);
        }
        int limits = 0;
        bool numeric = false;
        if (peek().kind == Tok::LParen) {
            next();
            if (peek().kind != Tok::RParen) {
                while (true) {
                    const Token& s = expect(Tok::Ident);
                    if (s.text == "obj") {
                        d.sorts.push_back(Sort::Object);
                    } else if (s.text == "int") {
                        d.sorts.push_back(Sort::Numeric);
                        numeric = true;
                    } else if (s.text == "min" || s.text == "max") {
                        const Token& i = expect(Tok::Ident);
                        if (i.text != "int") {
                            throw InputError("expected 'int' after '" + s.text + "'", i.loc);
                        }
                        d.sorts.push_back(Sort::Numeric);
                        d.kind = s.text == "min" ? PredKind::Min : PredKind::Max;
                        ++limits;
                    } else {
                        throw InputError("unknown sort '" + s.text + "' (expected obj, int, min int or max int)", s.loc);
                    }
                    if (peek().kind == Tok::Comma) {
                        next();
                        continue;
                    }
                    break;
                }
            }
            expect(Tok::RParen);
        }
        expect(Tok::Dot);
        if (limits > 1) {
            throw InputError("predicate '" + d.name + "' has more than one limit position", d.loc);
        }
        if (limits == 0) {
            d.kind = numeric ? PredKind::Ordinary : PredKind::Object;
        }
        return d;
    }

    RawRule rule() {
        RawRule r;
        r.loc = peek().loc;
        r.atom_locs.push_back(peek().loc);
        r.head = atom();
        if (peek().kind == Tok::If) {
            next();
            while (true) {
                literal(r);
                if (peek().kind == Tok::Comma) {
                    next();
                    continue;
                }
                break;
            }
        }
        expect(Tok::Dot);
        return r;
    }

    void literal(RawRule& r) {
        if (peek().kind == Tok::Ident && peek().text != "inf") {
            r.atom_locs.push_back(peek().loc);
            r.body.push_back(atom());
            return;
        }
        if (peek().kind == Tok::LParen) {
            const std::size_t save = pos_;
            try {
                next();
                Comparison c = comparison();
                expect(Tok::RParen);
                r.comparisons.push_back(std::move(c));
                return;
            } catch (const InputError&) {
                pos_ = save;
            }
        }
        r.comparisons.push_back(comparison());
    }

    Comparison comparison() {
        Term lhs = expr();
        const Token op = next();
        Term rhs = expr();
        switch (op.kind) {
        case Tok::Less: return Comparison{CmpOp::Less, std::move(lhs), std::move(rhs)};
        case Tok::LessEq: return Comparison{CmpOp::LessEq, std::move(lhs), std::move(rhs)};
        case Tok::Greater: return Comparison{CmpOp::Less, std::move(rhs), std::move(lhs)};
        case Tok::GreaterEq: return Comparison{CmpOp::LessEq, std::move(rhs), std::move(lhs)};
        default: throw InputError("expected a comparison operator but found '" + op.text + "'", op.loc);
        }
    }

    Atom atom() {
        Atom a;
        a.pred = expect(Tok::Ident).text;
        if (peek().kind == Tok::LParen) {
            next();
            if (peek().kind != Tok::RParen) {
                while (true) {
                    a.args.push_back(expr());
                    if (peek().kind == Tok::Comma) {
                        next();
                        continue;
                    }
                    break;
                }
            }
            expect(Tok::RParen);
        }
        return a;
    }

    Term expr() {
        Term t = product();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const ArithOp op = next().kind == Tok::Plus ? ArithOp::Add : ArithOp::Sub;
            t = Term::compound(op, std::move(t), product());
        }
        return t;
    }

    Term product() {
        Term t = unary();
        while (peek().kind == Tok::Star) {
            next();
            t = Term::compound(ArithOp::Mul, std::move(t), unary());
        }
        return t;
    }

    Term unary() {
        if (peek().kind == Tok::Minus) {
            next();
            return Term::negate(unary());
        }
        return primary();
    }

    Term primary() {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Int: next(); return Term::integer(BigInt(t.text, 10));
        case Tok::Var: next(); return Term::numeric_var(t.text); // sort fixed later
        case Tok::Ident:
            if (t.text == "inf") {
                throw InputError("'inf' is not allowed in programs or queries", t.loc);
            }
            next();
            return Term::object(t.text);
        case Tok::LParen: {
            next();
            Term inner = expr();
            expect(Tok::RParen);
            return inner;
        }
        default:
            throw InputError(std::string("expected a term but found ") +
                                 (t.kind == Tok::End ? std::string("end of input") : "'" + t.text + "'"),
                             t.loc);
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

const PredicateDecl& lookup(Signature& sig, const std::string& pred, SourceLoc loc) {
    if (pred == kIntegersPredicate && !sig.contains(pred)) {
        sig.declare(PredicateDecl::integers());
    }
    const auto* d = sig.find(pred);
    if (d == nullptr) {
        throw InputError("undeclared predicate '" + pred + "'", loc);
    }
    return *d;
}

void numeric_only(const Term& t, const std::string& where, SourceLoc loc,
                  std::map<std::string, Sort>& sorts) {
    switch (t.kind) {
    case Term::Kind::ObjectConst:
        throw InputError("object constant '" + t.name + "' used as a number in " + where, loc);
    case Term::Kind::ObjectVar:
    case Term::Kind::NumericVar: {
        auto [it, inserted] = sorts.emplace(t.name, Sort::Numeric);
        if (!inserted && it->second != Sort::Numeric) {
            throw InputError("variable " + t.name + " is used both as an object and as a number", loc);
        }
        return;
    }
    case Term::Kind::Compound:
        numeric_only(t.operands[0], where, loc, sorts);
        numeric_only(t.operands[1], where, loc, sorts);
        return;
    case Term::Kind::Integer: return;
    }
}

void check_atom(const Atom& a, const PredicateDecl& d, SourceLoc loc, std::map<std::string, Sort>& sorts) {
    if (a.args.size() != d.arity()) {
        throw InputError("predicate '" + a.pred + "' expects " + std::to_string(d.arity()) + " argument(s), got " +
                             std::to_string(a.args.size()),
                         loc);
    }
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        const Term& t = a.args[i];
        const std::string where = "argument " + std::to_string(i + 1) + " of " + a.pred;
        if (d.sorts[i] == Sort::Numeric) {
            numeric_only(t, where, loc, sorts);
            continue;
        }
        if (t.kind == Term::Kind::Integer || t.kind == Term::Kind::Compound) {
            throw InputError("numeric term " + to_string(t) + " in object " + where, loc);
        }
        if (t.is_variable()) {
            auto [it, inserted] = sorts.emplace(t.name, Sort::Object);
            if (!inserted && it->second != Sort::Object) {
                throw InputError("variable " + t.name + " is used both as an object and as a number", loc);
            }
        }
    }
}

void assign_sorts(Term& t, const std::map<std::string, Sort>& sorts) {
    if (t.is_variable()) {
        t.kind = sorts.at(t.name) == Sort::Object ? Term::Kind::ObjectVar : Term::Kind::NumericVar;
    } else if (t.kind == Term::Kind::Compound) {
        assign_sorts(t.operands[0], sorts);
        assign_sorts(t.operands[1], sorts);
    }
}

Term fold(const Term& t) {
    if (t.kind == Term::Kind::Compound && t.is_ground()) {
        return Term::integer(t.evaluate());
    }
    return t;
}

Rule resolve(RawRule raw, Signature& sig) {
    std::map<std::string, Sort> sorts;
    const auto& hd = lookup(sig, raw.head.pred, raw.atom_locs[0]);
    for (std::size_t i = 0; i < raw.body.size(); ++i) {
        check_atom(raw.body[i], lookup(sig, raw.body[i].pred, raw.atom_locs[i + 1]), raw.atom_locs[i + 1], sorts);
    }
    std::vector<std::string> bound;
    for (const auto& a : raw.body) {
        for (const auto& t : a.args) {
            t.collect_variables(bound);
        }
    }
    for (const auto& c : raw.comparisons) {
        numeric_only(c.lhs, "a comparison", raw.loc, sorts);
        numeric_only(c.rhs, "a comparison", raw.loc, sorts);
    }
    check_atom(raw.head, hd, raw.atom_locs[0], sorts);

    Rule r{std::move(raw.head), std::move(raw.body), std::move(raw.comparisons), raw.loc};
    for (const auto& v : r.variables()) {
        if (std::ranges::find(bound, v) == bound.end()) {
            throw InputError("unsafe variable " + v + ": it does not occur in a body atom", r.loc);
        }
    }
    for (auto& t : r.head.args) {
        assign_sorts(t, sorts);
    }
    for (auto& a : r.body) {
        for (auto& t : a.args) {
            assign_sorts(t, sorts);
        }
    }
    for (auto& c : r.comparisons) {
        assign_sorts(c.lhs, sorts);
        assign_sorts(c.rhs, sorts);
    }
    if (r.is_fact()) {
        for (auto& t : r.head.args) {
            t = fold(t);
        }
    }
    return r;
}

} // namespace

Program parse_program_unchecked(std::string_view text) {
    Parser parser(detail::tokenize(text));
    std::vector<PredicateDecl> decls;
    std::vector<RawRule> raw;
    parser.parse_all(decls, raw);
    Program p;
    for (auto& d : decls) {
        p.signature.declare(std::move(d));
    }
    p.rules.reserve(raw.size());
    for (auto& r : raw) {
        p.rules.push_back(resolve(std::move(r), p.signature));
    }
    return p;
}

Program parse_program(std::string_view text) {
    Program p = parse_program_unchecked(text);
    for (const auto& d : validate(p)) {
        if (d.severity == Severity::Error) {
            throw InputError(d.message, d.loc);
        }
    }
    return p;
}

Fact parse_fact(std::string_view text, const Signature& sig) {
    Parser parser(detail::tokenize(text));
    SourceLoc loc;
    Atom a = parser.lone_atom(loc);
    const auto* d = sig.find(a.pred);
    if (d == nullptr) {
        throw InputError("undeclared predicate '" + a.pred + "'", loc);
    }
    std::map<std::string, Sort> sorts;
    check_atom(a, *d, loc, sorts);
    if (!sorts.empty()) {
        throw InputError("a fact must be ground but mentions " + sorts.begin()->first, loc);
    }
    Fact f{a.pred, {}, std::nullopt};
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (d->sorts[i] == Sort::Object) {
            f.objects.push_back(a.args[i].name);
        } else {
            f.value = ExtInt(a.args[i].evaluate());
        }
    }
    check_fact(sig, f);
    return f;
}

} // namespace limitdl::frontend
