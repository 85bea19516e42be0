// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "limitdl/error.hpp"

namespace limitdl {

using BigInt = mpz_class;

std::strong_ordering compare(const BigInt& a, const BigInt& b) noexcept;

struct BigIntLess {
    bool operator()(const BigInt& a, const BigInt& b) const noexcept { return cmp(a, b) < 0; }
};

// ---------------------------------------------------------------------------
// Integers extended with a single infinity symbol.
//
// Infinity is larger than every integer and absorbs addition and subtraction
// of finite values. There is no negative infinity: for both min and max limit
// predicates the symbol stands for "every integer".
// ---------------------------------------------------------------------------
class ExtInt {
  public:
    ExtInt() = default;
    ExtInt(BigInt v) : value_(std::move(v)) {} // NOLINT(google-explicit-constructor)
    ExtInt(long v) : value_(v) {}              // NOLINT(google-explicit-constructor)
    ExtInt(int v) : value_(static_cast<long>(v)) {} // NOLINT(google-explicit-constructor)

    static ExtInt infinity() {
        ExtInt r;
        r.infinite_ = true;
        return r;
    }

    [[nodiscard]] bool is_infinite() const noexcept { return infinite_; }
    [[nodiscard]] bool is_finite() const noexcept { return !infinite_; }
    /// Throws ContractViolation on infinity.
    [[nodiscard]] const BigInt& value() const;
    [[nodiscard]] std::string to_string() const;
    /// Accepts a decimal integer or "inf".
    static std::optional<ExtInt> parse(const std::string& text);

    friend bool operator==(const ExtInt& a, const ExtInt& b) noexcept;
    friend std::strong_ordering operator<=>(const ExtInt& a, const ExtInt& b) noexcept;

    friend ExtInt operator+(const ExtInt& a, const BigInt& k);
    friend ExtInt operator-(const ExtInt& a, const BigInt& k);

  private:
    bool infinite_ = false;
    BigInt value_;
};

ExtInt max(const ExtInt& a, const ExtInt& b);

// ---------------------------------------------------------------------------
// Predicates and signatures
// ---------------------------------------------------------------------------
enum class Sort { Object, Numeric };

enum class PredKind {
    Object,   ///< no numeric position
    Ordinary, ///< ordinary numeric predicate
    Min,      ///< min limit predicate
    Max,      ///< max limit predicate
    Integers, ///< built-in unary predicate true of every integer
};

[[nodiscard]] const char* to_string(PredKind k) noexcept;
[[nodiscard]] inline bool is_limit(PredKind k) noexcept { return k == PredKind::Min || k == PredKind::Max; }

/// Name of the built-in predicate introduced by normalisation.
inline constexpr const char* kIntegersPredicate = "__int";

struct PredicateDecl {
    std::string name;
    std::vector<Sort> sorts;
    PredKind kind = PredKind::Object;
    SourceLoc loc;

    [[nodiscard]] std::size_t arity() const noexcept { return sorts.size(); }
    [[nodiscard]] bool is_limit() const noexcept { return limitdl::is_limit(kind); }
    [[nodiscard]] bool is_numeric() const noexcept { return kind != PredKind::Object; }
    /// Number of leading object positions (arity minus the numeric slot, if any).
    [[nodiscard]] std::size_t object_arity() const noexcept { return is_numeric() ? arity() - 1 : arity(); }
    /// Object predicates have no numeric slot; all others have exactly the last one.
    [[nodiscard]] bool well_shaped() const noexcept;

    static PredicateDecl integers();
};

class Signature {
  public:
    /// Throws InputError on a duplicate name.
    void declare(PredicateDecl decl);
    [[nodiscard]] const PredicateDecl* find(const std::string& name) const;
    /// Throws InputError for undeclared predicates.
    [[nodiscard]] const PredicateDecl& at(const std::string& name) const;
    [[nodiscard]] bool contains(const std::string& name) const { return decls_.contains(name); }
    [[nodiscard]] const std::map<std::string, PredicateDecl>& decls() const noexcept { return decls_; }
    void erase(const std::string& name) { decls_.erase(name); }

    friend bool operator==(const Signature&, const Signature&) = default;

  private:
    std::map<std::string, PredicateDecl> decls_;
};

bool operator==(const PredicateDecl& a, const PredicateDecl& b);

// ---------------------------------------------------------------------------
// Terms, atoms, rules, programs
// ---------------------------------------------------------------------------
enum class ArithOp { Add, Sub, Mul };

struct Term {
    enum class Kind { ObjectConst, ObjectVar, Integer, NumericVar, Compound };

    Kind kind = Kind::Integer;
    std::string name; // constant or variable name
    BigInt value;     // integer literal
    ArithOp op = ArithOp::Add;
    std::vector<Term> operands; // exactly two for compounds

    static Term object(std::string name);
    static Term object_var(std::string name);
    static Term integer(BigInt v);
    static Term numeric_var(std::string name);
    static Term compound(ArithOp op, Term lhs, Term rhs);
    /// 0 - t, or the negated literal when t is an integer.
    static Term negate(Term t);

    [[nodiscard]] bool is_variable() const noexcept { return kind == Kind::ObjectVar || kind == Kind::NumericVar; }
    [[nodiscard]] bool is_numeric() const noexcept { return kind == Kind::Integer || kind == Kind::NumericVar || kind == Kind::Compound; }
    [[nodiscard]] bool is_ground() const;
    /// Evaluates a ground numeric term.
    [[nodiscard]] BigInt evaluate() const;
    void collect_variables(std::vector<std::string>& out) const;
    [[nodiscard]] bool mentions(const std::string& var) const;

    friend bool operator==(const Term& a, const Term& b);
};

enum class CmpOp { Less, LessEq };

struct Atom {
    std::string pred;
    std::vector<Term> args;

    friend bool operator==(const Atom&, const Atom&) = default;
};

struct Comparison {
    CmpOp op = CmpOp::LessEq;
    Term lhs;
    Term rhs;

    friend bool operator==(const Comparison&, const Comparison&) = default;
};

struct Rule {
    Atom head;
    std::vector<Atom> body;
    std::vector<Comparison> comparisons;
    SourceLoc loc;

    [[nodiscard]] bool is_fact() const noexcept { return body.empty() && comparisons.empty(); }
    /// Variables in order of first occurrence (body atoms, comparisons, head).
    [[nodiscard]] std::vector<std::string> variables() const;

    friend bool operator==(const Rule& a, const Rule& b) {
        return a.head == b.head && a.body == b.body && a.comparisons == b.comparisons;
    }
};

struct Program {
    Signature signature;
    std::vector<Rule> rules;

    [[nodiscard]] const PredicateDecl& decl(const std::string& pred) const { return signature.at(pred); }
};

// ---------------------------------------------------------------------------
// Ground facts and pseudo-interpretations
// ---------------------------------------------------------------------------

/// A ground fact: the object arguments plus the numeric value when the
/// predicate has a numeric slot (always the last position).
struct Fact {
    std::string pred;
    std::vector<std::string> objects;
    std::optional<ExtInt> value;

    friend auto operator<=>(const Fact&, const Fact&) = default;
    friend bool operator==(const Fact&, const Fact&) = default;
};

struct LimitKey {
    std::string pred;
    std::vector<std::string> objects;

    friend auto operator<=>(const LimitKey&, const LimitKey&) = default;
    friend bool operator==(const LimitKey&, const LimitKey&) = default;
};

/// Throws InputError if the fact does not match its declaration. Infinity is
/// only accepted on limit predicates.
void check_fact(const Signature& sig, const Fact& f);

class PseudoInterpretation {
  public:
    explicit PseudoInterpretation(std::shared_ptr<const Signature> sig);

    [[nodiscard]] const Signature& signature() const noexcept { return *sig_; }
    [[nodiscard]] const std::shared_ptr<const Signature>& signature_ptr() const noexcept { return sig_; }

    /// Object and ordinary numeric facts.
    [[nodiscard]] const std::set<Fact>& facts() const noexcept { return facts_; }
    [[nodiscard]] const std::map<LimitKey, ExtInt>& limit_values() const noexcept { return limits_; }
    [[nodiscard]] std::optional<ExtInt> limit_value(const LimitKey& key) const;
    [[nodiscard]] std::size_t size() const noexcept { return facts_.size() + limits_.size(); }
    [[nodiscard]] bool empty() const noexcept { return size() == 0; }

    /// Least upper bound with a single fact; returns true if anything changed.
    bool join(const Fact& f);
    /// Overwrites a limit value regardless of order (used for infinity promotion).
    void assign(const LimitKey& key, ExtInt value);
    /// Every fact, limit values included, in canonical order.
    [[nodiscard]] std::vector<Fact> all_facts() const;

    friend bool operator==(const PseudoInterpretation& a, const PseudoInterpretation& b) {
        return a.facts_ == b.facts_ && a.limits_ == b.limits_;
    }

  private:
    std::shared_ptr<const Signature> sig_;
    std::set<Fact> facts_;
    std::map<LimitKey, ExtInt> limits_;
};

/// J |= alpha.
[[nodiscard]] bool satisfies(const PseudoInterpretation& j, const Fact& alpha);
/// J is below J' in the order induced by inclusion of limit-closed interpretations.
[[nodiscard]] bool preceq(const PseudoInterpretation& j, const PseudoInterpretation& jp);
[[nodiscard]] PseudoInterpretation join_fact(PseudoInterpretation j, const Fact& f);

/// Does value `a` of a limit predicate of the given kind carry at least the
/// information of `b` (i.e. B(k, a) implies B(k, b))?
[[nodiscard]] bool dominates(PredKind kind, const ExtInt& a, const ExtInt& b);

// ---------------------------------------------------------------------------
// Printing (the .lgl surface syntax)
// ---------------------------------------------------------------------------
[[nodiscard]] std::string to_string(const Term& t);
[[nodiscard]] std::string to_string(const Atom& a);
[[nodiscard]] std::string to_string(const Comparison& c);
[[nodiscard]] std::string to_string(const Rule& r);
[[nodiscard]] std::string to_string(const PredicateDecl& d);
[[nodiscard]] std::string to_string(const Program& p);
[[nodiscard]] std::string to_string(const Fact& f);
[[nodiscard]] std::string to_string(const LimitKey& k);
[[nodiscard]] std::string to_string(const PseudoInterpretation& j);

} // namespace limitdl
