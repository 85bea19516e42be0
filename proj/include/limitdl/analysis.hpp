// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "limitdl/core.hpp"

namespace limitdl::analysis {

// ---------------------------------------------------------------------------
// Polynomial normal form of numeric terms
// ---------------------------------------------------------------------------

/// Variable -> exponent; the empty monomial is the constant 1.
using Monomial = std::map<std::string, unsigned>;

class Polynomial {
  public:
    Polynomial() = default;
    static Polynomial constant(const BigInt& k);
    static Polynomial variable(const std::string& v);
    /// Throws ContractViolation on object terms.
    static Polynomial from_term(const Term& t);

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

    [[nodiscard]] const std::map<Monomial, BigInt>& terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    /// Sum of the exponents of `vars` in the monomial.
    [[nodiscard]] static unsigned degree_in(const Monomial& m, const std::set<std::string>& vars);
    [[nodiscard]] std::string to_string() const;

  private:
    void add(const Monomial& m, const BigInt& k);
    std::map<Monomial, BigInt> terms_;
};

// ---------------------------------------------------------------------------
// Signs of ground products
// ---------------------------------------------------------------------------
struct SignSet {
    bool negative = false;
    bool zero = false;
    bool positive = false;

    [[nodiscard]] bool empty() const noexcept { return !negative && !zero && !positive; }
    [[nodiscard]] std::string to_string() const;
    friend bool operator==(const SignSet&, const SignSet&) = default;
};

using IntegerPool = std::set<BigInt, BigIntLess>;

/// Signs that coeff * prod(v^e) can take when every variable is replaced by a
/// pool constant (variables independently).
[[nodiscard]] SignSet sign_possibilities(const BigInt& coeff, const Monomial& vars, const IntegerPool& pool);

/// Same for a term built from integers and variables with *. Throws
/// ContractViolation if the term is not a single product. With variables and an
/// empty pool the result is empty and a diagnostic is appended.
[[nodiscard]] SignSet sign_possibilities(const Term& t, const IntegerPool& pool,
                                         std::vector<Diagnostic>* diagnostics = nullptr);

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------
enum class PredicateRole { Extensional, Intensional, Builtin };

[[nodiscard]] const char* to_string(PredicateRole r) noexcept;

/// A predicate is intensional iff it heads a rule with a nonempty body.
[[nodiscard]] std::map<std::string, PredicateRole> classify_predicates(const Program& p);

enum class Bullet { Coefficient = 1, HeadPolarity = 2, ComparisonPolarity = 3, Shape = 0 };

struct TypeViolation {
    std::size_t rule = 0; ///< index in the analysed (normalized) program
    Bullet bullet = Bullet::Coefficient;
    std::string term;
    std::string variable;
    SignSet signs;
    Diagnostic diagnostic;
};

/// Non-empty result means P is not limit-linear. Analyses normalize(P) when P
/// is not already normalized.
[[nodiscard]] std::vector<Diagnostic> check_limit_linear(const Program& p);

/// Decides type consistency of the semi-grounding of P symbolically.
/// `extra` facts add constants to the pool, as they would for semi-grounding.
[[nodiscard]] std::vector<TypeViolation> check_type_consistent(const Program& p, std::span<const Fact> extra = {});

struct AnalysisReport {
    std::map<std::string, PredicateRole> roles;
    std::vector<Diagnostic> limit_linear;
    std::vector<TypeViolation> type_consistent;

    [[nodiscard]] bool is_limit_linear() const noexcept { return limit_linear.empty(); }
    [[nodiscard]] bool is_type_consistent() const noexcept { return is_limit_linear() && type_consistent.empty(); }
    [[nodiscard]] std::vector<Diagnostic> diagnostics() const;
};

/// Type consistency is only checked for limit-linear programs.
[[nodiscard]] AnalysisReport analyze(const Program& p, std::span<const Fact> extra = {});

} // namespace limitdl::analysis
