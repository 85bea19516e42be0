// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "limitdl/core.hpp"

// Exact linear integer arithmetic over small systems: rational two-phase
// simplex for the relaxation, branch-and-bound for integrality.

namespace limitdl::lia {

/// sum(coeffs[v] * x_v) + constant; variables are indices into the owning system.
struct LinearExpr {
    std::map<std::size_t, BigInt> coeffs;
    BigInt constant;

    [[nodiscard]] bool is_constant() const noexcept { return coeffs.empty(); }
    LinearExpr& operator+=(const LinearExpr& o);
    LinearExpr& operator-=(const LinearExpr& o);
    LinearExpr& operator*=(const BigInt& k);
    [[nodiscard]] BigInt evaluate(const std::vector<BigInt>& x) const;

    friend bool operator==(const LinearExpr& a, const LinearExpr& b);
};

enum class Rel { Less, LessEq };

/// sum(coeffs[v] * x_v)  rel  bound
struct Constraint {
    std::map<std::size_t, BigInt> coeffs;
    Rel rel = Rel::LessEq;
    BigInt bound;

    /// lhs rel rhs, moved into normal form.
    static Constraint make(const LinearExpr& lhs, Rel rel, const LinearExpr& rhs);
    [[nodiscard]] bool holds(const std::vector<BigInt>& x) const;
};

struct LinearConstraintSystem {
    std::vector<std::string> vars;
    std::vector<Constraint> constraints;

    std::size_t add_var(std::string name);
    [[nodiscard]] std::optional<std::size_t> index_of(const std::string& name) const;
    void add(Constraint c) { constraints.push_back(std::move(c)); }
    /// Adds the unsatisfiable constraint 0 < 0.
    void add_false();
    [[nodiscard]] bool holds(const std::vector<BigInt>& x) const;
};

enum class Direction { Minimize, Maximize };

struct Objective {
    Direction direction = Direction::Maximize;
    LinearExpr expr;
};

struct SolveOutcome {
    enum class Kind { Infeasible, Feasible, Optimal, Unbounded };

    Kind kind = Kind::Infeasible;
    std::vector<BigInt> witness; ///< one value per system variable (Feasible, Optimal)
    BigInt value;                ///< objective value (Optimal)

    [[nodiscard]] bool has_solution() const noexcept { return kind == Kind::Feasible || kind == Kind::Optimal; }
};

[[nodiscard]] const char* to_string(SolveOutcome::Kind k) noexcept;
[[nodiscard]] std::string to_string(const LinearConstraintSystem& c);

/// Integer feasibility. Returns Infeasible or Feasible with a witness.
[[nodiscard]] SolveOutcome check_feasible(const LinearConstraintSystem& c);

/// Exact integer optimum: Infeasible, Optimal or Unbounded.
[[nodiscard]] SolveOutcome optimize(const LinearConstraintSystem& c, const Objective& obj);

/// Exhaustive search of [-bound, bound]^n; an independent oracle for tests.
/// Without an objective the first feasible point (lexicographic order) is returned.
[[nodiscard]] SolveOutcome brute_force_box(const LinearConstraintSystem& c, const std::optional<Objective>& obj,
                                           const BigInt& bound);

// ---------------------------------------------------------------------------
// Rule systems
// ---------------------------------------------------------------------------

/// Translates a numeric term over the system's variables (created on demand).
/// Throws ContractViolation if the term is not linear.
[[nodiscard]] LinearExpr linearize(const Term& t, LinearConstraintSystem& c);

/// C(r, J) for a semi-ground rule r. Throws ContractViolation otherwise.
[[nodiscard]] LinearConstraintSystem build_constraint_system(const Rule& r, const PseudoInterpretation& j);

/// The head value of a semi-ground rule as an objective over the variables
/// of `c` (maximise for max heads, minimise for min heads). Empty when the
/// head is not a limit atom.
[[nodiscard]] std::optional<Objective> head_objective(const Rule& r, const Signature& sig, LinearConstraintSystem& c);

/// opt(r, J) for a rule with a limit head: nullopt when r is not applicable,
/// infinity when the head value is unbounded.
[[nodiscard]] std::optional<ExtInt> rule_optimum(const Rule& r, const PseudoInterpretation& j);

} // namespace limitdl::lia
