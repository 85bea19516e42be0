// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "limitdl/core.hpp"

// Reading and rewriting limit programs.
//
// Surface syntax (.lgl):
//
//   % line comment
//   pred edge(obj, obj, int).
//   pred sp(obj, min int).
//   sp(v0, 0).
//   sp(Y, M + N) :- sp(X, M), edge(X, Y, N).
//   tw(X) :- th(X, M), nt(X, Y, N), (M <= N).
//
// Variables start with an upper-case letter or '_', object constants with a
// lower-case letter. Identifiers may carry trailing primes (np', y').
// Comparisons use <, <=, > or >= and may be parenthesised.

namespace limitdl::frontend {

/// Syntax, declaration and sort checks only (no limit-program shape checks).
[[nodiscard]] Program parse_program_unchecked(std::string_view text);

/// parse_program_unchecked followed by validate; throws InputError on the first
/// error diagnostic.
[[nodiscard]] Program parse_program(std::string_view text);

/// Parses a single ground fact such as "sp(v2, 8)" (the trailing '.' is
/// optional) and checks it against the signature. Compound numeric arguments
/// are evaluated; "inf" is rejected.
[[nodiscard]] Fact parse_fact(std::string_view text, const Signature& sig);

/// Checks that P is a limit program: predicate shapes, and rules with a
/// nonempty body have an object or limit head.
[[nodiscard]] std::vector<Diagnostic> validate(const Program& p);

/// Rewrites P so that numeric body atoms are function-free, each numeric
/// variable occurs in at most one standard body atom, and distinct rules use
/// distinct variables. Arithmetic in body atoms is replaced by a fresh variable
/// plus the built-in integer predicate.
[[nodiscard]] Program normalize(const Program& p);

/// True when p already satisfies the three normal-form conditions.
[[nodiscard]] bool is_normalized(const Program& p);

enum class HomogeneousKind { Max, Min };

/// Replaces every predicate of the opposite direction by a fresh one of the
/// requested direction with its numeric argument negated; the query fact is
/// mapped alongside.
[[nodiscard]] std::pair<Program, Fact> homogenise(const Program& p, const Fact& query,
                                                  HomogeneousKind target = HomogeneousKind::Max);

struct SemiGroundProgram {
    Program program;
    /// Index of the rule in the input program each instance came from.
    std::vector<std::size_t> origin;
    std::vector<Diagnostic> diagnostics;

    [[nodiscard]] std::size_t size() const noexcept { return program.rules.size(); }
};

/// Constants a program mentions; query facts may contribute extra ones.
struct ConstantPool {
    std::set<std::string> objects;
    std::set<BigInt, BigIntLess> integers;
};

[[nodiscard]] ConstantPool constants_of(const Program& p, std::span<const Fact> extra = {});

/// Instantiates every variable that is not the numeric argument of a limit (or
/// built-in integer) body atom with every sort-compatible constant.
[[nodiscard]] SemiGroundProgram semi_ground(const Program& p, std::span<const Fact> extra = {});

/// Variables of the rule that stay symbolic after semi-grounding.
[[nodiscard]] std::vector<std::string> limit_variables(const Rule& r, const Signature& sig);

/// Machine check of the semi-ground invariant.
[[nodiscard]] bool is_semi_ground(const Rule& r, const Signature& sig);

} // namespace limitdl::frontend
