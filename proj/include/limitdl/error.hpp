// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace limitdl {

struct SourceLoc {
    std::size_t line = 0;
    std::size_t column = 0;

    [[nodiscard]] bool known() const noexcept { return line != 0; }
    [[nodiscard]] std::string to_string() const;
};

enum class Severity { Error, Warning };

struct Diagnostic {
    Severity severity = Severity::Error;
    SourceLoc loc;
    std::string code;
    std::string message;

    [[nodiscard]] std::string to_string() const;
};

/// Malformed input: lexical, syntactic, sort or declaration errors.
class InputError : public std::runtime_error {
  public:
    InputError(const std::string& msg, SourceLoc loc = {});
    [[nodiscard]] const SourceLoc& loc() const noexcept { return loc_; }

  private:
    SourceLoc loc_;
};

/// A static check (limit-linearity, type consistency) rejected the program.
class AnalysisRejected : public std::runtime_error {
  public:
    AnalysisRejected(const std::string& msg, std::vector<Diagnostic> diagnostics);
    [[nodiscard]] const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

  private:
    std::vector<Diagnostic> diagnostics_;
};

/// Saturation ran past its iteration budget; divergence detection failed.
class IterationBudgetExceeded : public std::runtime_error {
  public:
    explicit IterationBudgetExceeded(unsigned long long budget);
    [[nodiscard]] unsigned long long budget() const noexcept { return budget_; }

  private:
    unsigned long long budget_;
};

/// Caller broke a documented precondition (e.g. passed a rule that is not semi-ground).
class ContractViolation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

} // namespace limitdl
