// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include <sstream>

#include "limitdl/core.hpp"

namespace limitdl {

std::string SourceLoc::to_string() const {
    if (!known()) {
        return "?";
    }
    return std::to_string(line) + ":" + std::to_string(column);
}

std::string Diagnostic::to_string() const {
    std::ostringstream out;
    if (loc.known()) {
        out << loc.to_string() << ": ";
    }
    out << (severity == Severity::Error ? "error" : "warning");
    if (!code.empty()) {
        out << " [" << code << "]";
    }
    out << ": " << message;
    return out.str();
}

InputError::InputError(const std::string& msg, SourceLoc loc)
    : std::runtime_error(loc.known() ? loc.to_string() + ": " + msg : msg), loc_(loc) {}

AnalysisRejected::AnalysisRejected(const std::string& msg, std::vector<Diagnostic> diagnostics)
    : std::runtime_error(msg), diagnostics_(std::move(diagnostics)) {}

IterationBudgetExceeded::IterationBudgetExceeded(unsigned long long budget)
    : std::runtime_error("saturation exceeded its budget of " + std::to_string(budget) +
                         " iterations; divergence detection failed (is the program stable?)"),
      budget_(budget) {}

std::strong_ordering compare(const BigInt& a, const BigInt& b) noexcept {
    const int c = cmp(a, b);
    if (c < 0) {
        return std::strong_ordering::less;
    }
    if (c > 0) {
        return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

const BigInt& ExtInt::value() const {
    if (infinite_) {
        throw ContractViolation("value() called on infinity");
    }
    return value_;
}

std::string ExtInt::to_string() const { return infinite_ ? std::string("inf") : value_.get_str(); }

std::optional<ExtInt> ExtInt::parse(const std::string& text) {
    if (text == "inf") {
        return infinity();
    }
    if (text.empty()) {
        return std::nullopt;
    }
    std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (i == text.size()) {
        return std::nullopt;
    }
    for (std::size_t k = i; k < text.size(); ++k) {
        if (text[k] < '0' || text[k] > '9') {
            return std::nullopt;
        }
    }
    return ExtInt(BigInt(text[0] == '+' ? text.substr(1) : text, 10));
}

bool operator==(const ExtInt& a, const ExtInt& b) noexcept {
    if (a.infinite_ || b.infinite_) {
        return a.infinite_ == b.infinite_;
    }
    return cmp(a.value_, b.value_) == 0;
}

std::strong_ordering operator<=>(const ExtInt& a, const ExtInt& b) noexcept {
    if (a.infinite_ && b.infinite_) {
        return std::strong_ordering::equal;
    }
    if (a.infinite_) {
        return std::strong_ordering::greater;
    }
    if (b.infinite_) {
        return std::strong_ordering::less;
    }
    return compare(a.value_, b.value_);
}

ExtInt operator+(const ExtInt& a, const BigInt& k) {
    if (a.infinite_) {
        return a;
    }
    return ExtInt(BigInt(a.value_ + k));
}

ExtInt operator-(const ExtInt& a, const BigInt& k) {
    if (a.infinite_) {
        return a;
    }
    return ExtInt(BigInt(a.value_ - k));
}

ExtInt max(const ExtInt& a, const ExtInt& b) { return a < b ? b : a; }

} // namespace limitdl
