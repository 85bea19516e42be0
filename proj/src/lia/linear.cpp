// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include <sstream>

#include "limitdl/lia.hpp"

namespace limitdl::lia {

namespace {

void drop_zeros(std::map<std::size_t, BigInt>& m) {
    std::erase_if(m, [](const auto& kv) { return sgn(kv.second) == 0; });
}

BigInt dot(const std::map<std::size_t, BigInt>& coeffs, const std::vector<BigInt>& x) {
    BigInt sum = 0;
    for (const auto& [v, k] : coeffs) {
        if (v >= x.size()) {
            throw ContractViolation("assignment is shorter than the variable list");
        }
        sum += k * x[v];
    }
    return sum;
}

} // namespace

LinearExpr& LinearExpr::operator+=(const LinearExpr& o) {
    for (const auto& [v, k] : o.coeffs) {
        coeffs[v] += k;
    }
    constant += o.constant;
    drop_zeros(coeffs);
    return *this;
}

LinearExpr& LinearExpr::operator-=(const LinearExpr& o) {
    for (const auto& [v, k] : o.coeffs) {
        coeffs[v] -= k;
    }
    constant -= o.constant;
    drop_zeros(coeffs);
    return *this;
}

LinearExpr& LinearExpr::operator*=(const BigInt& k) {
    for (auto& [v, c] : coeffs) {
        c *= k;
    }
    constant *= k;
    drop_zeros(coeffs);
    return *this;
}

BigInt LinearExpr::evaluate(const std::vector<BigInt>& x) const { return dot(coeffs, x) + constant; }

bool operator==(const LinearExpr& a, const LinearExpr& b) {
    if (cmp(a.constant, b.constant) != 0 || a.coeffs.size() != b.coeffs.size()) {
        return false;
    }
    auto it = b.coeffs.begin();
    for (const auto& [v, k] : a.coeffs) {
        if (v != it->first || cmp(k, it->second) != 0) {
            return false;
        }
        ++it;
    }
    return true;
}

Constraint Constraint::make(const LinearExpr& lhs, Rel rel, const LinearExpr& rhs) {
    LinearExpr d = lhs;
    d -= rhs;
    Constraint c;
    c.coeffs = std::move(d.coeffs);
    c.rel = rel;
    c.bound = -d.constant;
    return c;
}

bool Constraint::holds(const std::vector<BigInt>& x) const {
    const BigInt lhs = dot(coeffs, x);
    return rel == Rel::Less ? lhs < bound : lhs <= bound;
}

std::size_t LinearConstraintSystem::add_var(std::string name) {
    vars.push_back(std::move(name));
    return vars.size() - 1;
}

std::optional<std::size_t> LinearConstraintSystem::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i] == name) {
            return i;
        }
    }
    return std::nullopt;
}

void LinearConstraintSystem::add_false() { constraints.push_back(Constraint{{}, Rel::Less, BigInt(0)}); }

bool LinearConstraintSystem::holds(const std::vector<BigInt>& x) const {
    if (x.size() != vars.size()) {
        return false;
    }
    for (const auto& c : constraints) {
        if (!c.holds(x)) {
            return false;
        }
    }
    return true;
}

const char* to_string(SolveOutcome::Kind k) noexcept {
    switch (k) {
    case SolveOutcome::Kind::Infeasible: return "infeasible";
    case SolveOutcome::Kind::Feasible: return "feasible";
    case SolveOutcome::Kind::Optimal: return "optimal";
    case SolveOutcome::Kind::Unbounded: return "unbounded";
    }
    return "?";
}

std::string to_string(const LinearConstraintSystem& c) {
    std::ostringstream out;
    out << "{";
    for (std::size_t i = 0; i < c.constraints.size(); ++i) {
        const auto& k = c.constraints[i];
        if (i != 0) {
            out << ", ";
        }
        out << "(";
        if (k.coeffs.empty()) {
            out << "0";
        }
        bool first = true;
        for (const auto& [v, a] : k.coeffs) {
            if (!first) {
                out << (sgn(a) < 0 ? " - " : " + ");
            } else if (sgn(a) < 0) {
                out << "-";
            }
            first = false;
            BigInt mag = abs(a);
            if (mag != 1) {
                out << mag.get_str() << "*";
            }
            out << c.vars[v];
        }
        out << (k.rel == Rel::Less ? " < " : " <= ") << k.bound.get_str() << ")";
    }
    out << "}";
    return out.str();
}

} // namespace limitdl::lia
