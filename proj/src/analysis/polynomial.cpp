// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include "limitdl/analysis.hpp"

namespace limitdl::analysis {

Polynomial Polynomial::constant(const BigInt& k) {
    Polynomial p;
    p.add({}, k);
    return p;
}

Polynomial Polynomial::variable(const std::string& v) {
    Polynomial p;
    p.add({{v, 1}}, 1);
    return p;
}

Polynomial Polynomial::from_term(const Term& t) {
    switch (t.kind) {
    case Term::Kind::Integer: return constant(t.value);
    case Term::Kind::NumericVar: return variable(t.name);
    case Term::Kind::Compound: {
        Polynomial l = from_term(t.operands[0]);
        Polynomial r = from_term(t.operands[1]);
        switch (t.op) {
        case ArithOp::Add: l += r; return l;
        case ArithOp::Sub: l -= r; return l;
        case ArithOp::Mul: return l * r;
        }
        break;
    }
    default: break;
    }
    throw ContractViolation("term " + limitdl::to_string(t) + " is not numeric");
}

void Polynomial::add(const Monomial& m, const BigInt& k) {
    if (sgn(k) == 0) {
        return;
    }
    auto [it, inserted] = terms_.emplace(m, k);
    if (!inserted) {
        it->second += k;
        if (sgn(it->second) == 0) {
            terms_.erase(it);
        }
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    for (const auto& [m, k] : o.terms_) {
        add(m, k);
    }
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    for (const auto& [m, k] : o.terms_) {
        add(m, -k);
    }
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [ma, ka] : a.terms_) {
        for (const auto& [mb, kb] : b.terms_) {
            Monomial m = ma;
            for (const auto& [v, e] : mb) {
                m[v] += e;
            }
            out.add(m, ka * kb);
        }
    }
    return out;
}

unsigned Polynomial::degree_in(const Monomial& m, const std::set<std::string>& vars) {
    unsigned d = 0;
    for (const auto& [v, e] : m) {
        if (vars.contains(v)) {
            d += e;
        }
    }
    return d;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto& [m, k] : terms_) {
        const bool neg = sgn(k) < 0;
        if (first) {
            out += neg ? "-" : "";
        } else {
            out += neg ? " - " : " + ";
        }
        first = false;
        BigInt mag = abs(k);
        std::string factors;
        for (const auto& [v, e] : m) {
            for (unsigned i = 0; i < e; ++i) {
                factors += (factors.empty() ? "" : "*") + v;
            }
        }
        if (factors.empty()) {
            out += mag.get_str();
        } else if (mag == 1) {
            out += factors;
        } else {
            out += mag.get_str() + "*" + factors;
        }
    }
    return out;
}

std::string SignSet::to_string() const {
    std::string out = "{";
    auto put = [&](bool on, const char* name) {
        if (on) {
            out += (out.size() > 1 ? ", " : "");
            out += name;
        }
    };
    put(negative, "negative");
    put(zero, "zero");
    put(positive, "positive");
    return out + "}";
}

SignSet sign_possibilities(const BigInt& coeff, const Monomial& vars, const IntegerPool& pool) {
    SignSet s;
    const int c = sgn(coeff);
    bool any_var = false;
    bool odd = false;
    unsigned long total = 0;
    for (const auto& [v, e] : vars) {
        if (e == 0) {
            continue;
        }
        any_var = true;
        odd = odd || (e % 2 == 1);
        total += e;
    }
    if (any_var && pool.empty()) {
        return s;
    }
    if (c == 0) {
        s.zero = true;
        return s;
    }
    if (!any_var) {
        (c > 0 ? s.positive : s.negative) = true;
        return s;
    }
    const bool has_pos = sgn(*pool.rbegin()) > 0;
    const bool has_neg = sgn(*pool.begin()) < 0;
    s.zero = pool.contains(BigInt(0));
    if (!has_pos && !has_neg) {
        return s;
    }
    if (!odd) {
        (c > 0 ? s.positive : s.negative) = true;
    } else if (has_pos && has_neg) {
        s.positive = s.negative = true;
    } else if (has_pos) {
        (c > 0 ? s.positive : s.negative) = true;
    } else {
        const int sign = (total % 2 == 0) ? c : -c;
        (sign > 0 ? s.positive : s.negative) = true;
    }
    return s;
}

SignSet sign_possibilities(const Term& t, const IntegerPool& pool, std::vector<Diagnostic>* diagnostics) {
    const Polynomial p = Polynomial::from_term(t);
    if (p.terms().size() > 1) {
        throw ContractViolation("term " + limitdl::to_string(t) + " is not a product");
    }
    if (p.is_zero()) {
        return SignSet{false, true, false};
    }
    const auto& [mono, coeff] = *p.terms().begin();
    SignSet s = sign_possibilities(coeff, mono, pool);
    if (s.empty() && diagnostics != nullptr) {
        diagnostics->push_back(Diagnostic{Severity::Warning, {}, "empty-pool",
                                          "term " + limitdl::to_string(t) +
                                              " has variables but there are no integer constants to instantiate them"});
    }
    return s;
}

} // namespace limitdl::analysis
