// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include "limitdl/lia.hpp"
#include "simplex.hpp"

namespace limitdl::lia {

namespace {

using detail::LpProblem;
using detail::LpResult;
using detail::Rational;

struct Row {
    std::map<std::size_t, BigInt> coeffs;
    BigInt bound; // sum <= bound
};

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

BigInt ceil_div(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

BigInt floor_q(const Rational& r) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

// Strict rows become non-strict, coefficients are divided by their gcd and the
// bound rounded down. Returns false if some variable-free row is violated.
bool tighten(const LinearConstraintSystem& c, std::vector<Row>& rows) {
    for (const auto& k : c.constraints) {
        Row r;
        r.bound = k.rel == Rel::Less ? BigInt(k.bound - 1) : k.bound;
        for (const auto& [v, a] : k.coeffs) {
            if (sgn(a) != 0) {
                r.coeffs.emplace(v, a);
            }
        }
        if (r.coeffs.empty()) {
            if (sgn(r.bound) < 0) {
                return false;
            }
            continue;
        }
        BigInt g = 0;
        for (const auto& [v, a] : r.coeffs) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
        }
        if (g != 1) {
            for (auto& [v, a] : r.coeffs) {
                a /= g;
            }
            r.bound = floor_div(r.bound, g);
        }
        rows.push_back(std::move(r));
    }
    return true;
}

std::vector<BigInt> objective_vector(const Objective& obj, std::size_t n) {
    std::vector<BigInt> c(n, 0);
    for (const auto& [v, k] : obj.expr.coeffs) {
        if (v >= n) {
            throw ContractViolation("objective mentions an undeclared variable");
        }
        c[v] = obj.direction == Direction::Maximize ? k : BigInt(-k);
    }
    return c;
}

SolveOutcome finish(SolveOutcome::Kind kind, std::vector<BigInt> x, const std::optional<Objective>& obj) {
    SolveOutcome out;
    out.kind = kind;
    if (obj) {
        out.value = obj->expr.evaluate(x);
    }
    out.witness = std::move(x);
    return out;
}

// Every row has at most one variable: interval reasoning per variable.
SolveOutcome solve_intervals(std::size_t n, const std::vector<Row>& rows, const std::optional<Objective>& obj) {
    std::vector<std::optional<BigInt>> lo(n);
    std::vector<std::optional<BigInt>> hi(n);
    for (const auto& r : rows) {
        const auto& [v, a] = *r.coeffs.begin();
        if (sgn(a) > 0) {
            BigInt h = floor_div(r.bound, a);
            if (!hi[v] || h < *hi[v]) {
                hi[v] = h;
            }
        } else {
            BigInt l = ceil_div(r.bound, a);
            if (!lo[v] || l > *lo[v]) {
                lo[v] = l;
            }
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (lo[v] && hi[v] && *lo[v] > *hi[v]) {
            return SolveOutcome{};
        }
    }
    const std::vector<BigInt> c = obj ? objective_vector(*obj, n) : std::vector<BigInt>(n, 0);
    std::vector<BigInt> x(n);
    for (std::size_t v = 0; v < n; ++v) {
        if (sgn(c[v]) > 0) {
            if (!hi[v]) {
                return SolveOutcome{SolveOutcome::Kind::Unbounded, {}, 0};
            }
            x[v] = *hi[v];
        } else if (sgn(c[v]) < 0) {
            if (!lo[v]) {
                return SolveOutcome{SolveOutcome::Kind::Unbounded, {}, 0};
            }
            x[v] = *lo[v];
        } else {
            x[v] = 0;
            if (lo[v] && x[v] < *lo[v]) {
                x[v] = *lo[v];
            }
            if (hi[v] && x[v] > *hi[v]) {
                x[v] = *hi[v];
            }
        }
    }
    return finish(obj ? SolveOutcome::Kind::Optimal : SolveOutcome::Kind::Feasible, std::move(x), obj);
}

LpProblem to_lp(std::size_t n, const std::vector<Row>& rows) {
    LpProblem lp;
    lp.num_vars = n;
    for (const auto& r : rows) {
        std::vector<BigInt> dense(n, 0);
        for (const auto& [v, a] : r.coeffs) {
            dense[v] = a;
        }
        lp.rows.push_back(std::move(dense));
        lp.rhs.push_back(r.bound);
    }
    return lp;
}

// If an integer program of this shape has a (optimal) solution, it has one whose
// entries are bounded by N * ((m + 1) * a)^(2(m + 1) + 1) in standard form.
BigInt solution_box(std::size_t n, const std::vector<Row>& rows, const std::vector<BigInt>& c) {
    BigInt a = 1;
    for (const auto& r : rows) {
        for (const auto& [v, k] : r.coeffs) {
            a = std::max(a, BigInt(abs(k)));
        }
        a = std::max(a, BigInt(abs(r.bound)));
    }
    for (const auto& k : c) {
        a = std::max(a, BigInt(abs(k)));
    }
    const std::size_t m = rows.size() + 1;
    BigInt base = BigInt(static_cast<unsigned long>(m)) * a;
    BigInt power;
    mpz_pow_ui(power.get_mpz_t(), base.get_mpz_t(), 2 * m + 1);
    return BigInt(static_cast<unsigned long>(2 * n + m)) * power;
}

// Depth-first branch-and-bound on the box-bounded problem. With a zero
// objective, stops at the first integer point.
std::optional<std::vector<BigInt>> branch_and_bound(std::size_t n, const std::vector<Row>& rows,
                                                    const std::vector<BigInt>& c, const BigInt& box) {
    const bool feasibility_only = std::ranges::all_of(c, [](const BigInt& k) { return sgn(k) == 0; });
    LpProblem base = to_lp(n, rows);
    for (std::size_t v = 0; v < n; ++v) {
        std::vector<BigInt> up(n, 0);
        up[v] = 1;
        base.rows.push_back(up);
        base.rhs.push_back(box);
        up[v] = -1;
        base.rows.push_back(std::move(up));
        base.rhs.push_back(box);
    }
    struct Node {
        std::vector<std::pair<std::size_t, BigInt>> upper; // x_v <= k
        std::vector<std::pair<std::size_t, BigInt>> lower; // x_v >= k
    };
    std::vector<Node> stack{Node{}};
    std::optional<std::vector<BigInt>> best;
    BigInt best_value;
    while (!stack.empty()) {
        Node node = std::move(stack.back());
        stack.pop_back();
        LpProblem lp = base;
        for (const auto& [v, k] : node.upper) {
            std::vector<BigInt> row(n, 0);
            row[v] = 1;
            lp.rows.push_back(std::move(row));
            lp.rhs.push_back(k);
        }
        for (const auto& [v, k] : node.lower) {
            std::vector<BigInt> row(n, 0);
            row[v] = -1;
            lp.rows.push_back(std::move(row));
            lp.rhs.push_back(-k);
        }
        const LpResult res = detail::solve_lp(lp, c);
        if (res.status != LpResult::Status::Optimal) {
            continue; // boxed, so only infeasible is possible here
        }
        if (best && floor_q(res.value) <= best_value) {
            continue;
        }
        std::size_t frac = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (res.x[v].get_den() != 1) {
                frac = v;
                break;
            }
        }
        if (frac == n) {
            std::vector<BigInt> x(n);
            for (std::size_t v = 0; v < n; ++v) {
                x[v] = res.x[v].get_num();
            }
            BigInt value = 0;
            for (std::size_t v = 0; v < n; ++v) {
                value += c[v] * x[v];
            }
            if (!best || value > best_value) {
                best = std::move(x);
                best_value = value;
            }
            if (feasibility_only) {
                break;
            }
            continue;
        }
        const BigInt f = floor_q(res.x[frac]);
        Node up = node;
        up.lower.emplace_back(frac, f + 1);
        Node down = std::move(node);
        down.upper.emplace_back(frac, f);
        stack.push_back(std::move(up));
        stack.push_back(std::move(down));
    }
    return best;
}

bool single_variable_rows(const std::vector<Row>& rows) {
    return std::ranges::all_of(rows, [](const Row& r) { return r.coeffs.size() == 1; });
}

SolveOutcome solve(const LinearConstraintSystem& sys, const std::optional<Objective>& obj) {
    const std::size_t n = sys.vars.size();
    for (const auto& k : sys.constraints) {
        for (const auto& [v, a] : k.coeffs) {
            if (v >= n) {
                throw ContractViolation("constraint mentions an undeclared variable");
            }
        }
    }
    std::vector<Row> rows;
    if (!tighten(sys, rows)) {
        return SolveOutcome{};
    }
    if (single_variable_rows(rows)) {
        return solve_intervals(n, rows, obj);
    }
    const std::vector<BigInt> zero(n, 0);
    const std::vector<BigInt> c = obj ? objective_vector(*obj, n) : zero;
    const BigInt box = solution_box(n, rows, c);
    auto feasible = branch_and_bound(n, rows, zero, box);
    if (!feasible) {
        return SolveOutcome{};
    }
    if (!obj) {
        return finish(SolveOutcome::Kind::Feasible, std::move(*feasible), obj);
    }
    // A feasible integer program is unbounded exactly when its relaxation is.
    const LpResult relaxed = detail::solve_lp(to_lp(n, rows), c);
    if (relaxed.status == LpResult::Status::Unbounded) {
        return SolveOutcome{SolveOutcome::Kind::Unbounded, {}, 0};
    }
    auto best = branch_and_bound(n, rows, c, box);
    if (!best) {
        throw ContractViolation("branch-and-bound lost a feasible integer point");
    }
    return finish(SolveOutcome::Kind::Optimal, std::move(*best), obj);
}

} // namespace

SolveOutcome check_feasible(const LinearConstraintSystem& c) { return solve(c, std::nullopt); }

SolveOutcome optimize(const LinearConstraintSystem& c, const Objective& obj) { return solve(c, obj); }

SolveOutcome brute_force_box(const LinearConstraintSystem& c, const std::optional<Objective>& obj, const BigInt& bound) {
    const std::size_t n = c.vars.size();
    std::vector<BigInt> x(n, BigInt(-bound));
    std::optional<std::vector<BigInt>> best;
    BigInt best_value;
    while (true) {
        if (c.holds(x)) {
            if (!obj) {
                return finish(SolveOutcome::Kind::Feasible, x, obj);
            }
            BigInt v = obj->expr.evaluate(x);
            const bool better = !best || (obj->direction == Direction::Maximize ? v > best_value : v < best_value);
            if (better) {
                best = x;
                best_value = v;
            }
        }
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (x[i] < bound) {
                ++x[i];
                break;
            }
            x[i] = -bound;
            if (i == 0) {
                i = n + 1;
                break;
            }
        }
        if (n == 0 || i == n + 1) {
            break;
        }
    }
    if (!best) {
        return SolveOutcome{};
    }
    return finish(SolveOutcome::Kind::Optimal, std::move(*best), obj);
}

} // namespace limitdl::lia
