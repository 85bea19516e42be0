// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include <gmpxx.h>

namespace limitdl::lia::detail {

using Rational = mpq_class;

/// Rows a_i . x <= b_i over free rational variables x.
struct LpProblem {
    std::size_t num_vars = 0;
    std::vector<std::vector<mpz_class>> rows;
    std::vector<mpz_class> rhs;
};

struct LpResult {
    enum class Status { Infeasible, Unbounded, Optimal };

    Status status = Status::Infeasible;
    Rational value;
    std::vector<Rational> x;
};

/// Maximises c . x with a two-phase tableau simplex using Bland's rule.
LpResult solve_lp(const LpProblem& lp, const std::vector<mpz_class>& c);

} // namespace limitdl::lia::detail
