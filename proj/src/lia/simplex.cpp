// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include "simplex.hpp"

namespace limitdl::lia::detail {

namespace {

// Dense tableau over nonnegative columns: p_1..p_n, q_1..q_n, slacks, artificials.
class Tableau {
  public:
    Tableau(const LpProblem& lp) : n_(lp.num_vars), m_(lp.rows.size()) {
        slack0_ = 2 * n_;
        art0_ = slack0_ + m_;
        std::size_t arts = 0;
        for (const auto& b : lp.rhs) {
            arts += sgn(b) < 0 ? 1 : 0;
        }
        cols_ = art0_ + arts;
        t_.assign(m_, std::vector<Rational>(cols_ + 1));
        basis_.assign(m_, 0);
        std::size_t next_art = art0_;
        for (std::size_t i = 0; i < m_; ++i) {
            const bool flip = sgn(lp.rhs[i]) < 0;
            const int s = flip ? -1 : 1;
            for (std::size_t j = 0; j < n_; ++j) {
                t_[i][j] = lp.rows[i][j] * s;
                t_[i][n_ + j] = -lp.rows[i][j] * s;
            }
            t_[i][slack0_ + i] = s;
            t_[i][cols_] = lp.rhs[i] * s;
            if (flip) {
                t_[i][next_art] = 1;
                basis_[i] = next_art++;
            } else {
                basis_[i] = slack0_ + i;
            }
        }
    }

    // Returns false when the objective is unbounded.
    bool maximise(const std::vector<Rational>& d, std::size_t usable) {
        std::vector<Rational> reduced(usable);
        while (true) {
            std::size_t enter = usable;
            for (std::size_t j = 0; j < usable && enter == usable; ++j) {
                Rational r = d[j];
                for (std::size_t i = 0; i < t_.size(); ++i) {
                    if (sgn(t_[i][j]) != 0) {
                        r -= d[basis_[i]] * t_[i][j];
                    }
                }
                if (sgn(r) > 0) {
                    enter = j;
                }
            }
            if (enter == usable) {
                return true;
            }
            std::size_t leave = t_.size();
            Rational best;
            for (std::size_t i = 0; i < t_.size(); ++i) {
                if (sgn(t_[i][enter]) <= 0) {
                    continue;
                }
                Rational ratio = t_[i][cols_] / t_[i][enter];
                if (leave == t_.size() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == t_.size()) {
                return false;
            }
            pivot(leave, enter);
        }
    }

    Rational objective(const std::vector<Rational>& d) const {
        Rational v = 0;
        for (std::size_t i = 0; i < t_.size(); ++i) {
            v += d[basis_[i]] * t_[i][cols_];
        }
        return v;
    }

    // After phase one: pivot artificials out of the basis or drop redundant rows.
    void purge_artificials() {
        for (std::size_t i = 0; i < t_.size();) {
            if (basis_[i] < art0_) {
                ++i;
                continue;
            }
            std::size_t j = 0;
            while (j < art0_ && sgn(t_[i][j]) == 0) {
                ++j;
            }
            if (j == art0_) {
                t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
                continue;
            }
            pivot(i, j);
            ++i;
        }
    }

    std::vector<Rational> solution() const {
        std::vector<Rational> y(cols_);
        for (std::size_t i = 0; i < t_.size(); ++i) {
            y[basis_[i]] = t_[i][cols_];
        }
        std::vector<Rational> x(n_);
        for (std::size_t j = 0; j < n_; ++j) {
            x[j] = y[j] - y[n_ + j];
        }
        return x;
    }

    std::size_t columns() const { return cols_; }
    std::size_t first_artificial() const { return art0_; }
    std::size_t structural() const { return n_; }

  private:
    void pivot(std::size_t row, std::size_t col) {
        const Rational p = t_[row][col];
        for (auto& v : t_[row]) {
            v /= p;
        }
        for (std::size_t i = 0; i < t_.size(); ++i) {
            if (i == row || sgn(t_[i][col]) == 0) {
                continue;
            }
            const Rational f = t_[i][col];
            for (std::size_t j = 0; j <= cols_; ++j) {
                if (sgn(t_[row][j]) != 0) {
                    t_[i][j] -= f * t_[row][j];
                }
            }
        }
        basis_[row] = col;
    }

    std::size_t n_;
    std::size_t m_;
    std::size_t slack0_ = 0;
    std::size_t art0_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::vector<Rational>> t_;
    std::vector<std::size_t> basis_;
};

} // namespace

LpResult solve_lp(const LpProblem& lp, const std::vector<mpz_class>& c) {
    Tableau tab(lp);
    LpResult out;
    if (tab.columns() > tab.first_artificial()) {
        std::vector<Rational> phase1(tab.columns(), 0);
        for (std::size_t j = tab.first_artificial(); j < tab.columns(); ++j) {
            phase1[j] = -1;
        }
        tab.maximise(phase1, tab.columns());
        if (sgn(tab.objective(phase1)) < 0) {
            out.status = LpResult::Status::Infeasible;
            return out;
        }
        tab.purge_artificials();
    }
    std::vector<Rational> d(tab.columns(), 0);
    for (std::size_t j = 0; j < tab.structural(); ++j) {
        d[j] = c[j];
        d[tab.structural() + j] = -c[j];
    }
    if (!tab.maximise(d, tab.first_artificial())) {
        out.status = LpResult::Status::Unbounded;
        return out;
    }
    out.status = LpResult::Status::Optimal;
    out.value = tab.objective(d);
    out.x = tab.solution();
    return out;
}

} // namespace limitdl::lia::detail
