// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include "oracles.hpp"

#include <optional>

#include "limitdl/frontend.hpp"

namespace limitdl::testing {

std::set<std::size_t> fw_positive_cycle_nodes(std::size_t n,
                                              const std::map<std::pair<std::size_t, std::size_t>, ExtInt>& weights) {
    // d[i][j]: best walk weight found so far; nullopt = no walk.
    std::vector<std::vector<std::optional<ExtInt>>> d(n, std::vector<std::optional<ExtInt>>(n));
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (const auto& [edge, w] : weights) {
        auto& cell = d[edge.first][edge.second];
        if (!cell || *cell < w) {
            cell = w;
        }
        reach[edge.first][edge.second] = true;
    }
    for (std::size_t i = 0; i < n; ++i) {
        reach[i][i] = true;
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!d[i][k]) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                if (!d[k][j]) {
                    continue;
                }
                ExtInt via = d[i][k]->is_infinite() || d[k][j]->is_infinite()
                                 ? ExtInt::infinity()
                                 : ExtInt(BigInt(d[i][k]->value() + d[k][j]->value()));
                if (!d[i][j] || *d[i][j] < via) {
                    d[i][j] = via;
                }
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                reach[i][j] = reach[i][j] || (reach[i][k] && reach[k][j]);
            }
        }
    }
    std::set<std::size_t> out;
    for (std::size_t k = 0; k < n; ++k) {
        if (!d[k][k] || !(ExtInt(0) < *d[k][k])) {
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (reach[i][k] && reach[k][i]) {
                out.insert(i);
            }
        }
    }
    return out;
}

std::vector<std::string> fact_strings(const PseudoInterpretation& j) {
    std::vector<std::string> out;
    for (const auto& f : j.all_facts()) {
        if (f.pred != kIntegersPredicate) {
            out.push_back(to_string(f));
        }
    }
    return out;
}

bool same_facts(const PseudoInterpretation& a, const PseudoInterpretation& b) {
    return fact_strings(a) == fact_strings(b);
}

frontend::SemiGroundProgram ground(const Program& p, std::span<const Fact> extra) {
    return frontend::semi_ground(frontend::normalize(p), extra);
}

} // namespace limitdl::testing
