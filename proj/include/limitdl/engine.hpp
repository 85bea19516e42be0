// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "limitdl/core.hpp"
#include "limitdl/frontend.hpp"

// Fixpoint evaluation of semi-ground limit programs: the immediate consequence
// operator, value propagation graphs and saturation with divergence detection.

namespace limitdl::engine {

struct EngineConfig {
    /// Overrides the default 8|P|^6 iteration budget.
    std::optional<std::uint64_t> max_iterations;
    /// Emit one JSON line per iteration to trace_stream (std::cerr if null).
    bool trace = false;
    std::ostream* trace_stream = nullptr;
    /// Require type consistency before saturating. Limit-linearity is always required.
    bool enforce_stability_precondition = true;
};

/// hd(r, J): the head fact when r is applicable to J; limit heads carry opt(r, J).
[[nodiscard]] std::optional<Fact> evaluate_rule(const Rule& r, const PseudoInterpretation& j);

/// T_P(J), folded in rule order starting from the empty pseudo-interpretation.
[[nodiscard]] PseudoInterpretation tp_step(const frontend::SemiGroundProgram& p, const PseudoInterpretation& j);

/// T_P(J) is below J.
[[nodiscard]] bool is_pseudo_model(const frontend::SemiGroundProgram& p, const PseudoInterpretation& j);

struct ValuePropagationGraph {
    std::vector<LimitKey> nodes; ///< sorted
    std::map<std::pair<std::size_t, std::size_t>, ExtInt> weights;

    [[nodiscard]] std::optional<std::size_t> node_index(const LimitKey& k) const;
    [[nodiscard]] std::optional<ExtInt> weight(const LimitKey& from, const LimitKey& to) const;
};

[[nodiscard]] ValuePropagationGraph build_vpg(const frontend::SemiGroundProgram& p, const PseudoInterpretation& j);

/// Nodes on a cycle (closed walk) of positive total weight; an infinite edge
/// weight makes its cycles positive.
[[nodiscard]] std::set<LimitKey> positive_cycle_nodes(const ValuePropagationGraph& g);

/// Same over node indices 0..n-1.
[[nodiscard]] std::vector<std::size_t> positive_cycle_indices(
    std::size_t n, const std::map<std::pair<std::size_t, std::size_t>, ExtInt>& weights);

/// 8|P|^6, clamped to the range of uint64.
[[nodiscard]] std::uint64_t iteration_budget(std::size_t semi_ground_rules);

struct SaturationResult {
    PseudoInterpretation closure;
    std::uint64_t iterations = 0;
    std::uint64_t budget = 0;
    std::uint64_t promotions = 0;
};

/// Saturation with divergence detection, without the final entailment test. Throws AnalysisRejected when
/// the gate rejects P and IterationBudgetExceeded when the budget runs out.
[[nodiscard]] SaturationResult saturate_with_stats(const frontend::SemiGroundProgram& p, const EngineConfig& cfg = {});
[[nodiscard]] PseudoInterpretation saturate(const frontend::SemiGroundProgram& p, const EngineConfig& cfg = {});

/// Throws AnalysisRejected unless P is limit-linear and (when `type_consistency`)
/// type-consistent.
void require_static_checks(const Program& p, bool type_consistency, std::span<const Fact> extra = {});

struct Materialization {
    frontend::SemiGroundProgram semi_ground;
    SaturationResult result;
};

/// Gate on P, then normalize, semi-ground (with `extra` constants) and saturate.
[[nodiscard]] Materialization materialize(const Program& p, const EngineConfig& cfg = {},
                                          std::span<const Fact> extra = {});

/// P |= alpha.
[[nodiscard]] bool entails(const Program& p, const Fact& alpha, const EngineConfig& cfg = {});

} // namespace limitdl::engine
