// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "limitdl/core.hpp"

// Independent reference computations used to check the engine.

namespace limitdl::verifier {

// ---------------------------------------------------------------------------
// Naive fixpoint over a numeric window
// ---------------------------------------------------------------------------
struct OracleOptions {
    std::int64_t value_cap = 32;
    std::uint64_t iteration_cap = 100000;
    /// Numeric variables range over [-(cap + margin), cap + margin].
    std::int64_t window_margin = 24;
};

struct OracleResult {
    /// Overflowed keys appear with value infinity.
    PseudoInterpretation closure;
    std::set<LimitKey> overflowed_keys;
    /// Sweeps that changed the model.
    std::uint64_t iterations = 0;
    /// The iteration cap was hit before a fixpoint.
    bool inconclusive = false;
    /// Some best head value was attained at the edge of the window, or a limit
    /// value fell outside it.
    bool window_exceeded = false;
};

/// Least limit-closed model of P by brute-force grounding of every numeric
/// variable over a window around [-cap, cap] and Gauss-Seidel sweeps. A limit
/// value beyond the cap (in the improving direction) is flagged and treated as
/// infinity. Works on any valid program: no normalization, no solver.
[[nodiscard]] OracleResult naive_fixpoint_oracle(const Program& p, const OracleOptions& opts = {});

struct DoublingResult {
    /// Result at the largest cap; `divergent` keys overflowed at every cap.
    OracleResult result;
    std::set<LimitKey> divergent;
    /// Keys that overflowed at some cap but settled at a larger one.
    std::set<LimitKey> settled;
};

/// Runs the oracle at caps B, 2B and 4B.
[[nodiscard]] DoublingResult naive_oracle_with_doubling(const Program& p, std::int64_t base_cap,
                                                        const OracleOptions& opts = {});

// ---------------------------------------------------------------------------
// Bounded counter-model search
// ---------------------------------------------------------------------------

/// A pseudo-model J of P over the heads of the semi-grounding of P (with the
/// constants of alpha), with every integer in [-bound, bound], and J not
/// satisfying alpha; or nullopt if none exists within the bound.
[[nodiscard]] std::optional<PseudoInterpretation> counter_model_search(const Program& p, const Fact& alpha,
                                                                       std::int64_t bound);

// ---------------------------------------------------------------------------
// Graph references for the sample programs
// ---------------------------------------------------------------------------
struct WeightedEdge {
    std::string from;
    std::string to;
    BigInt weight;
};

struct ShortestPathInstance {
    std::vector<WeightedEdge> edges;
    /// Initial distance per source node.
    std::map<std::string, BigInt> sources;
};

struct PathCountInstance {
    /// Nodes in aggregation order.
    std::vector<std::string> nodes;
    std::vector<std::pair<std::string, std::string>> edges;
    /// Per-node bandwidth; empty for plain counting.
    std::map<std::string, BigInt> bandwidth;
};

struct DiffusionInstance {
    /// Agents in aggregation order.
    std::vector<std::string> agents;
    std::vector<std::pair<std::string, std::string>> follows; ///< (follower, followed)
    std::map<std::string, BigInt> threshold;
    std::set<std::string> sources;
};

/// Distances from the sources (negative weights rejected); unreachable nodes are absent.
[[nodiscard]] std::map<std::string, BigInt> shortest_path(const ShortestPathInstance& g);

/// Number of paths for every ordered pair of nodes (a node has one path to
/// itself). Throws InputError on a cyclic graph. With bandwidths, the value
/// the bandwidth rule derives: for x != y the best over z of
/// min(sum of counts from x's successors up to z in the node order, bw(z)).
[[nodiscard]] std::map<std::pair<std::string, std::string>, BigInt> dag_path_count(const PathCountInstance& g);

/// Agents that eventually tweet.
[[nodiscard]] std::set<std::string> diffusion(const DiffusionInstance& g);

/// Program text for the instances (the sample programs plus facts).
[[nodiscard]] std::string shortest_path_program(const ShortestPathInstance& g);
[[nodiscard]] std::string path_count_program(const PathCountInstance& g);
[[nodiscard]] std::string diffusion_program(const DiffusionInstance& g);

/// Instance extraction from program facts (edge/3 + sp facts; node/1, edge/2,
/// first/1, next/2, bw/2; follows/2, th/2, tw/1, first/1, next/2).
[[nodiscard]] ShortestPathInstance shortest_path_instance(const Program& p);
[[nodiscard]] PathCountInstance path_count_instance(const Program& p);
[[nodiscard]] DiffusionInstance diffusion_instance(const Program& p);

} // namespace limitdl::verifier
