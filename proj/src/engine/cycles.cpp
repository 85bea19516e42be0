// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <functional>

#include "limitdl/engine.hpp"

namespace limitdl::engine {

namespace {

struct Edge {
    std::size_t from;
    std::size_t to;
    const ExtInt* weight;
};

std::vector<std::size_t> strongly_connected(std::size_t n, const std::vector<std::vector<std::size_t>>& succ) {
    std::vector<std::size_t> comp(n, n);
    std::vector<std::size_t> index(n, n);
    std::vector<std::size_t> low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<std::size_t> stack;
    std::size_t counter = 0;
    std::size_t comps = 0;
    std::function<void(std::size_t)> visit = [&](std::size_t v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = 1;
        for (std::size_t w : succ[v]) {
            if (index[w] == n) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w] != 0) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::size_t w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = 0;
                comp[w] = comps;
            } while (w != v);
            ++comps;
        }
    };
    for (std::size_t v = 0; v < n; ++v) {
        if (index[v] == n) {
            visit(v);
        }
    }
    return comp;
}

// Bellman-Ford on negated weights from a virtual source: a relaxation in round
// |nodes| means a negative (i.e. originally positive) cycle.
bool has_positive_cycle(const std::vector<std::size_t>& nodes, const std::vector<Edge>& edges) {
    std::map<std::size_t, BigInt> dist;
    for (std::size_t v : nodes) {
        dist[v] = 0;
    }
    for (std::size_t round = 0; round <= nodes.size(); ++round) {
        bool relaxed = false;
        for (const auto& e : edges) {
            BigInt cand = dist[e.from] - e.weight->value();
            if (cand < dist[e.to]) {
                dist[e.to] = cand;
                relaxed = true;
            }
        }
        if (!relaxed) {
            return false;
        }
    }
    return true;
}

} // namespace

std::vector<std::size_t> positive_cycle_indices(std::size_t n,
                                                const std::map<std::pair<std::size_t, std::size_t>, ExtInt>& weights) {
    std::vector<std::vector<std::size_t>> succ(n);
    for (const auto& [e, w] : weights) {
        succ[e.first].push_back(e.second);
    }
    const auto comp = strongly_connected(n, succ);
    std::map<std::size_t, std::vector<std::size_t>> members;
    for (std::size_t v = 0; v < n; ++v) {
        members[comp[v]].push_back(v);
    }
    std::map<std::size_t, std::vector<Edge>> internal;
    std::map<std::size_t, bool> infinite;
    for (const auto& [e, w] : weights) {
        if (comp[e.first] != comp[e.second]) {
            continue;
        }
        if (w.is_infinite()) {
            infinite[comp[e.first]] = true;
        } else {
            internal[comp[e.first]].push_back(Edge{e.first, e.second, &w});
        }
    }
    std::vector<std::size_t> out;
    for (const auto& [c, nodes] : members) {
        const bool positive = infinite[c] || (internal.contains(c) && has_positive_cycle(nodes, internal[c]));
        if (positive) {
            out.insert(out.end(), nodes.begin(), nodes.end());
        }
    }
    std::ranges::sort(out);
    return out;
}

std::set<LimitKey> positive_cycle_nodes(const ValuePropagationGraph& g) {
    std::set<LimitKey> out;
    for (std::size_t i : positive_cycle_indices(g.nodes.size(), g.weights)) {
        out.insert(g.nodes[i]);
    }
    return out;
}

} // namespace limitdl::engine
