// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include <functional>
#include <queue>
#include <sstream>

#include "limitdl/verifier.hpp"

namespace limitdl::verifier {
namespace {

constexpr const char* kShortestPathRules = R"(pred edge(obj, obj, int).
pred sp(obj, min int).
sp(Y, M + N) :- sp(X, M), edge(X, Y, N).
)";

constexpr const char* kPathCountDecls = R"(pred node(obj).
pred edge(obj, obj).
pred first(obj).
pred next(obj, obj).
pred np(obj, obj, max int).
pred np'(obj, obj, obj, max int).
np(X, X, 1) :- node(X).
np'(X, Y, Z, 0) :- node(X), node(Y), first(Z).
np'(X, Y, Z, M) :- edge(X, Z), np(Z, Y, M), first(Z).
np'(X, Y, Z, M) :- np'(X, Y, Z', M), next(Z', Z).
np'(X, Y, Z, M + N) :- np'(X, Y, Z', M), next(Z', Z), edge(X, Z), np(Z, Y, N).
)";

constexpr const char* kDiffusionRules = R"(pred follows(obj, obj).
pred th(obj, int).
pred first(obj).
pred next(obj, obj).
pred tw(obj).
pred nt(obj, obj, max int).
nt(X, Y, 0) :- follows(X, Y'), first(Y).
nt(X, Y, 1) :- follows(X, Y), first(Y), tw(Y).
nt(X, Y, M) :- nt(X, Y', M), next(Y', Y).
nt(X, Y, M + 1) :- nt(X, Y', M), next(Y', Y), follows(X, Y), tw(Y).
tw(X) :- th(X, M), nt(X, Y, N), (M <= N).
)";

void order_facts(std::ostringstream& out, const std::vector<std::string>& order) {
    if (order.empty()) {
        return;
    }
    out << "first(" << order.front() << ").\n";
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        out << "next(" << order[i] << ", " << order[i + 1] << ").\n";
    }
}

// Ground facts of the program, by predicate.
std::map<std::string, std::vector<const Rule*>> facts_by_pred(const Program& p) {
    std::map<std::string, std::vector<const Rule*>> out;
    for (const auto& r : p.rules) {
        if (r.is_fact()) {
            out[r.head.pred].push_back(&r);
        }
    }
    return out;
}

const std::string& obj(const Rule& r, std::size_t i) {
    const Term& t = r.head.args.at(i);
    if (t.kind != Term::Kind::ObjectConst) {
        throw InputError("expected an object constant in " + to_string(r), r.loc);
    }
    return t.name;
}

BigInt num(const Rule& r, std::size_t i) {
    const Term& t = r.head.args.at(i);
    if (!t.is_numeric() || !t.is_ground()) {
        throw InputError("expected an integer in " + to_string(r), r.loc);
    }
    return t.evaluate();
}

void require_arity(const Rule& r, std::size_t n) {
    if (r.head.args.size() != n) {
        throw InputError("unexpected arity in " + to_string(r), r.loc);
    }
}

std::vector<std::string> chain_order(const std::map<std::string, std::vector<const Rule*>>& facts) {
    std::vector<std::string> order;
    auto firsts = facts.find("first");
    if (firsts == facts.end()) {
        return order;
    }
    if (firsts->second.size() != 1) {
        throw InputError("expected exactly one first/1 fact");
    }
    std::map<std::string, std::string> succ;
    if (auto it = facts.find("next"); it != facts.end()) {
        for (const Rule* r : it->second) {
            require_arity(*r, 2);
            if (!succ.emplace(obj(*r, 0), obj(*r, 1)).second) {
                throw InputError("next/2 is not a chain: " + to_string(*r), r->loc);
            }
        }
    }
    std::set<std::string> seen;
    std::string cur = obj(*firsts->second.front(), 0);
    while (true) {
        if (!seen.insert(cur).second) {
            throw InputError("next/2 contains a cycle through " + cur);
        }
        order.push_back(cur);
        auto it = succ.find(cur);
        if (it == succ.end()) {
            break;
        }
        cur = it->second;
    }
    if (order.size() != succ.size() + 1) {
        throw InputError("next/2 is not a single chain starting at the first/1 element");
    }
    return order;
}

} // namespace

std::map<std::string, BigInt> shortest_path(const ShortestPathInstance& g) {
    std::map<std::string, std::vector<std::pair<std::string, BigInt>>> adj;
    for (const auto& e : g.edges) {
        if (sgn(e.weight) < 0) {
            throw InputError("shortest path oracle needs nonnegative weights; edge " + e.from + " -> " + e.to);
        }
        adj[e.from].emplace_back(e.to, e.weight);
    }
    std::map<std::string, BigInt> dist;
    using Item = std::pair<BigInt, std::string>;
    auto later = [](const Item& a, const Item& b) {
        const int c = cmp(a.first, b.first);
        return c > 0 || (c == 0 && a.second > b.second);
    };
    std::priority_queue<Item, std::vector<Item>, decltype(later)> queue(later);
    for (const auto& [node, d] : g.sources) {
        auto it = dist.find(node);
        if (it == dist.end() || cmp(d, it->second) < 0) {
            dist[node] = d;
            queue.emplace(d, node);
        }
    }
    std::set<std::string> done;
    while (!queue.empty()) {
        auto [d, u] = queue.top();
        queue.pop();
        if (!done.insert(u).second) {
            continue;
        }
        for (const auto& [v, w] : adj[u]) {
            BigInt nd = d + w;
            auto it = dist.find(v);
            if (it == dist.end() || cmp(nd, it->second) < 0) {
                dist[v] = nd;
                queue.emplace(nd, v);
            }
        }
    }
    return dist;
}

std::map<std::pair<std::string, std::string>, BigInt> dag_path_count(const PathCountInstance& g) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        if (!index.emplace(g.nodes[i], i).second) {
            throw InputError("node " + g.nodes[i] + " listed twice");
        }
    }
    const std::size_t n = g.nodes.size();
    std::vector<std::set<std::size_t>> succ(n);
    for (const auto& [a, b] : g.edges) {
        auto ia = index.find(a);
        auto ib = index.find(b);
        if (ia == index.end() || ib == index.end()) {
            throw InputError("edge " + a + " -> " + b + " mentions an unknown node");
        }
        succ[ia->second].insert(ib->second);
    }

    // Topological order (sinks first), rejecting cycles.
    std::vector<int> mark(n, 0);
    std::vector<std::size_t> post;
    std::function<void(std::size_t)> visit = [&](std::size_t u) {
        mark[u] = 1;
        for (std::size_t v : succ[u]) {
            if (mark[v] == 1) {
                throw InputError("path counting needs an acyclic graph; cycle through " + g.nodes[v]);
            }
            if (mark[v] == 0) {
                visit(v);
            }
        }
        mark[u] = 2;
        post.push_back(u);
    };
    for (std::size_t u = 0; u < n; ++u) {
        if (mark[u] == 0) {
            visit(u);
        }
    }

    const bool capped = !g.bandwidth.empty();
    std::vector<std::vector<std::optional<BigInt>>> count(n, std::vector<std::optional<BigInt>>(n));
    for (std::size_t x : post) {
        for (std::size_t y = 0; y < n; ++y) {
            std::optional<BigInt> best;
            if (x == y) {
                best = BigInt(1);
            }
            BigInt prefix = 0;
            for (std::size_t z = 0; z < n; ++z) {
                if (succ[x].contains(z) && count[z][y]) {
                    prefix += *count[z][y];
                }
                std::optional<BigInt> cand;
                if (!capped) {
                    if (z + 1 == n) {
                        cand = prefix;
                    }
                } else if (auto bw = g.bandwidth.find(g.nodes[z]); bw != g.bandwidth.end()) {
                    cand = cmp(prefix, bw->second) <= 0 ? prefix : bw->second;
                }
                if (cand && (!best || cmp(*cand, *best) > 0)) {
                    best = *cand;
                }
            }
            count[x][y] = best;
        }
    }
    std::map<std::pair<std::string, std::string>, BigInt> out;
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            if (count[x][y]) {
                out.emplace(std::make_pair(g.nodes[x], g.nodes[y]), *count[x][y]);
            }
        }
    }
    return out;
}

std::set<std::string> diffusion(const DiffusionInstance& g) {
    std::set<std::string> tweets = g.sources;
    const std::set<std::string> ordered(g.agents.begin(), g.agents.end());
    std::map<std::string, std::set<std::string>> followed;
    for (const auto& [x, y] : g.follows) {
        auto& f = followed[x];
        if (ordered.contains(y)) {
            f.insert(y);
        }
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [x, k] : g.threshold) {
            auto it = followed.find(x);
            if (tweets.contains(x) || it == followed.end() || g.agents.empty()) {
                continue;
            }
            long seen = 0;
            for (const auto& y : it->second) {
                seen += tweets.contains(y) ? 1 : 0;
            }
            if (cmp(k, seen) <= 0) {
                tweets.insert(x);
                changed = true;
            }
        }
    }
    return tweets;
}

std::string shortest_path_program(const ShortestPathInstance& g) {
    std::ostringstream out;
    out << kShortestPathRules;
    for (const auto& [node, d] : g.sources) {
        out << "sp(" << node << ", " << d.get_str() << ").\n";
    }
    for (const auto& e : g.edges) {
        out << "edge(" << e.from << ", " << e.to << ", " << e.weight.get_str() << ").\n";
    }
    return out.str();
}

std::string path_count_program(const PathCountInstance& g) {
    std::ostringstream out;
    out << kPathCountDecls;
    if (g.bandwidth.empty()) {
        out << "np(X, Y, M) :- np'(X, Y, Z, M).\n";
    } else {
        out << "pred bw(obj, int).\n";
        out << "np(X, Y, M) :- np'(X, Y, Z, M), bw(Z, N), (M <= N).\n";
    }
    for (const auto& v : g.nodes) {
        out << "node(" << v << ").\n";
    }
    order_facts(out, g.nodes);
    for (const auto& [a, b] : g.edges) {
        out << "edge(" << a << ", " << b << ").\n";
    }
    for (const auto& [v, b] : g.bandwidth) {
        out << "bw(" << v << ", " << b.get_str() << ").\n";
    }
    return out.str();
}

std::string diffusion_program(const DiffusionInstance& g) {
    std::ostringstream out;
    out << kDiffusionRules;
    order_facts(out, g.agents);
    for (const auto& s : g.sources) {
        out << "tw(" << s << ").\n";
    }
    for (const auto& [x, y] : g.follows) {
        out << "follows(" << x << ", " << y << ").\n";
    }
    for (const auto& [x, k] : g.threshold) {
        out << "th(" << x << ", " << k.get_str() << ").\n";
    }
    return out.str();
}

ShortestPathInstance shortest_path_instance(const Program& p) {
    ShortestPathInstance g;
    auto facts = facts_by_pred(p);
    for (const Rule* r : facts["edge"]) {
        require_arity(*r, 3);
        g.edges.push_back(WeightedEdge{obj(*r, 0), obj(*r, 1), num(*r, 2)});
    }
    for (const Rule* r : facts["sp"]) {
        require_arity(*r, 2);
        BigInt d = num(*r, 1);
        auto [it, fresh] = g.sources.emplace(obj(*r, 0), d);
        if (!fresh && cmp(d, it->second) < 0) {
            it->second = d;
        }
    }
    return g;
}

PathCountInstance path_count_instance(const Program& p) {
    PathCountInstance g;
    auto facts = facts_by_pred(p);
    g.nodes = chain_order(facts);
    std::set<std::string> listed(g.nodes.begin(), g.nodes.end());
    for (const Rule* r : facts["node"]) {
        require_arity(*r, 1);
        if (!listed.contains(obj(*r, 0))) {
            throw InputError("node " + obj(*r, 0) + " is missing from the first/next order", r->loc);
        }
    }
    for (const Rule* r : facts["edge"]) {
        require_arity(*r, 2);
        g.edges.emplace_back(obj(*r, 0), obj(*r, 1));
    }
    for (const Rule* r : facts["bw"]) {
        require_arity(*r, 2);
        g.bandwidth[obj(*r, 0)] = num(*r, 1);
    }
    return g;
}

DiffusionInstance diffusion_instance(const Program& p) {
    DiffusionInstance g;
    auto facts = facts_by_pred(p);
    g.agents = chain_order(facts);
    for (const Rule* r : facts["follows"]) {
        require_arity(*r, 2);
        g.follows.emplace_back(obj(*r, 0), obj(*r, 1));
    }
    for (const Rule* r : facts["th"]) {
        require_arity(*r, 2);
        g.threshold[obj(*r, 0)] = num(*r, 1);
    }
    for (const Rule* r : facts["tw"]) {
        require_arity(*r, 1);
        g.sources.insert(obj(*r, 0));
    }
    return g;
}

} // namespace limitdl::verifier
