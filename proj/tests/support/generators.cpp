// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include "generators.hpp"

#include <algorithm>
#include <sstream>

namespace limitdl::testing {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

namespace {

struct Pred {
    std::string name;
    PredKind kind;
    bool unary; // one object position
};

struct Var {
    std::string name;
    PredKind kind; // Ordinary for variables bound by ordinary atoms
};

const char* kObjects[] = {"a", "b"};

std::string signed_term(int coeff, const std::string& var) {
    std::string out = coeff < 0 ? " - " : " + ";
    const int mag = std::abs(coeff);
    return mag == 1 ? out + var : out + std::to_string(mag) + " * " + var;
}

std::string program(Rng& rng, const ProgramShape& shape, bool consistent) {
    const int total_preds = uniform(rng, 1, std::max(1, shape.max_limit_preds));
    const bool ordinary = shape.allow_ordinary && total_preds > 1 && coin(rng, 0.35);
    const int limits = ordinary ? total_preds - 1 : total_preds;
    const int c = shape.constant_range;

    std::vector<Pred> preds;
    for (int i = 0; i < limits; ++i) {
        preds.push_back(Pred{"p" + std::to_string(i), coin(rng) ? PredKind::Max : PredKind::Min,
                             shape.allow_objects && coin(rng, 0.4)});
    }
    std::optional<Pred> weight;
    if (ordinary) {
        weight = Pred{"w", PredKind::Ordinary, shape.allow_objects && coin(rng, 0.4)};
    }

    std::ostringstream out;
    for (const auto& p : preds) {
        out << "pred " << p.name << "(" << (p.unary ? "obj, " : "") << (p.kind == PredKind::Max ? "max" : "min")
            << " int).\n";
    }
    if (weight) {
        out << "pred w(" << (weight->unary ? "obj, " : "") << "int).\n";
    }

    auto object_arg = [&](const Pred& p) -> std::string {
        return p.unary ? std::string(kObjects[uniform(rng, 0, 1)]) + ", " : "";
    };

    const int rules = uniform(rng, 1, shape.max_rules);
    int facts = std::min(rules, uniform(rng, 1, 2) + (weight ? 1 : 0));
    int emitted = 0;
    // Facts first: at least one limit fact, plus the weights.
    {
        const auto& p = preds[static_cast<std::size_t>(uniform(rng, 0, limits - 1))];
        out << p.name << "(" << object_arg(p) << uniform(rng, -c, c) << ").\n";
        ++emitted;
        --facts;
    }
    if (weight && facts > 0) {
        out << "w(" << object_arg(*weight) << uniform(rng, -c, c) << ").\n";
        ++emitted;
        --facts;
    }
    for (; facts > 0; --facts, ++emitted) {
        const auto& p = preds[static_cast<std::size_t>(uniform(rng, 0, limits - 1))];
        out << p.name << "(" << object_arg(p) << uniform(rng, -c, c) << ").\n";
    }

    for (; emitted < rules; ++emitted) {
        const auto& head = preds[static_cast<std::size_t>(uniform(rng, 0, limits - 1))];
        const int atoms = uniform(rng, 1, shape.max_body_atoms);
        std::vector<std::string> body;
        std::vector<Var> vars;
        bool uses_x = false;
        for (int k = 0; k < atoms; ++k) {
            const bool pick_weight = weight && coin(rng, 0.3);
            const Pred& p = pick_weight ? *weight : preds[static_cast<std::size_t>(uniform(rng, 0, limits - 1))];
            std::string objs;
            if (p.unary) {
                if (coin(rng, 0.6)) {
                    objs = "X, ";
                    uses_x = true;
                } else {
                    objs = std::string(kObjects[uniform(rng, 0, 1)]) + ", ";
                }
            }
            const std::string v = "M" + std::to_string(k);
            if (shape.non_normal && k > 0 && coin(rng, 0.4)) {
                const std::string arg =
                    coin(rng) ? vars.back().name : v + " + " + std::to_string(uniform(rng, -c, c));
                body.push_back(p.name + "(" + objs + arg + ")");
                if (arg != vars.back().name) {
                    vars.push_back(Var{v, PredKind::Ordinary});
                }
                continue;
            }
            vars.push_back(Var{v, p.kind});
            body.push_back(p.name + "(" + objs + v + ")");
        }

        // Head term.
        std::string term = std::to_string(uniform(rng, -c, c));
        for (const auto& v : vars) {
            if (!coin(rng, 0.7)) {
                continue;
            }
            int sign = coin(rng) ? 1 : -1;
            if (consistent && v.kind != PredKind::Ordinary) {
                sign = v.kind == head.kind ? 1 : -1;
            }
            term += signed_term(sign, v.name);
        }

        // Comparisons.
        if (shape.allow_comparisons && coin(rng, 0.4)) {
            const auto& v = vars[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(vars.size()) - 1))];
            const std::string op = coin(rng) ? " <= " : " < ";
            const std::string k = std::to_string(uniform(rng, -c, c));
            // A min variable may be bounded from above, a max variable from below.
            bool var_on_left = v.kind == PredKind::Min;
            if (!consistent || v.kind == PredKind::Ordinary) {
                var_on_left = coin(rng);
            }
            body.push_back(var_on_left ? "(" + v.name + op + k + ")" : "(" + k + op + v.name + ")");
            if (vars.size() > 1 && coin(rng, 0.5)) {
                const auto& a = vars[0];
                const auto& b = vars[1];
                // a on the left needs min, b on the right needs max.
                const bool ok = (a.kind == PredKind::Min || a.kind == PredKind::Ordinary) &&
                                (b.kind == PredKind::Max || b.kind == PredKind::Ordinary);
                if (!consistent || ok) {
                    body.push_back("(" + a.name + " <= " + b.name + ")");
                }
            }
        }

        std::string head_objs;
        if (head.unary) {
            head_objs = uses_x && coin(rng, 0.7) ? "X, " : std::string(kObjects[uniform(rng, 0, 1)]) + ", ";
        }
        out << head.name << "(" << head_objs << term << ") :- ";
        for (std::size_t i = 0; i < body.size(); ++i) {
            out << (i == 0 ? "" : ", ") << body[i];
        }
        out << ".\n";
    }
    return out.str();
}

} // namespace

std::string random_type_consistent_program(Rng& rng, const ProgramShape& shape) { return program(rng, shape, true); }

std::string random_limit_linear_program(Rng& rng, const ProgramShape& shape) { return program(rng, shape, false); }

lia::LinearConstraintSystem random_system(Rng& rng, int vars, int constraints, int coeff, int bound, int box) {
    lia::LinearConstraintSystem sys;
    for (int i = 0; i < vars; ++i) {
        sys.add_var("x" + std::to_string(i));
    }
    for (int k = 0; k < constraints; ++k) {
        lia::Constraint con;
        for (int i = 0; i < vars; ++i) {
            if (coin(rng, 0.6)) {
                int a = uniform(rng, -coeff, coeff);
                if (a != 0) {
                    con.coeffs[static_cast<std::size_t>(i)] = a;
                }
            }
        }
        con.rel = coin(rng, 0.3) ? lia::Rel::Less : lia::Rel::LessEq;
        con.bound = uniform(rng, -bound, bound);
        sys.add(std::move(con));
    }
    if (box > 0) {
        for (int i = 0; i < vars; ++i) {
            lia::Constraint hi;
            hi.coeffs[static_cast<std::size_t>(i)] = 1;
            hi.bound = box;
            sys.add(hi);
            lia::Constraint lo;
            lo.coeffs[static_cast<std::size_t>(i)] = -1;
            lo.bound = box;
            sys.add(lo);
        }
    }
    return sys;
}

namespace {

std::vector<std::string> names(const std::string& prefix, int n) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) {
        out.push_back(prefix + std::to_string(i));
    }
    return out;
}

} // namespace

verifier::ShortestPathInstance random_weighted_digraph(Rng& rng, int max_nodes, int max_weight) {
    const int n = uniform(rng, 1, max_nodes);
    const auto v = names("v", n);
    verifier::ShortestPathInstance g;
    const double density = std::uniform_real_distribution<double>(0.1, 0.5)(rng);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j && coin(rng, density)) {
                g.edges.push_back(verifier::WeightedEdge{v[i], v[j], BigInt(uniform(rng, 0, max_weight))});
            }
        }
    }
    g.sources[v[0]] = 0;
    return g;
}

verifier::PathCountInstance random_dag(Rng& rng, int max_nodes, bool bandwidth) {
    const int n = uniform(rng, 1, max_nodes);
    auto nodes = names("n", n);
    verifier::PathCountInstance g;
    // Edges follow a hidden topological order; the aggregation order is shuffled.
    const double density = std::uniform_real_distribution<double>(0.2, 0.6)(rng);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (coin(rng, density)) {
                g.edges.emplace_back(nodes[i], nodes[j]);
            }
        }
    }
    std::shuffle(nodes.begin(), nodes.end(), rng);
    g.nodes = nodes;
    if (bandwidth) {
        for (const auto& v : nodes) {
            g.bandwidth[v] = uniform(rng, 0, 4);
        }
    }
    return g;
}

verifier::DiffusionInstance random_network(Rng& rng, int max_agents) {
    const int n = uniform(rng, 1, max_agents);
    auto agents = names("g", n);
    verifier::DiffusionInstance g;
    const double density = std::uniform_real_distribution<double>(0.2, 0.6)(rng);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j && coin(rng, density)) {
                g.follows.emplace_back(agents[i], agents[j]);
            }
        }
        g.threshold[agents[i]] = uniform(rng, 1, 3);
    }
    g.sources.insert(agents[static_cast<std::size_t>(uniform(rng, 0, n - 1))]);
    std::shuffle(agents.begin(), agents.end(), rng);
    g.agents = agents;
    return g;
}

} // namespace limitdl::testing
