// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "limitdl/core.hpp"
#include "limitdl/engine.hpp"
#include "limitdl/frontend.hpp"
#include "limitdl/lia.hpp"

namespace limitdl::engine::detail {

/// Dense state over the facts and limit keys a semi-ground program mentions.
struct State {
    std::vector<char> facts;
    std::vector<std::optional<ExtInt>> limits;

    friend bool operator==(const State&, const State&) = default;
};

struct Outcome {
    bool applicable = false;
    ExtInt value; // limit heads only
};

class CompiledProgram {
  public:
    CompiledProgram(const frontend::SemiGroundProgram& p, std::shared_ptr<const Signature> sig);

    [[nodiscard]] std::size_t rule_count() const noexcept { return rules_.size(); }
    [[nodiscard]] std::size_t fact_count() const noexcept { return facts_.size(); }
    [[nodiscard]] std::size_t key_count() const noexcept { return keys_.size(); }
    [[nodiscard]] const LimitKey& key(std::size_t id) const { return keys_[id]; }
    [[nodiscard]] std::optional<std::size_t> key_id(const LimitKey& k) const;

    [[nodiscard]] State empty_state() const;
    /// Entries of J the program does not mention are dropped.
    [[nodiscard]] State load(const PseudoInterpretation& j) const;
    [[nodiscard]] PseudoInterpretation to_interpretation(const State& s) const;

    [[nodiscard]] Outcome evaluate(std::size_t rule, const State& s) const;

    /// J joined with every applicable head (T_P(J) when `base` is empty).
    void join_heads(const std::vector<Outcome>& outcomes, State& into) const;

    /// Weighted edges between limit keys present in `s`, from rule outcomes at `s`.
    [[nodiscard]] std::map<std::pair<std::size_t, std::size_t>, ExtInt> edges(const std::vector<Outcome>& outcomes,
                                                                             const State& s) const;

    /// Rules reading the given fact / key.
    [[nodiscard]] const std::vector<std::size_t>& fact_readers(std::size_t id) const { return fact_readers_[id]; }
    [[nodiscard]] const std::vector<std::size_t>& key_readers(std::size_t id) const { return key_readers_[id]; }

    [[nodiscard]] const std::shared_ptr<const Signature>& signature() const noexcept { return sig_; }

    [[nodiscard]] const Fact& fact(std::size_t id) const { return facts_[id]; }
    [[nodiscard]] std::optional<std::size_t> fact_id(const Fact& f) const;
    [[nodiscard]] PredKind key_kind(std::size_t id) const { return key_kinds_[id]; }
    [[nodiscard]] bool head_is_limit(std::size_t rule) const { return rules_[rule].limit_head; }
    /// Fact id or key id of the head.
    [[nodiscard]] std::size_t head(std::size_t rule) const { return rules_[rule].head; }
    [[nodiscard]] const std::vector<std::size_t>& read_facts(std::size_t rule) const {
        return rules_[rule].required_facts;
    }
    [[nodiscard]] std::vector<std::size_t> read_keys(std::size_t rule) const;
    /// hd(r, J) is below J for the given outcome.
    [[nodiscard]] bool satisfied(std::size_t rule, const Outcome& o, const State& s) const;

  private:
    struct LimitUse {
        std::size_t key;
        PredKind kind;
        lia::LinearExpr arg;
        bool feeds_head; // some variable of the argument occurs in the head term
    };
    struct Compiled {
        std::vector<std::size_t> required_facts;
        std::vector<LimitUse> limits;
        lia::LinearConstraintSystem base;
        bool limit_head = false;
        std::size_t head = 0; // fact id or key id
        PredKind head_kind = PredKind::Object;
        lia::Objective objective;
    };

    std::size_t intern_fact(const Fact& f);
    std::size_t intern_key(const LimitKey& k);

    std::shared_ptr<const Signature> sig_;
    std::vector<Compiled> rules_;
    std::vector<Fact> facts_;
    std::map<Fact, std::size_t> fact_ids_;
    std::vector<LimitKey> keys_;
    std::vector<PredKind> key_kinds_;
    std::map<LimitKey, std::size_t> key_ids_;
    std::vector<std::vector<std::size_t>> fact_readers_;
    std::vector<std::vector<std::size_t>> key_readers_;
};

/// delta_r^e(J) for an edge from a `from`-kind node with value `ell` into a
/// `to`-kind head whose rule has optimum `opt`.
[[nodiscard]] ExtInt edge_delta(PredKind from, PredKind to, const ExtInt& opt, const ExtInt& ell);

} // namespace limitdl::engine::detail
