// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <memory>

#include "../engine/compiled_program.hpp"
#include "limitdl/frontend.hpp"
#include "limitdl/verifier.hpp"

namespace limitdl::verifier {
namespace {

using engine::detail::CompiledProgram;
using engine::detail::State;

struct Slot {
    bool is_key = false;
    std::size_t id = 0;
};

class Search {
  public:
    Search(const CompiledProgram& cp, const Fact& alpha, std::int64_t bound) : cp_(cp), alpha_(alpha), bound_(bound) {
        std::vector<long> fact_pos(cp.fact_count(), -1);
        std::vector<long> key_pos(cp.key_count(), -1);
        for (std::size_t r = 0; r < cp.rule_count(); ++r) {
            const std::size_t h = cp.head(r);
            auto& pos = cp.head_is_limit(r) ? key_pos[h] : fact_pos[h];
            if (pos < 0) {
                pos = static_cast<long>(slots_.size());
                slots_.push_back(Slot{cp.head_is_limit(r), h});
            }
        }
        checks_.resize(slots_.size());
        for (std::size_t r = 0; r < cp.rule_count(); ++r) {
            long at = key_pos_or_fact(cp.head_is_limit(r), cp.head(r), fact_pos, key_pos);
            for (std::size_t f : cp.read_facts(r)) {
                at = std::max(at, fact_pos[f]);
            }
            for (std::size_t k : cp.read_keys(r)) {
                at = std::max(at, key_pos[k]);
            }
            checks_[static_cast<std::size_t>(at)].push_back(r);
        }
        const auto& decl = cp.signature()->at(alpha.pred);
        if (decl.is_limit()) {
            if (auto k = cp.key_id(LimitKey{alpha.pred, alpha.objects}); k && key_pos[*k] >= 0) {
                alpha_pos_ = key_pos[*k];
            }
        } else if (auto f = cp.fact_id(alpha); f && fact_pos[*f] >= 0) {
            alpha_pos_ = fact_pos[*f];
        }
        alpha_limit_ = decl.is_limit();
        alpha_kind_ = decl.kind;
        for (const auto& s : slots_) {
            has_keys_ = has_keys_ || s.is_key;
        }
    }

    std::optional<State> run() {
        const std::int64_t last = has_keys_ ? bound_ + 1 : 0;
        for (layer_ = 0; layer_ <= last; ++layer_) {
            state_ = cp_.empty_state();
            if (dfs(0)) {
                return state_;
            }
        }
        return std::nullopt;
    }

  private:
    const CompiledProgram& cp_;
    const Fact& alpha_;
    std::int64_t bound_;
    std::vector<Slot> slots_;
    std::vector<std::vector<std::size_t>> checks_;
    long alpha_pos_ = -1;
    bool alpha_limit_ = false;
    PredKind alpha_kind_ = PredKind::Object;
    bool has_keys_ = false;
    // Layers 0..bound admit finite values of magnitude up to the layer (and
    // need one of exactly that magnitude); layer bound+1 admits infinity.
    std::int64_t layer_ = 0;
    State state_;

    static long key_pos_or_fact(bool is_key, std::size_t id, const std::vector<long>& fact_pos,
                                const std::vector<long>& key_pos) {
        return is_key ? key_pos[id] : fact_pos[id];
    }

    bool consistent(std::size_t d) const {
        for (std::size_t r : checks_[d]) {
            if (!cp_.satisfied(r, cp_.evaluate(r, state_), state_)) {
                return false;
            }
        }
        if (alpha_pos_ == static_cast<long>(d)) {
            const Slot& s = slots_[d];
            if (alpha_limit_) {
                const auto& v = state_.limits[s.id];
                if (v && dominates(alpha_kind_, *v, *alpha_.value)) {
                    return false;
                }
            } else if (state_.facts[s.id] != 0) {
                return false;
            }
        }
        return true;
    }

    bool leaf_in_layer() const {
        const bool infinite_layer = layer_ == bound_ + 1;
        BigInt widest = 0;
        bool any_inf = false;
        for (const auto& v : state_.limits) {
            if (!v) {
                continue;
            }
            if (v->is_infinite()) {
                any_inf = true;
            } else {
                BigInt m = abs(v->value());
                if (cmp(m, widest) > 0) {
                    widest = m;
                }
            }
        }
        if (infinite_layer) {
            return any_inf;
        }
        return layer_ == 0 || cmp(widest, static_cast<long>(layer_)) == 0;
    }

    bool dfs(std::size_t d) {
        if (d == slots_.size()) {
            return leaf_in_layer();
        }
        const Slot& s = slots_[d];
        if (!s.is_key) {
            for (char present : {0, 1}) {
                state_.facts[s.id] = present;
                if (consistent(d) && dfs(d + 1)) {
                    return true;
                }
            }
            state_.facts[s.id] = 0;
            return false;
        }
        auto& slot = state_.limits[s.id];
        auto attempt = [&](std::optional<ExtInt> v) {
            slot = std::move(v);
            return consistent(d) && dfs(d + 1);
        };
        if (attempt(std::nullopt)) {
            return true;
        }
        const std::int64_t m = std::min(layer_, bound_);
        for (std::int64_t mag = 0; mag <= m; ++mag) {
            if (attempt(ExtInt(static_cast<long>(mag)))) {
                return true;
            }
            if (mag != 0 && attempt(ExtInt(static_cast<long>(-mag)))) {
                return true;
            }
        }
        if (layer_ == bound_ + 1 && attempt(ExtInt::infinity())) {
            return true;
        }
        slot.reset();
        return false;
    }
};

} // namespace

std::optional<PseudoInterpretation> counter_model_search(const Program& p, const Fact& alpha, std::int64_t bound) {
    if (bound < 0) {
        throw ContractViolation("counter-model search needs a nonnegative bound");
    }
    check_fact(p.signature, alpha);
    auto sig = std::make_shared<const Signature>(p.signature);
    if (sig->at(alpha.pred).kind == PredKind::Integers) {
        return std::nullopt;
    }
    const Program normal = frontend::normalize(p);
    const Fact extra[] = {alpha};
    const auto sg = frontend::semi_ground(normal, extra);
    const CompiledProgram cp(sg, std::make_shared<const Signature>(sg.program.signature));
    auto found = Search(cp, alpha, bound).run();
    if (!found) {
        return std::nullopt;
    }
    PseudoInterpretation out(sig);
    for (const auto& f : cp.to_interpretation(*found).all_facts()) {
        out.join(f);
    }
    return out;
}

} // namespace limitdl::verifier
