#pragma once

#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wsts/errors.hpp"
#include "wsts/net.hpp"

namespace wsts {

/// What the tree construction needs from a system: a finite alphabet, a deterministic
/// one-step successor on ideals, an inclusion test, a level function, and the one-round
/// ω-lift used to saturate a strictly growing pair.
template <class S>
concept EffectiveCompletion =
    requires(const S& sys, const typename S::Ideal& i, Label a) {
      typename S::Ideal;
      { sys.alphabet_size() } -> std::convertible_to<std::size_t>;
      { sys.label_name(a) } -> std::convertible_to<std::string>;
      { sys.post(i, a) } -> std::same_as<std::optional<typename S::Ideal>>;
      { sys.leq(i, i) } -> std::same_as<bool>;
      { sys.level(i) } -> std::convertible_to<std::size_t>;
      { sys.max_level() } -> std::convertible_to<std::size_t>;
      { sys.lift(i, i) } -> std::same_as<typename S::Ideal>;
      { i == i } -> std::convertible_to<bool>;
    };

/// The ideal completion of a NetModel over ℕ_ω^d.
class NetCompletion {
 public:
  using Ideal = IdealVec;

  explicit NetCompletion(const NetModel& net) : net_(&net) {}
  explicit NetCompletion(NetModel&&) = delete;  // holds a reference

  const NetModel& net() const noexcept { return *net_; }
  std::size_t alphabet_size() const noexcept { return net_->alphabet_size(); }
  std::string label_name(Label a) const { return net_->label_name(a); }
  std::optional<IdealVec> post(const IdealVec& v, Label a) const { return post_ideal(*net_, v, a); }
  bool leq(const IdealVec& u, const IdealVec& v) const { return vec_leq(u, v); }
  std::size_t level(const IdealVec& v) const { return wsts::level(v); }
  std::size_t max_level() const noexcept { return net_->dimension(); }
  IdealVec lift(const IdealVec& base, const IdealVec& grown) const {
    return lub_accelerate(base, grown);
  }
  EffectSummary effect(Label a) const { return effect_summary(*net_, a); }

 private:
  const NetModel* net_;
};

static_assert(EffectiveCompletion<NetCompletion>);

/// Applies the letters of w in order; absent as soon as one step is disabled.
template <EffectiveCompletion S>
std::optional<typename S::Ideal> post_word(const S& sys, const typename S::Ideal& v,
                                           std::span<const Label> w) {
  std::optional<typename S::Ideal> cur = v;
  for (Label a : w) {
    cur = sys.post(*cur, a);
    if (!cur) return std::nullopt;
  }
  return cur;
}

/// w^∞(v): the limit of v ⊂ w(v) ⊂ w²(v) ⊂ … when v ⊂ w(v), otherwise v itself.
///
/// Computed by saturation: lift the strictly growing coordinates to ω, re-apply w, and
/// repeat until w no longer grows the ideal. Each round raises the level, so there are at
/// most max_level() rounds. Throws PreconditionError if w is empty or disabled at v.
template <EffectiveCompletion S>
typename S::Ideal accelerate(const S& sys, const typename S::Ideal& v, std::span<const Label> w) {
  if (w.empty()) throw PreconditionError("acceleration word must be nonempty");
  auto grown = post_word(sys, v, w);
  if (!grown) throw PreconditionError("acceleration word is disabled at the ideal");
  if (!(sys.leq(v, *grown) && !(*grown == v))) return v;

  typename S::Ideal cur = v;
  for (std::size_t round = 0; round <= sys.max_level(); ++round) {
    cur = sys.lift(cur, *grown);
    grown = post_word(sys, cur, w);
    if (!grown) throw PreconditionError("acceleration word disabled after lifting");
    if (sys.leq(*grown, cur)) return cur;
    if (!sys.leq(cur, *grown)) {
      throw PreconditionError("completion is not monotone along the acceleration word");
    }
  }
  throw PreconditionError("acceleration did not saturate within the level bound");
}

template <EffectiveCompletion S>
typename S::Ideal accelerate(const S& sys, const typename S::Ideal& v,
                             const std::vector<Label>& w) {
  return accelerate(sys, v, std::span<const Label>(w));
}

}  // namespace wsts
