#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "wsts/ikm.hpp"
#include "wsts/positivity.hpp"

namespace wsts {

struct RepeatedCoverability {
  bool holds = false;
  std::optional<std::size_t> node;          // tree node c whose ideal contains the target
  Word prefix;                              // tree path from the root to c
  std::optional<PositivityWitness> witness; // positive word read from c; path in tree ids
};

/// Restriction of A_I to Q_c: nodes reachable from c whose numaccel equals c's. Initial
/// state c; a state is accepting when `accept_end(c, d)` holds. State k of the result is
/// tree node `members[k]`.
template <class Ideal>
EpsNfa restricted_stuttering_automaton(const IkmTree<Ideal>& tree, const EpsNfa& stuttering,
                                       std::size_t c,
                                       const std::function<bool(std::size_t, std::size_t)>& accept_end,
                                       std::vector<std::size_t>& members) {
  const std::size_t na = tree.node(c).numaccel;
  const std::size_t n = stuttering.num_states();
  std::vector<std::vector<std::size_t>> succ(n);
  for (const auto& e : stuttering.transitions()) succ[e.from].push_back(e.to);
  for (const auto& e : stuttering.epsilons()) succ[e.from].push_back(e.to);

  std::vector<std::size_t> local(n, SIZE_MAX);
  members.clear();
  std::vector<std::size_t> stack{c};
  local[c] = 0;
  members.push_back(c);
  while (!stack.empty()) {
    const std::size_t q = stack.back();
    stack.pop_back();
    for (std::size_t r : succ[q]) {
      if (local[r] != SIZE_MAX || tree.node(r).numaccel != na) continue;
      local[r] = members.size();
      members.push_back(r);
      stack.push_back(r);
    }
  }
  EpsNfa out(stuttering.alphabet());
  for (std::size_t k = 0; k < members.size(); ++k)
    out.add_state(stuttering.state_name(members[k]), accept_end(c, members[k]));
  out.set_initial(0);
  for (const auto& e : stuttering.transitions())
    if (local[e.from] != SIZE_MAX && local[e.to] != SIZE_MAX)
      out.add_transition(local[e.from], e.symbol, local[e.to]);
  for (const auto& e : stuttering.epsilons())
    if (local[e.from] != SIZE_MAX && local[e.to] != SIZE_MAX)
      out.add_epsilon(local[e.from], local[e.to], e.kind);
  return out;
}

/// Repeated coverability on a built tree: some node c with `in_target(ideal(c))` has a
/// nonempty positive word c → d inside Q_c with `accept_end(c, d)`. For plain nets every d
/// qualifies; for Büchi products d must share c's control state, since the product order
/// compares control states by equality.
template <EffectiveCompletion S>
RepeatedCoverability repeated_coverability(
    const S& sys, const IkmTree<typename S::Ideal>& tree,
    const std::function<bool(const typename S::Ideal&)>& in_target,
    const std::function<bool(std::size_t, std::size_t)>& accept_end, std::size_t dimension,
    const PositivityOptions& options = {}) {
  const EpsNfa stuttering = stuttering_automaton(tree);
  RepeatedCoverability result;
  for (std::size_t c = 0; c < tree.size(); ++c) {
    if (!in_target(tree.node(c).ideal)) continue;
    std::vector<std::size_t> members;
    EpsNfa sub = restricted_stuttering_automaton(tree, stuttering, c, accept_end, members);
    auto ea = attach_effects(std::move(sub), dimension,
                             [&](std::size_t symbol) { return sys.effect(symbol); });
    auto witness = exists_positive_sequence(ea, options);
    if (!witness) continue;
    for (auto& q : witness->path) q = members[q];
    result.holds = true;
    result.node = c;
    for (auto l : tree.path_word(0, c)) result.prefix.push_back(tree.alphabet()[l]);
    result.witness = std::move(witness);
    return result;
  }
  return result;
}

/// Whether some infinite run from x0 covers y infinitely often.
RepeatedCoverability repeatedly_coverable(const NetModel& net, const Marking& x0,
                                          const Marking& y, const IkmOptions& ikm = {},
                                          const PositivityOptions& options = {});

}  // namespace wsts
