#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "wsts/ilp.hpp"
#include "wsts/net.hpp"
#include "wsts/nfa.hpp"

namespace wsts {

/// An ε-NFA whose lettered transitions carry the effect of their label. `effects[k]` belongs
/// to `nfa.transitions()[k]`; ε-transitions have zero effect.
struct EffectAutomaton {
  EpsNfa nfa;
  std::vector<EffectSummary> effects;
  std::size_t dimension = 0;
};

/// Attaches per-symbol effects to every lettered transition.
EffectAutomaton attach_effects(EpsNfa nfa, std::size_t dimension,
                               const std::function<EffectSummary(std::size_t symbol)>& effect_of);

/// Effects looked up in `net` by symbol name.
EffectAutomaton attach_net_effects(EpsNfa nfa, const NetModel& net);

struct CoordinateJustification {
  bool omega = false;             // some letter produces ω on this coordinate
  std::int64_t displacement = 0;  // summed finite displacement
  bool operator==(const CoordinateJustification&) const = default;
};

struct PositivityWitness {
  Word word;
  std::vector<State> path;  // states visited, starting at the initial state
  std::vector<CoordinateJustification> justification;
};

/// Per-coordinate justification of a sequence of effects, and whether it is positive:
/// every coordinate has an ω output somewhere or a nonnegative summed displacement.
std::vector<CoordinateJustification> justify(const std::vector<EffectSummary>& effects,
                                             std::size_t dimension);
bool is_positive(const std::vector<CoordinateJustification>& justification);

/// Positivity of a nonempty word of the net. Throws on an empty word or unknown label.
bool is_positive_word(const NetModel& net, const Word& w);

/// Raised when the capped search neither finds a witness nor refutes one.
class PositivityInconclusive : public Error {
 public:
  using Error::Error;
};

struct PositivityOptions {
  /// Escalating per-transition flow caps.
  std::vector<std::int64_t> caps{16, 64, 256};
  /// When set, search only words of at most this many letters. The answer is then exact
  /// for that bound.
  std::optional<std::size_t> max_word_length;
  ilp::Limits limits{};
  std::size_t max_cut_rounds = 64;
  std::size_t max_simple_paths = 4096;
  std::size_t max_relaxation_solves = 2000;
};

/// A nonempty accepted word that is positive, or absent when none exists.
///
/// Flow formulation of the Parikh image: one unit of flow from the initial state to a sink
/// reachable from every accepting state, flow conservation everywhere else, integral
/// per-transition counts, positivity constraints on the summed effects, and at least one
/// lettered transition. Support connectivity is enforced with lazily added cuts. The
/// integer program is solved by branch and bound under escalating caps; a solution is
/// turned into a word by extracting an Eulerian path.
///
/// Refutation uses two relaxations: every accepted walk is a simple path plus cycles, so if
/// for every simple path the rational cycle relaxation is infeasible there is no witness;
/// failing that, the uncapped rational flow relaxation is split on disconnected regions
/// until every branch is infeasible.
std::optional<PositivityWitness> exists_positive_sequence(const EffectAutomaton& ea,
                                                          const PositivityOptions& options = {});

}  // namespace wsts
