#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "wsts/ltl.hpp"
#include "wsts/net.hpp"
#include "wsts/nfa.hpp"
#include "wsts/positivity.hpp"

// Brute-force reference implementations. They share no code with the algorithms they
// check beyond the data types and the net's concrete semantics.
namespace wsts::devkit {

/// Downward closure, inside the box [0..box]^d, of the markings reachable from x0 when every
/// coordinate is truncated at `cap` (cap >= box). Truncation only lowers markings, so each
/// point reported is coverable; for a large enough cap the answer is exact. ω outputs
/// produce `cap`. Indexing: point p has index Σ p_i (box+1)^i.
std::vector<bool> truncated_cover_box(const NetModel& net, const Marking& x0, std::uint64_t box,
                                      std::uint64_t cap);

std::size_t box_index(const Marking& p, std::uint64_t box);
Marking box_point(std::size_t index, std::size_t dimension, std::uint64_t box);

/// In place: a set of box points becomes its downward closure within the box.
void close_downward(std::vector<bool>& points, std::size_t dimension, std::uint64_t box);

/// Every label sequence of length <= max_length fireable from x0. ω outputs produce
/// `omega_tokens`.
std::set<Word> concrete_traces(const NetModel& net, const Marking& x0, std::size_t max_length,
                               std::uint64_t omega_tokens);

/// Whether some fireable sequence of length <= max_length from x0 has w as a subword.
bool embeds_in_trace(const NetModel& net, const Marking& x0, const Word& w,
                     std::size_t max_length, std::uint64_t omega_tokens);

/// Membership by direct simulation (own ε-closure).
bool simulate(const EpsNfa& a, const Word& w);

/// Whether w is a subword of some word accepted by a, by search over (state, matched prefix).
bool subword_of_accepted(const EpsNfa& a, const Word& w);

/// All words over the alphabet of length <= max_length.
std::vector<Word> all_words(const std::vector<std::string>& alphabet, std::size_t max_length);

/// Some accepted word of length 1..max_length whose summed effect is positive.
std::optional<Word> positive_word_by_enumeration(const EffectAutomaton& ea, std::size_t max_length);

/// On a net with finite reachability set from x0: whether some reachable marking m >= y lies
/// on a cycle of the reachability graph. Throws if more than `max_states` markings are found.
bool lasso_covers(const NetModel& net, const Marking& x0, const Marking& y,
                  std::size_t max_states = 200000);

/// Every marking reachable from x0 (finite case), with the successor lists.
struct ReachabilityGraph {
  std::vector<Marking> markings;
  std::vector<std::vector<std::pair<Label, std::size_t>>> succ;
};
ReachabilityGraph reachability_graph(const NetModel& net, const Marking& x0,
                                     std::size_t max_states = 200000);

/// Truth of φ on the infinite word u·v^ω (v nonempty), by fixpoint evaluation on positions.
bool lasso_satisfies(const LtlFormula& phi, const Word& u, const Word& v);

}  // namespace wsts::devkit
