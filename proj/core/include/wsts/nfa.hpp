#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wsts/errors.hpp"

namespace wsts {

using State = std::size_t;
using Word = std::vector<std::string>;

/// Why an ε-transition exists. Only affects rendering.
enum class EpsKind { plain, subsumption, acceleration };

/// Finite automaton with ε-transitions over a declared, ordered alphabet.
class EpsNfa {
 public:
  struct Edge {
    State from;
    std::size_t symbol;
    State to;
  };
  struct EpsEdge {
    State from;
    State to;
    EpsKind kind = EpsKind::plain;
  };

  EpsNfa() = default;
  explicit EpsNfa(std::vector<std::string> alphabet);

  State add_state(std::string name = {}, bool accepting = false);
  void set_initial(State q);
  void set_accepting(State q, bool accepting = true);
  void add_transition(State from, std::string_view symbol, State to);
  void add_transition(State from, std::size_t symbol, State to);
  void add_epsilon(State from, State to, EpsKind kind = EpsKind::plain);

  std::size_t num_states() const noexcept { return names_.size(); }
  State initial() const noexcept { return initial_; }
  bool accepting(State q) const { return accepting_.at(q); }
  const std::string& state_name(State q) const { return names_.at(q); }
  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  const std::vector<Edge>& transitions() const noexcept { return edges_; }
  const std::vector<EpsEdge>& epsilons() const noexcept { return eps_; }

  std::optional<std::size_t> symbol_index(std::string_view s) const;
  std::optional<State> state_by_name(std::string_view name) const;

  /// Sorted ε-closure of a set of states.
  std::vector<State> eps_closure(std::vector<State> states) const;
  /// ε-closure of the letter successors of `states`.
  std::vector<State> step(const std::vector<State>& states, std::size_t symbol) const;

 private:
  void check_state(State q) const;

  std::vector<std::string> alphabet_;
  std::map<std::string, std::size_t, std::less<>> symbol_index_;
  std::vector<std::string> names_;
  std::vector<bool> accepting_;
  State initial_ = 0;
  std::vector<Edge> edges_;
  std::vector<EpsEdge> eps_;
};

/// Standard ε-NFA acceptance. Throws UnknownSymbol for letters outside the alphabet.
bool accepts(const EpsNfa& a, const Word& w);

/// An automaton for the subword downward closure {u : u ⪯ v, v ∈ L(a)}: every lettered
/// transition gets a parallel ε-transition.
EpsNfa subword_closure(const EpsNfa& a);

/// The same automaton over a larger alphabet (unused letters are added, order kept).
EpsNfa with_alphabet(const EpsNfa& a, const std::vector<std::string>& alphabet);

/// Default cap on the number of subsets explored while determinizing.
inline constexpr std::size_t kDefaultSubsetLimit = std::size_t{1} << 16;

/// A shortest word in L(a) \ L(b), or absent when L(a) ⊆ L(b). b is determinized by subset
/// construction on the fly. Throws AlphabetMismatch unless both alphabets are equal as sets,
/// and StateLimitExceeded past `subset_limit` subsets.
std::optional<Word> inclusion_counterexample(const EpsNfa& a, const EpsNfa& b,
                                             std::size_t subset_limit = kDefaultSubsetLimit);

/// L(a) ⊆ L(b).
bool included(const EpsNfa& a, const EpsNfa& b, std::size_t subset_limit = kDefaultSubsetLimit);

/// Graphviz rendering. Acceleration ε-edges are dashed, subsumption ε-edges dotted.
std::string to_dot(const EpsNfa& a, const std::string& graph_name = "nfa");

/// Textual automaton format:
///
///     alphabet: a b
///     states: q0 q1        # optional; states are also created on first mention
///     initial: q0
///     accepting: q1
///     q0 a q1
///     q1 eps q0
///
/// `eps` marks an ε-transition and is therefore not a valid letter.
EpsNfa parse_automaton(std::string_view text);
std::string render_automaton(const EpsNfa& a);

}  // namespace wsts
