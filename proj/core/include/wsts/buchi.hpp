#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "wsts/ltl.hpp"
#include "wsts/nfa.hpp"

namespace wsts {

/// Nondeterministic Büchi automaton with a single initial state.
struct BuchiAutomaton {
  struct Edge {
    State from;
    std::size_t symbol;
    State to;
  };
  std::vector<std::string> alphabet;
  std::vector<std::string> names;
  std::vector<bool> accepting;
  State initial = 0;
  std::vector<Edge> edges;

  std::size_t num_states() const noexcept { return names.size(); }
};

/// Tableau translation (on-the-fly expansion of the NNF into obligation sets), giving a
/// generalized Büchi automaton with one acceptance set per until-subformula, followed by
/// counter degeneralization and a bisimulation quotient. Throws UnknownSymbol when an atom
/// is not in `alphabet`.
BuchiAutomaton ltl_to_buchi(const LtlFormula& phi, const std::vector<std::string>& alphabet);

/// Whether prefix · loop^ω is accepted. `loop` must be nonempty.
bool accepts_lasso(const BuchiAutomaton& b, const Word& prefix, const Word& loop);

/// Converts an ε-free automaton in the textual format (see parse_automaton); the
/// `accepting:` stanza gives the Büchi states.
BuchiAutomaton buchi_from_nfa(const EpsNfa& a);
BuchiAutomaton parse_buchi(std::string_view text);

std::string to_dot(const BuchiAutomaton& b);

}  // namespace wsts
