#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "wsts/ltl.hpp"
#include "wsts/net.hpp"
#include "wsts/nfa.hpp"
#include "wsts/positivity.hpp"

// Seeded random instances for tests, benchmarks and the `devtool` command. Every generator
// is a pure function of the engine state, so a seed reproduces an instance exactly.
namespace wsts::devkit {

using Rng = std::mt19937_64;

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi);  // uniform in [lo, hi]
bool coin(Rng& rng, double p);

struct NetShape {
  std::size_t max_dimension = 4;
  std::size_t max_transitions = 5;
  std::uint64_t max_entry = 3;
  double omega_probability = 0.0;  // per output coordinate
};

/// Labels are t0, t1, ...
NetModel random_net(Rng& rng, const NetShape& shape);

/// No transition increases the total token count, so the reachability set is finite.
NetModel random_bounded_net(Rng& rng, const NetShape& shape);

Marking random_marking(Rng& rng, std::size_t dimension, std::uint64_t max_entry);

std::vector<std::string> letters(std::size_t n);  // a, b, c, ...

struct NfaShape {
  std::size_t max_states = 4;
  std::size_t alphabet = 2;
  double edge_probability = 0.3;  // per (state, symbol, state)
  double epsilon_probability = 0.1;
  double accepting_probability = 0.4;
};

EpsNfa random_nfa(Rng& rng, const NfaShape& shape);

/// Effects are drawn per symbol, entries in [-2, 2], with an occasional ω output.
EffectAutomaton random_effect_automaton(Rng& rng, std::size_t max_states,
                                        std::size_t max_dimension, std::size_t alphabet);

/// A formula with exactly `size` syntax nodes over the given atoms.
LtlFormula random_ltl(Rng& rng, std::size_t size, const std::vector<std::string>& atoms);

Word random_word(Rng& rng, const std::vector<std::string>& alphabet, std::size_t length);

}  // namespace wsts::devkit
