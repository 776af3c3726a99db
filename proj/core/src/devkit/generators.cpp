#include "wsts/devkit/generators.hpp"

#include <numeric>

namespace wsts::devkit {

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

namespace {

std::uint64_t entry(Rng& rng, std::uint64_t max_entry) {
  // Zeros are common in real nets; keep about half the arcs absent.
  return coin(rng, 0.5) ? 0 : pick(rng, 1, max_entry);
}

}  // namespace

NetModel random_net(Rng& rng, const NetShape& shape) {
  const std::size_t d = pick(rng, 1, shape.max_dimension);
  const std::size_t n = pick(rng, 1, shape.max_transitions);
  std::vector<Transition> ts;
  for (std::size_t k = 0; k < n; ++k) {
    Transition t{"t" + std::to_string(k), std::vector<std::uint64_t>(d), IdealVec(std::vector<OmegaNat>(d))};
    for (std::size_t i = 0; i < d; ++i) {
      t.guard[i] = entry(rng, shape.max_entry);
      t.output[i] = coin(rng, shape.omega_probability) ? kOmega : OmegaNat(entry(rng, shape.max_entry));
    }
    ts.push_back(std::move(t));
  }
  return NetModel(d, std::move(ts));
}

NetModel random_bounded_net(Rng& rng, const NetShape& shape) {
  const std::size_t d = pick(rng, 1, shape.max_dimension);
  const std::size_t n = pick(rng, 1, shape.max_transitions);
  std::vector<Transition> ts;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::uint64_t> guard(d), out(d);
    for (auto& g : guard) g = entry(rng, shape.max_entry);
    if (std::accumulate(guard.begin(), guard.end(), std::uint64_t{0}) == 0)
      guard[pick(rng, 0, d - 1)] = 1;
    for (auto& o : out) o = entry(rng, shape.max_entry);
    const auto budget = std::accumulate(guard.begin(), guard.end(), std::uint64_t{0});
    while (std::accumulate(out.begin(), out.end(), std::uint64_t{0}) > budget) {
      const std::size_t i = pick(rng, 0, d - 1);
      if (out[i] > 0) --out[i];
    }
    std::vector<OmegaNat> output(out.begin(), out.end());
    ts.push_back({"t" + std::to_string(k), std::move(guard), IdealVec(std::move(output))});
  }
  return NetModel(d, std::move(ts));
}

Marking random_marking(Rng& rng, std::size_t dimension, std::uint64_t max_entry) {
  std::vector<std::uint64_t> c(dimension);
  for (auto& x : c) x = pick(rng, 0, max_entry);
  return Marking(std::move(c));
}

std::vector<std::string> letters(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

EpsNfa random_nfa(Rng& rng, const NfaShape& shape) {
  EpsNfa a(letters(shape.alphabet));
  const std::size_t n = pick(rng, 1, shape.max_states);
  for (std::size_t q = 0; q < n; ++q)
    a.add_state("q" + std::to_string(q), coin(rng, shape.accepting_probability));
  a.set_initial(0);
  for (State p = 0; p < n; ++p) {
    for (State q = 0; q < n; ++q) {
      for (std::size_t s = 0; s < shape.alphabet; ++s)
        if (coin(rng, shape.edge_probability)) a.add_transition(p, s, q);
      if (p != q && coin(rng, shape.epsilon_probability)) a.add_epsilon(p, q);
    }
  }
  return a;
}

EffectAutomaton random_effect_automaton(Rng& rng, std::size_t max_states,
                                        std::size_t max_dimension, std::size_t alphabet) {
  const std::size_t d = pick(rng, 1, max_dimension);
  std::vector<EffectSummary> per_symbol;
  for (std::size_t s = 0; s < alphabet; ++s) {
    EffectSummary e{std::vector<std::int64_t>(d), std::vector<bool>(d, false)};
    for (std::size_t i = 0; i < d; ++i) {
      if (coin(rng, 0.08)) {
        e.omega[i] = true;
        e.displacement[i] = -static_cast<std::int64_t>(pick(rng, 0, 1));
      } else {
        e.displacement[i] = static_cast<std::int64_t>(pick(rng, 0, 4)) - 2;
      }
    }
    per_symbol.push_back(std::move(e));
  }
  NfaShape shape;
  shape.max_states = max_states;
  shape.alphabet = alphabet;
  shape.edge_probability = 0.25;
  return attach_effects(random_nfa(rng, shape), d,
                        [&](std::size_t s) { return per_symbol[s]; });
}

LtlFormula random_ltl(Rng& rng, std::size_t size, const std::vector<std::string>& atoms) {
  using F = LtlFormula;
  if (size <= 1) {
    const std::size_t k = pick(rng, 0, atoms.size() + 1);
    if (k == atoms.size()) return F::tt();
    if (k == atoms.size() + 1) return F::ff();
    return F::atom(atoms[k]);
  }
  if (size == 2 || coin(rng, 0.4)) {
    auto sub = random_ltl(rng, size - 1, atoms);
    switch (pick(rng, 0, 3)) {
      case 0: return F::negation(sub);
      case 1: return F::next(sub);
      case 2: return F::eventually(sub);
      default: return F::always(sub);
    }
  }
  const std::size_t left = pick(rng, 1, size - 2);
  auto l = random_ltl(rng, left, atoms);
  auto r = random_ltl(rng, size - 1 - left, atoms);
  switch (pick(rng, 0, 3)) {
    case 0: return F::conjunction(l, r);
    case 1: return F::disjunction(l, r);
    case 2: return F::until(l, r);
    default: return F::release(l, r);
  }
}

Word random_word(Rng& rng, const std::vector<std::string>& alphabet, std::size_t length) {
  Word w;
  for (std::size_t i = 0; i < length; ++i) w.push_back(alphabet[pick(rng, 0, alphabet.size() - 1)]);
  return w;
}

}  // namespace wsts::devkit
