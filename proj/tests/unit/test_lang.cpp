#include <doctest.h>

#include "wsts/devkit/generators.hpp"
#include "wsts/devkit/oracles.hpp"
#include "wsts/ikm.hpp"
#include "wsts/nfa.hpp"
#include "wsts/traces.hpp"

using namespace wsts;

namespace {

EpsNfa word_automaton(const std::vector<std::string>& alphabet, const std::vector<Word>& words) {
  EpsNfa a(alphabet);
  const State init = a.add_state("i");
  for (const auto& w : words) {
    State cur = init;
    for (const auto& s : w) {
      const State next = a.add_state();
      a.add_transition(cur, s, next);
      cur = next;
    }
    a.set_accepting(cur);
  }
  return a;
}

EpsNfa star(const std::string& letter) {
  EpsNfa a({letter});
  a.add_state("q", true);
  a.add_transition(0, letter, 0);
  return a;
}

bool is_subword(const Word& u, const Word& v) {
  std::size_t i = 0;
  for (const auto& s : v)
    if (i < u.size() && u[i] == s) ++i;
  return i == u.size();
}

}  // namespace

TEST_CASE("accepts") {
  EpsNfa single({"t"});
  single.add_state("q", true);
  CHECK(accepts(single, {}));
  const auto inc = NetModel::from_vas(1, {{"t", {1}}});
  const auto tree = build_ikm_tree(NetCompletion(inc), IdealVec::parse("(0)"));
  const auto k = km_automaton(tree);
  CHECK(accepts(k, {"t", "t", "t"}));
  CHECK_THROWS_AS(accepts(k, {"t", "x"}), UnknownSymbol);
}

TEST_CASE("subword_closure") {
  const auto ab = subword_closure(word_automaton({"a", "b"}, {{"a", "b"}}));
  for (const auto& w : devkit::all_words({"a", "b"}, 3)) {
    const bool expected = w.empty() || w == Word{"a"} || w == Word{"b"} || w == Word{"a", "b"};
    CHECK(accepts(ab, w) == expected);
  }
  const auto ts = subword_closure(star("t"));
  for (std::size_t n = 0; n < 6; ++n) CHECK(accepts(ts, Word(n, "t")));
}

TEST_CASE("subword_closure against brute-force subwords") {
  devkit::Rng rng(41);
  for (int k = 0; k < 60; ++k) {
    const auto a = devkit::random_nfa(rng, {4, 2, 0.3, 0.1, 0.4});
    const auto closed = subword_closure(a);
    std::vector<Word> accepted;
    for (const auto& v : devkit::all_words(a.alphabet(), 12))
      if (devkit::simulate(a, v)) accepted.push_back(v);
    for (const auto& u : devkit::all_words(a.alphabet(), 6)) {
      bool expected = false;
      for (const auto& v : accepted) expected = expected || is_subword(u, v);
      CHECK(accepts(closed, u) == expected);
      // downward closed
      if (accepts(closed, u) && !u.empty()) {
        for (std::size_t drop = 0; drop < u.size(); ++drop) {
          Word shorter = u;
          shorter.erase(shorter.begin() + static_cast<long>(drop));
          CHECK(accepts(closed, shorter));
        }
      }
    }
    CHECK(included(subword_closure(closed), closed));
    CHECK(included(closed, subword_closure(closed)));
  }
}

TEST_CASE("included") {
  const auto a = word_automaton({"a"}, {{"a"}});
  const auto b = word_automaton({"a"}, {{"a"}, {"a", "a"}});
  CHECK(included(a, b));
  CHECK_FALSE(included(b, a));
  CHECK(*inclusion_counterexample(b, a) == Word{"a", "a"});

  const auto ts = star("t");
  const auto small = word_automaton({"t"}, {{}, {"t"}});
  CHECK_FALSE(included(ts, small));
  CHECK(*inclusion_counterexample(ts, small) == Word{"t", "t"});

  CHECK_THROWS_AS(included(a, ts), AlphabetMismatch);
}

TEST_CASE("inclusion against bounded enumeration") {
  devkit::Rng rng(42);
  for (int k = 0; k < 150; ++k) {
    const devkit::NfaShape shape{5, 2, 0.25, 0.1, 0.4};
    const auto a = devkit::random_nfa(rng, shape);
    const auto b = devkit::random_nfa(rng, shape);
    const auto cex = inclusion_counterexample(a, b);
    std::optional<Word> shortest;
    for (const auto& w : devkit::all_words(a.alphabet(), 10)) {
      if (devkit::simulate(a, w) && !devkit::simulate(b, w)) {
        shortest = w;
        break;
      }
    }
    if (cex) {
      CHECK(devkit::simulate(a, *cex));
      CHECK_FALSE(devkit::simulate(b, *cex));
      if (shortest) CHECK(cex->size() == shortest->size());
    } else {
      CHECK_FALSE(shortest);
    }
  }
}

TEST_CASE("included is a preorder") {
  devkit::Rng rng(43);
  for (int k = 0; k < 80; ++k) {
    const devkit::NfaShape shape{4, 2, 0.3, 0.1, 0.5};
    const auto a = subword_closure(devkit::random_nfa(rng, shape));
    const auto b = subword_closure(devkit::random_nfa(rng, shape));
    const auto c = subword_closure(devkit::random_nfa(rng, shape));
    CHECK(included(a, a));
    if (included(a, b) && included(b, c)) CHECK(included(a, c));
  }
}

TEST_CASE("subset limit") {
  devkit::Rng rng(44);
  const auto a = devkit::random_nfa(rng, {6, 2, 0.5, 0.0, 0.5});
  CHECK_THROWS_AS(included(a, a, 1), StateLimitExceeded);
}

TEST_CASE("automaton text format round-trip") {
  const auto a = parse_automaton(
      "alphabet: a b\n"
      "initial: q0\n"
      "accepting: q1\n"
      "q0 a q1\n"
      "q1 eps q0\n"
      "q1 b q1\n");
  CHECK(a.num_states() == 2);
  CHECK(a.epsilons().size() == 1);
  CHECK(accepts(a, {"a", "b", "a"}));
  CHECK_FALSE(accepts(a, {"b"}));
  const auto b = parse_automaton(render_automaton(a));
  CHECK(render_automaton(b) == render_automaton(a));
  CHECK(included(a, b));
  CHECK(included(b, a));
  CHECK_THROWS_AS(parse_automaton("alphabet: a\nq0 c q1\n"), ParseError);
  CHECK(to_dot(a).find("digraph") != std::string::npos);
}

TEST_CASE("downward trace inclusion") {
  const auto inc = NetModel::from_vas(1, {{"t", {1}}});
  const auto both = NetModel::from_vas(1, {{"t", {1}}, {"u", {1}}});
  CHECK(traces_dc_included(inc, Marking{0}, inc, Marking{0}));
  CHECK(traces_dc_included(inc, Marking{0}, both, Marking{0}));
  CHECK_FALSE(traces_dc_included(both, Marking{0}, inc, Marking{0}));

  const auto dec = NetModel::from_vas(1, {{"t", {-1}}});
  CHECK(traces_dc_included(dec, Marking{2}, dec, Marking{3}));
  CHECK_FALSE(traces_dc_included(dec, Marking{3}, dec, Marking{2}));
}
