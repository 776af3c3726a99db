#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "wsts/devkit/generators.hpp"
#include "wsts/devkit/oracles.hpp"
#include "wsts/ilp.hpp"
#include "wsts/positivity.hpp"

using namespace wsts;

TEST_CASE("integer programs") {
  using namespace ilp;
  {
    // 2x = 1 is feasible over the rationals only.
    Problem p;
    const auto x = p.add_var(10);
    p.add({{x, 2}}, Sense::eq, 1);
    CHECK(relaxation_feasible(p));
    CHECK(solve_integer(p).status == Status::infeasible);
  }
  {
    // min x + y with 3x + 2y >= 7 -> (1,2) or (3,0)... optimum 3.
    Problem p;
    const auto x = p.add_var(std::nullopt, 1), y = p.add_var(std::nullopt, 1);
    p.add({{x, 3}, {y, 2}}, Sense::ge, 7);
    const auto r = solve_integer(p);
    REQUIRE(r.status == Status::optimal);
    CHECK(r.values[x] + r.values[y] == 3);
    CHECK(3 * r.values[x] + 2 * r.values[y] >= 7);
  }
  {
    Problem p;
    const auto x = p.add_var(2);
    p.add({{x, 1}}, Sense::ge, 3);
    CHECK_FALSE(relaxation_feasible(p));
  }
  {
    // x - y = 0, x + y = 3: rational (1.5, 1.5) only.
    Problem p;
    const auto x = p.add_var(5), y = p.add_var(5);
    p.add({{x, 1}, {y, -1}}, Sense::eq, 0);
    p.add({{x, 1}, {y, 1}}, Sense::eq, 3);
    CHECK(solve_integer(p).status == Status::infeasible);
  }
}

TEST_CASE("integer programs against enumeration") {
  using namespace ilp;
  devkit::Rng rng(51);
  for (int k = 0; k < 200; ++k) {
    Problem p;
    const std::size_t n = devkit::pick(rng, 1, 3);
    for (std::size_t i = 0; i < n; ++i) p.add_var(4, static_cast<std::int64_t>(devkit::pick(rng, 0, 3)));
    for (std::size_t c = devkit::pick(rng, 1, 3); c > 0; --c) {
      std::vector<Term> terms;
      for (std::size_t i = 0; i < n; ++i)
        terms.push_back({i, static_cast<std::int64_t>(devkit::pick(rng, 0, 6)) - 3});
      p.add(terms, static_cast<Sense>(devkit::pick(rng, 0, 2)),
            static_cast<std::int64_t>(devkit::pick(rng, 0, 8)) - 4);
    }
    std::optional<std::int64_t> best;
    std::vector<std::int64_t> x(n, 0);
    for (std::size_t code = 0; code < static_cast<std::size_t>(std::pow(5, n)); ++code) {
      std::size_t c = code;
      for (auto& xi : x) {
        xi = static_cast<std::int64_t>(c % 5);
        c /= 5;
      }
      bool ok = true;
      for (const auto& con : p.constraints) {
        std::int64_t lhs = 0;
        for (const auto& t : con.terms) lhs += t.coeff * x[t.var];
        ok = ok && (con.sense == Sense::le ? lhs <= con.rhs
                    : con.sense == Sense::ge ? lhs >= con.rhs
                                             : lhs == con.rhs);
      }
      if (!ok) continue;
      std::int64_t cost = 0;
      for (std::size_t i = 0; i < n; ++i) cost += p.objective[i] * x[i];
      if (!best || cost < *best) best = cost;
    }
    const auto r = solve_integer(p);
    REQUIRE(r.status != Status::node_limit);
    CHECK((r.status == Status::optimal) == best.has_value());
    if (best && r.status == Status::optimal) {
      std::int64_t cost = 0;
      for (std::size_t i = 0; i < n; ++i) cost += p.objective[i] * r.values[i];
      CHECK(cost == *best);
    }
  }
}

TEST_CASE("is_positive_word") {
  const auto inc = NetModel::from_vas(1, {{"t", {1}}});
  CHECK(is_positive_word(inc, {"t"}));
  const auto vas = NetModel::from_vas(2, {{"a", {1, -1}}, {"b", {0, -1}}});
  CHECK_FALSE(is_positive_word(vas, {"a", "b"}));

  const NetModel omega(2, {{"t", {1, 0}, IdealVec::parse("(0,w)")}, {"s", {0, 0}, IdealVec::parse("(2,0)")}});
  CHECK_FALSE(is_positive_word(omega, {"t", "t"}));
  CHECK(is_positive_word(omega, {"s", "t"}));
  CHECK_THROWS_AS(is_positive_word(omega, {}), PreconditionError);
  CHECK_THROWS_AS(is_positive_word(omega, {"x"}), UnknownSymbol);
}

TEST_CASE("positive words are positive on concrete markings") {
  // x -> y with y >= x for some x in a small box, checked by simulation.
  const NetModel omega(2, {{"t", {1, 0}, IdealVec::parse("(0,w)")}, {"s", {0, 0}, IdealVec::parse("(2,0)")}});
  auto witnessed = [&](const Word& w) {
    for (std::uint64_t a = 0; a <= 4; ++a)
      for (std::uint64_t b = 0; b <= 4; ++b) {
        std::vector<Marking> cur{Marking{a, b}};
        for (const auto& l : w) {
          std::vector<Marking> next;
          for (const auto& m : cur)
            for (const auto& y : post_concrete(omega, m, l, 6)) next.push_back(y);
          cur = next;
        }
        for (const auto& y : cur)
          if (Marking{a, b}.leq(y)) return true;
      }
    return false;
  };
  for (const auto& w : devkit::all_words({"s", "t"}, 4)) {
    if (w.empty()) continue;
    CHECK(is_positive_word(omega, w) == witnessed(w));
  }
}

TEST_CASE("is_positive_word is invariant under permutation") {
  devkit::Rng rng(52);
  for (int k = 0; k < 200; ++k) {
    const auto net = devkit::random_net(rng, {3, 4, 3, 0.0});
    auto w = devkit::random_word(rng, net.alphabet(), devkit::pick(rng, 1, 6));
    const bool p = is_positive_word(net, w);
    std::shuffle(w.begin(), w.end(), rng);
    CHECK(is_positive_word(net, w) == p);
  }
}

TEST_CASE("exists_positive_sequence: small cases") {
  EpsNfa loop({"t"});
  loop.add_state("q", true);
  loop.add_transition(0, "t", 0);
  const auto inc = NetModel::from_vas(1, {{"t", {1}}});
  const auto w = exists_positive_sequence(attach_net_effects(loop, inc));
  REQUIRE(w);
  CHECK(w->word == Word{"t"});
  CHECK(w->justification[0].displacement == 1);

  EpsNfa once({"u"});
  once.add_state("p");
  once.add_state("q", true);
  once.add_transition(0, "u", 1);
  const auto dec = NetModel::from_vas(1, {{"u", {-1}}});
  CHECK_FALSE(exists_positive_sequence(attach_net_effects(once, dec)));

  // Only ε is accepted: the empty word does not count.
  EpsNfa eps({"t"});
  eps.add_state("p", true);
  eps.add_state("q", true);
  eps.add_epsilon(0, 1);
  CHECK_FALSE(exists_positive_sequence(attach_net_effects(eps, inc)));

  // a (-1) then loop b (+1): positive only with at least one b.
  EpsNfa two({"a", "b"});
  two.add_state("p");
  two.add_state("q", true);
  two.add_transition(0, "a", 1);
  two.add_transition(1, "b", 1);
  const auto ab = NetModel::from_vas(1, {{"a", {-1}}, {"b", {1}}});
  const auto w2 = exists_positive_sequence(attach_net_effects(two, ab));
  REQUIRE(w2);
  CHECK(w2->word == Word{"a", "b"});
}

TEST_CASE("exists_positive_sequence against bounded enumeration") {
  devkit::Rng rng(53);
  PositivityOptions bounded;
  bounded.max_word_length = 10;
  int found = 0;
  for (int k = 0; k < 150; ++k) {
    const auto ea = devkit::random_effect_automaton(rng, 4, 3, 2);
    const auto oracle = devkit::positive_word_by_enumeration(ea, 10);
    const auto w = exists_positive_sequence(ea, bounded);
    CHECK(w.has_value() == oracle.has_value());
    if (!w) continue;
    ++found;
    CHECK(w->word.size() <= 10);
    CHECK(devkit::simulate(ea.nfa, w->word));
    CHECK(is_positive(w->justification));
    CHECK(w->path.size() >= 2);
  }
  CHECK(found > 10);
}

TEST_CASE("unbounded search agrees with enumeration when it answers") {
  devkit::Rng rng(54);
  int inconclusive = 0;
  for (int k = 0; k < 150; ++k) {
    const auto ea = devkit::random_effect_automaton(rng, 4, 3, 2);
    const auto oracle = devkit::positive_word_by_enumeration(ea, 10);
    try {
      const auto w = exists_positive_sequence(ea);
      if (oracle) CHECK(w.has_value());
      if (w) {
        CHECK(devkit::simulate(ea.nfa, w->word));
        CHECK(is_positive(w->justification));
      }
    } catch (const PositivityInconclusive&) {
      ++inconclusive;
    }
  }
  CHECK(inconclusive == 0);
}
