#include <doctest.h>

#include <algorithm>
#include <functional>

#include "wsts/buchi.hpp"
#include "wsts/devkit/generators.hpp"
#include "wsts/devkit/oracles.hpp"
#include "wsts/liveness.hpp"
#include "wsts/product.hpp"

using namespace wsts;

namespace {

const auto inc = NetModel::from_vas(1, {{"a", {1}}});
const auto dec = NetModel::from_vas(1, {{"a", {-1}}});

// Every lasso u·v^ω of the finite reachability graph with |u|, |v| bounded.
void for_each_lasso(const NetModel& net, const Marking& x0, std::size_t max_prefix,
                    std::size_t max_loop, const std::function<void(const Word&, const Word&)>& f) {
  const auto g = devkit::reachability_graph(net, x0);
  Word prefix;
  std::function<void(std::size_t, std::size_t, Word&)> loops = [&](std::size_t start,
                                                                   std::size_t at, Word& loop) {
    if (!loop.empty() && at == start) f(prefix, loop);
    if (loop.size() == max_loop) return;
    for (const auto& [l, to] : g.succ[at]) {
      loop.push_back(net.label_name(l));
      loops(start, to, loop);
      loop.pop_back();
    }
  };
  std::function<void(std::size_t)> prefixes = [&](std::size_t at) {
    Word loop;
    loops(at, at, loop);
    if (prefix.size() == max_prefix) return;
    for (const auto& [l, to] : g.succ[at]) {
      prefix.push_back(net.label_name(l));
      prefixes(to);
      prefix.pop_back();
    }
  };
  prefixes(0);
}

// Fires a word concretely; absent when some step is disabled.
std::optional<Marking> fire(const NetModel& net, Marking x, const Word& w) {
  for (const auto& a : w) {
    const auto next = post_concrete(net, x, a);
    if (next.empty()) return std::nullopt;
    x = next.front();
  }
  return x;
}

}  // namespace

TEST_CASE("ltl parser") {
  const auto f = parse_ltl("G F a");
  CHECK(f.kind() == LtlFormula::Kind::always);
  CHECK(f.left().kind() == LtlFormula::Kind::eventually);
  CHECK(f.left().left() == LtlFormula::atom("a"));

  // | binds loosest, then &, then U/R (right associative), then prefix operators.
  CHECK(parse_ltl("a | b & c") ==
        LtlFormula::disjunction(LtlFormula::atom("a"),
                                LtlFormula::conjunction(LtlFormula::atom("b"), LtlFormula::atom("c"))));
  CHECK(parse_ltl("a U b U c") ==
        LtlFormula::until(LtlFormula::atom("a"),
                          LtlFormula::until(LtlFormula::atom("b"), LtlFormula::atom("c"))));
  CHECK(parse_ltl("!a U X b") ==
        LtlFormula::until(LtlFormula::negation(LtlFormula::atom("a")),
                          LtlFormula::next(LtlFormula::atom("b"))));
  CHECK(parse_ltl("(a & b) R c").kind() == LtlFormula::Kind::release);
  CHECK(parse_ltl("true") == LtlFormula::tt());
  CHECK(parse_ltl("false") == parse_ltl("ff"));
  CHECK(parse_ltl("F G !a").atoms() == std::set<std::string>{"a"});

  for (const char* bad : {"", "a &", "(a", "a b", "G", "a ) b", "U a", "#"})
    CHECK_THROWS_AS(parse_ltl(bad), ParseError);

  devkit::Rng rng(70);
  for (int k = 0; k < 300; ++k) {
    const auto phi = devkit::random_ltl(rng, 1 + k % 8, {"a", "b", "c"});
    CHECK(parse_ltl(phi.to_string()) == phi);
  }
}

TEST_CASE("negation normal form") {
  CHECK(to_nnf(parse_ltl("F a")) == parse_ltl("tt U a"));
  CHECK(to_nnf(parse_ltl("G a")) == parse_ltl("ff R a"));
  CHECK(to_nnf(parse_ltl("!(a U b)")) == parse_ltl("!a R !b"));
  CHECK(to_nnf(parse_ltl("!X !a")) == parse_ltl("X a"));
  CHECK(to_nnf(parse_ltl("!(a & !b)")) == parse_ltl("!a | b"));
  CHECK(to_nnf(parse_ltl("!G F a")) == parse_ltl("tt U (ff R !a)"));

  const std::function<bool(const LtlFormula&)> in_nnf = [&](const LtlFormula& f) {
    using K = LtlFormula::Kind;
    switch (f.kind()) {
      case K::tt: case K::ff: case K::atom: return true;
      case K::negation: return f.left().kind() == K::atom;
      case K::next: return in_nnf(f.left());
      case K::conjunction: case K::disjunction: case K::until: case K::release:
        return in_nnf(f.left()) && in_nnf(f.right());
      default: return false;
    }
  };
  devkit::Rng rng(71);
  for (int k = 0; k < 300; ++k) {
    const auto phi = devkit::random_ltl(rng, 1 + k % 8, {"a", "b"});
    const auto n = to_nnf(phi);
    CHECK(in_nnf(n));
    const Word u = devkit::random_word(rng, {"a", "b"}, k % 3);
    const Word v = devkit::random_word(rng, {"a", "b"}, 1 + k % 3);
    CHECK(devkit::lasso_satisfies(phi, u, v) == devkit::lasso_satisfies(n, u, v));
  }
}

TEST_CASE("translator examples") {
  const auto top = ltl_to_buchi(LtlFormula::tt(), {"a", "b"});
  REQUIRE(top.num_states() == 1);
  CHECK(top.accepting[0]);
  CHECK(top.edges.size() == 2);
  for (const auto& e : top.edges) CHECK((e.from == 0 && e.to == 0));

  const auto ga = ltl_to_buchi(parse_ltl("G a"), {"a", "b"});
  CHECK(accepts_lasso(ga, {}, {"a"}));
  CHECK(accepts_lasso(ga, {"a", "a"}, {"a"}));
  CHECK_FALSE(accepts_lasso(ga, {}, {"a", "b"}));
  CHECK_FALSE(accepts_lasso(ga, {"b"}, {"a"}));
  CHECK_FALSE(accepts_lasso(ga, {}, {"b"}));

  const auto ff = ltl_to_buchi(LtlFormula::ff(), {"a"});
  CHECK_FALSE(accepts_lasso(ff, {}, {"a"}));

  CHECK_THROWS_AS(ltl_to_buchi(parse_ltl("F c"), {"a", "b"}), UnknownSymbol);
  CHECK_THROWS_AS(accepts_lasso(ga, {}, {}), PreconditionError);
}

TEST_CASE("translator agrees with lasso semantics") {
  const std::vector<std::string> sigma{"a", "b"};
  devkit::Rng rng(72);
  for (int k = 0; k < 200; ++k) {
    const auto phi = devkit::random_ltl(rng, 1 + k % 6, sigma);
    const auto b = ltl_to_buchi(phi, sigma);
    for (int j = 0; j < 8; ++j) {
      const Word u = devkit::random_word(rng, sigma, devkit::pick(rng, 0, 4));
      const Word v = devkit::random_word(rng, sigma, devkit::pick(rng, 1, 4));
      INFO(phi.to_string());
      CHECK(accepts_lasso(b, u, v) == devkit::lasso_satisfies(phi, u, v));
    }
  }
}

TEST_CASE("textual Büchi automata") {
  const auto b = parse_buchi(
      "alphabet: a b\ninitial: p\naccepting: q\np a p\np b p\np a q\nq a q\n");
  CHECK(b.num_states() == 2);
  CHECK(accepts_lasso(b, {"b", "b"}, {"a"}));
  CHECK_FALSE(accepts_lasso(b, {}, {"a", "b"}));
  CHECK_THROWS_AS(parse_buchi("alphabet: a\ninitial: p\np eps p\n"), PreconditionError);
  CHECK(to_dot(b).find("doublecircle") != std::string::npos);
}

TEST_CASE("bottom-extended target") {
  const auto b = parse_buchi("alphabet: a\ninitial: p\naccepting: q\np a q\nq a q\n");
  const auto target = bottom_extend_target(b, 1);
  CHECK(target.contains(ProductIdeal{1, IdealVec::parse("(3)")}));
  CHECK_FALSE(target.contains(ProductIdeal{0, IdealVec::parse("(w)")}));
  CHECK(target.contains(ProductIdeal::bottom(1)));
  CHECK_THROWS_AS(bottom_extend_target(b, 2), PreconditionError);
  CHECK(render_ideal(ProductIdeal{1, IdealVec::parse("(w,2)")}) == "(1, (w,2))");
  CHECK(render_ideal(ProductIdeal::bottom(0)) == "(0, ⊥)");
}

TEST_CASE("product system") {
  const auto loop = parse_buchi("alphabet: a\ninitial: q0\naccepting: q0\nq0 a q0\n");
  const ProductSystem sys(loop, inc);
  CHECK(sys.alphabet_size() == 1);
  CHECK(sys.label_name(0) == "a@q0");
  const auto next = sys.post(sys.initial(Marking{0}), 0);
  REQUIRE(next);
  CHECK(*next == ProductIdeal{0, IdealVec::parse("(1)")});

  const auto tree = build_ikm_tree(sys, sys.initial(Marking{0}));
  const auto plain = build_ikm_tree(NetCompletion(inc), IdealVec::down(Marking{0}));
  REQUIRE(tree.size() == 3);
  REQUIRE(plain.size() == tree.size());
  for (std::size_t i = 0; i < tree.size(); ++i) {
    REQUIRE(tree.node(i).ideal.vec);
    CHECK(*tree.node(i).ideal.vec == plain.node(i).ideal);
    CHECK(tree.node(i).parent == plain.node(i).parent);
    CHECK(tree.node(i).numaccel == plain.node(i).numaccel);
  }

  // p --a--> q only: the second a is blocked by the automaton, not by the net.
  const auto once = parse_buchi("alphabet: a\ninitial: p\naccepting: q\np a q\n");
  const ProductSystem blocked(once, inc);
  const auto first = blocked.post(blocked.initial(Marking{0}), blocked.alphabet_size() - 1);
  REQUIRE(first);
  for (Label l = 0; l < blocked.alphabet_size(); ++l) CHECK_FALSE(blocked.post(*first, l));
  CHECK(build_ikm_tree(blocked, blocked.initial(Marking{0})).size() == 2);

  const auto other = parse_buchi("alphabet: b\ninitial: p\np b p\n");
  CHECK_THROWS_AS(ProductSystem(other, inc), AlphabetMismatch);
}

TEST_CASE("product completion is deterministic and monotone") {
  devkit::Rng rng(73);
  for (int k = 0; k < 40; ++k) {
    const auto net = devkit::random_net(rng, {3, 3, 2, 0.0});
    const auto phi = devkit::random_ltl(rng, 1 + k % 5, net.alphabet());
    const auto b = ltl_to_buchi(phi, net.alphabet());
    const ProductSystem sys(b, net);
    for (int s = 0; s < 50; ++s) {
      const State q = devkit::pick(rng, 0, b.num_states() - 1);
      const auto x = devkit::random_marking(rng, net.dimension(), 3);
      auto y = x;
      for (std::size_t i = 0; i < y.dimension(); ++i) y[i] += devkit::pick(rng, 0, 2);
      const ProductIdeal u{q, IdealVec::down(x)}, v{q, IdealVec::down(y)};
      REQUIRE(sys.leq(u, v));
      for (Label l = 0; l < sys.alphabet_size(); ++l) {
        const auto pu = sys.post(u, l), pv = sys.post(v, l);
        CHECK(pu == sys.post(u, l));
        if (!pu) continue;
        REQUIRE(pv);
        CHECK(pu->control == sys.target_state(l));
        CHECK(sys.leq(*pu, *pv));
        if (!(u == v)) CHECK_FALSE(*pu == *pv);
      }
    }
  }
}

TEST_CASE("model checking examples") {
  const auto gfa = model_check_ltl(inc, Marking{0}, parse_ltl("G F a"));
  CHECK(gfa.holds);

  const auto fgna = model_check_ltl(inc, Marking{0}, parse_ltl("F G !a"));
  CHECK_FALSE(fgna.holds);
  REQUIRE(fgna.accepting_state);
  CHECK_FALSE(fgna.loop.empty());
  REQUIRE(fgna.witness);
  CHECK(is_positive(fgna.witness->justification));
  CHECK_FALSE(devkit::lasso_satisfies(parse_ltl("F G !a"), fgna.prefix, fgna.loop));

  for (const char* phi : {"G F a", "F G !a", "ff", "X X X X a", "G !a", "a U !a"})
    CHECK(model_check_ltl(dec, Marking{3}, parse_ltl(phi)).holds);

  CHECK_THROWS_AS(model_check_ltl(inc, Marking{0}, parse_ltl("F b")), UnknownSymbol);
  CHECK_THROWS_AS(model_check_ltl(inc, Marking{0, 0}, parse_ltl("F a")), DimensionMismatch);
}

TEST_CASE("model checking agrees with lassos of bounded nets") {
  devkit::Rng rng(74);
  for (int k = 0; k < 40; ++k) {
    const auto net = devkit::random_bounded_net(rng, {2, 3, 2, 0.0});
    const auto x0 = devkit::random_marking(rng, net.dimension(), 2);
    const auto phi = devkit::random_ltl(rng, 1 + k % 5, net.alphabet());
    INFO(render_net(net), x0.to_string(), " ", phi.to_string());
    const auto verdict = model_check_ltl(net, x0, phi);
    if (verdict.holds) {
      for_each_lasso(net, x0, 3, 3, [&](const Word& u, const Word& v) {
        CHECK(devkit::lasso_satisfies(phi, u, v));
      });
    } else {
      // Bounded nets never accelerate, so the diagnostic lasso is a real trace.
      const auto at_loop = fire(net, x0, verdict.prefix);
      REQUIRE(at_loop);
      const auto after = fire(net, *at_loop, verdict.loop);
      REQUIRE(after);
      CHECK(std::equal(at_loop->begin(), at_loop->end(), after->begin(),
                       [](auto l, auto r) { return l <= r; }));
      CHECK_FALSE(devkit::lasso_satisfies(phi, verdict.prefix, verdict.loop));
    }
  }
}

TEST_CASE("a formula and its negation cannot both hold when a trace is infinite") {
  devkit::Rng rng(75);
  for (int k = 0; k < 30; ++k) {
    const auto net = devkit::random_net(rng, {2, 3, 2, 0.0});
    const auto x0 = devkit::random_marking(rng, net.dimension(), 2);
    const auto phi = devkit::random_ltl(rng, 1 + k % 5, net.alphabet());
    const bool infinite = repeatedly_coverable(net, x0, Marking(std::vector<std::uint64_t>(net.dimension()))).holds;
    const bool pos = model_check_ltl(net, x0, phi).holds;
    const bool neg = model_check_ltl(net, x0, LtlFormula::negation(phi)).holds;
    INFO(render_net(net), x0.to_string(), " ", phi.to_string());
    if (infinite) CHECK_FALSE((pos && neg));
    else CHECK((pos && neg));
  }
}

TEST_CASE("single-letter nets: F G !a fails exactly when some run is infinite") {
  devkit::Rng rng(76);
  for (int k = 0; k < 30; ++k) {
    const auto shape = devkit::random_net(rng, {2, 1, 2, k % 3 ? 0.0 : 0.2});
    const NetModel net(shape.dimension(),
                       {{"a", shape.transition(0).guard, shape.transition(0).output}});
    const auto x0 = devkit::random_marking(rng, net.dimension(), 3);
    const bool infinite =
        repeatedly_coverable(net, x0, Marking(std::vector<std::uint64_t>(net.dimension()))).holds;
    CHECK(model_check_ltl(net, x0, parse_ltl("G F a")).holds);
    CHECK(model_check_ltl(net, x0, parse_ltl("F G !a")).holds == !infinite);
  }
}
