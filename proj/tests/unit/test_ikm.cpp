#include <doctest.h>

#include <fstream>
#include <sstream>

#include "wsts/devkit/generators.hpp"
#include "wsts/devkit/oracles.hpp"
#include "wsts/ikm.hpp"

using namespace wsts;

namespace {

IdealVec iv(const char* s) { return IdealVec::parse(s); }

const NetModel& inc_net() {
  static const NetModel n = NetModel::from_vas(1, {{"t", {1}}});
  return n;
}

const NetModel& chain_net() {
  static const NetModel n = NetModel::from_vas(2, {{"t", {1, -1}}});
  return n;
}

IkmTree<IdealVec> tree_of(const NetModel& n, const Marking& x0, IkmOptions o = {}) {
  return build_ikm_tree(NetCompletion(n), IdealVec::down(x0), o);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("post_word") {
  const NetCompletion sys(inc_net());
  CHECK(*post_word(sys, iv("(0)"), std::vector<Label>{}) == iv("(0)"));
  CHECK(*post_word(sys, iv("(0)"), std::vector<Label>{0, 0, 0}) == iv("(3)"));
  const auto dec_net = NetModel::from_vas(1, {{"t", {-1}}});
  const NetCompletion dec(dec_net);
  CHECK_FALSE(post_word(dec, iv("(1)"), std::vector<Label>{0, 0}));
}

TEST_CASE("accelerate") {
  const NetModel n(3, {{"w", {0, 0, 0}, iv("(0,1,2)")}});
  const NetCompletion sys(n);
  CHECK(accelerate(sys, iv("(5,0,1)"), std::vector<Label>{0}) == iv("(5,w,w)"));

  const auto loop_net = NetModel::from_vas(2, {{"a", {1, -1}}, {"b", {-1, 1}}});
  const NetCompletion loop(loop_net);
  CHECK(accelerate(loop, iv("(2,3)"), std::vector<Label>{0, 1}) == iv("(2,3)"));
  CHECK_THROWS_AS(accelerate(loop, iv("(2,3)"), std::vector<Label>{}), PreconditionError);
  CHECK_THROWS_AS(accelerate(loop, iv("(0,0)"), std::vector<Label>{0}), PreconditionError);
}

TEST_CASE("accelerate matches the chain union on boxes") {
  devkit::Rng rng(31);
  const std::uint64_t box = 6;
  int checked = 0;
  while (checked < 150) {
    const auto net = devkit::random_net(rng, {3, 3, 2, 0.1});
    const NetCompletion sys(net);
    const std::size_t d = net.dimension();
    std::vector<OmegaNat> c(d);
    for (auto& x : c) x = devkit::coin(rng, 0.15) ? kOmega : OmegaNat(devkit::pick(rng, 0, 4));
    const IdealVec v(c);
    std::vector<Label> w;
    for (std::size_t k = devkit::pick(rng, 1, 4); k > 0; --k)
      w.push_back(devkit::pick(rng, 0, net.alphabet_size() - 1));
    if (!post_word(sys, v, w)) continue;
    ++checked;

    const auto acc = accelerate(sys, v, w);
    CHECK(vec_leq(v, acc));
    CHECK(accelerate(sys, acc, w) == acc);
    const auto once = *post_word(sys, v, w);
    CHECK((acc == v) == !vec_lt(v, once));
    if (vec_lt(v, once)) CHECK(level(acc) >= level(v) + 1);

    std::vector<IdealVec> chain{v};
    for (int k = 1; k <= 25; ++k) {
      auto next = post_word(sys, chain.back(), w);
      if (!next) break;
      chain.push_back(*next);
    }
    std::size_t points = 1;
    for (std::size_t i = 0; i < d; ++i) points *= box + 1;
    for (std::size_t p = 0; p < points; ++p) {
      const auto x = devkit::box_point(p, d, box);
      bool in_chain = false;
      for (const auto& u : chain) in_chain = in_chain || contains(u, x);
      CHECK(contains(acc, x) == (vec_lt(v, once) ? in_chain : contains(v, x)));
    }
    if (vec_lt(v, once))
      for (const auto& u : chain) CHECK(vec_leq(u, acc));
  }
}

TEST_CASE("tree of the +1 net") {
  const auto tree = tree_of(inc_net(), Marking{0});
  REQUIRE(tree.size() == 3);
  CHECK(tree.node(0).ideal == iv("(0)"));
  CHECK(tree.node(0).numaccel == 0);
  CHECK(tree.node(1).ideal == iv("(w)"));
  CHECK(tree.node(1).numaccel == 1);
  CHECK(tree.node(1).accelerated_by == std::optional<std::size_t>(0));
  CHECK(tree.node(2).subsumed_by == std::optional<std::size_t>(1));
  CHECK(tree.node(2).children.empty());
  CHECK(clover(tree).to_string() == "{(w)}");
  CHECK(coverable(tree, Marking{5}));
  CHECK(tree.stats().accelerations == 1);
}

TEST_CASE("tree of the transfer chain") {
  const auto tree = tree_of(chain_net(), Marking{0, 5});
  CHECK(tree.size() == 6);
  CHECK(tree.stats().accelerations == 0);
  CHECK(clover(tree).to_string() == "{(0,5),(1,4),(2,3),(3,2),(4,1),(5,0)}");
  CHECK_FALSE(coverable(tree, Marking{3, 3}));
  CHECK(coverable(tree, Marking{0, 0}));
  CHECK_THROWS_AS(coverable(tree, Marking{0}), DimensionMismatch);
}

TEST_CASE("tree with nothing enabled") {
  const auto tree = tree_of(NetModel::from_vas(1, {{"t", {-1}}}), Marking{0});
  CHECK(tree.size() == 1);
  CHECK(tree.root().explored);
  CHECK(clover(tree).to_string() == "{(0)}");
}

TEST_CASE("tree reproduces the acceleration example") {
  const NetModel n(3, {{"w", {0, 0, 0}, iv("(0,1,2)")}});
  const auto tree = build_ikm_tree(NetCompletion(n), iv("(5,0,1)"));
  CHECK(tree.node(1).ideal == iv("(5,w,w)"));
  CHECK(clover(tree).to_string() == "{(5,w,w)}");
}

TEST_CASE("stuttering and Karp-Miller automata") {
  const auto tree = tree_of(inc_net(), Marking{0});
  const auto a = stuttering_automaton(tree);
  CHECK(a.num_states() == 3);
  REQUIRE(a.epsilons().size() == 1);
  CHECK(a.epsilons()[0].from == 2);
  CHECK(a.epsilons()[0].to == 1);
  const auto k = km_automaton(tree);
  CHECK(k.epsilons().size() == 2);
  for (std::size_t n = 0; n <= 6; ++n) CHECK(accepts(k, Word(n, "t")));

  const auto chain = tree_of(chain_net(), Marking{0, 5});
  CHECK(stuttering_automaton(chain).epsilons().empty());
  CHECK(km_automaton(chain).epsilons().empty());
  CHECK(accepts(km_automaton(chain), Word(5, "t")));
  CHECK_FALSE(accepts(km_automaton(chain), Word(6, "t")));

  const auto single = tree_of(NetModel::from_vas(1, {{"t", {-1}}}), Marking{0});
  CHECK(accepts(stuttering_automaton(single), {}));
  CHECK_FALSE(accepts(stuttering_automaton(single), {"t"}));
}

TEST_CASE("golden tree export") {
  const auto tree = tree_of(inc_net(), Marking{0});
  CHECK(tree_to_json(tree) == read_file(WSTS_TEST_DATA_DIR "/inc_tree.json"));
  const auto dot = tree_to_dot(tree);
  CHECK(dot.find("n0 [label=\"(0) / 0\"]") != std::string::npos);
  CHECK(dot.find("style=dashed") != std::string::npos);
}

TEST_CASE("budget is enforced") {
  CHECK_THROWS_AS(tree_of(inc_net(), Marking{0}, {2, Worklist::fifo}), BudgetExceeded);
  CHECK_NOTHROW(tree_of(inc_net(), Marking{0}, {3, Worklist::fifo}));
}

// Five-dimensional random nets occasionally need a few hundred thousand nodes.
TEST_CASE("tree invariants on random nets") {
  devkit::Rng rng(32);
  const std::size_t budget = 2000000;
  for (int k = 0; k < 150; ++k) {
    const auto net = devkit::random_net(rng, {5, 6, 3, k % 3 == 0 ? 0.15 : 0.0});
    const auto x0 = devkit::random_marking(rng, net.dimension(), 3);
    const auto fifo = tree_of(net, x0, {budget, Worklist::fifo});
    const auto lifo = tree_of(net, x0, {budget, Worklist::lifo});
    CHECK(clover(fifo) == clover(lifo));
    for (std::size_t i = 0; i < fifo.size(); ++i) {
      const auto& n = fifo.node(i);
      CHECK(n.explored);
      CHECK(n.numaccel <= net.dimension());
      CHECK(level(n.ideal) >= n.numaccel);
      if (n.parent) CHECK(fifo.node(*n.parent).numaccel <= n.numaccel);
      if (n.subsumed_by) CHECK(n.children.empty());
    }
  }
}

TEST_CASE("clover agrees with truncated forward search on small boxes") {
  devkit::Rng rng(33);
  for (int k = 0; k < 40; ++k) {
    const auto net = devkit::random_net(rng, {3, 4, 3, k % 4 == 0 ? 0.15 : 0.0});
    const auto x0 = devkit::random_marking(rng, net.dimension(), 3);
    const auto cl = clover(tree_of(net, x0));
    const std::uint64_t box = 8;
    const auto oracle = devkit::truncated_cover_box(net, x0, box, 24);
    for (std::size_t p = 0; p < oracle.size(); ++p)
      CHECK(oracle[p] == cl.contains(devkit::box_point(p, net.dimension(), box)));
  }
}
