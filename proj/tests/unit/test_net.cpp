#include <doctest.h>

#include <algorithm>

#include "wsts/devkit/generators.hpp"
#include "wsts/devkit/oracles.hpp"
#include "wsts/net.hpp"

using namespace wsts;

namespace {

IdealVec iv(const char* s) { return IdealVec::parse(s); }

NetModel single(std::vector<std::uint64_t> guard, const char* output) {
  const std::size_t d = guard.size();
  return NetModel(d, {{"t", std::move(guard), iv(output)}});
}

std::vector<IdealVec> random_ideals_below(devkit::Rng& rng, std::size_t d, std::size_t count) {
  std::vector<IdealVec> out;
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<OmegaNat> c(d);
    for (auto& x : c) x = devkit::coin(rng, 0.25) ? kOmega : OmegaNat(devkit::pick(rng, 0, 5));
    out.emplace_back(std::move(c));
  }
  return out;
}

}  // namespace

TEST_CASE("post_concrete") {
  const auto vas = NetModel::from_vas(2, {{"t", {1, -1}}});
  CHECK(post_concrete(vas, Marking{0, 5}, "t", 0) == std::vector<Marking>{Marking{1, 4}});
  CHECK(post_concrete(vas, Marking{3, 0}, "t", 0).empty());

  const auto omega = single({1, 0}, "(0,w)");
  CHECK(post_concrete(omega, Marking{2, 0}, "t", 2) ==
        std::vector<Marking>{Marking{1, 0}, Marking{1, 1}, Marking{1, 2}});
  CHECK_THROWS_AS(post_concrete(vas, Marking{0, 5}, "nope", 0), UnknownSymbol);
}

TEST_CASE("post_ideal") {
  CHECK(*post_ideal(single({0, 0, 0}, "(0,1,2)"), iv("(5,0,1)"), "t") == iv("(5,1,3)"));
  CHECK_FALSE(post_ideal(single({1, 3}, "(0,0)"), iv("(w,2)"), "t"));
  CHECK(*post_ideal(single({2, 0}, "(0,1)"), iv("(w,5)"), "t") == iv("(w,6)"));
  CHECK(*post_ideal(single({1, 0}, "(0,w)"), iv("(3,0)"), "t") == iv("(2,w)"));
  CHECK_THROWS_AS(post_ideal(single({0}, "(0)"), iv("(1)"), "u"), UnknownSymbol);
  CHECK_THROWS_AS(post_ideal(single({0}, "(0)"), iv("(1,1)"), "t"), DimensionMismatch);
}

TEST_CASE("effect_summary") {
  auto e1 = effect_summary(single({1, 0}, "(2,0)"), "t");
  CHECK(e1.displacement == std::vector<std::int64_t>{1, 0});
  CHECK(e1.omega == std::vector<bool>{false, false});
  auto e2 = effect_summary(single({1, 0}, "(0,w)"), "t");
  CHECK(e2.displacement[0] == -1);
  CHECK(e2.omega == std::vector<bool>{false, true});
  auto e3 = effect_summary(NetModel::from_vas(2, {{"t", {-2, 3}}}), "t");
  CHECK(e3.displacement == std::vector<std::int64_t>{-2, 3});
}

TEST_CASE("from_vas encodes guard and output") {
  const auto n = NetModel::from_vas(3, {{"t", {-2, 0, 3}}});
  CHECK(n.transition(0).guard == std::vector<std::uint64_t>{2, 0, 0});
  CHECK(n.transition(0).output == iv("(0,0,3)"));
}

TEST_CASE("backward_coverable") {
  const auto inc = NetModel::from_vas(1, {{"t", {1}}});
  const auto dec = NetModel::from_vas(1, {{"t", {-1}}});
  CHECK(backward_coverable(inc, Marking{0}, Marking{5}));
  CHECK_FALSE(backward_coverable(dec, Marking{3}, Marking{4}));
  CHECK(backward_coverable(dec, Marking{3}, Marking{0}));
  CHECK_THROWS_AS(backward_coverable(single({0}, "(w)"), Marking{0}, Marking{1}), PreconditionError);
}

TEST_CASE("load_net: line format") {
  const auto n = load_net("# two transitions\ndim 2\nt1 | 1,0 | 0,w\nt2 : -1, 2\n");
  CHECK(n.dimension() == 2);
  CHECK(n.alphabet_size() == 2);
  CHECK(n.transition(0).output == iv("(0,w)"));
  CHECK(n.transition(1).guard == std::vector<std::uint64_t>{1, 0});
  CHECK(load_net(render_net(n)).transitions().size() == 2);
  CHECK(render_net(load_net(render_net(n))) == render_net(n));
}

TEST_CASE("load_net: json format") {
  const auto n = load_net(R"({"dimension": 2, "transitions": [
      {"label": "t1", "guard": [1,0], "output": [0,"w"]},
      {"label": "t2", "effect": [-1,2]}]})");
  CHECK(n.alphabet() == std::vector<std::string>{"t1", "t2"});
  CHECK(n.transition(0).output == iv("(0,w)"));
}

TEST_CASE("load_net: validation and syntax errors") {
  try {
    load_net("dim 2\nt1 | w,0 | 0,0\n");
    FAIL("expected an error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("guards must be finite") != std::string::npos);
  }
  try {
    load_net("dim 1\nt1 | 0 | 1\nt1 | 1 | 0\n");
    FAIL("expected an error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("labels must be unique") != std::string::npos);
  }
  try {
    load_net("dim 2\nt1 | 0 | 1\n");
    FAIL("expected an error");
  } catch (const ValidationError& e) {
    CHECK(e.violations().size() >= 1);
  }
  try {
    load_net("dim 1\nt1 | 0 | 1,x\n");
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(load_net("t1 | 0 | 1\n"), ParseError);
}

// Strictness needs finite outputs: an ω output maps ↓(1) and ↓(2) to the same ideal.
TEST_CASE("completion is strong-strict monotone and never lowers the level") {
  devkit::Rng rng(21);
  devkit::NetShape shape{3, 4, 3, 0.15};
  for (int k = 0; k < 200; ++k) {
    const auto net = devkit::random_net(rng, shape);
    const auto ideals = random_ideals_below(rng, net.dimension(), 12);
    for (Label a = 0; a < net.alphabet_size(); ++a) {
      for (const auto& u : ideals) {
        const auto pu = post_ideal(net, u, a);
        if (pu) CHECK(level(*pu) >= level(u));
        for (const auto& v : ideals) {
          if (!vec_lt(u, v) || !pu) continue;
          const auto pv = post_ideal(net, v, a);
          REQUIRE(pv);
          if (net.has_omega_outputs())
            CHECK(vec_leq(*pu, *pv));
          else
            CHECK(vec_lt(*pu, *pv));
        }
      }
    }
  }
}

TEST_CASE("completion agrees with concrete successors on boxes") {
  devkit::Rng rng(22);
  devkit::NetShape shape{3, 3, 2, 0.2};
  const std::uint64_t box = 4;
  for (int k = 0; k < 40; ++k) {
    const auto net = devkit::random_net(rng, shape);
    const std::size_t d = net.dimension();
    const std::uint64_t inner = box + 2 + 2;  // box + max guard + max finite output
    for (const auto& v : random_ideals_below(rng, d, 4)) {
      for (Label a = 0; a < net.alphabet_size(); ++a) {
        std::size_t points = 1;
        for (std::size_t i = 0; i < d; ++i) points *= box + 1;
        std::vector<bool> expected(points, false);
        std::size_t inner_points = 1;
        for (std::size_t i = 0; i < d; ++i) inner_points *= inner + 1;
        for (std::size_t idx = 0; idx < inner_points; ++idx) {
          const auto y = devkit::box_point(idx, d, inner);
          if (!contains(v, y)) continue;
          for (auto z : post_concrete(net, y, a, box)) {
            for (std::size_t i = 0; i < d; ++i) z[i] = std::min<std::uint64_t>(z[i], box);
            expected[devkit::box_index(z, box)] = true;
          }
        }
        devkit::close_downward(expected, d, box);
        const auto image = post_ideal(net, v, a);
        for (std::size_t p = 0; p < points; ++p) {
          const auto x = devkit::box_point(p, d, box);
          CHECK(expected[p] == (image && contains(*image, x)));
        }
      }
    }
  }
}

TEST_CASE("backward_coverable agrees with exhaustive forward search on bounded nets") {
  devkit::Rng rng(23);
  devkit::NetShape shape{3, 4, 3, 0.0};
  for (int k = 0; k < 60; ++k) {
    const auto net = devkit::random_bounded_net(rng, shape);
    const auto x0 = devkit::random_marking(rng, net.dimension(), 4);
    const auto y = devkit::random_marking(rng, net.dimension(), 4);
    const auto g = devkit::reachability_graph(net, x0);
    const bool forward = std::any_of(g.markings.begin(), g.markings.end(),
                                     [&](const Marking& m) { return y.leq(m); });
    CHECK(backward_coverable(net, x0, y) == forward);
  }
}
