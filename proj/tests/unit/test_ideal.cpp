#include <doctest.h>

#include <vector>

#include "wsts/devkit/generators.hpp"
#include "wsts/ideal.hpp"

using namespace wsts;

namespace {

IdealVec iv(const char* s) { return IdealVec::parse(s); }

IdealVec random_ideal(devkit::Rng& rng, std::size_t d, std::uint64_t max_entry) {
  std::vector<OmegaNat> c(d);
  for (auto& x : c) x = devkit::coin(rng, 0.2) ? kOmega : OmegaNat(devkit::pick(rng, 0, max_entry));
  return IdealVec(std::move(c));
}

}  // namespace

TEST_CASE("omega order") {
  CHECK(omega_leq(3, kOmega));
  CHECK_FALSE(omega_leq(kOmega, 3));
  CHECK(omega_leq(4, 4));
  CHECK(omega_leq(kOmega, kOmega));
}

TEST_CASE("omega arithmetic saturates") {
  CHECK((kOmega + OmegaNat(5)).is_omega());
  CHECK((kOmega - 5).is_omega());
  CHECK((OmegaNat(7) - 5) == OmegaNat(2));
  CHECK_THROWS_AS(OmegaNat(2) - 5, PreconditionError);
  CHECK_THROWS(kOmega.value());
}

TEST_CASE("rendering round-trip") {
  CHECK(iv("(w,8,3,w)").to_string() == "(w,8,3,w)");
  CHECK(iv("(ω, 8, 3, omega)").to_string() == "(w,8,3,w)");
  CHECK(iv("0").to_string() == "(0)");
  CHECK_THROWS_AS(iv("(1,,2)"), ParseError);
  CHECK_THROWS_AS(iv("()"), ParseError);
  CHECK_THROWS_AS(Marking::parse("(1,w)"), ParseError);
  CHECK(Marking::parse("3,4").to_string() == "(3,4)");

  devkit::Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    auto v = random_ideal(rng, devkit::pick(rng, 1, 6), 20);
    CHECK(IdealVec::parse(v.to_string()) == v);
  }
}

TEST_CASE("vec_leq") {
  CHECK(vec_leq(iv("(5,0,1)"), iv("(5,1,3)")));
  CHECK(vec_leq(iv("(w,8,3,w)"), iv("(w,w,3,w)")));
  CHECK_FALSE(vec_leq(iv("(2,3)"), iv("(3,2)")));
  CHECK_FALSE(vec_leq(iv("(3,2)"), iv("(2,3)")));
  CHECK_THROWS_AS(vec_leq(iv("(1)"), iv("(1,2)")), DimensionMismatch);
}

TEST_CASE("contains") {
  CHECK(contains(iv("(w,8,3,w)"), Marking{100, 8, 0, 7}));
  CHECK_FALSE(contains(iv("(w,8,3,w)"), Marking{0, 9, 0, 0}));
  CHECK(contains(iv("(0,0)"), Marking{0, 0}));
  CHECK_THROWS_AS(contains(iv("(0,0)"), Marking{0}), DimensionMismatch);
}

TEST_CASE("level") {
  CHECK(level(iv("(5,0,1)")) == 0);
  CHECK(level(iv("(5,w,w)")) == 2);
  CHECK(level(iv("(w,8,3,w)")) == 2);
}

TEST_CASE("decompose") {
  auto d = [](std::vector<IdealVec> vs) { return decompose(vs).to_string(); };
  CHECK(d({iv("(1,w)"), iv("(1,2)")}) == "{(1,w)}");
  CHECK(d({iv("(w,0)"), iv("(0,w)")}) == "{(0,w),(w,0)}");
  CHECK(d({iv("(3,3)"), iv("(3,3)")}) == "{(3,3)}");
  CHECK_THROWS_AS(decompose(std::vector<IdealVec>{}), PreconditionError);
  CHECK_THROWS_AS(d({iv("(1)"), iv("(1,1)")}), DimensionMismatch);
}

TEST_CASE("lub_accelerate") {
  CHECK(lub_accelerate(iv("(5,0,1)"), iv("(5,1,3)")) == iv("(5,w,w)"));
  CHECK(lub_accelerate(iv("(0,w)"), iv("(1,w)")) == iv("(w,w)"));
  CHECK(lub_accelerate(iv("(2,2)"), iv("(2,5)")) == iv("(2,w)"));
  CHECK_THROWS_AS(lub_accelerate(iv("(2,2)"), iv("(2,2)")), PreconditionError);
  CHECK_THROWS_AS(lub_accelerate(iv("(3,2)"), iv("(2,5)")), PreconditionError);
}

TEST_CASE("partial order laws on random vectors") {
  devkit::Rng rng(1);
  for (int k = 0; k < 2000; ++k) {
    const std::size_t d = devkit::pick(rng, 1, 6);
    auto u = random_ideal(rng, d, 3), v = random_ideal(rng, d, 3), w = random_ideal(rng, d, 3);
    CHECK(vec_leq(u, u));
    if (vec_leq(u, v) && vec_leq(v, w)) CHECK(vec_leq(u, w));
    if (vec_leq(u, v) && vec_leq(v, u)) CHECK(u == v);
  }
}

TEST_CASE("wqo smoke test: long sequences contain an increasing pair") {
  devkit::Rng rng(2);
  for (std::size_t d : {1, 2, 3, 4}) {
    std::vector<IdealVec> seq;
    for (int k = 0; k < 10000; ++k) seq.push_back(random_ideal(rng, d, 50));
    bool found = false;
    for (std::size_t j = 1; j < seq.size() && !found; ++j)
      for (std::size_t i = 0; i < j && !found; ++i) found = vec_leq(seq[i], seq[j]);
    CHECK(found);
  }
}

TEST_CASE("decompose is a covering antichain") {
  devkit::Rng rng(3);
  for (int k = 0; k < 300; ++k) {
    const std::size_t d = devkit::pick(rng, 1, 4);
    std::vector<IdealVec> vs;
    for (std::size_t n = devkit::pick(rng, 1, 12); n > 0; --n) vs.push_back(random_ideal(rng, d, 3));
    const auto dec = decompose(vs);
    for (const auto& a : dec)
      for (const auto& b : dec)
        if (!(a == b)) CHECK_FALSE(vec_leq(a, b));
    for (const auto& u : vs) CHECK(dec.covers(u));
    for (const auto& a : dec) CHECK(std::find(vs.begin(), vs.end(), a) != vs.end());
  }
}

TEST_CASE("contains agrees with vec_leq on embedded markings") {
  devkit::Rng rng(4);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t d = devkit::pick(rng, 1, 5);
    auto v = random_ideal(rng, d, 4);
    auto x = devkit::random_marking(rng, d, 5);
    CHECK(contains(v, x) == vec_leq(IdealVec::down(x), v));
  }
}

TEST_CASE("lub_accelerate raises the level") {
  devkit::Rng rng(5);
  int checked = 0;
  while (checked < 300) {
    const std::size_t d = devkit::pick(rng, 1, 5);
    auto u = random_ideal(rng, d, 4), v = random_ideal(rng, d, 4);
    if (!vec_lt(u, v)) continue;
    ++checked;
    auto l = lub_accelerate(u, v);
    CHECK(level(l) >= level(u) + 1);
    CHECK(vec_leq(v, l));
  }
}
