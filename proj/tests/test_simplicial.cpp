#include <doctest.h>

#include "aq/random_fixtures.hpp"
#include "aq/simplicial.hpp"
#include "oracles.hpp"

using namespace aq;

namespace {

ModuleComplex two_term(Int k) {
  ChainComplex c;
  c.groups = {PresentedGroup::free(1), PresentedGroup::free(1)};
  c.differentials = {Matrix(0, 1), Matrix{{k}}};
  return ModuleComplex::from_chain_complex(c);
}

Module zmod(const std::vector<Int>& orders) { return Module::trivial(Ring::integers(), orders); }

std::size_t binom(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("monotone maps") {
  CHECK(surjections_from(2).size() == 4);
  for (int n = 0; n <= 5; ++n)
    for (int k = 0; k <= n; ++k) CHECK(surjections_onto(n, k).size() == binom(static_cast<std::size_t>(n), static_cast<std::size_t>(n - k)));
  CHECK(face_map(2, 1) == Monotone{0, 2});
  CHECK(degeneracy_map(1, 0) == Monotone{0, 0, 1});
}

TEST_CASE("dold-kan basics") {
  auto v = dold_kan(two_term(4), 4);
  CHECK(!v.identity_failure());
  auto pi = moore_homotopy(v, 3);
  const auto f = oracle::invariant_factors(Matrix{{4}});
  REQUIRE(f.size() == 1);
  CHECK(pi[0] == FGAbelianGroup::cyclic(static_cast<Int>(f[0])));
  for (std::size_t n = 1; n <= 3; ++n) CHECK(pi[n].is_zero());
  // unnormalized complex has the same homology
  const auto alt = v.alternating_complex();
  for (int n = 0; n <= 3; ++n) CHECK(alt.homology(n) == pi[static_cast<std::size_t>(n)]);

  auto c = SimplicialModule::constant(zmod({0}), 3);
  CHECK(!c.identity_failure());
  auto pc = moore_homotopy(c, 2);
  CHECK(pc[0] == FGAbelianGroup::free(1));
  CHECK(pc[1].is_zero());
  CHECK_THROWS(moore_homotopy(c, 3));

  // K(Z,0) is the constant object
  auto k0 = dold_kan(shifted(zmod({0}), 0), 3);
  for (const auto& l : k0.levels) CHECK(l.gens() == 1);

  for (const auto& a : std::vector<std::vector<Int>>{{0}, {2}, {3}, {0, 4}}) {
    const Module m = zmod(a);
    for (std::size_t n = 0; n <= 2; ++n) {
      auto k = dold_kan(shifted(m, n), n + 2);
      CHECK(!k.identity_failure());
      auto p = moore_homotopy(k, n + 1);
      for (std::size_t i = 0; i <= n + 1; ++i) CHECK(p[i] == (i == n ? m.invariants() : FGAbelianGroup::zero()));
      // level sizes follow the count of surjections onto [n]
      CHECK(k.levels[n + 1].gens() == (n + 1) * m.gens());
    }
  }
}

TEST_CASE("dold-kan round trip on random complexes") {
  Rng rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const ChainComplex c = random_complex(rng, 5, 3, 5);
    REQUIRE(c.squares_to_zero());
    const ModuleComplex mc = ModuleComplex::from_chain_complex(c);
    const auto v = dold_kan(mc, mc.length());
    CHECK(!v.identity_failure());
    CHECK(normalize_dk(v) == mc);
  }
}

TEST_CASE("identity failures are named") {
  auto v = dold_kan(two_term(3), 3);
  auto broken = v;
  broken.faces[2][0] = broken.faces[2][1];
  auto msg = broken.identity_failure();
  REQUIRE(msg.has_value());
  CHECK(msg->find("level 2") != std::string::npos);
}

TEST_CASE("latching and matching") {
  auto l0 = latching(dold_kan(two_term(2), 2), 0);
  CHECK(l0.object.gens() == 0);
  auto c = SimplicialModule::constant(Module::free(Ring::integers(), 1), 3);
  auto l1 = latching(c, 1);
  CHECK(l1.object.invariants() == FGAbelianGroup::free(1));
  CHECK(l1.map == Matrix{{1}});

  // for Gamma(C) the latching object is the degenerate part
  ChainComplex cc;
  cc.groups = {PresentedGroup::free(2), PresentedGroup::free(1), PresentedGroup::free(1)};
  cc.differentials = {Matrix(0, 2), Matrix{{2}, {0}}, Matrix{{0}}};
  const auto v = dold_kan(ModuleComplex::from_chain_complex(cc), 4);
  for (std::size_t n = 1; n <= 4; ++n) {
    auto l = latching(v, n);
    Int degenerate = 0;
    for (int k = 0; k < static_cast<int>(n) && k <= 2; ++k)
      degenerate += static_cast<Int>(surjections_onto(static_cast<int>(n), k).size()) * static_cast<Int>(cc.groups[static_cast<std::size_t>(k)].gens);
    CHECK(l.object.invariants() == FGAbelianGroup::free(degenerate));
    CHECK(is_injective(l.object.group, v.levels[n].group, l.map));
  }

  // matching objects of K(Z/2, 1): iso above degree 2, injective at 2
  const auto k = dold_kan(shifted(zmod({2}), 1), 5);
  for (std::size_t i = 3; i <= 5; ++i) {
    auto m = matching(k, i);
    CHECK(m.object.invariants() == k.levels[i].invariants());
    CHECK(is_isomorphism(k.levels[i].group, m.object.group, m.matching_map));
  }
  auto m2 = matching(k, 2);
  CHECK(m2.object.invariants().order() == 8);
  CHECK(is_injective(k.levels[2].group, m2.object.group, m2.matching_map));
  CHECK(!is_surjective(k.levels[2].group, m2.object.group, m2.matching_map));
}

TEST_CASE("cohomotopy") {
  auto c = CosimplicialGroup::constant(PresentedGroup::cyclic_sum({3}), 3);
  auto h = cohomotopy(c, 2);
  CHECK(h[0] == FGAbelianGroup::cyclic(3));
  CHECK(h[1].is_zero());

  const auto v = dold_kan(two_term(4), 4);
  auto w = hom_cosimplicial(v, zmod({2}));
  auto e = cohomotopy(w, 3);
  CHECK(e[0] == FGAbelianGroup::cyclic(2));
  CHECK(e[1] == FGAbelianGroup::cyclic(2));
  CHECK(e[2].is_zero());
  CHECK(e[3].is_zero());

  auto t = moore_homotopy(tensor_simplicial(v, zmod({2})), 3);
  CHECK(t[0] == FGAbelianGroup::cyclic(2));
  CHECK(t[1] == FGAbelianGroup::cyclic(2));
  CHECK(t[2].is_zero());

  auto z = cohomotopy(hom_cosimplicial(v, Module::zero(Ring::integers())), 2);
  for (const auto& g : z) CHECK(g.is_zero());
}
