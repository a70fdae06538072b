#include <doctest.h>

#include "aq/bisimplicial.hpp"
#include "aq/random_fixtures.hpp"
#include "oracles.hpp"

using namespace aq;

namespace {

constexpr std::size_t kTrunc = 3;

std::vector<std::vector<Int>> homology_orders(const ChainComplex& c, std::size_t top) {
  std::vector<std::size_t> ranks;
  for (const auto& g : c.groups) ranks.push_back(g.gens);
  std::vector<std::vector<Int>> out;
  for (std::size_t i = 0; i <= top; ++i) out.push_back(oracle::free_complex_homology(ranks, c.differentials, i));
  return out;
}

SimplicialModule dk(const ChainComplex& c) { return dold_kan(ModuleComplex::from_chain_complex(c), kTrunc); }

ChainComplex two_step(Int n) {
  ChainComplex c;
  c.groups = {PresentedGroup::free(1), PresentedGroup::free(1)};
  c.differentials = {Matrix(0, 1), Matrix{{n}}};
  return c;
}

}  // namespace

TEST_CASE("diagonal and total complex of external tensors") {
  Rng rng(7);
  int torsion_above_zero = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const ChainComplex a = random_complex(rng, 2, 2, 3), b = random_complex(rng, 2, 2, 3);
    const auto v = external_tensor(dk(a), dk(b));
    REQUIRE(!v.identity_failure());
    const auto ha = homology_orders(a, kTrunc), hb = homology_orders(b, kTrunc);
    const ChainComplex tot = total_complex(v);
    CHECK(tot.squares_to_zero());
    const auto diag = moore_homotopy(diagonal(v), kTrunc - 1);
    const Grid e2 = e2_page(v, kTrunc - 1);
    for (std::size_t n = 0; n < kTrunc; ++n) {
      const auto expected = FGAbelianGroup::from_cyclic_orders(oracle::kunneth(ha, hb, n));
      CHECK(tot.homology(static_cast<int>(n)) == expected);
      CHECK(diag[n] == expected);
      if (n > 0 && !expected.torsion.empty()) ++torsion_above_zero;
    }
    // E2_{s,t} = H_s(A ⊗ H_t B): Künneth with the constant second factor
    for (std::size_t s = 0; s < kTrunc; ++s)
      for (std::size_t t = 0; t < kTrunc; ++t) {
        std::vector<std::vector<Int>> only_t(kTrunc + 1);
        only_t[0] = hb[t];
        CHECK(e2[s][t] == FGAbelianGroup::from_cyclic_orders(oracle::kunneth(ha, only_t, s)));
      }
  }
  CHECK(torsion_above_zero >= 3);
}

TEST_CASE("one-direction-constant fixtures have a single E2 row") {
  const auto z = Ring::integers();
  const auto b = dk(two_step(4));
  const auto v = external_tensor(SimplicialModule::constant(Module::free(z, 1), kTrunc), b);
  const Grid e2 = e2_page(v, 2);
  CHECK(e2[0][0] == FGAbelianGroup::cyclic(4));
  for (std::size_t s = 1; s <= 2; ++s)
    for (std::size_t t = 0; t <= 2; ++t) CHECK(e2[s][t].is_zero());
  CHECK(moore_homotopy(diagonal(v), 2)[0] == FGAbelianGroup::cyclic(4));
}

TEST_CASE("resolutions of Z/2 in both directions") {
  const auto r = dk(two_step(2));
  const auto v = external_tensor(r, r);
  const auto pi = moore_homotopy(diagonal(v), 2);
  CHECK(pi[0] == FGAbelianGroup::cyclic(2));
  CHECK(pi[1] == FGAbelianGroup::cyclic(2));  // Tor(Z/2, Z/2)
  CHECK(pi[2].is_zero());
}

TEST_CASE("Hom adjointness: Tot Hom(V, G) against Hom(diag V, G)") {
  const auto z = Ring::integers();
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const auto v = random_bisimplicial(rng, 2, kTrunc);
    for (Int g : {Int{0}, Int{2}, Int{3}}) {
      const auto gm = Module::trivial(z, {g});
      const auto w = hom_bisimplicial(v, gm.group);
      const CochainComplex tot = total_complex(w);
      CHECK(tot.squares_to_zero());
      const auto direct = cohomotopy(hom_cosimplicial(diagonal(v), gm), kTrunc - 1);
      const auto via_diag = cohomotopy(diagonal(w), kTrunc - 1);
      for (std::size_t n = 0; n < kTrunc; ++n) {
        CHECK(tot.cohomology(static_cast<int>(n)) == direct[n]);
        CHECK(via_diag[n] == direct[n]);
      }
    }
  }
}

TEST_CASE("Hom of a resolution of Z/4 into Z/2 as a bidegree object") {
  const auto z = Ring::integers();
  const auto v = external_tensor(dk(two_step(4)), SimplicialModule::constant(Module::free(z, 1), kTrunc));
  const auto w = hom_bisimplicial(v, PresentedGroup::cyclic_sum({2}));
  const CochainComplex tot = total_complex(w);
  CHECK(tot.cohomology(0) == FGAbelianGroup::cyclic(2));
  CHECK(tot.cohomology(1) == FGAbelianGroup::cyclic(2));
  CHECK(tot.cohomology(2).is_zero());
  // the constant direction contributes only t = 0
  const Grid e2 = e2_page(w, 2);
  CHECK(e2[0][0] == FGAbelianGroup::cyclic(2));
  CHECK(e2[1][0] == FGAbelianGroup::cyclic(2));
  CHECK(e2[0][1].is_zero());
  CHECK(e2[1][1].is_zero());
}

TEST_CASE("broken commutation is reported") {
  const auto r = dk(two_step(2));
  auto v = external_tensor(r, r);
  std::swap(v.hfaces[2][1][0], v.hfaces[2][1][2]);
  const auto f = v.identity_failure();
  REQUIRE(f);
}
