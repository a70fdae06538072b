#include <doctest.h>

#include <set>

#include "aq/error.hpp"
#include "aq/invariants.hpp"
#include "oracles.hpp"

using namespace aq;

namespace {

FiniteAlgebra cyclic_algebra(int n) { return group_algebra(GroupTable::cyclic(n), "Z/" + std::to_string(n)); }

AlgebraMap identity_map(const FiniteAlgebra& x) {
  std::vector<int> id(x.group_table().order());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
  return {{{x.main_sort(), id}}};
}

FGAbelianGroup ext_oracle(Int m, const std::vector<Int>& y, const std::vector<Int>& g, int n, bool tor) {
  std::vector<Int> orders;
  for (Int a : y)
    for (Int b : g) orders.push_back(tor ? oracle::tor_cyclic(m, a, b, n) : oracle::ext_cyclic(m, a, b, n));
  return FGAbelianGroup::from_cyclic_orders(orders);
}

// |G| / |[G, G]| from the table; cyclic for the groups used here.
std::size_t abelianization_order(const GroupTable& g) {
  std::set<int> sub{g.identity};
  bool grew = true;
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b) {
      const int ai = static_cast<int>(a), bi = static_cast<int>(b);
      sub.insert(g(g(ai, bi), g(g.inverse[a], g.inverse[b])));
    }
  while (grew) {
    grew = false;
    for (int u : std::set<int>(sub))
      for (int v : std::set<int>(sub)) grew |= sub.insert(g(u, v)).second;
  }
  return g.order() / sub.size();
}

}  // namespace

TEST_CASE("group cohomology in AQ indexing") {
  const auto x = cyclic_algebra(2);
  const auto r = Resolution(loop_group_resolution(x, 3));
  const auto k = XModule::trivial(x, {2});
  const auto h = cohomology(r, k.module(), 2);
  // H^0 = Der
  const auto der = derivations(x, identity_map(x), k);
  CHECK(h[0] == der.group);
  CHECK(h[0] == FGAbelianGroup::cyclic(2));
  // H^1 = classical H^2
  CHECK(h[1] == factor_set_cohomology(k, 2).group);
  CHECK(h[2] == bar_resolution_group(k, 3)[3]);

  for (std::size_t n = 0; n <= 2; ++n) CHECK(cohomology_via_em(r, k.module(), n) == h[n]);
  CHECK(cohomology_via_em(r, XModule::zero(x).module(), 1).is_zero());

  // trivial coefficients: H^0 = Hom(Y, K)
  const auto z4 = cyclic_algebra(4);
  const auto r4 = Resolution(loop_group_resolution(z4, 2));
  const auto k4 = XModule::trivial(z4, {2});
  const auto h4 = cohomology(r4, k4.module(), 1);
  CHECK(static_cast<std::size_t>(h4[0].order()) == enumerate_homs(z4, XModule::trivial(z4, {2}).to_algebra()).size());
  CHECK(h4[1] == factor_set_cohomology(k4, 2).group);
  const auto r43 = Resolution(loop_group_resolution(z4, 3));
  CHECK(cohomology_via_em(r43, k4.module(), 2) == cohomology(r43, k4.module(), 2)[2]);

  // classical indexing agrees with the bar complex
  const auto& g4 = std::get<GroupResolution>(r4);
  const auto cl = classical_cohomology(g4, k4.module(), 1);
  const auto bar = bar_resolution_group(k4, 1);
  CHECK(cl[0] == bar[0]);
  CHECK(cl[1] == bar[1]);

  // coefficients over the wrong ring are rejected
  CHECK_THROWS_AS(cohomology(r, Module::trivial(Ring::integers(), {2}), 1), Error);
  // an invalid certificate is an error naming the failed check
  auto broken = std::get<GroupResolution>(r);
  std::swap(broken.object.faces[2][0], broken.object.faces[2][1]);
  CHECK_THROWS_WITH_AS(cohomology(Resolution(broken), k.module(), 1),
                       doctest::Contains("simplicial identities"), CheckFailed);
}

TEST_CASE("module cohomology and homology are Ext and Tor") {
  // Z/2, Z/3, Z/4, Z ⊕ Z/2 over Z; Z/2, Z/4 over Z/4
  const std::vector<std::vector<Int>> over_z{{2}, {3}, {4}, {0, 2}};
  const std::vector<std::vector<Int>> over_z4{{2}, {4}};
  for (Int m : {Int{0}, Int{4}}) {
    const auto ring = m == 0 ? Ring::integers() : Ring::integers_mod(m);
    const auto& fixtures = m == 0 ? over_z : over_z4;
    for (const auto& y : fixtures) {
      std::vector<Int> ycyc;
      for (Int a : y) ycyc.push_back(a == 0 ? m : a);
      const auto r = Resolution(resolve_module(Module::trivial(ring, y), 5, 5));
      for (const auto& g : fixtures) {
        std::vector<Int> gcyc;
        for (Int b : g) gcyc.push_back(b == 0 ? m : b);
        const auto gm = Module::trivial(ring, g);
        const auto coh = cohomology(r, gm, 3);
        const auto hom = homology_with_coeffs(r, gm, 3);
        for (int n = 0; n <= 3; ++n) {
          CHECK(coh[static_cast<std::size_t>(n)] == ext_oracle(m, ycyc, gcyc, n, false));
          CHECK(hom[static_cast<std::size_t>(n)] == ext_oracle(m, ycyc, gcyc, n, true));
        }
        CHECK(cohomology_via_em(r, gm, 1) == coh[1]);
      }
      // H_n(Y) = Y at 0
      const auto h = homology(r, 2);
      CHECK(h[0] == Module::trivial(ring, y).invariants());
      CHECK(h[1].is_zero());
    }
  }
}

TEST_CASE("group homology") {
  // H_0 of a group is its abelianization
  const auto s3 = small_group_library(6).back();
  REQUIRE(s3.group_table().order() == 6);
  const auto rs3 = Resolution(loop_group_resolution(s3, 2));
  CHECK(homology(rs3, 1)[0] == FGAbelianGroup::cyclic(static_cast<Int>(abelianization_order(s3.group_table()))));

  for (int n : {2, 3}) {
    const auto x = cyclic_algebra(n);
    const auto r = loop_group_resolution(x, 3);
    const auto ring = Ring::group_ring(x.group_table());
    // Z[G] coefficients: Z at 0, nothing above
    const auto h = classical_homology(r, Module::free(ring, 1), 2);
    CHECK(h[0] == FGAbelianGroup::free(1));
    CHECK(h[1].is_zero());
    CHECK(h[2].is_zero());
    // over X, H_0 is the augmentation ideal with its Z[X]-action
    const auto over = homology_over(Resolution(r), 1);
    CHECK(over[0].invariants() == FGAbelianGroup::free(n - 1));
    CHECK(over[0].is_valid());
    CHECK(over[1].invariants().is_zero());
    // trivial Z coefficients: H_1 = Z/n classically
    CHECK(classical_homology(r, Module::trivial(ring, {0}), 2)[1] == FGAbelianGroup::cyclic(n));
  }
}

TEST_CASE("tensor coefficients") {
  const auto z = Ring::integers();
  const auto r = Resolution(resolve_module(Module::trivial(z, {4}), 3, 4));
  const auto t = homology_with_coeffs(r, Module::trivial(z, {2}), 2);
  CHECK(t[0] == FGAbelianGroup::cyclic(2));
  CHECK(t[1] == FGAbelianGroup::cyclic(2));
  CHECK(t[2].is_zero());
  // free coefficients: homology times the rank
  const auto h = homology(r, 2);
  const auto f = homology_with_coeffs(r, Module::free(z, 2), 2);
  for (std::size_t n = 0; n <= 2; ++n) CHECK(f[n] == h[n].direct_sum(h[n]));
  // rank-2 free ⊗ rank-3 free has rank 6 over the group ring
  const auto x = cyclic_algebra(2);
  const auto ring = Ring::group_ring(x.group_table());
  const auto sum = tensor_simplicial(SimplicialModule::constant(Module::free(ring, 2), 1), Module::free(ring, 3));
  CHECK(sum.levels[0].invariants() == FGAbelianGroup::free(12));
}

TEST_CASE("resolution independence") {
  // Z/4 by Z^2 --diag(4, 1)--> Z^2 against the SNF-built resolution
  const auto z = Ring::integers();
  ModuleComplex c;
  c.ring = z;
  c.modules = {Module::free(z, 2), Module::free(z, 2)};
  c.d = {Matrix{{4, 0}, {0, 1}}};
  ModuleResolution other{Module::trivial(z, {4}), dold_kan(c, 4), Matrix{{1, 0}}};
  const auto a = Resolution(resolve_module(Module::trivial(z, {4}), 3, 4));
  const auto b = Resolution(other);
  REQUIRE(check_certificate(b, 3).valid());
  for (Int g : {2, 3, 4}) {
    const auto gm = Module::trivial(z, {g});
    CHECK(cohomology(a, gm, 3) == cohomology(b, gm, 3));
    CHECK(homology_with_coeffs(a, gm, 3) == homology_with_coeffs(b, gm, 3));
  }
}

TEST_CASE("diagram coefficients") {
  const auto z = Ring::integers();
  const auto r = Resolution(resolve_module(Module::trivial(z, {4}), 3, 4));
  CoefficientDiagram d;
  d.nodes = {Module::free(z, 1), Module::trivial(z, {2})};
  d.arrows = {{0, 1, Matrix{{1}}}};
  const auto res = diagram_coefficients(r, d, Variance::Cohomology, 2);
  CHECK(res.values[0][1] == FGAbelianGroup::cyclic(4));  // Ext^1(Z/4, Z)
  CHECK(res.values[1][1] == FGAbelianGroup::cyclic(2));
  // reduction Z/4 -> Z/2 is onto
  REQUIRE(res.induced[0][1].rows() == 1);
  CHECK(res.induced[0][1](0, 0) % 2 != 0);
  CHECK(res.functorial);

  // constant diagram: constant values, identity maps
  CoefficientDiagram constant;
  constant.nodes = {Module::trivial(z, {2}), Module::trivial(z, {2})};
  constant.arrows = {{0, 1, Matrix{{1}}}};
  const auto cr = diagram_coefficients(r, constant, Variance::Homology, 2);
  CHECK(cr.values[0] == cr.values[1]);
  CHECK(cr.functorial);

  // Z --2--> Z --red--> Z/2, and a triangle that does not commute
  CoefficientDiagram chain;
  chain.nodes = {Module::free(z, 1), Module::free(z, 1), Module::trivial(z, {2})};
  chain.arrows = {{0, 1, Matrix{{2}}}, {1, 2, Matrix{{1}}}};
  CHECK(diagram_coefficients(r, chain, Variance::Cohomology, 2).functorial);
  chain.arrows.push_back({0, 2, Matrix{{1}}});
  CHECK(!diagram_coefficients(r, chain, Variance::Cohomology, 2).functorial);

  CoefficientDiagram bad;
  bad.nodes = {Module::trivial(z, {2}), Module::free(z, 1)};
  bad.arrows = {{0, 1, Matrix{{1}}}};
  CHECK_THROWS_AS(diagram_coefficients(r, bad, Variance::Cohomology, 1), Error);
}
