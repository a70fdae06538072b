#include <doctest.h>

#include <set>

#include "aq/em.hpp"
#include "aq/error.hpp"
#include "aq/free_simplicial.hpp"

using namespace aq;

namespace {

FiniteAlgebra cyclic_algebra(int n) { return group_algebra(GroupTable::cyclic(n), "Z/" + std::to_string(n)); }

// Order of E_0 modulo the normal closure of {d0(y) d1(y)^-1 : y in E_1}.
std::size_t pi0_order(const EMObject& e) {
  const GroupTable g0 = e.level(0).algebra.group_table();
  const GroupTable g1 = e.level(1).algebra.group_table();
  const auto d0 = e.face(1, 0), d1 = e.face(1, 1);
  std::set<int> normal{g0.identity};
  std::vector<int> queue;
  for (std::size_t y = 0; y < g1.order(); ++y)
    queue.push_back(g0(d0[y], g0.inverse[static_cast<std::size_t>(d1[y])]));
  while (!queue.empty()) {
    const int z = queue.back();
    queue.pop_back();
    if (!normal.insert(z).second) continue;
    for (int w : std::set<int>(normal))
      for (int c : {g0(z, w), g0(w, z)}) queue.push_back(c);
    for (std::size_t h = 0; h < g0.order(); ++h)
      queue.push_back(g0(g0(static_cast<int>(h), z), g0.inverse[h]));
  }
  return g0.order() / normal.size();
}

Module trivial_z(Int order) { return Module::trivial(Ring::integers(), {order}); }

}  // namespace

TEST_CASE("E^X(K, n) levels and homotopy") {
  const auto x = cyclic_algebra(2);
  const auto k = XModule::trivial(x, {2});
  const auto e = eilenberg_maclane(x, k, 1, 3);
  CHECK(e.level(0).algebra.group_table().order() == 2);
  CHECK(e.level(1).algebra.group_table().order() == 4);
  CHECK(e.level(2).algebra.group_table().order() == 8);  // (s0 K ⊕ s1 K) ⋊ X
  CHECK(!e.kernel.identity_failure());
  const auto pi = moore_homotopy(e.kernel, 2);
  CHECK(pi[0].is_zero());
  CHECK(pi[1] == FGAbelianGroup::cyclic(2));
  CHECK(pi[2].is_zero());
  CHECK(pi0_order(e) == 2);

  for (int order : {2, 3}) {
    const auto x3 = cyclic_algebra(order);
    const auto e2 = eilenberg_maclane(x3, XModule::trivial(x3, {3}), 2, 3);
    const auto p2 = moore_homotopy(e2.kernel, 2);
    CHECK(p2[0].is_zero());
    CHECK(p2[1].is_zero());
    CHECK(p2[2] == FGAbelianGroup::cyclic(3));
    CHECK(e2.level(1).algebra.group_table().order() == static_cast<std::size_t>(order));
    CHECK(e2.level(2).algebra.group_table().order() == static_cast<std::size_t>(3 * order));
    CHECK(pi0_order(e2) == static_cast<std::size_t>(order));
  }

  // trivial X: the plain K(K, n)
  const auto one = group_algebra(GroupTable::trivial(), "1");
  const auto plain = eilenberg_maclane(one, XModule::trivial(one, {2}), 1, 2);
  CHECK(plain.level(2).algebra.group_table().order() == 4);
  CHECK_THROWS_AS(eilenberg_maclane(trivial_z(2), 0, 2), Error);
}

TEST_CASE("path object") {
  const auto x = cyclic_algebra(2);
  const auto e = eilenberg_maclane(x, XModule::trivial(x, {2}), 1, 3);
  const auto p = path_object(e);
  CHECK(!p.object.identity_failure());
  CHECK(p.level(0).algebra.group_table().order() == 4);
  CHECK(p.level(1).algebra.group_table().order() == 16);  // (K ⊕ K ⊕ s0 K) ⋊ X
  // E^I is weakly equivalent to E
  const auto pi = moore_homotopy(p.object, 2);
  CHECK(pi[0].is_zero());
  CHECK(pi[1] == FGAbelianGroup::cyclic(2));
  for (std::size_t m = 0; m <= 3; ++m) {
    const auto& lvl = e.kernel.levels[m].group;
    const auto& plvl = p.object.levels[m].group;
    CHECK(p.p0[m] * p.constants[m] == Matrix::identity(lvl.gens));
    CHECK(p.p1[m] * p.constants[m] == Matrix::identity(lvl.gens));
    CHECK(is_surjective(plvl, lvl, p.p0[m]));
    CHECK(is_surjective(plvl, lvl, p.p1[m]));
    if (m == 0) continue;
    for (std::size_t i = 0; i <= m; ++i) {
      CHECK(p.p0[m - 1] * p.object.d(m, i) == e.kernel.d(m, i) * p.p0[m]);
      CHECK(p.p1[m - 1] * p.object.d(m, i) == e.kernel.d(m, i) * p.p1[m]);
    }
  }
}

TEST_CASE("homotopy classes of maps into E") {
  // module route: A = DK(Z --4--> Z), [A, K(Z/2, n)] = Ext^n(Z/4, Z/2)
  ModuleComplex c;
  c.ring = Ring::integers();
  c.modules = {Module::free(c.ring, 1), Module::free(c.ring, 1)};
  c.d = {Matrix{{4}}};
  const auto a = dold_kan(c, 4);
  CHECK(homotopy_classes(a, eilenberg_maclane(trivial_z(2), 1, 3)).group() == FGAbelianGroup::cyclic(2));
  CHECK(homotopy_classes(a, eilenberg_maclane(trivial_z(2), 2, 3)).group().is_zero());
  CHECK(homotopy_classes(a, eilenberg_maclane(trivial_z(0), 1, 3)).group() == FGAbelianGroup::cyclic(4));
  CHECK(homotopy_classes(a, eilenberg_maclane(Module::zero(c.ring), 1, 3)).group().is_zero());

  // group route: resolution of Z/2 over itself, [A, E^X(Z/2, 1)] = H^2(Z/2; Z/2)
  const auto x = cyclic_algebra(2);
  const auto gx = x.group_table();
  const auto w = kan_loop_group(gx, 3);
  const auto ab = abelianize_over(w, kan_augmentation(gx), gx);
  const auto e = eilenberg_maclane(x, XModule::trivial(x, {2}), 1, 2);
  CHECK(homotopy_classes(ab, e).group() == FGAbelianGroup::cyclic(2));

  const auto rel = check_homotopy_relation(ab, e);
  REQUIRE(rel);
  CHECK(rel->reflexive);
  CHECK(rel->symmetric);
  CHECK(rel->transitive);
  CHECK(rel->classes == 2);

  const auto rel2 = check_homotopy_relation(a, eilenberg_maclane(trivial_z(2), 1, 2));
  REQUIRE(rel2);
  CHECK(rel2->reflexive);
  CHECK(rel2->symmetric);
  CHECK(rel2->transitive);
  CHECK(rel2->classes == 2);
}
