#include <doctest.h>

#include "aq/beck.hpp"

using namespace aq;

namespace {

FiniteAlgebra cyc(int n) { return group_algebra(GroupTable::cyclic(n), "Z/" + std::to_string(n)); }

FiniteAlgebra lib(const std::string& name) {
  for (auto& g : small_group_library(8))
    if (g.name() == name) return g;
  throw Error("no library group " + name);
}

XModule z3_inversion() {
  return XModule::from_generator_actions(cyc(2), PresentedGroup::cyclic_sum({3}), {{"1", Matrix{{-1}}}});
}

XModule z2sq_swap() {
  return XModule::from_generator_actions(cyc(2), PresentedGroup::cyclic_sum({2, 2}), {{"1", Matrix{{0, 1}, {1, 0}}}});
}

AlgebraMap identity_map(const FiniteAlgebra& x) {
  AlgebraMap m;
  for (int e = 0; e < static_cast<int>(x.size(x.main_sort())); ++e) m.images[x.main_sort()].push_back(e);
  return m;
}

}  // namespace

TEST_CASE("x-modules and semidirect products") {
  auto triv = XModule::trivial(cyc(2), {2});
  triv.validate();
  CHECK(triv.trivial_action());
  auto v4 = semidirect_product(triv);
  CHECK(find_isomorphism(v4.algebra, lib("V4")).has_value());
  CHECK(!find_isomorphism(v4.algebra, lib("Z/4")).has_value());

  auto inv = z3_inversion();
  inv.validate();
  CHECK(!inv.trivial_action());
  auto s3 = semidirect_product(inv);
  CHECK(find_isomorphism(s3.algebra, lib("S3")).has_value());

  // a swap of order 2 is not an action of Z/3
  CHECK_THROWS_AS(XModule::from_generator_actions(cyc(3), PresentedGroup::cyclic_sum({2, 2}),
                                                  {{"1", Matrix{{0, 1}, {1, 0}}}}),
                  CheckFailed);

  auto k = kernel_module(s3.algebra, cyc(2), s3.projection);
  REQUIRE(k.has_value());
  CHECK(modules_isomorphic(*k, inv));
  CHECK(!modules_isomorphic(*k, XModule::trivial(cyc(2), {3})));
  CHECK(k->to_algebra().size(k->to_algebra().main_sort()) == 3);
}

TEST_CASE("derivations") {
  const auto x = cyc(2);
  const auto id = identity_map(x);
  // hand count: xi(0) = 0 and xi(1) = v with v + t.v = 0
  auto count = [](const XModule& k) {
    int n = 0;
    for (int v = 0; v < static_cast<int>(k.size()); ++v)
      if (k.add(v, k.act(1, v)) == k.zero()) ++n;
    return n;
  };
  auto d1 = derivations(x, id, XModule::trivial(x, {2}));
  CHECK(d1.values.size() == 2);
  CHECK(static_cast<int>(d1.values.size()) == count(XModule::trivial(x, {2})));
  CHECK(d1.group == FGAbelianGroup::cyclic(2));
  auto d2 = derivations(x, id, z2sq_swap());
  CHECK(static_cast<int>(d2.values.size()) == count(z2sq_swap()));
  CHECK(d2.group == FGAbelianGroup::cyclic(2));
  auto d3 = derivations(x, id, z3_inversion());
  CHECK(d3.group == FGAbelianGroup::cyclic(3));
  for (const auto& xi : d3.values) CHECK(is_derivation(x, id, z3_inversion(), xi));

  FreeAlgebra f(builtin_theory("gp"), {{"a", "g"}});
  for (const auto& k : {XModule::trivial(x, {2}), z2sq_swap(), z3_inversion()}) {
    auto dd = derivations_free(f, {1}, k);
    CHECK(dd.values.size() == k.size());
    CHECK(dd.group == k.invariants());
    auto w = hom_as_derivations(f, {1}, k);
    CHECK(w.bijective);
    CHECK(w.group_structures_agree);
    CHECK(w.homs == k.size());
  }
}

TEST_CASE("homs over X are derivations") {
  const auto x = cyc(2);
  for (const auto& y : small_group_library(8))
    for (const auto& p : surjections(y, x))
      for (const auto& k : {XModule::trivial(x, {2}), z2sq_swap(), z3_inversion()}) {
        auto w = hom_as_derivations(y, p, k);
        CHECK(w.bijective);
        CHECK(w.group_structures_agree);
        CHECK(w.homs == w.derivations);
      }
}

TEST_CASE("group objects over X") {
  const auto z2 = cyc(2);
  auto v4 = lib("V4");
  auto ps = surjections(v4, z2);
  CHECK(ps.size() == 3);
  for (const auto& p : ps) {
    auto r = classify_group_objects(v4, z2, p);
    CHECK(r.agree());
    CHECK(!r.brute_force.empty());
    CHECK(r.kernel == FGAbelianGroup::cyclic(2));
  }

  // over the trivial group: the abelian group structures themselves
  auto one = cyc(1);
  for (const auto& y : small_group_library(8)) {
    auto p = surjections(y, one).at(0);
    auto r = classify_group_objects(y, one, p);
    CHECK(r.agree());
    const bool abelian = y.group_table().is_abelian();
    CHECK(r.brute_force.size() == (abelian ? 1u : 0u));
  }

  auto s3 = lib("S3");
  auto q = surjections(s3, z2);
  REQUIRE(q.size() == 1);
  auto r = classify_group_objects(s3, z2, q[0]);
  CHECK(r.agree());
  CHECK(r.kernel == FGAbelianGroup::cyclic(3));
  CHECK(r.brute_force.size() == 3);  // three sections, Der(Z/2, Z/3 sign) = Z/3 collapses onto them

  for (const auto& res : classify_group_objects(z2, 8)) CHECK_MESSAGE(res.agree(), res.name);
  for (const auto& res : classify_group_objects(cyc(3), 6)) CHECK_MESSAGE(res.agree(), res.name);
}

TEST_CASE("lambda kappa") {
  const auto z2 = cyc(2);
  auto rep = lambda_kappa(z2, {XModule::trivial(z2, {2}), z2sq_swap(), z3_inversion(), XModule::trivial(z2, {4})}, 8);
  CHECK(rep.ok);
  CHECK(rep.modules_checked == 4);
  CHECK(rep.objects_checked > 0);
}

TEST_CASE("abelianization of free groups") {
  FreeAlgebra f(builtin_theory("gp"), {{"a", "g"}, {"b", "g"}});
  auto a = abelianize_free(f);
  CHECK(a.engine() == "ab");
  const Word comm{{0, 1}, {1, 1}, {0, -1}, {1, -1}};
  auto m = abelianize_map({comm, {{0, 1}, {0, 1}}}, 2);
  CHECK(m == Matrix{{0, 2}, {0, 0}});

  const auto z2 = cyc(2);
  auto over = abelianize_free(f, &z2);
  CHECK(over.engine() == "mod");
  CHECK(over.ring_dim() == 2);
  const GroupTable t = GroupTable::cyclic(2);
  // D(a^2) = (1 + t) e_a when a maps to t
  CHECK(fox_derivative({{0, 1}, {0, 1}}, 2, {1, 0}, t) == Vector{1, 1, 0, 0});
  CHECK(fox_derivative({{0, -1}}, 2, {1, 0}, t) == Vector{0, -1, 0, 0});
  CHECK(word_image(comm, {1, 1}, t) == 0);
  // fundamental formula: sum_i D_i(w) (p(x_i) - 1) = p(w) - 1
  for (const Word& w : {comm, Word{{0, 1}, {1, -1}, {0, 1}}, Word{{1, 1}, {1, 1}, {0, -1}}}) {
    const std::vector<int> p{1, 0};
    const Vector d = fox_derivative(w, 2, p, t);
    Vector lhs(2, 0);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t g = 0; g < 2; ++g) {
        lhs[static_cast<std::size_t>(t(static_cast<int>(g), p[i]))] += d[i * 2 + g];
        lhs[g] -= d[i * 2 + g];
      }
    Vector rhs(2, 0);
    rhs[static_cast<std::size_t>(word_image(w, p, t))] += 1;
    rhs[0] -= 1;
    CHECK(lhs == rhs);
  }
  auto mo = abelianize_map_over({{{0, 1}, {0, 1}}}, 2, {1, 0}, t);
  CHECK(mo == Matrix{{1, 1}, {1, 1}, {0, 0}, {0, 0}});
}
