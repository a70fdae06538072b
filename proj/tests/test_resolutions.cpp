#include <doctest.h>

#include "aq/resolutions.hpp"

using namespace aq;

namespace {

FiniteAlgebra cyclic_algebra(int n) { return group_algebra(GroupTable::cyclic(n), "Z/" + std::to_string(n)); }

// Z/3 with G acting through each nontrivial character G -> {1, -1}.
std::vector<XModule> sign_modules(const FiniteAlgebra& x) {
  const auto g = x.group_table();
  const std::size_t n = g.order();
  std::vector<XModule> out;
  for (std::size_t bits = 1; bits < (std::size_t{1} << n); ++bits) {
    auto s = [&](std::size_t i) { return (bits >> i) & 1 ? -1 : 1; };
    bool hom = true;
    for (std::size_t i = 0; i < n && hom; ++i)
      for (std::size_t j = 0; j < n && hom; ++j)
        hom = s(static_cast<std::size_t>(g(static_cast<int>(i), static_cast<int>(j)))) == s(i) * s(j);
    if (!hom) continue;
    std::map<std::string, Matrix> act;
    for (std::size_t i = 0; i < n; ++i) act[g.labels[i]] = Matrix{{s(i)}};
    out.push_back(XModule::from_generator_actions(x, PresentedGroup::cyclic_sum({3}), act));
  }
  return out;
}

}  // namespace

TEST_CASE("resolve_module") {
  const auto z = Ring::integers();
  const auto r = resolve_module(Module::trivial(z, {4}), 3, 4);
  const auto cert = check_certificate(r, 3);
  CHECK(cert.valid());
  // Z --4--> Z: normalized complex has ranks 1, 1 then zeros
  const auto n = normalize_dk(r.object);
  CHECK(n.modules.size() >= 2);
  CHECK(free_rank(n.modules[0]) == 1u);
  CHECK(free_rank(n.modules[1]) == 1u);
  CHECK(moore_homotopy(r.object, 3)[0] == FGAbelianGroup::cyclic(4));

  // over Z/4, Z/2 has the periodic resolution; every level has rank one
  const auto z4 = Ring::integers_mod(4);
  const auto p = resolve(Module::trivial(z4, {2}), 4);
  for (std::size_t k = 0; k <= 4; ++k) CHECK(p.ranks[k] == 1u);
  CHECK(check_certificate(resolve_module(Module::trivial(z4, {2}), 5, 5), 4).valid());
  // a length-4 resolution leaves the kernel of its last map in degree 4
  const auto short4 = check_certificate(resolve_module(Module::trivial(z4, {2}), 4, 5), 4);
  CHECK(short4.first_failure() == "abelianized acyclicity: pi_4 is Z/2");

  // free module: identity resolution
  const auto f = resolve(Module::free(z, 2), 3);
  CHECK(f.ranks[0] == 2u);
  for (std::size_t k = 1; k < f.ranks.size(); ++k) CHECK(f.ranks[k] == 0u);

  CHECK_THROWS(resolve_module(Module::trivial(z, {2}), kMaxResolutionLength + 1, 2));
}

TEST_CASE("certificates") {
  const auto x = cyclic_algebra(2);
  const auto r = loop_group_resolution(x, 3);
  CHECK(check_certificate(r, 2).valid());
  // the shape F{a}, F{a0, y}
  CHECK(r.object.rank(0) == 1u);
  CHECK(r.object.rank(1) == 2u);

  auto broken = r;
  std::swap(broken.object.faces[2][0], broken.object.faces[2][1]);
  const auto bad = check_certificate(broken, 2);
  CHECK(!bad.valid());
  REQUIRE(bad.first_failure());
  CHECK(bad.first_failure()->find("simplicial identities") == 0);

  // range beyond the truncation fails, and stays failed for larger ranges
  CHECK(!check_certificate(r, 3).valid());
  CHECK(!check_certificate(r, 4).valid());

  auto wrong_aug = r;
  wrong_aug.augmentation = {0};
  CHECK(!check_certificate(wrong_aug, 2).checks[2].passed);

  // a module resolution whose augmentation misses
  auto m = resolve_module(Module::trivial(Ring::integers(), {4}), 2, 3);
  m.augmentation = Matrix{{2}};
  CHECK(!check_certificate(m, 2).valid());
}

TEST_CASE("bar and factor-set oracles") {
  const auto z2 = cyclic_algebra(2);
  const auto triv2 = XModule::trivial(z2, {2});
  const auto bar = bar_resolution_group(triv2, 3);
  CHECK(bar[0] == FGAbelianGroup::cyclic(2));
  CHECK(bar[1] == FGAbelianGroup::cyclic(2));
  CHECK(bar[2] == FGAbelianGroup::cyclic(2));
  CHECK(bar[3] == FGAbelianGroup::cyclic(2));
  const auto fs = factor_set_cohomology(triv2, 2);
  CHECK(fs.group == FGAbelianGroup::cyclic(2));
  CHECK(fs.candidates == 16u);
  CHECK(!fs.normalized);

  const auto z3 = cyclic_algebra(3);
  CHECK(bar_resolution_group(XModule::trivial(z3, {2}), 1)[1].is_zero());
  const auto fs3 = factor_set_cohomology(XModule::trivial(z3, {3}), 2);
  CHECK(fs3.group == FGAbelianGroup::cyclic(3));
  CHECK(fs3.candidates == 19683u);
  // n = 1 with trivial action: Hom(G, K)
  CHECK(factor_set_cohomology(XModule::trivial(z3, {3}), 1).group == FGAbelianGroup::cyclic(3));
  CHECK(factor_set_cohomology(XModule::trivial(z3, {2}), 1).group.is_zero());

  // H^n(G; Z[G]) is Z at 0 and vanishes above
  for (int n : {2, 3}) {
    const auto x = cyclic_algebra(n);
    const auto ring = Ring::group_ring(x.group_table());
    const auto h = bar_resolution_group(x.group_table(), Module::free(ring, 1), 3);
    CHECK(h[0] == FGAbelianGroup::free(1));
    for (std::size_t k = 1; k <= 3; ++k) CHECK(h[k].is_zero());
  }

  // agreement on |G| <= 4, |K| <= 3
  std::vector<FiniteAlgebra> groups;
  for (const auto& g : small_group_library(4))
    if (g.group_table().order() >= 2) groups.push_back(g);
  std::size_t pairs = 0;
  for (const auto& g : groups) {
    std::vector<XModule> ks{XModule::trivial(g, {2}), XModule::trivial(g, {3})};
    for (auto& k : sign_modules(g)) ks.push_back(std::move(k));
    for (const auto& k : ks) {
      const auto b = bar_resolution_group(k, 2);
      CHECK(factor_set_cohomology(k, 1).group == b[1]);
      CHECK(factor_set_cohomology(k, 2).group == b[2]);
      ++pairs;
    }
  }
  CHECK(pairs >= 9);
}
