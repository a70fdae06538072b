#include <doctest.h>

#include "aq/error.hpp"
#include "aq/spectral.hpp"
#include "oracles.hpp"

using namespace aq;

namespace {

FGAbelianGroup pair_oracle(Int m, const std::vector<Int>& y, const std::vector<Int>& g, int n, bool tor) {
  std::vector<Int> orders;
  for (Int a : y)
    for (Int b : g) orders.push_back(tor ? oracle::tor_cyclic(m, a, b, n) : oracle::ext_cyclic(m, a, b, n));
  return FGAbelianGroup::from_cyclic_orders(orders);
}

void check_all_agree(const SpectralPage& p, std::size_t range) {
  CHECK(p.consistent());
  CHECK(p.d2_squares_to_zero());
  REQUIRE(p.convergence.size() == range + 1);
  for (const auto& c : p.convergence) {
    CHECK(c.collapsed);
    CHECK(c.agreement == Agreement::Agrees);
  }
}

}  // namespace

TEST_CASE("UCT page over Z for Z/4 with Z/2 coefficients") {
  const auto z = Ring::integers();
  const auto r = Resolution(resolve_module(Module::trivial(z, {4}), 6, 6));
  const auto page = uct_e2(r, Module::trivial(z, {2}), 4);
  CHECK(page.grid[0][0] == FGAbelianGroup::cyclic(2));  // Hom
  CHECK(page.grid[1][0] == FGAbelianGroup::cyclic(2));  // Ext^1
  for (std::size_t s = 2; s < page.grid.size(); ++s) CHECK(page.grid[s][0].is_zero());
  CHECK(page.d2_determined);
  check_all_agree(page, 4);
  REQUIRE(page.sequences.size() == 5);
  CHECK(page.sequences[1].sub == FGAbelianGroup::cyclic(2));
  CHECK(page.sequences[1].middle == FGAbelianGroup::cyclic(2));
  CHECK(page.sequences[1].quotient.is_zero());
  for (const auto& q : page.sequences) CHECK(q.exact);
}

TEST_CASE("zero graded module gives the zero page") {
  const auto z = Ring::integers();
  GradedModule h;
  h.ring = z;
  const auto g = Module::trivial(z, {2});
  for (const auto& page : {uct_e2(h, g, 3), tor_e2(h, g, 3), reverse_adams_e2(h, g, Variant::Homology, 3)})
    for (const auto& col : page.grid)
      for (const auto& x : col) CHECK(x.is_zero());
}

TEST_CASE("Z/4 has a periodic UCT row") {
  const auto z4 = Ring::integers_mod(4);
  const auto g = Module::trivial(z4, {2});
  const auto page = uct_e2(GradedModule::concentrated(Module::trivial(z4, {2})), g, 4);
  for (std::size_t s = 0; s <= 5; ++s) CHECK(page.grid[s][0] == FGAbelianGroup::cyclic(2));
  // a single row cannot support differentials
  const auto r = Resolution(resolve_module(Module::trivial(z4, {2}), 6, 6));
  const auto full = uct_e2(r, g, 4);
  check_all_agree(full, 4);
  CHECK(full.sequences.empty());
}

TEST_CASE("Tor pages") {
  const auto z = Ring::integers();
  const auto r = Resolution(resolve_module(Module::trivial(z, {4}), 6, 6));
  const auto page = tor_e2(r, Module::trivial(z, {2}), 4);
  CHECK(page.grid[0][0] == FGAbelianGroup::cyclic(2));
  CHECK(page.grid[1][0] == FGAbelianGroup::cyclic(2));
  check_all_agree(page, 4);
  for (const auto& q : page.sequences) CHECK(q.exact);

  // free coefficients: one column
  const auto free_page = tor_e2(r, Module::free(z, 1), 4);
  for (std::size_t s = 1; s < free_page.grid.size(); ++s)
    for (const auto& g : free_page.grid[s]) CHECK(g.is_zero());
  check_all_agree(free_page, 4);

  // H = Z at 0: the column is G itself
  const auto zpage = tor_e2(GradedModule::concentrated(Module::free(z, 1)), Module::trivial(z, {0, 3}), 3);
  CHECK(zpage.grid[0][0] == FGAbelianGroup::cyclic(3).direct_sum(FGAbelianGroup::free(1)));
  for (std::size_t s = 1; s < zpage.grid.size(); ++s) CHECK(zpage.grid[s][0].is_zero());
}

TEST_CASE("two-column sequences on the module fixtures over Z") {
  const auto z = Ring::integers();
  const std::vector<std::vector<Int>> fixtures{{2}, {3}, {4}, {0, 2}};
  for (const auto& y : fixtures) {
    const auto r = Resolution(resolve_module(Module::trivial(z, y), 6, 6));
    for (const auto& gy : fixtures) {
      const auto g = Module::trivial(z, gy);
      for (const auto& page : {uct_e2(r, g, 4), tor_e2(r, g, 4)}) {
        CHECK(page.consistent());
        CHECK(page.sequences.size() == 5);
        const bool tor = page.kind == PageKind::Tor;
        for (int s = 0; s <= 2; ++s) CHECK(page.grid[static_cast<std::size_t>(s)][0] == pair_oracle(0, y, gy, s, tor));
      }
    }
  }
}

TEST_CASE("group pages: absolute homology of Z/2 and Z/3") {
  const auto z = Ring::integers();
  for (int n : {2, 3}) {
    const auto x = group_algebra(GroupTable::cyclic(n), "Z/" + std::to_string(n));
    const auto r = Resolution(loop_group_resolution(x, 5));
    const auto h = homology_graded(r, 3);
    // H_k(Z/n; Z) shifted by one: Z/n in even AQ degrees, 0 in odd ones
    for (std::size_t k = 0; k <= 3; ++k)
      CHECK(h.degrees[k].invariants() == (k % 2 == 0 ? FGAbelianGroup::cyclic(n) : FGAbelianGroup::zero()));
    for (Int gk : {2, 3}) {
      const auto g = Module::trivial(z, {gk});
      const auto u = uct_e2(r, g, 3);
      const auto t = tor_e2(r, g, 3);
      CHECK(u.consistent());
      CHECK(t.consistent());
      CHECK(u.sequences.size() == 4);
      CHECK(t.sequences.size() == 4);
    }
  }
}

TEST_CASE("reverse Adams pages for degree-0 objects") {
  for (Int m : {Int{0}, Int{4}}) {
    const auto ring = m == 0 ? Ring::integers() : Ring::integers_mod(m);
    const std::vector<Int> y{2}, gy{m == 0 ? Int{4} : Int{2}};
    const auto r = Resolution(resolve_module(Module::trivial(ring, y), 6, 6));
    const auto g = Module::trivial(ring, gy);
    const auto hom = reverse_adams_e2(r, g, Variant::Homology, 4);
    const auto coh = reverse_adams_e2(r, g, Variant::Cohomology, 4);
    CHECK(coh.quadrant == "second");
    for (int s = 0; s <= 4; ++s) {
      CHECK(hom.grid[static_cast<std::size_t>(s)][0] == pair_oracle(m, y, gy, s, true));
      CHECK(coh.grid[static_cast<std::size_t>(s)][0] == pair_oracle(m, y, gy, s, false));
      for (std::size_t t = 1; t <= 4; ++t) {
        CHECK(hom.grid[static_cast<std::size_t>(s)][t].is_zero());
        CHECK(coh.grid[static_cast<std::size_t>(s)][t].is_zero());
      }
    }
    check_all_agree(hom, 4);
    check_all_agree(coh, 4);
  }
  // groups are not an abelian setting
  const auto x = group_algebra(GroupTable::cyclic(2), "Z/2");
  CHECK_THROWS_AS(reverse_adams_e2(Resolution(loop_group_resolution(x, 3)), Module::trivial(Ring::integers(), {2}),
                                   Variant::Homology, 1),
                  Unsupported);
}

TEST_CASE("undetermined differentials and bad inputs") {
  const auto z4 = Ring::integers_mod(4);
  GradedModule h;
  h.ring = z4;
  h.degrees = {Module::trivial(z4, {2}), Module::trivial(z4, {2})};
  auto page = uct_e2(h, Module::trivial(z4, {2}), 3);
  CHECK(!page.d2_determined);
  // a target larger than E2 is reported, a smaller one is left open
  compare_with(page, {FGAbelianGroup::cyclic(2), FGAbelianGroup::cyclic(2), FGAbelianGroup::cyclic(2),
                      FGAbelianGroup::from_cyclic_orders({2, 2, 2, 2, 2})});
  CHECK(page.convergence[1].agreement == Agreement::Undetermined);
  CHECK(page.convergence[3].agreement == Agreement::Disagrees);
  CHECK(!page.consistent());

  CHECK_THROWS_AS(uct_e2(h, Module::trivial(Ring::integers(), {2}), 2), Error);
}

TEST_CASE("bicomplex checks") {
  const auto report = bicomplex_checks(8, 3);
  REQUIRE(report.checks.size() == 3);
  for (const auto& c : report.checks) CHECK_MESSAGE(c.passed, c.name << ": " << c.detail);
  CHECK(report.passed());
}
