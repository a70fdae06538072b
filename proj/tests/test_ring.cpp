#include "aq/ring.hpp"
#include "doctest.h"

using namespace aq;

TEST_CASE("free modules and trivial modules are valid") {
  auto zg = Ring::group_ring(GroupTable::cyclic(3));
  CHECK(Module::free(zg, 2).is_valid());
  CHECK(Module::trivial(zg, {0, 2}).is_valid());
  CHECK(Module::free(Ring::integers_mod(4), 2).is_valid());
  CHECK_THROWS_AS(Module::trivial(Ring::integers_mod(4), {3}), Error);
}

TEST_CASE("resolutions over Z and Z/4") {
  auto z = Ring::integers();
  auto p = resolve(Module::trivial(z, {4}), 3);
  CHECK(p.ranks == std::vector<std::size_t>{1, 1, 0, 0});
  CHECK((p.differentials[0] == Matrix{{4}} || p.differentials[0] == Matrix{{-4}}));
  const auto g = Module::trivial(z, {2});
  const auto hom = hom_complex(p, g);
  CHECK(hom.cohomology(0) == FGAbelianGroup::cyclic(2));
  CHECK(hom.cohomology(1) == FGAbelianGroup::cyclic(2));
  CHECK(hom.cohomology(2).is_zero());
  const auto tens = tensor_complex(p, g);
  CHECK(tens.homology(0) == FGAbelianGroup::cyclic(2));
  CHECK(tens.homology(1) == FGAbelianGroup::cyclic(2));

  auto z4 = Ring::integers_mod(4);
  auto q = resolve(Module::trivial(z4, {2}), 5);
  for (auto r : q.ranks) CHECK(r == 1);
  const auto h = hom_complex(q, Module::trivial(z4, {2}));
  for (int n = 0; n < 5; ++n) CHECK(h.cohomology(n) == FGAbelianGroup::cyclic(2));
  const auto free = resolve(Module::free(z4, 1), 3);
  CHECK(free.ranks == std::vector<std::size_t>{1, 0, 0, 0});
}

TEST_CASE("resolution of the trivial Z[Z/2]-module is periodic") {
  auto zg = Ring::group_ring(GroupTable::cyclic(2));
  auto p = resolve(Module::trivial(zg, {0}), 4);
  for (auto r : p.ranks) CHECK(r == 1);
  // H^n(Z/2; Z) = Z, 0, Z/2, 0, Z/2
  const auto h = hom_complex(p, Module::trivial(zg, {0}));
  CHECK(h.cohomology(0) == FGAbelianGroup::free(1));
  CHECK(h.cohomology(1).is_zero());
  CHECK(h.cohomology(2) == FGAbelianGroup::cyclic(2));
  CHECK(h.cohomology(3).is_zero());
  // H^n(G; Z[G]) = Z at 0, 0 above
  const auto hf = hom_complex(p, Module::free(zg, 1));
  CHECK(hf.cohomology(0) == FGAbelianGroup::free(1));
  for (int n = 1; n < 4; ++n) CHECK(hf.cohomology(n).is_zero());
}
