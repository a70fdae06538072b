#include <doctest.h>

#include "aq/beck.hpp"
#include "aq/free_simplicial.hpp"

using namespace aq;

TEST_CASE("kan loop group resolutions") {
  for (int n : {2, 3, 4}) {
    const GroupTable x = GroupTable::cyclic(n);
    const auto v = kan_loop_group(x, 3);
    CHECK(!v.identity_failure());
    CHECK(v.rank(0) == static_cast<std::size_t>(n - 1));
    CHECK(v.rank(2) == static_cast<std::size_t>(n * n * (n - 1)));
    const auto aug = kan_augmentation(x);
    CHECK(!pi0_failure(v, aug, x));
    // over X: H_0 is the augmentation ideal, free abelian of rank |X| - 1
    const auto a = abelianize_over(v, aug, x);
    CHECK(!a.identity_failure());
    const auto h = moore_homotopy(a, 2);
    CHECK(h[0] == FGAbelianGroup::free(n - 1));
    CHECK(h[1].is_zero());
    CHECK(h[2].is_zero());
    // absolute: H_0 = X_ab, H_1 = H_2(X; Z) = 0 for cyclic X
    const auto b = moore_homotopy(abelianize(v), 2);
    CHECK(b[0] == FGAbelianGroup::cyclic(n));
    CHECK(b[1].is_zero());
  }
  // Z/2 fixture shape: F{a}, F{a0, y}
  const auto z2 = kan_loop_group(GroupTable::cyclic(2), 2);
  CHECK(z2.generators[0] == std::vector<std::string>{"[1]"});
  CHECK(z2.generators[1].size() == 2);
  CHECK(z2.degeneracies[0][0][0] == Word{{0, 1}});

  const auto s3 = small_group_library(6).back().group_table();
  REQUIRE(s3.order() == 6);
  const auto v = kan_loop_group(s3, 2);
  CHECK(!v.identity_failure());
  CHECK(!pi0_failure(v, kan_augmentation(s3), s3));
  CHECK(moore_homotopy(abelianize(v), 1)[0] == FGAbelianGroup::cyclic(2));
}

TEST_CASE("broken simplicial groups are caught") {
  auto v = kan_loop_group(GroupTable::cyclic(2), 2);
  auto bad = v;
  std::swap(bad.faces[2][0], bad.faces[2][1]);
  CHECK(bad.identity_failure().has_value());
  auto wrong = kan_augmentation(GroupTable::cyclic(3));
  auto v3 = kan_loop_group(GroupTable::cyclic(3), 1);
  std::swap(wrong[0], wrong[1]);  // still a valid isomorphism
  CHECK(!pi0_failure(v3, wrong, GroupTable::cyclic(3)));
  CHECK(pi0_failure(v3, {0, 0}, GroupTable::cyclic(3)).has_value());
}
