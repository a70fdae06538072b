#include <fstream>
#include <sstream>

#include "aq/theory.hpp"
#include "doctest.h"

using namespace aq;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("parse the group theory fixture") {
  const auto t = parse_theory(slurp(AQ_FIXTURE_DIR "/gp.thy"));
  CHECK(t.name == "Gp");
  CHECK(t.sorts.size() == 1);
  CHECK(t.ops.size() == 3);
  CHECK(t.equations.size() == 5);
  CHECK(t.class_tag == "gp");
  CHECK(!t.strength_flag);
  const auto report = validate_group_structure(t);
  CHECK(report.ok);
  CHECK(report.witness.at("g") == GroupOps{"mul", "inv", "e"});
}

TEST_CASE("round trip through the printer") {
  for (const char* f : {"/gp.thy", "/ab.thy"}) {
    const auto t = parse_theory(slurp(std::string(AQ_FIXTURE_DIR) + f));
    const auto u = parse_theory(t.print());
    CHECK(u.print() == t.print());
    CHECK(u.equations == t.equations);
  }
  for (const char* b : {"gp", "ab", "mod:Z", "mod:Z/4", "mod:Z[Z/2]", "set", "trivial"}) {
    const auto t = builtin_theory(b);
    CHECK(parse_theory(t.print()).print() == t.print());
  }
}

TEST_CASE("empty body, sorting and duplicate errors") {
  const auto t = parse_theory("theory T { }");
  CHECK(t.sorts.empty());
  CHECK_THROWS_AS(parse_theory("theory T { sort g\n op mul : g g -> h }"), SortError);
  CHECK_THROWS_AS(parse_theory("theory T { sort g g }"), DuplicateNameError);
  CHECK_THROWS_AS(parse_theory("theory T { sort g\n op f : g -> g\n op f : g -> g }"), DuplicateNameError);
  CHECK_THROWS_AS(parse_theory("theory T { sort a b\n op f : a -> b\n eq f($x) = $x }"), SortError);
  try {
    parse_theory("theory T {\n  sort g\n  op ! : g -> g\n}");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 6);
  }
}

TEST_CASE("group structure detection") {
  const auto set = builtin_theory("set");
  const auto r = validate_group_structure(set);
  CHECK(!r.ok);
  REQUIRE(!r.missing.empty());
  CHECK(r.missing.front() == "s: mul");
  const auto ab = parse_theory(slurp(AQ_FIXTURE_DIR "/ab.thy"));
  const auto ra = validate_group_structure(ab);
  CHECK(ra.ok);
  CHECK(ra.strength_flag);
  CHECK(ab.class_tag == "ab");
}

TEST_CASE("discrete and product theories") {
  const auto gp = builtin_theory("gp");
  const auto ab = builtin_theory("ab");
  const auto d = discrete_theory(gp);
  CHECK(d.sorts.size() == 1);
  CHECK(d.ops.empty());
  TheoryPresentation two;
  two.name = "Two";
  two.sorts = {"a", "b"};
  two.validate();
  CHECK(discrete_theory(two).sorts.size() == 2);

  const auto p = product_theory(ab, gp);
  CHECK(p.sorts == gp.sorts);
  CHECK(p.ops.size() == 6);
  CHECK(p.find_op("theta.mul") != nullptr);
  CHECK(p.find_op("phi.add.g") != nullptr);
  // 5 + 6 axioms plus 3 x 3 commuting squares
  CHECK(p.equations.size() == 5 + 6 + 9);
  CHECK(validate_group_structure(p).ok);
  // idempotent at the presentation level
  CHECK(product_theory(ab, p).print() == p.print());

  const auto graded = product_theory(ab, discrete_theory(two));
  CHECK(graded.sorts.size() == 2);
  CHECK(graded.ops.size() == 6);
  CHECK(validate_group_structure(graded).strength_flag);

  const auto same = product_theory(builtin_theory("set"), gp);
  CHECK(same.ops.size() == gp.ops.size());
  CHECK(same.equations.size() == gp.equations.size());
  CHECK(same.class_tag == "gp");
  CHECK_THROWS_AS(product_theory(ab, ab, false), DuplicateNameError);
  CHECK_NOTHROW(product_theory(ab, gp, false));
}

TEST_CASE("abelianization theory") {
  const auto gp = builtin_theory("gp");
  const auto a = abelianization_theory(gp);
  CHECK(a.class_tag == "ab");
  CHECK(a.equations.size() == 6);
  CHECK(validate_group_structure(a).strength_flag);
  const auto ab = builtin_theory("ab");
  CHECK(abelianization_theory(ab).print() == ab.print());
  const auto m = builtin_theory("mod:Z[Z/2]");
  CHECK(abelianization_theory(m).print() == m.print());
  CHECK_THROWS_AS(abelianization_theory(builtin_theory("set")), Error);
}

TEST_CASE("module theory over Z/2") {
  const auto m = group_ring_module_theory(builtin_theory("gp"), GroupTable::cyclic(2), "GpZ2");
  CHECK(m.ops.size() == 5);
  // 6 abelian group axioms + |X| * 2 schemas + 1 unit axiom
  CHECK(m.equations.size() == 6 + 2 * 2 + 1);
  CHECK(m.strength_flag);
  const auto t = group_ring_module_theory(builtin_theory("gp"), GroupTable::trivial(), "X");
  CHECK(t.print() == abelianization_theory(builtin_theory("gp")).print());
}
