#include <doctest.h>

#include <fstream>
#include <functional>

#include "aq/error.hpp"
#include "aq/io.hpp"

using namespace aq;
namespace fs = std::filesystem;

namespace {

const fs::path fixtures{AQ_FIXTURE_DIR};

fs::path scratch(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "aq-io-test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("algebra fixtures") {
  const auto z2 = load_algebra(fixtures / "z2.alg");
  const auto ref = group_algebra(GroupTable::cyclic(2), "Z2");
  CHECK(z2.table("mul") == ref.table("mul"));

  const auto z4 = load_algebra(fixtures / "z4.alg");
  CHECK(z4.carrier(z4.main_sort()).size() == 4);

  const auto s3 = load_algebra(fixtures / "s3.alg");
  REQUIRE(s3.carrier(s3.main_sort()).size() == 6);
  CHECK(!s3.group_table().is_abelian());

  // writing and reading back is the identity on the text
  for (const auto* name : {"z2.alg", "z3.alg", "s3.alg"}) {
    const auto a = load_algebra(fixtures / name);
    const auto text = write_algebra(a, "gp");
    CHECK(write_algebra(load_algebra(scratch(name, text)), "gp") == text);
  }
}

TEST_CASE("xmodule fixtures") {
  const auto triv = load_xmodule(fixtures / "z2-triv.xmod");
  CHECK(triv.trivial_action());
  const auto neg = load_xmodule(fixtures / "z2-z4.xmod");
  CHECK(!neg.trivial_action());
  CHECK(neg.module().invariants() == FGAbelianGroup::cyclic(4));
  const auto s3 = load_xmodule(fixtures / "s3-z3.xmod");
  CHECK(!s3.trivial_action());

  scratch("z2.alg", write_algebra(load_algebra(fixtures / "z2.alg"), "gp"));
  const auto text = write_xmodule(neg, "z2.alg");
  CHECK(modules_isomorphic(load_xmodule(scratch("neg.xmod", text)), neg));
}

TEST_CASE("resolution fixtures") {
  const auto z2 = load_algebra(fixtures / "z2.alg");
  const auto loaded = load_resolution(fixtures / "z2.sres");
  const auto built = Resolution(loop_group_resolution(z2, 3));
  CHECK(write_resolution(loaded, "Z2-loop", "z2.alg") == write_resolution(built, "Z2-loop", "z2.alg"));
  CHECK(check_certificate(loaded, 2).valid());
  const auto k = XModule::trivial(z2, {2});
  CHECK(cohomology(loaded, k.module(), 2) == cohomology(built, k.module(), 2));

  const auto module = load_resolution(fixtures / "z4-over-z.sres");
  REQUIRE(std::holds_alternative<ModuleResolution>(module));
  CHECK(check_certificate(module, 2).valid());
  CHECK(homology(module, 2)[0] == FGAbelianGroup::cyclic(4));

  // the broken fixture fails exactly the simplicial identities
  CHECK_THROWS_AS(load_resolution(fixtures / "broken.sres"), CheckFailed);
  const auto broken = load_resolution(fixtures / "broken.sres", false);
  const auto cert = check_certificate(broken, 2);
  CHECK(!cert.valid());
  REQUIRE(cert.first_failure());
  CHECK(cert.first_failure()->find("simplicial identities") != std::string::npos);
}

TEST_CASE("load errors carry file and line") {
  const auto bad_table = scratch("bad.alg", "algebra X\ntheory gp\ncarrier g : 0 1\ntable mul : 0 1 1\n");
  CHECK(error_of([&] { load_algebra(bad_table); }).find("bad.alg:4:") != std::string::npos);

  const auto bad_term = scratch("badterm.alg", "algebra X\ntheory gp\ngen t : g\n\nrel mul($t, = e\nrealize bound=2\n");
  CHECK(error_of([&] { load_algebra(bad_term); }).find("badterm.alg:5:") != std::string::npos);

  const auto unknown = scratch("unknown.xmod", "xmodule X\nbase z2.alg\ngroup 2\nact 7 : 1\n");
  scratch("z2.alg", write_algebra(load_algebra(fixtures / "z2.alg"), "gp"));
  CHECK(error_of([&] { load_xmodule(unknown); }).find("unknown.xmod:4:") != std::string::npos);

  const auto bad_word = scratch("badword.sres", "sres X\nkind group\nbase z2.alg\nlevel 0 : a\nlevel 1 : b c\n"
                                                "face 1 0 : a ; q\nface 1 1 : a ; a\naugment : 1\n");
  CHECK(error_of([&] { load_resolution(bad_word); }).find("badword.sres:6:") != std::string::npos);

  const auto bad_matrix = scratch("badmat.sres", "sres X\nkind module\nring Z\ntarget 2\nlevel 0 rank 1\n"
                                                 "level 1 rank 2\nface 1 0 : 2 1 7\nface 1 1 : 0 1\naugment : 1\n");
  CHECK(error_of([&] { load_resolution(bad_matrix); }).find("badmat.sres:7:") != std::string::npos);

  CHECK(error_of([&] { load_fixture(fixtures / "missing.alg"); }).find("missing.alg:0:") != std::string::npos);
  CHECK_THROWS_AS(load_fixture(fixtures / "z2.txt"), FixtureError);
}

TEST_CASE("JSON round trips") {
  const std::vector<FGAbelianGroup> groups{FGAbelianGroup::cyclic(2), FGAbelianGroup::free(1),
                                           FGAbelianGroup::from_cyclic_orders({2, 4})};
  CHECK(groups_from_json(groups_to_json(groups)) == groups);

  const auto z = Ring::integers();
  const auto r = Resolution(resolve_module(Module::trivial(z, {4}), 5, 5));
  const auto page = uct_e2(r, Module::trivial(z, {2}), 3);
  const Json j = page_to_json(page);
  CHECK(page_to_json(page_from_json(j)).dump() == j.dump());
  // stable output across runs
  CHECK(page_to_json(uct_e2(r, Module::trivial(z, {2}), 3)).dump() == j.dump());
  CHECK(j.at("convergence").at("consistent").get<bool>());
}

TEST_CASE("matrix text") {
  Matrix m(2, 3);
  m(0, 0) = 1;
  m(1, 2) = -4;
  CHECK(parse_matrix(format_matrix(m), 2, 3) == m);
  CHECK_THROWS_AS(parse_matrix("1 2; 3", 2, 2), Error);
  CHECK_THROWS_AS(parse_matrix("1 x", 1, 2), Error);
}
