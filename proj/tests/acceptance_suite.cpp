#include "acceptance_suite.hpp"

#include <chrono>
#include <functional>
#include <set>
#include <sstream>
#include <tuple>

#include "aq/error.hpp"
#include "aq/io.hpp"
#include "aq/random_fixtures.hpp"
#include "oracles.hpp"

namespace acceptance {

using namespace aq;
namespace fs = std::filesystem;

namespace {

// Time limits in seconds.
constexpr double kBeckLimit = 60;
constexpr double kAdjunctionLimit = 10;
constexpr double kModuleLimit = 30;
constexpr double kGroupLimit = 60;
constexpr double kDoldKanLimit = 30;

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool passed = true;
  std::string detail;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    passed = false;
    if (failures.size() < 3) failures.push_back(what);
  }
};

FiniteAlgebra cyclic(int n) { return group_algebra(GroupTable::cyclic(n), "Z/" + std::to_string(n)); }

FiniteAlgebra library_group(const std::string& name) {
  for (auto& g : small_group_library(8))
    if (g.name() == name) return g;
  throw Error("no library group " + name);
}

AlgebraMap identity_map(const FiniteAlgebra& x) {
  std::vector<int> id(x.group_table().order());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
  return {{{x.main_sort(), id}}};
}

FGAbelianGroup pair_oracle(Int m, const std::vector<Int>& y, const std::vector<Int>& g, int n, bool tor) {
  std::vector<Int> orders;
  for (Int a : y)
    for (Int b : g) {
      const Int ac = a == 0 ? m : a, bc = b == 0 ? m : b;
      orders.push_back(tor ? oracle::tor_cyclic(m, ac, bc, n) : oracle::ext_cyclic(m, ac, bc, n));
    }
  return FGAbelianGroup::from_cyclic_orders(orders);
}

// An abelian group as an algebra over the built-in ab theory.
FiniteAlgebra ab_algebra(const GroupTable& g, const std::string& name) {
  FiniteAlgebra a(builtin_theory("ab"), name);
  const std::string s = a.theory().sorts[0];
  a.set_carrier(s, g.labels);
  std::vector<int> add, neg;
  for (std::size_t i = 0; i < g.order(); ++i) {
    for (std::size_t j = 0; j < g.order(); ++j) add.push_back(g(static_cast<int>(i), static_cast<int>(j)));
    neg.push_back(g.inverse[i]);
  }
  a.set_table("add", add);
  a.set_table("neg", neg);
  a.set_table("zero", {g.identity});
  a.validate();
  return a;
}

// |E_0| / |normal closure of d0(y) d1(y)^-1|, i.e. the order of pi_0 E.
std::size_t pi0_order(const EMObject& e) {
  const GroupTable g0 = e.level(0).algebra.group_table();
  const GroupTable g1 = e.level(1).algebra.group_table();
  const auto d0 = e.face(1, 0), d1 = e.face(1, 1);
  std::set<int> normal{g0.identity};
  std::vector<int> queue;
  for (std::size_t y = 0; y < g1.order(); ++y) queue.push_back(g0(d0[y], g0.inverse[static_cast<std::size_t>(d1[y])]));
  while (!queue.empty()) {
    const int z = queue.back();
    queue.pop_back();
    if (!normal.insert(z).second) continue;
    for (int w : std::set<int>(normal))
      for (int c : {g0(z, w), g0(w, z)}) queue.push_back(c);
    for (std::size_t h = 0; h < g0.order(); ++h) queue.push_back(g0(g0(static_cast<int>(h), z), g0.inverse[h]));
  }
  return g0.order() / normal.size();
}

Outcome beck_classification() {
  Outcome o;
  std::size_t surjections = 0, structures = 0;
  for (const auto& x : {cyclic(2), cyclic(3), library_group("V4")}) {
    for (const auto& r : classify_group_objects(x, 8)) {
      ++surjections;
      structures += r.brute_force.size();
      o.require(r.agree(), r.name + " over " + x.name());
    }
  }
  o.detail = std::to_string(surjections) + " surjections, " + std::to_string(structures) +
             " group-object structures, brute force = (K, xi) list";
  return o;
}

Outcome adjunction_counts() {
  Outcome o;
  Rng rng(kSeed);
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  const auto library = small_group_library(6);
  std::vector<GroupTable> abelian;
  for (const auto& g : library)
    if (g.group_table().is_abelian()) abelian.push_back(g.group_table());

  std::map<std::string, int> kinds;
  for (int trial = 0; trial < 100; ++trial) {
    TheoryPresentation theta;
    FiniteAlgebra a;
    std::string kind;
    switch (trial % 4) {
      case 0:
        kind = "gp";
        theta = builtin_theory("gp");
        a = library[pick(library.size())];
        break;
      case 1:
        kind = "ab";
        theta = builtin_theory("ab");
        a = ab_algebra(abelian[pick(abelian.size())], "A");
        break;
      case 2: {
        const Int m = 2 + static_cast<Int>(pick(3));
        kind = "mod:Z/" + std::to_string(m);
        theta = builtin_theory(kind);
        std::vector<Generator> gens;
        for (std::size_t i = 0; i <= pick(2); ++i) gens.push_back({"a" + std::to_string(i), theta.sorts[0]});
        a = realize_presentation(theta, gens, {}, 64);
        break;
      }
      default: {
        kind = "discrete";
        TheoryPresentation base;
        base.name = "S";
        for (std::size_t s = 0; s <= 1 + pick(2); ++s) base.sorts.push_back("s" + std::to_string(s));
        theta = discrete_theory(base);
        a = FiniteAlgebra(theta, "A");
        for (const auto& s : theta.sorts) {
          std::vector<std::string> labels;
          for (std::size_t i = 0; i <= pick(3); ++i) labels.push_back(std::to_string(i));
          a.set_carrier(s, labels);
        }
        a.validate();
      }
    }
    ++kinds[kind.substr(0, 3)];
    std::vector<Generator> t;
    for (const auto& s : theta.sorts)
      for (std::size_t i = 0, n = pick(3); i < n; ++i) t.push_back({"t" + s + std::to_string(i), s});
    const auto homs = enumerate_homs(FreeAlgebra(theta, t), a);
    Int expected = 1;
    for (const auto& g : t) expected *= static_cast<Int>(a.size(g.sort));
    std::set<std::vector<int>> distinct(homs.begin(), homs.end());
    o.require(static_cast<Int>(homs.size()) == expected && distinct.size() == homs.size(),
              kind + " trial " + std::to_string(trial) + ": " + std::to_string(homs.size()) + " homs, expected " +
                  std::to_string(expected));
  }
  std::ostringstream d;
  d << "100 instances (";
  bool first = true;
  for (const auto& [k, n] : kinds) {
    d << (first ? "" : ", ") << k << " " << n;
    first = false;
  }
  d << "), |Hom(F T, A)| = prod |A_s|^|T_s|";
  o.detail = d.str();
  return o;
}

Outcome module_ext_tor() {
  Outcome o;
  const std::vector<std::vector<Int>> over_z{{2}, {3}, {4}, {0, 2}};
  // Z/3 and Z ⊕ Z/2 are not Z/4-modules
  const std::vector<std::vector<Int>> over_z4{{2}, {4}};
  std::size_t values = 0;
  for (Int m : {Int{0}, Int{4}}) {
    const auto ring = m == 0 ? Ring::integers() : Ring::integers_mod(m);
    const auto& fixtures = m == 0 ? over_z : over_z4;
    for (const auto& y : fixtures) {
      const auto r = Resolution(resolve_module(Module::trivial(ring, y), 6, 6));
      for (const auto& g : fixtures) {
        const auto gm = Module::trivial(ring, g);
        const auto coh = cohomology(r, gm, 4);
        const auto hom = homology_with_coeffs(r, gm, 4);
        for (int n = 0; n <= 4; ++n) {
          const auto k = static_cast<std::size_t>(n);
          const std::string where = ring->name() + " Y=" + Module::trivial(ring, y).invariants().to_string() +
                                    " G=" + gm.invariants().to_string() + " n=" + std::to_string(n);
          o.require(coh[k] == pair_oracle(m, y, g, n, false), "Ext " + where);
          o.require(hom[k] == pair_oracle(m, y, g, n, true), "Tor " + where);
          values += 2;
        }
      }
    }
  }
  o.detail = std::to_string(values) + " values of H^n = Ext^n and H_n = Tor_n, n <= 4, over Z and Z/4";
  return o;
}

Outcome group_vs_classical() {
  Outcome o;
  std::size_t pairs = 0;
  for (int order : {2, 3, 4}) {
    const auto x = cyclic(order);
    const auto r = Resolution(loop_group_resolution(x, 3));
    for (Int c : {Int{2}, Int{3}}) {
      const auto k = XModule::trivial(x, {c});
      const auto h = cohomology(r, k.module(), 1);
      const auto der = derivations(x, identity_map(x), k);
      const auto fs1 = factor_set_cohomology(k, 1);
      const auto fs2 = factor_set_cohomology(k, 2);
      const auto bar = bar_resolution_group(k, 2);
      const std::string where = "G=Z/" + std::to_string(order) + " K=Z/" + std::to_string(c);
      o.require(h[0] == der.group, "H^0 vs Der " + where);
      o.require(static_cast<std::size_t>(h[0].order()) == der.values.size(), "|H^0| vs |Der| " + where);
      o.require(h[1] == fs2.group, "H^1 vs factor sets " + where);
      o.require(bar[1] == fs1.group && bar[2] == fs2.group, "bar vs factor sets " + where);
      ++pairs;
    }
  }
  o.detail = std::to_string(pairs) + " (G, K) pairs: H^0 = Der, H^1 = factor-set H^2, bar = factor sets in degrees 1-2";
  return o;
}

Outcome route_agreement() {
  Outcome o;
  const fs::path dir{AQ_FIXTURE_DIR};
  std::size_t fixtures = 0;
  for (const char* name : {"z2-triv.xmod", "z2-z4.xmod", "z3-triv.xmod", "z4-triv.xmod", "s3-z3.xmod"}) {
    const auto k = load_xmodule(dir / name);
    const auto r = Resolution(loop_group_resolution(k.base(), 3));
    const auto h = cohomology(r, k.module(), 2);
    for (std::size_t n = 1; n <= 2; ++n)
      o.require(cohomology_via_em(r, k.module(), n) == h[n], std::string(name) + " n=" + std::to_string(n));
    ++fixtures;
  }
  for (const char* name : {"z2.sres", "z4-over-z.sres"}) {
    const auto r = load_resolution(dir / name);
    const auto k = std::holds_alternative<GroupResolution>(r)
                       ? XModule::trivial(std::get<GroupResolution>(r).x, {2}).module()
                       : Module::trivial(coefficient_ring(r), {2});
    const auto h = cohomology(r, k, 2);
    for (std::size_t n = 1; n <= 2; ++n)
      o.require(cohomology_via_em(r, k, n) == h[n], std::string(name) + " n=" + std::to_string(n));
    ++fixtures;
  }
  for (Int m : {Int{0}, Int{4}}) {
    const auto ring = m == 0 ? Ring::integers() : Ring::integers_mod(m);
    const std::vector<std::vector<Int>> ys = m == 0 ? std::vector<std::vector<Int>>{{2}, {3}, {4}, {0, 2}}
                                                    : std::vector<std::vector<Int>>{{2}, {4}};
    for (const auto& y : ys) {
      const auto r = Resolution(resolve_module(Module::trivial(ring, y), 4, 4));
      for (const auto& g : ys) {
        const auto gm = Module::trivial(ring, g);
        const auto h = cohomology(r, gm, 2);
        for (std::size_t n = 1; n <= 2; ++n)
          o.require(cohomology_via_em(r, gm, n) == h[n], ring->name() + " module fixture n=" + std::to_string(n));
        ++fixtures;
      }
    }
  }
  o.detail = std::to_string(fixtures) + " fixtures, cochain = EM route in degrees 1 and 2";
  return o;
}

Outcome dold_kan_moore() {
  Outcome o;
  Rng rng(kSeed + 6);
  for (int trial = 0; trial < 200; ++trial) {
    const ChainComplex c = random_complex(rng, 5, 3, 5);
    const ModuleComplex mc = ModuleComplex::from_chain_complex(c);
    const auto v = dold_kan(mc, mc.length());
    o.require(!v.identity_failure() && normalize_dk(v) == mc, "round trip " + std::to_string(trial));
    // Moore homotopy against the chain homology from invariant factors
    std::vector<std::size_t> ranks;
    for (const auto& g : c.groups) ranks.push_back(g.gens);
    const auto pi = moore_homotopy(v, mc.length() == 0 ? 0 : mc.length() - 1);
    for (std::size_t i = 0; i < pi.size(); ++i)
      o.require(pi[i] == FGAbelianGroup::from_cyclic_orders(oracle::free_complex_homology(ranks, c.differentials, i)),
                "Moore homotopy " + std::to_string(trial) + " degree " + std::to_string(i));
  }
  const std::vector<std::vector<Int>> as{{0}, {2}, {3}, {0, 4}};
  for (const auto& a : as) {
    const auto m = Module::trivial(Ring::integers(), a);
    for (std::size_t n = 0; n <= 3; ++n) {
      const auto k = dold_kan(shifted(m, n), n + 2);
      const auto p = moore_homotopy(k, n + 1);
      for (std::size_t i = 0; i <= n + 1; ++i)
        o.require(p[i] == (i == n ? m.invariants() : FGAbelianGroup::zero()),
                  "pi_" + std::to_string(i) + " K(" + m.invariants().to_string() + ", " + std::to_string(n) + ")");
    }
  }
  std::size_t em = 0;
  for (int order : {2, 3})
    for (Int c : {Int{2}, Int{3}})
      for (std::size_t n : {1u, 2u}) {
        const auto x = cyclic(order);
        const auto e = eilenberg_maclane(x, XModule::trivial(x, {c}), n, 3);
        const auto pi = moore_homotopy(e.kernel, 2);
        const std::string where = "E^X(Z/" + std::to_string(c) + ", " + std::to_string(n) + ") over Z/" +
                                  std::to_string(order);
        for (std::size_t i = 0; i <= 2; ++i)
          o.require(pi[i] == (i == n ? FGAbelianGroup::cyclic(c) : FGAbelianGroup::zero()), where + " pi_" +
                                                                                               std::to_string(i));
        o.require(pi0_order(e) == static_cast<std::size_t>(order), where + " pi_0 = X");
        o.require(!e.kernel.identity_failure(), where + " identities");
        ++em;
      }
  o.detail = "200 random complexes round trip; pi_n K(A, n) for A in {Z, Z/2, Z/3, Z+Z/4}, n <= 3; " +
             std::to_string(em) + " E^X(K, n) objects, n in {1, 2}";
  return o;
}

Outcome spectral_pages() {
  Outcome o;
  const auto z = Ring::integers();
  const std::vector<std::vector<Int>> fixtures{{2}, {3}, {4}, {0, 2}};
  std::size_t sequences = 0;
  for (const auto& y : fixtures) {
    const auto r = Resolution(resolve_module(Module::trivial(z, y), 6, 6));
    for (const auto& g : fixtures) {
      const auto gm = Module::trivial(z, g);
      for (const auto& page : {uct_e2(r, gm, 4), tor_e2(r, gm, 4)}) {
        const std::string where = to_string(page.kind) + " Y=" + Module::trivial(z, y).invariants().to_string() +
                                  " G=" + gm.invariants().to_string();
        o.require(page.sequences.size() == 5, where + ": missing total degrees");
        for (const auto& q : page.sequences) {
          o.require(q.exact, where + " total " + std::to_string(q.total));
          ++sequences;
        }
        for (const auto& c : page.convergence)
          o.require(c.agreement == Agreement::Agrees, where + " convergence " + std::to_string(c.total));
      }
    }
  }
  std::size_t pages = 0;
  for (Int m : {Int{0}, Int{4}}) {
    const auto ring = m == 0 ? Ring::integers() : Ring::integers_mod(m);
    const std::vector<std::vector<Int>> ys = m == 0 ? fixtures : std::vector<std::vector<Int>>{{2}, {4}};
    for (const auto& y : ys)
      for (const auto& g : ys) {
        const auto r = Resolution(resolve_module(Module::trivial(ring, y), 6, 6));
        const auto gm = Module::trivial(ring, g);
        for (auto v : {Variant::Homology, Variant::Cohomology}) {
          const auto page = reverse_adams_e2(r, gm, v, 4);
          const bool tor = v == Variant::Homology;
          for (int s = 0; s <= 4; ++s) {
            const auto si = static_cast<std::size_t>(s);
            o.require(page.grid[si][0] == pair_oracle(m, y, g, s, tor), "reverse Adams column " + std::to_string(s));
            for (std::size_t t = 1; t <= 4; ++t) o.require(page.grid[si][t].is_zero(), "reverse Adams row t > 0");
          }
          for (const auto& c : page.convergence) o.require(c.collapsed && c.agreement == Agreement::Agrees, "collapse");
          ++pages;
        }
      }
  }
  o.detail = std::to_string(sequences) + " two-column sequences over Z exact in total degrees <= 4; " +
             std::to_string(pages) + " reverse Adams pages collapse to Ext/Tor";
  return o;
}

Outcome complete_setting() {
  Outcome o;
  const auto report = bicomplex_checks(50, kSeed + 8, 3);
  for (const auto& c : report.checks) o.require(c.passed, c.name + ": " + c.detail);
  std::ostringstream d;
  for (std::size_t i = 0; i < report.checks.size(); ++i)
    d << (i ? "; " : "") << report.checks[i].name << " " << (report.checks[i].passed ? "holds" : "fails");
  o.detail = "50 random fixtures: " + d.str();
  return o;
}

Criterion run(int id, const std::string& name, double limit, const std::function<Outcome()>& f) {
  Criterion c;
  c.id = id;
  c.name = name;
  c.limit_seconds = limit;
  const auto start = std::chrono::steady_clock::now();
  try {
    Outcome o = f();
    c.passed = o.passed;
    c.detail = o.detail;
    for (const auto& fail : o.failures) c.detail += "; failed: " + fail;
  } catch (const std::exception& e) {
    c.passed = false;
    c.detail = std::string("error: ") + e.what();
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit > 0 && c.seconds > limit) {
    c.passed = false;
    c.detail += "; over the time limit";
  }
  return c;
}

}  // namespace

std::vector<Criterion> run_all(const std::function<void(const Criterion&)>& on_done) {
  const std::vector<std::tuple<int, std::string, double, std::function<Outcome()>>> criteria{
      {1, "Beck classification", kBeckLimit, beck_classification},
      {2, "adjunction counts", kAdjunctionLimit, adjunction_counts},
      {3, "module AQ is Ext/Tor", kModuleLimit, module_ext_tor},
      {4, "group AQ vs classical", kGroupLimit, group_vs_classical},
      {5, "route agreement", 0, route_agreement},
      {6, "Dold-Kan and Moore", kDoldKanLimit, dold_kan_moore},
      {7, "spectral pages", 0, spectral_pages},
      {8, "complete-setting checks", 0, complete_setting},
  };
  std::vector<Criterion> out;
  for (const auto& [id, name, limit, f] : criteria) {
    out.push_back(run(id, name, limit, f));
    if (on_done) on_done(out.back());
  }
  return out;
}

std::string format(const Criterion& c) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(2);
  out << (c.passed ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << c.detail << " ["
      << c.seconds << " s";
  if (c.limit_seconds > 0) out << " / limit " << c.limit_seconds << " s";
  out << "]";
  return out.str();
}

}  // namespace acceptance
