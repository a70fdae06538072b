#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "acceptance_suite.hpp"
#include "aq/error.hpp"
#include "aq/io.hpp"

using namespace aq;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kBudget = 3 };

// Thrown for bad flag combinations found after parsing.
class UsageError : public Error {
 public:
  using Error::Error;
};

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// "4", "0,2", "2 2"; "Z" is 0.
std::vector<Int> parse_orders(const std::string& text) {
  std::string t = text;
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream in(t);
  std::vector<Int> out;
  for (std::string w; in >> w;) {
    if (w == "Z") {
      out.push_back(0);
      continue;
    }
    try {
      std::size_t used = 0;
      const long long v = std::stoll(w, &used);
      if (used != w.size() || v < 0) throw std::invalid_argument(w);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("expected cyclic orders like '4' or '0,2', found '" + text + "'");
    }
  }
  return out;
}

std::vector<Int> orders_of(const FGAbelianGroup& g) {
  std::vector<Int> out = g.torsion;
  for (Int i = 0; i < g.rank; ++i) out.push_back(0);
  return out;
}

void write_json(const std::string& path, const Json& j) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << j.dump(2) << "\n";
}

// Everything a cohomology / homology / ss command needs.
struct Setting {
  bool group = false;
  Resolution r;
  std::optional<XModule> xmod;  // group coefficients given as an X-module
  std::size_t range = 0;
};

struct SettingArgs {
  std::string theory = "gp";
  std::string algebra;
  std::string over;
  std::string resolution;
  std::size_t range = 2;
};

Setting build_setting(const SettingArgs& a, std::size_t extra_levels) {
  const TheoryPresentation theory = resolve_theory(a.theory, std::filesystem::current_path());
  Setting s;
  s.range = a.range;
  const std::size_t trunc = a.range + extra_levels;
  if (trunc > kMaxResolutionLength) throw UsageError("degree too large");
  if (theory.class_tag == "gp") {
    s.group = true;
    if (a.algebra.empty() && a.resolution.empty()) throw UsageError("--algebra or --resolution is required");
    if (!a.resolution.empty()) {
      s.r = load_resolution(a.resolution);
      if (!std::holds_alternative<GroupResolution>(s.r)) throw UsageError(a.resolution + " is not a group resolution");
      if (truncation(s.r) < trunc)
        throw UsageError(a.resolution + " is truncated at level " + std::to_string(truncation(s.r)) + ", need " +
                         std::to_string(trunc));
    } else {
      s.r = loop_group_resolution(load_algebra(a.algebra), trunc);
    }
    if (!a.over.empty()) {
      const auto x = load_algebra(a.over);
      if (x.group_table().mul != std::get<GroupResolution>(s.r).x.group_table().mul)
        throw Unsupported("resolutions are of X over itself; --over must be the same group as --algebra");
    }
    return s;
  }
  RingPtr ring;
  if (theory.class_tag == "ab") ring = Ring::integers();
  else if (theory.class_tag == "mod" && theory.ring) ring = theory.ring;
  else throw Unsupported("theory " + theory.name + " has no registered (co)homology engine (use gp, ab or mod:*)");
  if (!a.resolution.empty()) {
    s.r = load_resolution(a.resolution);
    const auto* m = std::get_if<ModuleResolution>(&s.r);
    if (!m) throw UsageError(a.resolution + " is not a module resolution");
    if (m->object.ring->name() != ring->name()) throw UsageError(a.resolution + " is over " + m->object.ring->name());
    if (truncation(s.r) < trunc) throw UsageError(a.resolution + " is truncated too low");
    return s;
  }
  if (a.algebra.empty()) throw UsageError("--algebra or --resolution is required");
  std::vector<Int> y;
  if (ends_with(a.algebra, ".alg")) {
    const auto g = load_algebra(a.algebra).group_table();
    if (!g.is_abelian()) throw UsageError(a.algebra + " is not abelian");
    y = orders_of(FGAbelianGroup::from_addition_table(g.mul, g.identity));
  } else {
    y = parse_orders(a.algebra);
  }
  s.r = resolve_module(Module::trivial(ring, y), trunc, trunc);
  return s;
}

// Coefficients: an .xmod (groups only) or cyclic orders with trivial action.
Module coefficients(Setting& s, const std::string& coeffs) {
  if (ends_with(coeffs, ".xmod")) {
    if (!s.group) throw UsageError("X-module coefficients need a group theory");
    s.xmod = load_xmodule(coeffs);
    const auto& x = std::get<GroupResolution>(s.r).x;
    if (s.xmod->base().group_table().mul != x.group_table().mul)
      throw UsageError(coeffs + " is a module over a different group");
    return s.xmod->module();
  }
  return Module::trivial(coefficient_ring(s.r), parse_orders(coeffs));
}

void print_groups(const std::string& label, const std::vector<FGAbelianGroup>& gs, std::size_t first = 0) {
  for (std::size_t n = first; n < gs.size(); ++n) std::cout << label << n << " = " << gs[n].to_string() << "\n";
}

int run_check(const std::string& path, const std::string& json_path) {
  const std::string ext = std::filesystem::path(path).extension().string();
  Json j{{"file", path}};
  int code = kOk;
  if (ext == ".sres") {
    const auto r = load_resolution(path, false);
    const std::size_t t = truncation(r);
    const std::size_t range = t == 0 ? 0 : t - 1;
    const auto cert = check_certificate(r, range);
    j["kind"] = std::holds_alternative<GroupResolution>(r) ? "group resolution" : "module resolution";
    j["truncation"] = t;
    j["range"] = range;
    Json checks = Json::array();
    std::cout << path << ": truncated at level " << t << ", certificate range " << range << "\n";
    for (const auto& c : cert.checks) {
      std::cout << "  " << (c.passed ? "ok     " : "FAILED ") << c.name << (c.detail.empty() ? "" : ": " + c.detail)
                << "\n";
      checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    j["checks"] = checks;
    j["valid"] = cert.valid();
    if (!cert.valid()) {
      std::cout << "check failed: " << *cert.first_failure() << "\n";
      code = kFailed;
    }
  } else {
    const Fixture f = load_fixture(path);
    j["valid"] = true;
    if (const auto* t = std::get_if<TheoryPresentation>(&f)) {
      const auto report = validate_group_structure(*t);
      j["kind"] = "theory";
      j["name"] = t->name;
      j["sorts"] = t->sorts.size();
      j["ops"] = t->ops.size();
      j["equations"] = t->equations.size();
      j["group_structure"] = report.ok;
      std::cout << path << ": theory " << t->name << ", " << t->sorts.size() << " sorts, " << t->ops.size() << " ops, "
                << t->equations.size() << " equations" << (report.ok ? ", group structure on every sort" : "")
                << "\n";
    } else if (const auto* a = std::get_if<FiniteAlgebra>(&f)) {
      j["kind"] = "algebra";
      j["name"] = a->name();
      Json sizes = Json::object();
      std::cout << path << ": algebra " << a->name() << " over " << a->theory().name;
      for (const auto& s : a->theory().sorts) {
        sizes[s] = a->carrier(s).size();
        std::cout << ", |" << s << "| = " << a->carrier(s).size();
      }
      std::cout << "\n";
      j["carriers"] = sizes;
    } else if (const auto* k = std::get_if<XModule>(&f)) {
      j["kind"] = "xmodule";
      j["group"] = k->module().invariants().to_string();
      j["trivial_action"] = k->trivial_action();
      std::cout << path << ": module " << k->module().invariants().to_string() << " over " << k->base().name()
                << (k->trivial_action() ? ", trivial action" : "") << "\n";
    } else {
      j["kind"] = "resolution";
    }
  }
  write_json(json_path, j);
  return code;
}

int run_cohomology(const SettingArgs& a, const std::string& coeffs, const std::string& method, bool classical,
                   const std::string& json_path) {
  Setting s = build_setting(a, 2);
  const Module k = coefficients(s, coeffs);
  Json j{{"theory", a.theory}, {"max_degree", a.range}, {"method", method}};
  if (classical) {
    const auto* g = std::get_if<GroupResolution>(&s.r);
    if (!g) throw UsageError("--classical-indexing applies to group theories");
    require_certificate(s.r, a.range + 1);
    const auto h = classical_cohomology(*g, k, a.range);
    print_groups("H^", h);
    j["indexing"] = "classical";
    j["cohomology"] = groups_to_json(h);
    write_json(json_path, j);
    return kOk;
  }
  j["indexing"] = "aq";
  std::vector<FGAbelianGroup> cochain, em;
  if (method == "cochain" || method == "both") cochain = cohomology(s.r, k, a.range);
  if (method == "em" || method == "both") {
    require_certificate(s.r, a.range + 1);
    for (std::size_t n = 0; n <= a.range; ++n) em.push_back(cohomology_via_em(s.r, k, n));
  }
  int code = kOk;
  for (std::size_t n = 0; n <= a.range; ++n) {
    std::cout << "H^" << n << " = " << (cochain.empty() ? em[n] : cochain[n]).to_string();
    if (!cochain.empty() && !em.empty()) std::cout << (cochain[n] == em[n] ? "  (routes agree)" : "  (EM route: " + em[n].to_string() + ")");
    std::cout << "\n";
  }
  if (!cochain.empty()) j["cohomology"] = groups_to_json(cochain);
  if (!em.empty()) j["em"] = groups_to_json(em);
  if (!cochain.empty() && !em.empty()) {
    j["routes_agree"] = cochain == em;
    if (cochain != em) {
      std::cout << "check failed: route agreement\n";
      code = kFailed;
    }
  }
  write_json(json_path, j);
  return code;
}

int run_homology(const SettingArgs& a, const std::string& coeffs, bool classical, const std::string& json_path) {
  Setting s = build_setting(a, 2);
  require_certificate(s.r, a.range);
  Json j{{"theory", a.theory}, {"max_degree", a.range}};
  std::vector<FGAbelianGroup> h;
  if (classical) {
    const auto* g = std::get_if<GroupResolution>(&s.r);
    if (!g) throw UsageError("--classical-indexing applies to group theories");
    h = classical_homology(*g, coefficients(s, coeffs.empty() ? "Z" : coeffs), a.range);
    j["indexing"] = "classical";
  } else {
    h = coeffs.empty() ? homology(s.r, a.range) : homology_with_coeffs(s.r, coefficients(s, coeffs), a.range);
    j["indexing"] = "aq";
  }
  print_groups("H_", h);
  j["homology"] = groups_to_json(h);
  write_json(json_path, j);
  return kOk;
}

void print_page(const SpectralPage& p) {
  const bool coh = p.cohomological();
  std::cout << to_string(p.kind) << " E2 page over " << p.ring->name() << " (" << p.quadrant << " quadrant, "
            << (coh ? "E2^{s,t}" : "E^2_{s,t}") << ", total degree s+t)\n";
  for (std::size_t t = p.range + 1; t-- > 0;) {
    std::cout << "t=" << std::setw(2) << t << " |";
    for (std::size_t s = 0; s < p.grid.size(); ++s) std::cout << " " << std::setw(12) << p.grid[s][t].to_string();
    std::cout << "\n";
  }
  std::cout << "      ";
  for (std::size_t s = 0; s < p.grid.size(); ++s) std::cout << " " << std::setw(12) << ("s=" + std::to_string(s));
  std::cout << "\n";
  std::cout << "d2 " << (p.d2_determined ? "vanishes identically" : "not determined") << "\n";
  for (const auto& c : p.convergence)
    std::cout << "total " << c.total << ": target " << c.target.to_string() << ", E2 " << c.e2_total.to_string()
              << ", " << to_string(c.agreement) << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
  for (const auto& q : p.sequences)
    std::cout << "total " << q.total << ": 0 -> " << q.sub.to_string() << " -> " << q.middle.to_string() << " -> "
              << q.quotient.to_string() << " -> 0 " << (q.exact ? "exact" : "NOT exact") << "\n";
}

int run_ss(const std::string& kind, const SettingArgs& a, const std::string& coeffs, const std::string& variant,
           const std::string& json_path) {
  Setting s = build_setting(a, 2);
  Module g;
  if (s.group) {
    if (ends_with(coeffs, ".xmod")) throw UsageError("spectral pages for groups use abelian coefficients (orders)");
    g = Module::trivial(Ring::integers(), parse_orders(coeffs));
  } else {
    g = coefficients(s, coeffs);
  }
  SpectralPage p;
  if (kind == "uct") p = uct_e2(s.r, g, a.range);
  else if (kind == "tor") p = tor_e2(s.r, g, a.range);
  else p = reverse_adams_e2(s.r, g, variant == "cohomology" ? Variant::Cohomology : Variant::Homology, a.range);
  print_page(p);
  write_json(json_path, page_to_json(p));
  for (const auto& c : p.convergence)
    if (c.agreement == Agreement::Disagrees) {
      std::cout << "check failed: convergence in total degree " << c.total << "\n";
      return kFailed;
    }
  for (const auto& q : p.sequences)
    if (!q.exact) {
      std::cout << "check failed: short exact sequence in total degree " << q.total << "\n";
      return kFailed;
    }
  return kOk;
}

int run_oracle(const std::string& kind, const std::string& algebra, const std::string& coeffs, const std::string& ring,
               std::size_t degree, std::uint64_t budget_steps, const std::string& json_path) {
  Budget budget(budget_steps);
  Json j{{"oracle", kind}, {"degree", degree}};
  std::vector<FGAbelianGroup> out;
  if (kind == "bar" || kind == "factor-set") {
    if (algebra.empty() || coeffs.empty()) throw UsageError("--algebra and --coeffs are required");
    const auto x = load_algebra(algebra);
    const XModule k = ends_with(coeffs, ".xmod") ? load_xmodule(coeffs) : XModule::trivial(x, parse_orders(coeffs));
    if (kind == "bar") {
      out = bar_resolution_group(k, degree, &budget);
      print_groups("H^", out);
    } else {
      if (degree < 1 || degree > 2) throw UsageError("factor sets compute H^1 and H^2 only");
      const auto r = factor_set_cohomology(k, static_cast<int>(degree), &budget);
      std::cout << "H^" << degree << " = " << r.group.to_string() << "  (" << r.cocycles << " cocycles, "
                << r.coboundaries << " coboundaries" << (r.normalized ? ", normalized" : "") << ")\n";
      out = {r.group};
      j["normalized"] = r.normalized;
    }
    j["indexing"] = "classical";
  } else {
    if (algebra.empty()) throw UsageError("--algebra gives the cyclic orders of Y for ext and tor");
    const auto rp = Ring::from_name(ring);
    const auto y = Module::trivial(rp, parse_orders(algebra));
    const auto g = Module::trivial(rp, parse_orders(coeffs));
    const auto p = resolve(y, degree + 1);
    if (kind == "ext") {
      const auto c = hom_complex(p, g);
      for (std::size_t n = 0; n <= degree; ++n) out.push_back(c.cohomology(static_cast<int>(n)));
      print_groups("Ext^", out);
    } else {
      const auto c = tensor_complex(p, g);
      for (std::size_t n = 0; n <= degree; ++n) out.push_back(c.homology(static_cast<int>(n)));
      print_groups("Tor_", out);
    }
    j["ring"] = rp->name();
  }
  j["groups"] = groups_to_json(out);
  write_json(json_path, j);
  return kOk;
}

int run_theory(const std::string& op, const std::vector<std::string>& refs, const std::string& over,
               const std::string& json_path) {
  const auto cwd = std::filesystem::current_path();
  auto need = [&](std::size_t n) {
    if (refs.size() != n) throw UsageError("theory " + op + " takes " + std::to_string(n) + " theory argument(s)");
  };
  TheoryPresentation t;
  if (op == "abelianize") {
    need(1);
    t = abelianization_theory(resolve_theory(refs[0], cwd));
  } else if (op == "product") {
    need(2);
    t = product_theory(resolve_theory(refs[0], cwd), resolve_theory(refs[1], cwd));
  } else {
    need(1);
    if (over.empty()) throw UsageError("theory " + op + " needs --over X.alg");
    const auto x = load_algebra(over);
    t = op == "comma" ? comma_theory(resolve_theory(refs[0], cwd), x) : module_theory(resolve_theory(refs[0], cwd), x);
  }
  const std::string text = t.print();
  std::cout << text;
  write_json(json_path, Json{{"name", t.name}, {"source", text}});
  return kOk;
}

int run_accept(const std::string& json_path) {
  Json j = Json::array();
  bool ok = true;
  acceptance::run_all([&](const acceptance::Criterion& c) {
    std::cout << acceptance::format(c) << std::endl;
    j.push_back({{"criterion", c.id}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    ok = ok && c.passed;
  });
  write_json(json_path, j);
  return ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"aq: André-Quillen (co)homology of finite algebras and modules"};
  app.require_subcommand(1);
  std::string json_path;
  app.add_option("--json", json_path, "write machine-readable output to PATH");
  std::function<int()> action;

  auto add_setting = [](CLI::App* sub, SettingArgs& a) {
    sub->add_option("--theory", a.theory, "gp, ab, mod:Z, mod:Z/m, mod:Z[Z/n] or a .thy file")->capture_default_str();
    sub->add_option("--algebra", a.algebra, ".alg file (groups) or cyclic orders such as 4 or 0,2 (modules)");
    sub->add_option("--over", a.over, "base X (.alg); must equal the algebra");
    sub->add_option("--resolution", a.resolution, "use this .sres instead of the automatic resolution")
        ->check(CLI::ExistingFile);
    sub->add_option("--max-degree", a.range, "highest degree")->capture_default_str();
  };

  auto* check = app.add_subcommand("check", "load and validate a fixture");
  std::string check_path;
  check->add_option("file", check_path, ".thy, .alg, .xmod or .sres")->required();
  check->callback([&] { action = [&] { return run_check(check_path, json_path); }; });

  auto* theory = app.add_subcommand("theory", "theory constructions");
  std::string theory_op, theory_over;
  std::vector<std::string> theory_refs;
  theory->add_option("op", theory_op, "abelianize, comma, module or product")
      ->required()
      ->check(CLI::IsMember({"abelianize", "comma", "module", "product"}));
  theory->add_option("theories", theory_refs, "built-in names or .thy files")->required();
  theory->add_option("--over", theory_over, "X.alg for comma and module");
  theory->callback([&] { action = [&] { return run_theory(theory_op, theory_refs, theory_over, json_path); }; });

  SettingArgs coh_args;
  std::string coh_coeffs, method = "cochain";
  bool coh_classical = false;
  auto* coh = app.add_subcommand("cohomology", "AQ cohomology H^n, n <= max degree");
  add_setting(coh, coh_args);
  coh->add_option("--coeffs", coh_coeffs, ".xmod file or cyclic orders (trivial action)")->required();
  coh->add_option("--method", method)->check(CLI::IsMember({"cochain", "em", "both"}))->capture_default_str();
  coh->add_flag("--classical-indexing", coh_classical, "group cohomology H^n(X; K) instead of AQ degrees");
  coh->callback([&] {
    action = [&] { return run_cohomology(coh_args, coh_coeffs, method, coh_classical, json_path); };
  });

  SettingArgs hom_args;
  std::string hom_coeffs;
  bool hom_classical = false;
  auto* hom = app.add_subcommand("homology", "AQ homology H_n, n <= max degree");
  add_setting(hom, hom_args);
  hom->add_option("--coeffs", hom_coeffs, "cyclic orders (default: absolute homology)");
  hom->add_flag("--classical-indexing", hom_classical, "group homology H_n(X; M)");
  hom->callback([&] { action = [&] { return run_homology(hom_args, hom_coeffs, hom_classical, json_path); }; });

  auto* oracle = app.add_subcommand("oracle", "independent classical computations");
  std::string oracle_kind, oracle_algebra, oracle_coeffs, oracle_ring = "Z";
  std::size_t oracle_degree = 2;
  std::uint64_t budget = Budget::kDefaultSteps;
  oracle->add_option("kind", oracle_kind)->required()->check(CLI::IsMember({"bar", "factor-set", "ext", "tor"}));
  oracle->add_option("--algebra", oracle_algebra, "X.alg (bar, factor-set) or cyclic orders of Y (ext, tor)");
  oracle->add_option("--coeffs", oracle_coeffs, ".xmod or cyclic orders")->required();
  oracle->add_option("--ring", oracle_ring, "Z or Z/m (ext, tor)")->capture_default_str();
  oracle->add_option("--degree", oracle_degree, "highest degree (factor-set: the degree)")->capture_default_str();
  oracle->add_option("--budget", budget, "enumeration step budget")->capture_default_str();
  oracle->callback([&] {
    action = [&] {
      return run_oracle(oracle_kind, oracle_algebra, oracle_coeffs, oracle_ring, oracle_degree, budget, json_path);
    };
  });

  auto* ss = app.add_subcommand("ss", "E2 pages with convergence checks");
  std::string ss_kind, ss_coeffs, variant = "homology";
  SettingArgs ss_args;
  ss->add_option("kind", ss_kind)->required()->check(CLI::IsMember({"uct", "tor", "rev-adams"}));
  add_setting(ss, ss_args);
  ss->add_option("--coeffs", ss_coeffs, "cyclic orders")->required();
  ss->add_option("--variant", variant, "rev-adams: homology or cohomology")
      ->check(CLI::IsMember({"homology", "cohomology"}))
      ->capture_default_str();
  ss->callback([&] { action = [&] { return run_ss(ss_kind, ss_args, ss_coeffs, variant, json_path); }; });

  auto* accept = app.add_subcommand("accept", "run the acceptance suite");
  accept->callback([&] { action = [&] { return run_accept(json_path); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  try {
    return action();
  } catch (const BudgetExhausted& e) {
    std::cerr << "aq: " << e.what() << "\n";
    return kBudget;
  } catch (const UsageError& e) {
    std::cerr << "aq: " << e.what() << "\n";
    return kUsage;
  } catch (const FixtureError& e) {
    std::cerr << "aq: " << e.what() << "\n";
    return kUsage;
  } catch (const SyntaxError& e) {
    std::cerr << "aq: " << e.what() << "\n";
    return kUsage;
  } catch (const CheckFailed& e) {
    std::cerr << "aq: check failed: " << e.what() << "\n";
    return kFailed;
  } catch (const Error& e) {
    std::cerr << "aq: " << e.what() << "\n";
    return kFailed;
  }
}
