#include "aq/spectral.hpp"

#include "aq/error.hpp"
#include "aq/random_fixtures.hpp"

namespace aq {

namespace {

bool same_ring(const Ring& a, const Ring& b) {
  if (a.kind() != b.kind() || a.characteristic() != b.characteristic() || a.dim() != b.dim()) return false;
  return a.kind() != Ring::Kind::GroupRing || a.group().mul == b.group().mul;
}

std::vector<Int> cyclic_orders(const FGAbelianGroup& g) {
  std::vector<Int> out = g.torsion;
  out.insert(out.end(), static_cast<std::size_t>(g.rank), 0);
  return out;
}

std::size_t cyclic_count(const FGAbelianGroup& g) { return g.torsion.size() + static_cast<std::size_t>(g.rank); }

// Ext^s_R(m, g) or Tor_s^R(m, g) for s <= top.
std::vector<FGAbelianGroup> derived(const Module& m, const Module& g, std::size_t top, bool ext) {
  const FreeResolution p = resolve(m, top + 1);
  std::vector<FGAbelianGroup> out;
  if (ext) {
    const CochainComplex c = hom_complex(p, g);
    for (std::size_t s = 0; s <= top; ++s) out.push_back(c.cohomology(static_cast<int>(s)));
  } else {
    const ChainComplex c = tensor_complex(p, g);
    for (std::size_t s = 0; s <= top; ++s) out.push_back(c.homology(static_cast<int>(s)));
  }
  return out;
}

bool is_cohomological(PageKind k) {
  return k == PageKind::UniversalCoefficients || k == PageKind::ReverseAdamsCohomology;
}

const FGAbelianGroup* cell(const SpectralPage& p, long s, long t) {
  if (s < 0 || t < 0 || static_cast<std::size_t>(s) >= p.grid.size()) return nullptr;
  const auto& col = p.grid[static_cast<std::size_t>(s)];
  return static_cast<std::size_t>(t) < col.size() ? &col[static_cast<std::size_t>(t)] : nullptr;
}

bool nonzero(const SpectralPage& p, long s, long t) {
  const auto* c = cell(p, s, t);
  return c && !c->is_zero();
}

SpectralPage build(PageKind kind, const GradedModule& h, const Module& g, std::size_t range) {
  if (!h.ring || !same_ring(*h.ring, *g.ring))
    throw Error("graded module and coefficients are over different rings");
  SpectralPage page;
  page.kind = kind;
  page.ring = h.ring;
  page.quadrant = kind == PageKind::ReverseAdamsCohomology ? "second" : "first";
  page.range = range;
  const bool ext = is_cohomological(kind);
  page.grid.assign(range + 2, std::vector<FGAbelianGroup>(range + 1));
  for (std::size_t t = 0; t <= range; ++t) {
    const Module* m = h.at(t);
    if (!m || m->invariants().is_zero()) continue;
    const auto vals = derived(*m, g, range + 1, ext);
    for (std::size_t s = 0; s <= range + 1; ++s) page.grid[s][t] = vals[s];
  }
  // d2 is recorded where one end vanishes or lies outside the quadrant
  const long ds = ext ? 2 : -2, dt = ext ? -1 : 1;
  for (std::size_t s = 0; s < page.grid.size(); ++s)
    for (std::size_t t = 0; t <= range; ++t) {
      const long s2 = static_cast<long>(s) + ds, t2 = static_cast<long>(t) + dt;
      const auto* target = cell(page, s2, t2);
      const bool outside = s2 < 0 || t2 < 0;
      if (!target && !outside) continue;
      const auto& source = page.grid[s][t];
      if (!outside && !source.is_zero() && !target->is_zero()) {
        page.d2_determined = false;
        continue;
      }
      page.d2[{s, t}] = Matrix(outside ? 0 : cyclic_count(*target), cyclic_count(source));
    }
  return page;
}

bool collapsed_at(const SpectralPage& p, std::size_t n) {
  const bool coh = p.cohomological();
  const long total = static_cast<long>(n);
  for (long s = 0; s <= total; ++s) {
    const long t = total - s;
    if (!nonzero(p, s, t)) continue;
    // r runs over every page where an in- or outgoing differential can land in the quadrant
    for (long r = 2; r <= total + 1; ++r) {
      const long out_s = coh ? s + r : s - r, out_t = coh ? t - r + 1 : t + r - 1;
      const long in_s = coh ? s - r : s + r, in_t = coh ? t + r - 1 : t - r + 1;
      if (out_s >= 0 && out_t >= 0 && (!cell(p, out_s, out_t) || nonzero(p, out_s, out_t))) return false;
      if (in_s >= 0 && in_t >= 0 && (!cell(p, in_s, in_t) || nonzero(p, in_s, in_t))) return false;
    }
  }
  return true;
}

Module as_z_module(const FGAbelianGroup& g) { return Module::trivial(Ring::integers(), cyclic_orders(g)); }

const GroupResolution* group_of(const Resolution& r) { return std::get_if<GroupResolution>(&r); }

// G as coefficients for r: trivial action over Z[X] for group resolutions.
Module coefficients_for(const Resolution& r, const Module& g) {
  if (!group_of(r)) return g;
  if (g.ring->kind() != Ring::Kind::Integers) throw Error("group pages take coefficients over Z");
  return Module::trivial(coefficient_ring(r), cyclic_orders(g.invariants()));
}

}  // namespace

GradedModule GradedModule::concentrated(const Module& m, std::size_t degree) {
  GradedModule h;
  h.ring = m.ring;
  h.degrees.assign(degree + 1, Module::zero(m.ring));
  h.degrees[degree] = m;
  return h;
}

bool GradedModule::is_zero() const {
  for (const auto& m : degrees)
    if (!m.invariants().is_zero()) return false;
  return true;
}

GradedModule homology_graded(const Resolution& r, std::size_t range) {
  GradedModule h;
  if (group_of(r)) {
    h.ring = Ring::integers();
    for (const auto& g : homology(r, range)) h.degrees.push_back(as_z_module(g));
  } else {
    h.ring = coefficient_ring(r);
    h.degrees = homology_over(r, range);
  }
  return h;
}

std::string to_string(PageKind k) {
  switch (k) {
    case PageKind::UniversalCoefficients: return "uct";
    case PageKind::Tor: return "tor";
    case PageKind::ReverseAdamsHomology: return "rev-adams-homology";
    case PageKind::ReverseAdamsCohomology: return "rev-adams-cohomology";
  }
  return "";
}

std::string to_string(Agreement a) {
  switch (a) {
    case Agreement::Agrees: return "agrees";
    case Agreement::Disagrees: return "disagrees";
    case Agreement::Undetermined: return "undetermined";
  }
  return "";
}

bool SpectralPage::cohomological() const { return is_cohomological(kind); }

bool SpectralPage::d2_squares_to_zero() const {
  const long ds = cohomological() ? 2 : -2, dt = cohomological() ? -1 : 1;
  for (const auto& [key, first] : d2) {
    const long s2 = static_cast<long>(key.first) + ds, t2 = static_cast<long>(key.second) + dt;
    if (s2 < 0 || t2 < 0) continue;
    const auto next = d2.find({static_cast<std::size_t>(s2), static_cast<std::size_t>(t2)});
    if (next == d2.end() || next->second.cols() != first.rows()) continue;
    const Matrix sq = next->second * first;
    const auto* target = cell(*this, s2 + ds, t2 + dt);
    if (!target) continue;
    const PresentedGroup tg = PresentedGroup::cyclic_sum(cyclic_orders(*target));
    for (std::size_t j = 0; j < sq.cols(); ++j)
      if (!tg.contains_zero(sq.column(j))) return false;
  }
  return true;
}

bool SpectralPage::consistent() const {
  for (const auto& c : convergence)
    if (c.agreement == Agreement::Disagrees) return false;
  for (const auto& q : sequences)
    if (!q.exact) return false;
  return true;
}

SpectralPage uct_e2(const GradedModule& h, const Module& g, std::size_t range) {
  return build(PageKind::UniversalCoefficients, h, g, range);
}

SpectralPage tor_e2(const GradedModule& h, const Module& g, std::size_t range) {
  return build(PageKind::Tor, h, g, range);
}

SpectralPage reverse_adams_e2(const GradedModule& pi, const Module& g, Variant v, std::size_t range) {
  return build(v == Variant::Homology ? PageKind::ReverseAdamsHomology : PageKind::ReverseAdamsCohomology, pi, g,
               range);
}

void compare_with(SpectralPage& page, const std::vector<FGAbelianGroup>& direct) {
  page.convergence.clear();
  page.sequences.clear();
  for (std::size_t n = 0; n <= page.range && n < direct.size(); ++n) {
    ConvergenceEntry e;
    e.total = n;
    e.target = direct[n];
    for (std::size_t s = 0; s <= n; ++s) e.e2_total = e.e2_total.direct_sum(page.grid[s][n - s]);
    e.collapsed = collapsed_at(page, n);
    const bool finite = e.target.is_finite() && e.e2_total.is_finite();
    if (e.collapsed) {
      const bool ok = finite ? e.target.order() == e.e2_total.order() : e.target.rank == e.e2_total.rank;
      e.agreement = ok ? Agreement::Agrees : Agreement::Disagrees;
      e.detail = std::string(finite ? "orders " : "ranks ") + (ok ? "match" : "differ");
    } else {
      // E-infinity is a subquotient of E2
      const bool bound = finite ? e.e2_total.order() % e.target.order() == 0 : e.target.rank <= e.e2_total.rank;
      e.agreement = bound ? Agreement::Undetermined : Agreement::Disagrees;
      e.detail = bound ? "differentials not determined; E2 bounds the target" : "target exceeds E2";
    }
    page.convergence.push_back(e);
  }
  // over Z only two columns survive and the sequences split
  bool over_z = page.ring && page.ring->kind() == Ring::Kind::Integers;
  for (std::size_t s = 2; s < page.grid.size(); ++s)
    for (const auto& g : page.grid[s]) over_z = over_z && g.is_zero();
  if (!over_z) return;
  for (std::size_t n = 0; n <= page.range && n < direct.size(); ++n) {
    ShortExactCheck q;
    q.total = n;
    q.middle = direct[n];
    const FGAbelianGroup zeroth = page.grid[0][n];
    const FGAbelianGroup first = n > 0 ? page.grid[1][n - 1] : FGAbelianGroup::zero();
    // cohomology: Ext^1 is the sub, Hom the quotient; homology the other way round
    q.sub = page.cohomological() ? first : zeroth;
    q.quotient = page.cohomological() ? zeroth : first;
    q.exact = q.middle == q.sub.direct_sum(q.quotient);
    page.sequences.push_back(q);
  }
}

SpectralPage uct_e2(const Resolution& r, const Module& g, std::size_t range) {
  const Module k = coefficients_for(r, g);
  SpectralPage page = uct_e2(homology_graded(r, range), g, range);
  compare_with(page, cohomology(r, k, range));
  return page;
}

SpectralPage tor_e2(const Resolution& r, const Module& g, std::size_t range) {
  const Module k = coefficients_for(r, g);
  SpectralPage page = tor_e2(homology_graded(r, range), g, range);
  compare_with(page, homology_with_coeffs(r, k, range));
  return page;
}

SpectralPage reverse_adams_e2(const Resolution& r, const Module& g, Variant v, std::size_t range) {
  const auto* m = std::get_if<ModuleResolution>(&r);
  if (!m) throw Unsupported("reverse Adams pages need an abelian setting; groups are not supported");
  SpectralPage page = reverse_adams_e2(GradedModule::concentrated(m->target), g, v, range);
  compare_with(page, v == Variant::Homology ? homology_with_coeffs(r, g, range) : cohomology(r, g, range));
  return page;
}

bool CheckReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return !checks.empty();
}

CheckReport bicomplex_checks(std::size_t fixtures, std::uint64_t seed, std::size_t truncation) {
  if (truncation < 1) throw Error("bicomplex checks need truncation >= 1");
  const std::size_t range = truncation - 1;
  Rng rng(seed);
  const RingPtr z = Ring::integers();
  CheckReport report;
  auto run = [&](const std::string& name, auto&& one) {
    CertificateCheck c{name, true, ""};
    for (std::size_t i = 0; i < fixtures && c.passed; ++i)
      if (auto failure = one(i)) {
        c.passed = false;
        c.detail = "fixture " + std::to_string(i) + ": " + *failure;
      }
    if (c.passed) c.detail = std::to_string(fixtures) + " fixtures";
    report.checks.push_back(c);
  };
  using Failure = std::optional<std::string>;

  run("diagonal E2 collapse", [&](std::size_t) -> Failure {
    const auto v = external_tensor(SimplicialModule::constant(Module::free(z, 1), truncation),
                                   random_simplicial(rng, 2, truncation));
    const Grid e2 = e2_page(v, range);
    const auto pi = moore_homotopy(diagonal(v), range);
    for (std::size_t t = 0; t <= range; ++t) {
      if (e2[0][t] != pi[t]) return "E2 row 0 at " + std::to_string(t) + " is " + e2[0][t].to_string();
      for (std::size_t s = 1; s <= range; ++s)
        if (!e2[s][t].is_zero()) return "E2 off the row at (" + std::to_string(s) + ", " + std::to_string(t) + ")";
    }
    return std::nullopt;
  });

  run("Eilenberg-Zilber", [&](std::size_t) -> Failure {
    const auto v = random_bisimplicial(rng, 2, truncation);
    const ChainComplex tot = total_complex(v);
    const auto pi = moore_homotopy(diagonal(v), range);
    for (std::size_t n = 0; n <= range; ++n) {
      const auto h = tot.homology(static_cast<int>(n));
      if (h != pi[n]) return "degree " + std::to_string(n) + ": total " + h.to_string() + ", diagonal " + pi[n].to_string();
    }
    return std::nullopt;
  });

  const std::vector<Int> coefficient_orders{0, 2, 3};
  run("Tot/diag adjointness", [&](std::size_t i) -> Failure {
    const auto v = random_bisimplicial(rng, 2, truncation);
    const Module g = Module::trivial(z, {coefficient_orders[i % coefficient_orders.size()]});
    const CochainComplex tot = total_complex(hom_bisimplicial(v, g.group));
    const auto direct = cohomotopy(hom_cosimplicial(diagonal(v), g), range);
    for (std::size_t n = 0; n <= range; ++n) {
      const auto h = tot.cohomology(static_cast<int>(n));
      if (h != direct[n])
        return "degree " + std::to_string(n) + ": Tot " + h.to_string() + ", Hom(diag) " + direct[n].to_string();
    }
    return std::nullopt;
  });
  return report;
}

}  // namespace aq
