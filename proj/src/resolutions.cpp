#include "aq/resolutions.hpp"

#include <map>
#include <set>

#include "aq/error.hpp"

namespace aq {

namespace {

template <typename... F>
struct overloaded : F... {
  using F::operator()...;
};
template <typename... F>
overloaded(F...) -> overloaded<F...>;

CertificateCheck check(std::string name, const std::optional<std::string>& failure) {
  return {std::move(name), !failure, failure.value_or("")};
}

std::optional<std::string> module_pi0_failure(const ModuleResolution& r) {
  const SimplicialModule& v = r.object;
  const Module& l0 = v.levels.at(0);
  if (!is_module_hom(l0, r.target, r.augmentation)) return "augmentation is not a module map";
  Matrix rel = l0.group.relations;
  if (v.truncation() >= 1) rel = hconcat(rel, v.d(1, 0) - v.d(1, 1));
  if (!is_isomorphism(PresentedGroup(l0.gens(), rel), r.target.group, r.augmentation))
    return "augmentation does not induce an isomorphism on pi_0";
  return std::nullopt;
}

std::optional<std::string> free_levels_failure(const FreeSimplicialGroup& v) {
  for (std::size_t n = 0; n <= v.truncation(); ++n) {
    const std::set<std::string> names(v.generators[n].begin(), v.generators[n].end());
    if (names.size() != v.generators[n].size()) return "repeated generator at level " + std::to_string(n);
  }
  return std::nullopt;
}

std::optional<std::string> free_levels_failure(const SimplicialModule& v) {
  for (std::size_t n = 0; n <= v.truncation(); ++n)
    if (!free_rank(v.levels[n])) return "level " + std::to_string(n) + " is not free";
  return std::nullopt;
}

std::optional<std::string> acyclicity_failure(const SimplicialModule& a, std::size_t range,
                                              const FGAbelianGroup& expected0) {
  if (range + 1 > a.truncation()) return "truncation " + std::to_string(a.truncation()) + " is below range + 1";
  const auto h = moore_homotopy(a, range);
  if (!(h[0] == expected0)) return "pi_0 is " + h[0].to_string() + ", expected " + expected0.to_string();
  for (std::size_t k = 1; k <= range; ++k)
    if (!h[k].is_zero()) return "pi_" + std::to_string(k) + " is " + h[k].to_string();
  return std::nullopt;
}

// Cosets of a subgroup b of an elementwise-enumerated group z of functions.
FGAbelianGroup quotient_group(const std::vector<std::vector<int>>& z, const std::set<std::vector<int>>& b,
                              const XModule& k) {
  auto add = [&](const std::vector<int>& u, const std::vector<int>& v) {
    std::vector<int> w(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) w[i] = k.add(u[i], v[i]);
    return w;
  };
  std::map<std::vector<int>, int> coset;
  std::vector<std::vector<int>> reps;
  auto rep_of = [&](const std::vector<int>& f) {
    std::vector<int> best;
    for (const auto& x : b) {
      auto y = add(f, x);
      if (best.empty() || y < best) best = std::move(y);
    }
    return best;
  };
  for (const auto& f : z) {
    auto r = rep_of(f);
    if (coset.emplace(r, static_cast<int>(reps.size())).second) reps.push_back(r);
  }
  std::vector<std::vector<int>> table(reps.size(), std::vector<int>(reps.size()));
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = 0; j < reps.size(); ++j) table[i][j] = coset.at(rep_of(add(reps[i], reps[j])));
  const std::vector<int> zero(z.empty() ? 0 : z.front().size(), k.zero());
  return FGAbelianGroup::from_addition_table(table, coset.at(rep_of(zero)));
}

}  // namespace

ModuleResolution resolve_module(const Module& y, std::size_t length, std::size_t truncation) {
  if (length > kMaxResolutionLength) throw Error("resolution length exceeds " + std::to_string(kMaxResolutionLength));
  const FreeResolution p = resolve(y, length);
  ModuleComplex c;
  c.ring = y.ring;
  for (std::size_t k = 0; k <= p.length(); ++k) c.modules.push_back(p.level(k));
  c.d = p.differentials;
  return {y, dold_kan(c, truncation), p.augmentation};
}

GroupResolution loop_group_resolution(const FiniteAlgebra& x, std::size_t truncation) {
  const GroupTable g = x.group_table();
  return {x, kan_loop_group(g, truncation), kan_augmentation(g)};
}

std::size_t truncation(const Resolution& r) {
  return std::visit(overloaded{[](const GroupResolution& g) { return g.object.truncation(); },
                               [](const ModuleResolution& m) { return m.object.truncation(); }},
                    r);
}

SimplicialModule abelianized(const Resolution& r) {
  return std::visit(overloaded{[](const GroupResolution& g) {
                                 return abelianize_over(g.object, g.augmentation, g.x.group_table());
                               },
                               [](const ModuleResolution& m) { return m.object; }},
                    r);
}

RingPtr coefficient_ring(const Resolution& r) {
  return std::visit(overloaded{[](const GroupResolution& g) { return Ring::group_ring(g.x.group_table()); },
                               [](const ModuleResolution& m) { return m.target.ring; }},
                    r);
}

bool ResolutionCertificate::valid() const {
  if (checks.size() != 4) return false;
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::optional<std::string> ResolutionCertificate::first_failure() const {
  for (const auto& c : checks)
    if (!c.passed) return c.name + ": " + c.detail;
  return std::nullopt;
}

ResolutionCertificate check_certificate(const Resolution& r, std::size_t range) {
  ResolutionCertificate cert;
  cert.range = range;
  if (const auto* g = std::get_if<GroupResolution>(&r)) {
    const GroupTable x = g->x.group_table();
    cert.checks.push_back(check("simplicial identities", g->object.identity_failure()));
    cert.checks.push_back(check("free levels", free_levels_failure(g->object)));
    cert.checks.push_back(check("pi_0", pi0_failure(g->object, g->augmentation, x)));
    std::optional<std::string> acyclic;
    if (cert.checks[0].passed && cert.checks[1].passed)
      acyclic = acyclicity_failure(abelianized(r), range, FGAbelianGroup::free(static_cast<Int>(x.order()) - 1));
    else
      acyclic = "not checked on a malformed object";
    cert.checks.push_back(check("abelianized acyclicity", acyclic));
  } else {
    const auto& m = std::get<ModuleResolution>(r);
    cert.checks.push_back(check("simplicial identities", m.object.identity_failure()));
    cert.checks.push_back(check("free levels", free_levels_failure(m.object)));
    cert.checks.push_back(check("pi_0", module_pi0_failure(m)));
    cert.checks.push_back(check("abelianized acyclicity", acyclicity_failure(m.object, range, m.target.invariants())));
  }
  return cert;
}

std::vector<FGAbelianGroup> bar_resolution_group(const XModule& k, std::size_t degree, Budget* budget) {
  return bar_resolution_group(k.group(), k.module(), degree, budget);
}

std::vector<FGAbelianGroup> bar_resolution_group(const GroupTable& g, const Module& m, std::size_t degree,
                                                 Budget* budget) {
  if (m.ring->kind() != Ring::Kind::GroupRing || m.ring->dim() != g.order())
    throw Error("bar complex coefficients must be a module over the group ring");
  const std::size_t gk = m.gens();
  std::vector<int> nonunit;
  for (std::size_t x = 0; x < g.order(); ++x)
    if (static_cast<int>(x) != g.identity) nonunit.push_back(static_cast<int>(x));
  const std::size_t q = nonunit.size();
  std::vector<std::size_t> pos(g.order(), 0);
  for (std::size_t i = 0; i < q; ++i) pos[static_cast<std::size_t>(nonunit[i])] = i;

  // tuples of length n in base q, first entry most significant
  auto count = [&](std::size_t n) {
    std::size_t c = 1;
    for (std::size_t i = 0; i < n; ++i) c *= q;
    return c;
  };

  CochainComplex c;
  for (std::size_t n = 0; n <= degree + 1; ++n) {
    const std::size_t cells = count(n);
    if (budget) budget->spend(cells);
    c.groups.push_back(m.group.power(cells));
  }
  for (std::size_t n = 0; n <= degree; ++n) {
    const std::size_t src = count(n), dst = count(n + 1);
    Matrix d(dst * gk, src * gk);
    auto add_block = [&](std::size_t row, std::size_t col, const Matrix& b, Int sign) {
      for (std::size_t r = 0; r < gk; ++r)
        for (std::size_t s = 0; s < gk; ++s) d(row * gk + r, col * gk + s) += sign * b(r, s);
    };
    const Matrix id = Matrix::identity(gk);
    std::vector<int> t(n + 1);
    for (std::size_t cell = 0; cell < dst; ++cell) {
      std::size_t rest = cell;
      for (std::size_t i = n + 1; i-- > 0;) {
        t[i] = nonunit[rest % q];
        rest /= q;
      }
      auto index = [&](const std::vector<int>& u) {
        std::size_t idx = 0;
        for (int x : u) idx = idx * q + pos[static_cast<std::size_t>(x)];
        return idx;
      };
      add_block(cell, index(std::vector<int>(t.begin() + 1, t.end())), m.action[static_cast<std::size_t>(t[0])], 1);
      for (std::size_t i = 0; i < n; ++i) {
        const int prod = g(t[i], t[i + 1]);
        if (prod == g.identity) continue;
        std::vector<int> u(t.begin(), t.begin() + static_cast<long>(i));
        u.push_back(prod);
        u.insert(u.end(), t.begin() + static_cast<long>(i) + 2, t.end());
        add_block(cell, index(u), id, (i % 2 == 0) ? -1 : 1);
      }
      add_block(cell, index(std::vector<int>(t.begin(), t.end() - 1)), id, (n % 2 == 0) ? -1 : 1);
    }
    c.differentials.push_back(d);
  }
  std::vector<FGAbelianGroup> out;
  for (std::size_t n = 0; n <= degree; ++n) out.push_back(c.cohomology(static_cast<int>(n)));
  return out;
}

FactorSetResult factor_set_cohomology(const XModule& k, int n, Budget* budget) {
  if (n != 1 && n != 2) throw Error("factor sets are implemented for degrees 1 and 2");
  const GroupTable& g = k.group();
  const std::size_t order = g.order(), ks = k.size();
  const auto e = static_cast<std::size_t>(g.identity);
  const std::size_t cells = n == 1 ? order : order * order;

  FactorSetResult out;
  double full = 1;
  for (std::size_t i = 0; i < cells; ++i) full *= static_cast<double>(ks);
  out.normalized = full > double(1 << 20);

  // free positions of a cochain of degree n (or n-1 for coboundaries)
  auto free_cells = [&](int deg) {
    std::vector<std::size_t> out_cells;
    const std::size_t total = deg == 0 ? 1 : deg == 1 ? order : order * order;
    for (std::size_t c = 0; c < total; ++c) {
      bool unit = false;
      if (out.normalized && deg == 1) unit = c == e;
      if (out.normalized && deg == 2) unit = c / order == e || c % order == e;
      if (!unit) out_cells.push_back(c);
    }
    return out_cells;
  };
  auto for_each = [&](int deg, auto&& body) {
    const auto pos = free_cells(deg);
    const std::size_t total = deg == 0 ? 1 : deg == 1 ? order : order * order;
    std::vector<int> f(total, k.zero());
    for (std::size_t c : pos) f[c] = 0;
    std::vector<std::size_t> digit(pos.size(), 0);
    while (true) {
      if (budget) budget->spend();
      body(f);
      std::size_t i = 0;
      for (; i < pos.size(); ++i) {
        if (++digit[i] < ks) {
          f[pos[i]] = static_cast<int>(digit[i]);
          break;
        }
        digit[i] = 0;
        f[pos[i]] = 0;
      }
      if (i == pos.size()) break;
    }
  };
  auto act = [&](std::size_t x, int v) { return k.act(static_cast<int>(x), v); };
  auto sub = [&](int a, int b) { return k.add(a, k.neg(b)); };

  std::vector<std::vector<int>> cocycles;
  std::set<std::vector<int>> coboundaries;
  if (n == 1) {
    for_each(1, [&](const std::vector<int>& f) {
      ++out.candidates;
      for (std::size_t x = 0; x < order; ++x)
        for (std::size_t y = 0; y < order; ++y)
          if (f[static_cast<std::size_t>(g(static_cast<int>(x), static_cast<int>(y)))] != k.add(f[x], act(x, f[y])))
            return;
      cocycles.push_back(f);
    });
    for_each(0, [&](const std::vector<int>& h) {
      std::vector<int> d(order);
      for (std::size_t x = 0; x < order; ++x) d[x] = sub(act(x, h[0]), h[0]);
      coboundaries.insert(d);
    });
  } else {
    auto at = [&](const std::vector<int>& f, int x, int y) {
      return f[static_cast<std::size_t>(x) * order + static_cast<std::size_t>(y)];
    };
    for_each(2, [&](const std::vector<int>& f) {
      ++out.candidates;
      for (std::size_t x = 0; x < order; ++x)
        for (std::size_t y = 0; y < order; ++y)
          for (std::size_t z = 0; z < order; ++z) {
            const int xi = static_cast<int>(x), yi = static_cast<int>(y), zi = static_cast<int>(z);
            const int lhs = k.add(act(x, at(f, yi, zi)), at(f, xi, g(yi, zi)));
            const int rhs = k.add(at(f, g(xi, yi), zi), at(f, xi, yi));
            if (lhs != rhs) return;
          }
      cocycles.push_back(f);
    });
    for_each(1, [&](const std::vector<int>& h) {
      std::vector<int> d(order * order);
      for (std::size_t x = 0; x < order; ++x)
        for (std::size_t y = 0; y < order; ++y) {
          const auto xy = static_cast<std::size_t>(g(static_cast<int>(x), static_cast<int>(y)));
          d[x * order + y] = k.add(sub(act(x, h[y]), h[xy]), h[x]);
        }
      coboundaries.insert(d);
    });
  }
  out.cocycles = cocycles.size();
  out.coboundaries = coboundaries.size();
  const std::set<std::vector<int>> zset(cocycles.begin(), cocycles.end());
  for (const auto& b : coboundaries)
    if (!zset.count(b)) throw CheckFailed("factor-set coboundary is not a cocycle");
  out.group = quotient_group(cocycles, coboundaries, k);
  return out;
}

}  // namespace aq
