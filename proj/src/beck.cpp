#include "aq/beck.hpp"

#include <algorithm>
#include <functional>

namespace aq {

namespace {

std::string coord_label(const Vector& c) {
  if (c.empty()) return "0";
  if (c.size() == 1) return std::to_string(c[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + ")";
}

bool equal_mod(const PresentedGroup& g, const Matrix& a, const Matrix& b) {
  const Matrix d = a - b;
  for (std::size_t j = 0; j < d.cols(); ++j)
    if (!g.contains_zero(d.column(j))) return false;
  return true;
}

GroupOps base_ops(const FiniteAlgebra& x) {
  const auto& t = x.theory();
  auto it = t.group_witness.find(x.main_sort());
  if (it != t.group_witness.end()) return it->second;
  return validate_group_structure(t).witness.at(x.main_sort());
}

}  // namespace

XModule::XModule(FiniteAlgebra base, Module m) : base_(std::move(base)), module_(std::move(m)) {
  group_ = base_.group_table();
  if (module_.ring->kind() != Ring::Kind::GroupRing || module_.ring->dim() != group_.order())
    throw Error("X-module must be a module over the group ring of its base");
  if (!module_.is_valid()) throw CheckFailed("X-module action violates the module axioms");
  build_tables();
}

XModule XModule::from_generator_actions(FiniteAlgebra base, PresentedGroup k,
                                        const std::map<std::string, Matrix>& actions) {
  const GroupTable g = base.group_table();
  const std::size_t n = g.order();
  std::vector<std::optional<Matrix>> act(n);
  act[static_cast<std::size_t>(g.identity)] = Matrix::identity(k.gens);
  std::vector<std::pair<int, Matrix>> gens;
  for (const auto& [label, m] : actions) {
    if (m.rows() != k.gens || m.cols() != k.gens) throw Error("action matrix for " + label + " has the wrong size");
    gens.emplace_back(base.index_of(base.main_sort(), label), m);
  }
  std::vector<int> queue{g.identity};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const int x = queue[q];
    for (const auto& [gi, m] : gens) {
      const int y = g(x, gi);
      const Matrix cand = *act[static_cast<std::size_t>(x)] * m;
      auto& slot = act[static_cast<std::size_t>(y)];
      if (!slot) {
        slot = cand;
        queue.push_back(y);
      } else if (!equal_mod(k, *slot, cand)) {
        throw CheckFailed("action is not compatible with the relations of " + base.name());
      }
    }
  }
  Module m;
  m.ring = Ring::group_ring(g);
  m.group = k;
  for (std::size_t x = 0; x < n; ++x) {
    if (!act[x]) throw Error("action generators do not generate " + base.name());
    m.action.push_back(*act[x]);
  }
  return XModule(std::move(base), std::move(m));
}

XModule XModule::trivial(FiniteAlgebra base, const std::vector<Int>& cyclic_orders) {
  const GroupTable g = base.group_table();
  return XModule(std::move(base), Module::trivial(Ring::group_ring(g), cyclic_orders));
}

void XModule::build_tables() {
  canon_ = canonical_coords(module_.group);
  for (Int m : canon_.moduli)
    if (m == 0) throw Error("X-module must be finite");
  const std::size_t k = canon_.moduli.size();
  Vector cur(k, 0);
  while (true) {
    elements_.push_back(cur);
    std::size_t i = k;
    bool done = true;
    while (i > 0) {
      --i;
      if (++cur[i] < canon_.moduli[i]) {
        done = false;
        break;
      }
      cur[i] = 0;
    }
    if (done) break;
  }
  for (std::size_t e = 0; e < elements_.size(); ++e) {
    index_[elements_[e]] = static_cast<int>(e);
    labels_.push_back(coord_label(elements_[e]));
    lifts_.push_back(canon_.from_canonical * elements_[e]);
  }
  const std::size_t n = elements_.size();
  const std::size_t g = module_.gens();
  add_.assign(n, std::vector<int>(n));
  neg_.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      Vector s = lifts_[a];
      for (std::size_t i = 0; i < g; ++i) s[i] += lifts_[b][i];
      add_[a][b] = index_of(s);
    }
    Vector v = lifts_[a];
    for (auto& x : v) x = -x;
    neg_[a] = index_of(v);
  }
  zero_ = index_of(Vector(g, 0));
  act_.assign(group_.order(), std::vector<int>(n));
  for (std::size_t x = 0; x < group_.order(); ++x)
    for (std::size_t a = 0; a < n; ++a) act_[x][a] = index_of(module_.action[x] * lifts_[a]);
}

int XModule::index_of(const Vector& ambient) const { return index_.at(canon_.reduce(canon_.to_canonical * ambient)); }

int XModule::op_action(const std::string& op, const std::vector<int>& ks, const std::vector<int>& xs) const {
  const GroupOps ops = base_ops(base_);
  if (op == ops.mul) return add(ks.at(0), act(xs.at(0), ks.at(1)));
  if (op == ops.inv) return neg(act(group_.inverse[static_cast<std::size_t>(xs.at(0))], ks.at(0)));
  if (op == ops.unit) return zero_;
  throw Unsupported("no action formula for op '" + op + "'");
}

bool XModule::trivial_action() const {
  for (const auto& row : act_)
    for (std::size_t a = 0; a < row.size(); ++a)
      if (row[a] != static_cast<int>(a)) return false;
  return true;
}

void XModule::validate() const {
  const int n = static_cast<int>(size());
  const int g = static_cast<int>(group_.order());
  for (int k = 0; k < n; ++k) {
    if (act(group_.identity, k) != k) throw CheckFailed("X-module: the unit of X does not act as the identity");
    for (int x = 0; x < g; ++x) {
      for (int y = 0; y < g; ++y)
        if (act(x, act(y, k)) != act(group_(x, y), k)) throw CheckFailed("X-module: composition law fails");
      for (int l = 0; l < n; ++l)
        if (act(x, add(k, l)) != add(act(x, k), act(x, l))) throw CheckFailed("X-module: action is not additive");
    }
  }
}

FiniteAlgebra XModule::to_algebra() const {
  const TheoryPresentation th = module_theory(base_.theory(), base_);
  FiniteAlgebra a(th, "K");
  const std::string s = th.sorts.at(0);
  const GroupOps ops = th.group_witness.at(s);
  a.set_carrier(s, labels_);
  const std::size_t n = size();
  std::vector<int> add(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) add[x * n + y] = add_[x][y];
  a.set_table(ops.mul, add);
  a.set_table(ops.inv, neg_);
  a.set_table(ops.unit, {zero_});
  for (const auto& [label, op] : th.module_actions) {
    const int x = base_.index_of(base_.main_sort(), label);
    a.set_table(op, act_[static_cast<std::size_t>(x)]);
  }
  return a;
}

bool modules_isomorphic(const XModule& a, const XModule& b) {
  if (a.size() != b.size()) return false;
  return find_isomorphism(a.to_algebra(), b.to_algebra()).has_value();
}

SemidirectProduct semidirect_product(const XModule& k) {
  const FiniteAlgebra& x = k.base();
  const GroupTable& g = k.group();
  const GroupOps ops = base_ops(x);
  const std::size_t n = g.order(), m = k.size();
  FiniteAlgebra a(x.theory(), "K:" + x.name());
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) labels.push_back("(" + k.label(static_cast<int>(i)) + "," + g.labels[j] + ")");
  const std::string s = x.main_sort();
  a.set_carrier(s, labels);
  std::vector<int> mul(m * n * m * n), inv(m * n);
  for (std::size_t k1 = 0; k1 < m; ++k1)
    for (std::size_t x1 = 0; x1 < n; ++x1) {
      const std::size_t a1 = k1 * n + x1;
      for (std::size_t k2 = 0; k2 < m; ++k2)
        for (std::size_t x2 = 0; x2 < n; ++x2) {
          const int kk = k.add(static_cast<int>(k1), k.act(static_cast<int>(x1), static_cast<int>(k2)));
          const int xx = g(static_cast<int>(x1), static_cast<int>(x2));
          mul[a1 * m * n + k2 * n + x2] = kk * static_cast<int>(n) + xx;
        }
      const int xi = g.inverse[x1];
      inv[a1] = k.neg(k.act(xi, static_cast<int>(k1))) * static_cast<int>(n) + xi;
    }
  a.set_table(ops.mul, mul);
  a.set_table(ops.inv, inv);
  a.set_table(ops.unit, {k.zero() * static_cast<int>(n) + g.identity});
  a.validate();
  SemidirectProduct sd{a, {}};
  std::vector<int> proj(m * n);
  for (std::size_t i = 0; i < m * n; ++i) proj[i] = static_cast<int>(i % n);
  sd.projection.images[s] = proj;
  if (!is_homomorphism(a, x, sd.projection)) throw CheckFailed("semidirect projection is not a homomorphism");
  return sd;
}

namespace {

struct Kernel {
  XModule module;
  std::vector<int> y_of;  // module element index -> element of Y
};

std::optional<Kernel> kernel_with_embedding(const FiniteAlgebra& y, const FiniteAlgebra& x, const AlgebraMap& p) {
  const GroupTable gy = y.group_table();
  const GroupTable gx = x.group_table();
  const auto& pi = p.images.at(y.main_sort());
  std::vector<int> kern;
  for (int e = 0; e < static_cast<int>(gy.order()); ++e)
    if (pi[static_cast<std::size_t>(e)] == gx.identity) kern.push_back(e);
  for (int a : kern)
    for (int b : kern)
      if (gy(a, b) != gy(b, a)) return std::nullopt;
  const std::size_t n = kern.size();
  auto pos = [&](int e) { return static_cast<std::size_t>(std::find(kern.begin(), kern.end(), e) - kern.begin()); };
  std::vector<Vector> rels;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Vector r(n, 0);
      r[a] += 1;
      r[b] += 1;
      r[pos(gy(kern[a], kern[b]))] -= 1;
      rels.push_back(r);
    }
  Module m;
  m.ring = Ring::group_ring(gx);
  m.group = PresentedGroup(n, from_columns(n, rels));
  for (int xe = 0; xe < static_cast<int>(gx.order()); ++xe) {
    int pre = -1;
    for (int e = 0; e < static_cast<int>(gy.order()) && pre < 0; ++e)
      if (pi[static_cast<std::size_t>(e)] == xe) pre = e;
    if (pre < 0) throw Error("kernel module needs a surjective map");
    Matrix a(n, n);
    for (std::size_t k = 0; k < n; ++k) a(pos(gy(gy(pre, kern[k]), gy.inverse[static_cast<std::size_t>(pre)])), k) = 1;
    m.action.push_back(a);
  }
  Kernel out{XModule(x, m), {}};
  out.y_of.assign(out.module.size(), -1);
  for (std::size_t k = 0; k < n; ++k) {
    Vector e(n, 0);
    e[k] = 1;
    out.y_of[static_cast<std::size_t>(out.module.index_of(e))] = kern[k];
  }
  return out;
}

}  // namespace

std::optional<XModule> kernel_module(const FiniteAlgebra& y, const FiniteAlgebra& x, const AlgebraMap& p) {
  auto k = kernel_with_embedding(y, x, p);
  if (!k) return std::nullopt;
  return k->module;
}

bool is_derivation(const FiniteAlgebra& y, const AlgebraMap& p, const XModule& k, const std::vector<int>& xi) {
  const GroupTable gy = y.group_table();
  const auto& pi = p.images.at(y.main_sort());
  for (int a = 0; a < static_cast<int>(gy.order()); ++a)
    for (int b = 0; b < static_cast<int>(gy.order()); ++b)
      if (xi[static_cast<std::size_t>(gy(a, b))] !=
          k.add(xi[static_cast<std::size_t>(a)], k.act(pi[static_cast<std::size_t>(a)], xi[static_cast<std::size_t>(b)])))
        return false;
  return true;
}

namespace {

void finish_group(DerivationSet& d, const XModule& k) {
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < d.values.size(); ++i) index[d.values[i]] = static_cast<int>(i);
  const std::size_t n = d.values.size();
  d.add.assign(n, std::vector<int>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<int> s(d.values[a].size());
      for (std::size_t i = 0; i < s.size(); ++i) s[i] = k.add(d.values[a][i], d.values[b][i]);
      auto it = index.find(s);
      if (it == index.end()) throw CheckFailed("derivations are not closed under addition");
      d.add[a][b] = it->second;
    }
  const std::vector<int> zero(n ? d.values[0].size() : 0, k.zero());
  auto it = index.find(zero);
  if (it == index.end()) throw CheckFailed("the zero function is not a derivation");
  d.zero = it->second;
  d.group = FGAbelianGroup::from_addition_table(d.add, d.zero);
}

}  // namespace

DerivationSet derivations(const FiniteAlgebra& y, const AlgebraMap& p, const XModule& k, Budget* budget) {
  Budget local;
  if (!budget) budget = &local;
  const GroupTable gy = y.group_table();
  const auto& pi = p.images.at(y.main_sort());
  const int n = static_cast<int>(gy.order());
  const int m = static_cast<int>(k.size());
  DerivationSet d;
  std::vector<int> xi(static_cast<std::size_t>(n), -1);
  // assign in element order; check every identity whose three entries are known
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      d.values.push_back(xi);
      return;
    }
    for (int v = 0; v < m; ++v) {
      budget->spend();
      xi[static_cast<std::size_t>(i)] = v;
      bool ok = true;
      for (int a = 0; a <= i && ok; ++a)
        for (int b = 0; b <= i && ok; ++b) {
          if (a != i && b != i && gy(a, b) != i) continue;
          const int ab = gy(a, b);
          if (ab > i) continue;
          ok = xi[static_cast<std::size_t>(ab)] ==
               k.add(xi[static_cast<std::size_t>(a)], k.act(pi[static_cast<std::size_t>(a)], xi[static_cast<std::size_t>(b)]));
        }
      if (ok) rec(i + 1);
    }
    xi[static_cast<std::size_t>(i)] = -1;
  };
  rec(0);
  finish_group(d, k);
  return d;
}

DerivationSet derivations_free(const FreeAlgebra& y, const std::vector<int>& p_images, const XModule& k) {
  (void)p_images;
  const std::size_t t = y.generators().size();
  DerivationSet d;
  std::vector<int> cur(t, 0);
  while (true) {
    d.values.push_back(cur);
    std::size_t i = t;
    bool done = true;
    while (i > 0) {
      --i;
      if (++cur[i] < static_cast<int>(k.size())) {
        done = false;
        break;
      }
      cur[i] = 0;
    }
    if (done) break;
  }
  finish_group(d, k);
  return d;
}

HomDerivationWitness hom_as_derivations(const FiniteAlgebra& y, const AlgebraMap& p, const XModule& k, Budget* budget) {
  const auto sd = semidirect_product(k);
  const std::size_t n = k.group().order();
  const auto& pi = p.images.at(y.main_sort());
  const auto ders = derivations(y, p, k, budget);
  std::set<std::vector<int>> der_set(ders.values.begin(), ders.values.end());
  std::set<std::vector<int>> from_homs;
  HomDerivationWitness w;
  for (const auto& f : enumerate_homs(y, sd.algebra, budget)) {
    const auto& img = f.images.at(y.main_sort());
    bool over = true;
    for (std::size_t e = 0; e < img.size() && over; ++e) over = static_cast<int>(img[e] % n) == pi[e];
    if (!over) continue;
    ++w.homs;
    std::vector<int> xi(img.size());
    for (std::size_t e = 0; e < img.size(); ++e) xi[e] = img[e] / static_cast<int>(n);
    from_homs.insert(xi);
  }
  w.derivations = ders.values.size();
  w.bijective = from_homs.size() == w.homs && from_homs == der_set;
  // pointwise sums of homs over X (fixed structure with xi = 0) stay homs over X
  w.group_structures_agree = true;
  for (const auto& a : from_homs)
    for (const auto& b : from_homs) {
      std::vector<int> s(a.size());
      for (std::size_t i = 0; i < s.size(); ++i) s[i] = k.add(a[i], b[i]);
      if (!from_homs.count(s)) w.group_structures_agree = false;
    }
  return w;
}

HomDerivationWitness hom_as_derivations(const FreeAlgebra& y, const std::vector<int>& p_images, const XModule& k,
                                        Budget* budget) {
  const auto sd = semidirect_product(k);
  const std::size_t n = k.group().order();
  const auto ders = derivations_free(y, p_images, k);
  std::set<std::vector<int>> der_set(ders.values.begin(), ders.values.end());
  std::set<std::vector<int>> from_homs;
  HomDerivationWitness w;
  for (const auto& f : enumerate_homs(y, sd.algebra, budget)) {
    bool over = true;
    for (std::size_t i = 0; i < f.size() && over; ++i) over = static_cast<int>(f[i] % n) == p_images[i];
    if (!over) continue;
    ++w.homs;
    std::vector<int> xi(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) xi[i] = f[i] / static_cast<int>(n);
    from_homs.insert(xi);
  }
  w.derivations = ders.values.size();
  w.bijective = from_homs.size() == w.homs && from_homs == der_set;
  w.group_structures_agree = true;
  for (const auto& a : from_homs)
    for (const auto& b : from_homs) {
      std::vector<int> s(a.size());
      for (std::size_t i = 0; i < s.size(); ++i) s[i] = k.add(a[i], b[i]);
      if (!from_homs.count(s)) w.group_structures_agree = false;
    }
  return w;
}

namespace {

std::vector<std::vector<int>> split_sections(const FiniteAlgebra& y, const FiniteAlgebra& x, const AlgebraMap& p,
                                             Budget* budget) {
  const auto& pi = p.images.at(y.main_sort());
  std::vector<std::vector<int>> out;
  for (const auto& s : enumerate_homs(x, y, budget)) {
    const auto& img = s.images.at(x.main_sort());
    bool ok = true;
    for (std::size_t e = 0; e < img.size() && ok; ++e) ok = pi[static_cast<std::size_t>(img[e])] == static_cast<int>(e);
    if (ok) out.push_back(img);
  }
  return out;
}

// All group laws on a finite set with a prescribed identity, as tables over
// positions in the set. Every group of order <= 8 is in the library, so
// transporting each library group along identity-fixing bijections gives
// all of them.
std::vector<std::vector<std::vector<int>>> group_laws(std::size_t n, std::size_t identity_pos) {
  std::set<std::vector<std::vector<int>>> laws;
  if (n > 8) throw Unsupported("group laws are enumerated only on sets of size <= 8");
  for (const auto& h : small_group_library(n)) {
    const GroupTable g = h.group_table();
    if (g.order() != n) continue;
    std::vector<int> sigma(n);  // position -> element of h
    std::vector<int> rest;
    for (int e = 0; e < static_cast<int>(n); ++e)
      if (e != g.identity) rest.push_back(e);
    do {
      std::size_t r = 0;
      for (std::size_t pos = 0; pos < n; ++pos) sigma[pos] = pos == identity_pos ? g.identity : rest[r++];
      std::vector<int> inv(n);
      for (std::size_t pos = 0; pos < n; ++pos) inv[static_cast<std::size_t>(sigma[pos])] = static_cast<int>(pos);
      std::vector<std::vector<int>> t(n, std::vector<int>(n));
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) t[a][b] = inv[static_cast<std::size_t>(g(sigma[a], sigma[b]))];
      laws.insert(t);
    } while (std::next_permutation(rest.begin(), rest.end()));
  }
  return {laws.begin(), laws.end()};
}

}  // namespace

ClassificationResult classify_group_objects(const FiniteAlgebra& y, const FiniteAlgebra& x, const AlgebraMap& p,
                                            Budget* budget) {
  Budget local;
  if (!budget) budget = &local;
  const GroupTable gy = y.group_table();
  const GroupTable gx = x.group_table();
  const auto& pi = p.images.at(y.main_sort());
  const std::size_t ny = gy.order(), nx = gx.order();
  ClassificationResult res;
  res.name = y.name() + "->" + x.name();

  std::vector<std::vector<int>> fiber(nx);
  for (int e = 0; e < static_cast<int>(ny); ++e) fiber[static_cast<std::size_t>(pi[static_cast<std::size_t>(e)])].push_back(e);
  const auto sections = split_sections(y, x, p, budget);

  // brute force: zero section, a group law on each fiber with that section
  // as identity, kept when mul and inverse are homomorphisms
  for (const auto& eta : sections) {
    std::vector<std::vector<std::vector<std::vector<int>>>> laws(nx);
    for (std::size_t xe = 0; xe < nx; ++xe) {
      const auto& f = fiber[xe];
      const auto id = static_cast<std::size_t>(std::find(f.begin(), f.end(), eta[xe]) - f.begin());
      laws[xe] = group_laws(f.size(), id);
    }
    std::vector<int> mul(ny * ny, -1);
    std::vector<bool> chosen(nx, false);
    auto consistent = [&](std::size_t xa) {
      for (std::size_t xb = 0; xb < nx; ++xb) {
        if (!chosen[xb]) continue;
        for (const auto& [u, v] : {std::pair{xa, xb}, std::pair{xb, xa}}) {
          const auto uv = static_cast<std::size_t>(gx(static_cast<int>(u), static_cast<int>(v)));
          if (!chosen[uv]) continue;
          for (int a : fiber[u])
            for (int b : fiber[u])
              for (int c : fiber[v])
                for (int d : fiber[v]) {
                  budget->spend();
                  const int lhs = mul[static_cast<std::size_t>(gy(a, c)) * ny + static_cast<std::size_t>(gy(b, d))];
                  const int rhs = gy(mul[static_cast<std::size_t>(a) * ny + static_cast<std::size_t>(b)],
                                     mul[static_cast<std::size_t>(c) * ny + static_cast<std::size_t>(d)]);
                  if (lhs != rhs) return false;
                }
        }
      }
      return true;
    };
    std::function<void(std::size_t)> rec = [&](std::size_t xe) {
      if (xe == nx) {
        GroupObjectStructure s{eta, mul, std::vector<int>(ny, -1)};
        for (int a = 0; a < static_cast<int>(ny); ++a) {
          const int z = eta[static_cast<std::size_t>(pi[static_cast<std::size_t>(a)])];
          for (int b : fiber[static_cast<std::size_t>(pi[static_cast<std::size_t>(a)])])
            if (mul[static_cast<std::size_t>(a) * ny + static_cast<std::size_t>(b)] == z) s.inverse[static_cast<std::size_t>(a)] = b;
        }
        for (int a = 0; a < static_cast<int>(ny); ++a)
          for (int b = 0; b < static_cast<int>(ny); ++b)
            if (s.inverse[static_cast<std::size_t>(gy(a, b))] !=
                gy(s.inverse[static_cast<std::size_t>(a)], s.inverse[static_cast<std::size_t>(b)]))
              return;
        res.brute_force.insert(std::move(s));
        return;
      }
      const auto& f = fiber[xe];
      for (const auto& law : laws[xe]) {
        for (std::size_t a = 0; a < f.size(); ++a)
          for (std::size_t b = 0; b < f.size(); ++b)
            mul[static_cast<std::size_t>(f[a]) * ny + static_cast<std::size_t>(f[b])] = f[law[a][b]];
        chosen[xe] = true;
        if (consistent(xe)) rec(xe + 1);
        chosen[xe] = false;
      }
      for (int a : f)
        for (int b : f) mul[static_cast<std::size_t>(a) * ny + static_cast<std::size_t>(b)] = -1;
    };
    rec(0);
  }

  // formula side: transport (k + k' + xi(x), x), (-xi(x), x), (-k - 2 xi(x), x)
  // along phi(k, x) = k s(x) for each section s and derivation xi
  auto kern = kernel_with_embedding(y, x, p);
  if (!kern) return res;
  res.kernel = kern->module.invariants();
  const XModule& k = kern->module;
  AlgebraMap id;
  id.images[x.main_sort()].resize(nx);
  for (std::size_t e = 0; e < nx; ++e) id.images[x.main_sort()][e] = static_cast<int>(e);
  const auto ders = derivations(x, id, k, budget);
  const std::size_t nk = k.size();
  for (const auto& s : sections) {
    std::vector<int> phi(nk * nx);
    std::vector<std::pair<int, int>> phi_inv(ny);
    for (std::size_t kk = 0; kk < nk; ++kk)
      for (std::size_t xe = 0; xe < nx; ++xe) {
        const int v = gy(kern->y_of[kk], s[xe]);
        phi[kk * nx + xe] = v;
        phi_inv[static_cast<std::size_t>(v)] = {static_cast<int>(kk), static_cast<int>(xe)};
      }
    for (const auto& xi : ders.values) {
      GroupObjectStructure st{std::vector<int>(nx), std::vector<int>(ny * ny, -1), std::vector<int>(ny)};
      for (std::size_t xe = 0; xe < nx; ++xe)
        st.zero[xe] = phi[static_cast<std::size_t>(k.neg(xi[xe])) * nx + xe];
      for (std::size_t a = 0; a < ny; ++a) {
        const auto [ka, xa] = phi_inv[a];
        const int xiv = xi[static_cast<std::size_t>(xa)];
        st.inverse[a] = phi[static_cast<std::size_t>(k.neg(k.add(ka, k.add(xiv, xiv)))) * nx + static_cast<std::size_t>(xa)];
        for (std::size_t b = 0; b < ny; ++b) {
          const auto [kb, xb] = phi_inv[b];
          if (xb != xa) continue;
          st.mul[a * ny + b] = phi[static_cast<std::size_t>(k.add(k.add(ka, kb), xiv)) * nx + static_cast<std::size_t>(xa)];
        }
      }
      res.from_formulas.insert(std::move(st));
    }
  }
  return res;
}

namespace {

GroupTable table_from(std::vector<std::string> labels, const std::function<int(int, int)>& mul) {
  GroupTable g;
  g.labels = std::move(labels);
  const int n = static_cast<int>(g.labels.size());
  g.mul.assign(g.labels.size(), std::vector<int>(g.labels.size()));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = mul(a, b);
  g.complete();
  return g;
}

GroupTable product_table(const GroupTable& a, const GroupTable& b) {
  std::vector<std::string> labels;
  for (const auto& la : a.labels)
    for (const auto& lb : b.labels) labels.push_back("(" + la + "," + lb + ")");
  const int nb = static_cast<int>(b.order());
  return table_from(labels, [&](int u, int v) { return a(u / nb, v / nb) * nb + b(u % nb, v % nb); });
}

// Closure of permutation generators; labels are the permutations in one-line form.
GroupTable permutation_group(const std::vector<std::vector<int>>& gens) {
  const std::size_t deg = gens.at(0).size();
  std::vector<int> id(deg);
  for (std::size_t i = 0; i < deg; ++i) id[i] = static_cast<int>(i);
  std::vector<std::vector<int>> elems{id};
  std::map<std::vector<int>, int> index{{id, 0}};
  auto compose = [](const std::vector<int>& f, const std::vector<int>& g) {  // f after g
    std::vector<int> r(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) r[i] = f[static_cast<std::size_t>(g[i])];
    return r;
  };
  for (std::size_t q = 0; q < elems.size(); ++q)
    for (const auto& g : gens) {
      auto c = compose(elems[q], g);
      if (!index.count(c)) {
        index[c] = static_cast<int>(elems.size());
        elems.push_back(c);
      }
    }
  std::vector<std::string> labels;
  for (const auto& p : elems) {
    std::string s = "[";
    for (int v : p) s += std::to_string(v);
    labels.push_back(s + "]");
  }
  return table_from(labels, [&](int a, int b) {
    return index.at(compose(elems[static_cast<std::size_t>(a)], elems[static_cast<std::size_t>(b)]));
  });
}

GroupTable quaternion_table() {
  // units 1,i,j,k as 0..3; element = sign * 4 + unit
  static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  const char* names[4] = {"1", "i", "j", "k"};
  std::vector<std::string> labels;
  for (int s = 0; s < 2; ++s)
    for (int u = 0; u < 4; ++u) labels.push_back(std::string(s ? "-" : "") + names[u]);
  return table_from(labels, [&](int a, int b) {
    const int ua = a % 4, ub = b % 4;
    const int s = (a / 4 + b / 4 + sign[ua][ub]) % 2;
    return s * 4 + unit[ua][ub];
  });
}

}  // namespace

std::vector<FiniteAlgebra> small_group_library(std::size_t max_order) {
  std::vector<std::pair<std::string, GroupTable>> all;
  for (int n = 1; n <= 8; ++n) all.emplace_back("Z/" + std::to_string(n), GroupTable::cyclic(n));
  const GroupTable z2 = GroupTable::cyclic(2);
  all.emplace_back("V4", product_table(z2, z2));
  all.emplace_back("Z/2xZ/4", product_table(z2, GroupTable::cyclic(4)));
  all.emplace_back("Z/2^3", product_table(product_table(z2, z2), z2));
  all.emplace_back("S3", permutation_group({{1, 0, 2}, {1, 2, 0}}));
  all.emplace_back("D4", permutation_group({{1, 2, 3, 0}, {0, 3, 2, 1}}));
  all.emplace_back("Q8", quaternion_table());
  std::vector<FiniteAlgebra> out;
  for (const auto& [name, g] : all)
    if (g.order() <= max_order) out.push_back(group_algebra(g, name));
  return out;
}

std::vector<AlgebraMap> surjections(const FiniteAlgebra& y, const FiniteAlgebra& x, Budget* budget) {
  std::vector<AlgebraMap> out;
  for (auto& f : enumerate_homs(y, x, budget)) {
    std::set<int> img(f.images.at(y.main_sort()).begin(), f.images.at(y.main_sort()).end());
    if (img.size() == x.size(x.main_sort())) out.push_back(std::move(f));
  }
  return out;
}

std::vector<ClassificationResult> classify_group_objects(const FiniteAlgebra& x, std::size_t order_bound,
                                                         Budget* budget) {
  std::vector<ClassificationResult> out;
  for (const auto& y : small_group_library(order_bound)) {
    if (y.size(y.main_sort()) % x.size(x.main_sort()) != 0) continue;
    const auto ps = surjections(y, x, budget);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      auto r = classify_group_objects(y, x, ps[i], budget);
      r.name += "#" + std::to_string(i);
      out.push_back(std::move(r));
    }
  }
  return out;
}

LambdaKappaReport lambda_kappa(const FiniteAlgebra& x, const std::vector<XModule>& modules, std::size_t order_bound,
                               Budget* budget) {
  LambdaKappaReport rep;
  for (const auto& k : modules) {
    ++rep.modules_checked;
    const auto sd = semidirect_product(k);
    const auto back = kernel_module(sd.algebra, x, sd.projection);
    if (!back || !modules_isomorphic(k, *back)) {
      rep.ok = false;
      rep.failures.push_back("kappa(lambda(K)) differs from K for K = " + k.invariants().to_string());
    }
  }
  for (const auto& y : small_group_library(order_bound)) {
    if (y.size(y.main_sort()) % x.size(x.main_sort()) != 0) continue;
    for (const auto& p : surjections(y, x, budget)) {
      if (split_sections(y, x, p, budget).empty()) continue;
      const auto k = kernel_module(y, x, p);
      if (!k) continue;
      ++rep.objects_checked;
      const auto sd = semidirect_product(*k);
      const auto& pi = p.images.at(y.main_sort());
      const auto& proj = sd.projection.images.at(x.main_sort());
      bool found = false;
      for (const auto& f : enumerate_homs(sd.algebra, y, budget)) {
        const auto& img = f.images.at(x.main_sort());
        if (std::set<int>(img.begin(), img.end()).size() != img.size()) continue;
        bool over = true;
        for (std::size_t e = 0; e < img.size() && over; ++e) over = pi[static_cast<std::size_t>(img[e])] == proj[e];
        if (over) {
          found = true;
          break;
        }
      }
      if (!found) {
        rep.ok = false;
        rep.failures.push_back("lambda(kappa(p)) is not isomorphic over X to " + y.name());
      }
    }
  }
  return rep;
}

int word_image(const Word& w, const std::vector<int>& p_images, const GroupTable& x) {
  int u = x.identity;
  for (const auto& [g, e] : w) {
    const int pg = p_images.at(static_cast<std::size_t>(g));
    u = x(u, e > 0 ? pg : x.inverse[static_cast<std::size_t>(pg)]);
  }
  return u;
}

Vector fox_derivative(const Word& w, std::size_t ngens, const std::vector<int>& p_images, const GroupTable& x) {
  const std::size_t n = x.order();
  Vector d(ngens * n, 0);
  int u = x.identity;
  for (const auto& [g, e] : w) {
    const auto gi = static_cast<std::size_t>(g);
    const int pg = p_images.at(gi);
    if (e > 0) {
      d[gi * n + static_cast<std::size_t>(u)] += 1;
      u = x(u, pg);
    } else {
      u = x(u, x.inverse[static_cast<std::size_t>(pg)]);
      d[gi * n + static_cast<std::size_t>(u)] -= 1;
    }
  }
  return d;
}

FreeAlgebra abelianize_free(const FreeAlgebra& f, const FiniteAlgebra* over) {
  if (over) return FreeAlgebra(module_theory(f.theory(), *over), f.generators());
  return FreeAlgebra(abelianization_theory(f.theory()), f.generators());
}

Matrix abelianize_map(const std::vector<Word>& images, std::size_t target_gens) {
  Matrix m(target_gens, images.size());
  for (std::size_t j = 0; j < images.size(); ++j)
    for (const auto& [g, e] : images[j]) m(static_cast<std::size_t>(g), j) += e;
  return m;
}

Matrix abelianize_map_over(const std::vector<Word>& images, std::size_t target_gens, const std::vector<int>& p_images,
                           const GroupTable& x) {
  const std::size_t n = x.order();
  Matrix m(target_gens * n, images.size() * n);
  for (std::size_t j = 0; j < images.size(); ++j) {
    const Vector d = fox_derivative(images[j], target_gens, p_images, x);
    for (std::size_t h = 0; h < n; ++h)
      for (std::size_t i = 0; i < target_gens; ++i)
        for (std::size_t g = 0; g < n; ++g)
          m(i * n + static_cast<std::size_t>(x(static_cast<int>(h), static_cast<int>(g))), j * n + h) += d[i * n + g];
  }
  return m;
}

}  // namespace aq
