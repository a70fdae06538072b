#include "aq/ring.hpp"

#include <stdexcept>

namespace aq {

GroupTable GroupTable::trivial() { return cyclic(1); }

GroupTable GroupTable::cyclic(int n) {
  GroupTable g;
  for (int i = 0; i < n; ++i) g.labels.push_back(std::to_string(i));
  g.mul.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.mul[i][j] = (i + j) % n;
  g.complete();
  return g;
}

void GroupTable::complete() {
  const int n = static_cast<int>(labels.size());
  if (mul.size() != labels.size()) throw Error("group table has wrong size");
  identity = -1;
  for (int e = 0; e < n && identity < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = (*this)(e, x) == x && (*this)(x, e) == x;
    if (ok) identity = e;
  }
  if (identity < 0) throw Error("group table has no identity");
  inverse.assign(labels.size(), -1);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if ((*this)(x, y) == identity && (*this)(y, x) == identity) inverse[x] = y;
  for (int x = 0; x < n; ++x)
    if (inverse[x] < 0) throw Error("group table element " + labels[x] + " has no inverse");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if ((*this)((*this)(a, b), c) != (*this)(a, (*this)(b, c))) throw Error("group table is not associative");
}

bool GroupTable::is_abelian() const {
  const int n = static_cast<int>(order());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if ((*this)(a, b) != (*this)(b, a)) return false;
  return true;
}

RingPtr Ring::integers() {
  static const RingPtr z = [] {
    auto r = std::make_shared<Ring>();
    r->group_ = GroupTable::trivial();
    return r;
  }();
  return z;
}

RingPtr Ring::integers_mod(Int m) {
  if (m < 2) throw Error("Z/m needs m >= 2");
  auto r = std::make_shared<Ring>();
  r->kind_ = Kind::IntegersMod;
  r->modulus_ = m;
  r->group_ = GroupTable::trivial();
  return r;
}

RingPtr Ring::group_ring(GroupTable g) {
  auto r = std::make_shared<Ring>();
  r->kind_ = Kind::GroupRing;
  g.complete();
  r->group_ = std::move(g);
  return r;
}

RingPtr Ring::from_name(const std::string& name) {
  if (name == "Z") return integers();
  if (name.rfind("Z/", 0) == 0) {
    try {
      return integers_mod(std::stoll(name.substr(2)));
    } catch (const std::logic_error&) {
    }
  }
  throw Error("unknown ring '" + name + "'");
}

std::size_t Ring::basis_mul(std::size_t i, std::size_t j) const {
  if (kind_ != Kind::GroupRing) return 0;
  return static_cast<std::size_t>(group_(static_cast<int>(i), static_cast<int>(j)));
}

std::size_t Ring::basis_inverse(std::size_t i) const {
  if (kind_ != Kind::GroupRing) return 0;
  return static_cast<std::size_t>(group_.inverse[i]);
}

std::string Ring::name() const {
  switch (kind_) {
    case Kind::Integers:
      return "Z";
    case Kind::IntegersMod:
      return "Z/" + std::to_string(modulus_);
    case Kind::GroupRing:
      return "Z[G" + std::to_string(group_.order()) + "]";
  }
  return "?";
}

Module Module::free(RingPtr r, std::size_t rank) {
  Module m;
  const std::size_t d = r->dim();
  const std::size_t n = rank * d;
  if (r->kind() == Ring::Kind::IntegersMod) {
    m.group = PresentedGroup(n, scaled(Matrix::identity(n), r->characteristic()));
  } else {
    m.group = PresentedGroup::free(n);
  }
  for (std::size_t b = 0; b < d; ++b) {
    Matrix a(n, n);
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t h = 0; h < d; ++h) a(free_index(*r, i, r->basis_mul(b, h)), free_index(*r, i, h)) = 1;
    m.action.push_back(a);
  }
  m.ring = std::move(r);
  return m;
}

Module Module::trivial(RingPtr r, const std::vector<Int>& cyclic_orders) {
  if (r->kind() == Ring::Kind::IntegersMod)
    for (Int o : cyclic_orders)
      if (o == 0 || r->characteristic() % o != 0)
        throw Error("Z/" + std::to_string(o == 0 ? 0 : o) + " is not a module over " + r->name());
  Module m;
  m.group = PresentedGroup::cyclic_sum(cyclic_orders);
  m.action.assign(r->dim(), Matrix::identity(m.group.gens));
  m.ring = std::move(r);
  return m;
}

namespace {

bool equal_mod_relations(const PresentedGroup& g, const Matrix& a, const Matrix& b) {
  const Matrix diff = a - b;
  for (std::size_t j = 0; j < diff.cols(); ++j)
    if (!g.contains_zero(diff.column(j))) return false;
  return true;
}

}  // namespace

bool Module::is_valid() const {
  const std::size_t d = ring->dim();
  if (action.size() != d) return false;
  const std::size_t n = group.gens;
  for (const auto& a : action)
    if (a.rows() != n || a.cols() != n || !respects_relations(group, group, a)) return false;
  if (!equal_mod_relations(group, action[ring->one()], Matrix::identity(n))) return false;
  for (std::size_t b = 0; b < d; ++b)
    for (std::size_t c = 0; c < d; ++c)
      if (!equal_mod_relations(group, action[b] * action[c], action[ring->basis_mul(b, c)])) return false;
  if (ring->characteristic() != 0)
    for (std::size_t j = 0; j < n; ++j) {
      Vector v(n, 0);
      v[j] = ring->characteristic();
      if (!group.contains_zero(v)) return false;
    }
  return true;
}

Module Module::direct_sum(const Module& other) const {
  Module m;
  m.ring = ring;
  m.group = group.direct_sum(other.group);
  for (std::size_t b = 0; b < action.size(); ++b) m.action.push_back(block_diag(action[b], other.action[b]));
  return m;
}

bool is_module_hom(const Module& a, const Module& b, const Matrix& f) {
  if (f.rows() != b.gens() || f.cols() != a.gens()) return false;
  if (!respects_relations(a.group, b.group, f)) return false;
  for (std::size_t r = 0; r < a.action.size(); ++r)
    if (!equal_mod_relations(b.group, f * a.action[r], b.action[r] * f)) return false;
  return true;
}

Matrix extend_linearly(const Module& target, const std::vector<Vector>& images) {
  const std::size_t d = target.ring->dim();
  Matrix m(target.gens(), images.size() * d);
  for (std::size_t j = 0; j < images.size(); ++j)
    for (std::size_t b = 0; b < d; ++b) {
      const Vector v = target.action[b] * images[j];
      for (std::size_t i = 0; i < v.size(); ++i) m(i, free_index(*target.ring, j, b)) = v[i];
    }
  return m;
}

std::vector<std::size_t> prune_generators(const Module& ambient, const std::vector<Vector>& gens) {
  std::vector<bool> alive(gens.size(), true);
  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    std::vector<Vector> span;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (i != j && alive[i])
        for (const auto& a : ambient.action) span.push_back(a * gens[i]);
    for (std::size_t c = 0; c < ambient.group.relations.cols(); ++c) span.push_back(ambient.group.relations.column(c));
    if (in_lattice(from_columns(ambient.gens(), span), gens[j])) alive[j] = false;
  }
  for (std::size_t j = 0; j < gens.size(); ++j)
    if (alive[j]) kept.push_back(j);
  return kept;
}

FreeResolution resolve(const Module& m, std::size_t length) {
  FreeResolution res;
  res.target = m;
  std::vector<Vector> gens;
  for (std::size_t j = 0; j < m.gens(); ++j) {
    Vector e(m.gens(), 0);
    e[j] = 1;
    gens.push_back(e);
  }
  std::vector<Vector> chosen;
  for (std::size_t j : prune_generators(m, gens)) chosen.push_back(gens[j]);
  res.ranks.push_back(chosen.size());
  res.augmentation = extend_linearly(m, chosen);

  Matrix map = res.augmentation;
  Matrix rel = m.group.relations;
  for (std::size_t k = 0; k < length; ++k) {
    const Module p = res.level(k);
    const Matrix kernel = preimage_lattice(map, rel);
    std::vector<Vector> cand;
    for (std::size_t c = 0; c < kernel.cols(); ++c) cand.push_back(kernel.column(c));
    std::vector<Vector> next;
    for (std::size_t j : prune_generators(p, cand)) next.push_back(cand[j]);
    res.ranks.push_back(next.size());
    map = next.empty() ? Matrix(p.gens(), 0) : extend_linearly(p, next);
    res.differentials.push_back(map);
    rel = p.group.relations;
  }
  return res;
}

Matrix hom_pullback(const Ring& r, const Module& g, std::size_t a, std::size_t b, const Matrix& d) {
  const std::size_t n = g.gens();
  Matrix out(a * n, b * n);
  for (std::size_t j = 0; j < a; ++j) {
    const Vector col = d.column(free_index(r, j, r.one()));
    for (std::size_t i = 0; i < b; ++i)
      for (std::size_t h = 0; h < r.dim(); ++h) {
        const Int c = col[free_index(r, i, h)];
        if (c == 0) continue;
        const Matrix& act = g.action[h];
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = 0; y < n; ++y)
            out(j * n + x, i * n + y) = detail::checked_add(out(j * n + x, i * n + y), detail::checked_mul(c, act(x, y)));
      }
  }
  return out;
}

Matrix tensor_pushforward(const Ring& r, const Module& g, std::size_t a, std::size_t b, const Matrix& d) {
  const std::size_t n = g.gens();
  Matrix out(b * n, a * n);
  for (std::size_t j = 0; j < a; ++j) {
    const Vector col = d.column(free_index(r, j, r.one()));
    for (std::size_t i = 0; i < b; ++i)
      for (std::size_t h = 0; h < r.dim(); ++h) {
        const Int c = col[free_index(r, i, h)];
        if (c == 0) continue;
        const Matrix& act = g.action[r.basis_inverse(h)];
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = 0; y < n; ++y)
            out(i * n + x, j * n + y) = detail::checked_add(out(i * n + x, j * n + y), detail::checked_mul(c, act(x, y)));
      }
  }
  return out;
}

CochainComplex hom_complex(const FreeResolution& p, const Module& g) {
  CochainComplex c;
  for (std::size_t k = 0; k < p.ranks.size(); ++k) c.groups.push_back(g.group.power(p.ranks[k]));
  for (std::size_t k = 0; k < p.differentials.size(); ++k)
    c.differentials.push_back(hom_pullback(*p.target.ring, g, p.ranks[k + 1], p.ranks[k], p.differentials[k]));
  return c;
}

ChainComplex tensor_complex(const FreeResolution& p, const Module& g) {
  ChainComplex c;
  for (std::size_t k = 0; k < p.ranks.size(); ++k) c.groups.push_back(g.group.power(p.ranks[k]));
  c.differentials.push_back(Matrix(0, c.groups[0].gens));
  for (std::size_t k = 0; k < p.differentials.size(); ++k)
    c.differentials.push_back(tensor_pushforward(*p.target.ring, g, p.ranks[k + 1], p.ranks[k], p.differentials[k]));
  return c;
}

}  // namespace aq
