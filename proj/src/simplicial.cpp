#include "aq/simplicial.hpp"

#include <algorithm>
#include <set>

namespace aq {

namespace {

void place(Matrix& m, std::size_t r0, std::size_t c0, const Matrix& b, Int sign = 1) {
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(r0 + i, c0 + j) += sign * b(i, j);
}

Matrix relations_of(const PresentedGroup& g) {
  return g.relations.rows() == g.gens ? g.relations : Matrix(g.gens, 0);
}

bool zero_mod(const PresentedGroup& g, const Matrix& m) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!g.contains_zero(m.column(j))) return false;
  return true;
}

bool same_lattice(const Matrix& a, const Matrix& b) {
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (!in_lattice(b, a.column(j))) return false;
  for (std::size_t j = 0; j < b.cols(); ++j)
    if (!in_lattice(a, b.column(j))) return false;
  return true;
}

Module z_module(const PresentedGroup& g) {
  Module m;
  m.ring = Ring::integers();
  m.group = g;
  m.action = {Matrix::identity(g.gens)};
  return m;
}

}  // namespace

std::vector<Monotone> surjections_from(int n) {
  std::vector<Monotone> out;
  for (int k = n; k >= 0; --k) {
    auto part = surjections_onto(n, k);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<Monotone> surjections_onto(int n, int k) {
  // choose the n - k positions j with f(j) == f(j+1)
  std::vector<Monotone> out;
  const int steps = n;
  for (unsigned mask = 0; mask < (1u << steps); ++mask) {
    if (__builtin_popcount(mask) != n - k) continue;
    Monotone f(static_cast<std::size_t>(n + 1), 0);
    for (int j = 0; j < n; ++j) f[static_cast<std::size_t>(j + 1)] = f[static_cast<std::size_t>(j)] + ((mask >> j) & 1u ? 0 : 1);
    out.push_back(f);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Monotone face_map(int n, int i) {
  Monotone f(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) f[static_cast<std::size_t>(j)] = j < i ? j : j + 1;
  return f;
}

Monotone degeneracy_map(int n, int j) {
  Monotone f(static_cast<std::size_t>(n + 2));
  for (int t = 0; t <= n + 1; ++t) f[static_cast<std::size_t>(t)] = t <= j ? t : t - 1;
  return f;
}

Monotone compose(const Monotone& f, const Monotone& g) {
  Monotone r(g.size());
  for (std::size_t t = 0; t < g.size(); ++t) r[t] = f.at(static_cast<std::size_t>(g[t]));
  return r;
}

ChainComplex ModuleComplex::chain_complex() const {
  ChainComplex c;
  for (const auto& m : modules) c.groups.push_back(m.group);
  if (modules.empty()) return c;
  c.differentials.push_back(Matrix(0, modules[0].gens()));
  for (const auto& m : d) c.differentials.push_back(m);
  return c;
}

ModuleComplex ModuleComplex::from_chain_complex(const ChainComplex& c) {
  if (c.lowest != 0) throw Error("complex must start in degree 0");
  ModuleComplex m;
  m.ring = Ring::integers();
  for (const auto& g : c.groups) m.modules.push_back(z_module(g));
  for (int n = 1; n <= c.highest(); ++n) m.d.push_back(c.d(n));
  return m;
}

bool operator==(const ModuleComplex& a, const ModuleComplex& b) {
  if (a.modules.size() != b.modules.size() || a.d.size() != b.d.size()) return false;
  for (std::size_t n = 0; n < a.modules.size(); ++n) {
    const auto& x = a.modules[n];
    const auto& y = b.modules[n];
    if (x.gens() != y.gens() || x.action != y.action) return false;
    if (!same_lattice(relations_of(x.group), relations_of(y.group))) return false;
  }
  return a.d == b.d;
}

SimplicialModule SimplicialModule::constant(const Module& m, std::size_t truncation) {
  SimplicialModule v;
  v.ring = m.ring;
  const Matrix id = Matrix::identity(m.gens());
  for (std::size_t n = 0; n <= truncation; ++n) {
    v.levels.push_back(m);
    v.faces.push_back(std::vector<Matrix>(n == 0 ? 0 : n + 1, id));
    if (n < truncation) v.degeneracies.push_back(std::vector<Matrix>(n + 1, id));
  }
  return v;
}

SimplicialModule SimplicialModule::truncated(std::size_t n) const& {
  if (n > truncation()) throw Error("cannot extend a truncation");
  SimplicialModule v;
  v.ring = ring;
  v.levels.assign(levels.begin(), levels.begin() + static_cast<std::ptrdiff_t>(n + 1));
  v.faces.assign(faces.begin(), faces.begin() + static_cast<std::ptrdiff_t>(n + 1));
  v.degeneracies.assign(degeneracies.begin(), degeneracies.begin() + static_cast<std::ptrdiff_t>(n));
  return v;
}

SimplicialModule SimplicialModule::truncated(std::size_t n) && {
  if (n > truncation()) throw Error("cannot extend a truncation");
  levels.resize(n + 1);
  faces.resize(n + 1);
  degeneracies.resize(n);
  return std::move(*this);
}

std::optional<std::string> SimplicialModule::identity_failure() const {
  const std::size_t top = truncation();
  auto lvl = [](std::size_t n) { return " at level " + std::to_string(n); };
  for (std::size_t n = 1; n <= top; ++n) {
    if (faces.at(n).size() != n + 1) return "level " + std::to_string(n) + " needs " + std::to_string(n + 1) + " faces";
    for (std::size_t i = 0; i <= n; ++i)
      if (!is_module_hom(levels[n], levels[n - 1], faces[n][i])) return "d" + std::to_string(i) + lvl(n) + " is not a module map";
  }
  for (std::size_t n = 0; n < top; ++n) {
    if (degeneracies.at(n).size() != n + 1) return "level " + std::to_string(n) + " needs " + std::to_string(n + 1) + " degeneracies";
    for (std::size_t j = 0; j <= n; ++j)
      if (!is_module_hom(levels[n], levels[n + 1], degeneracies[n][j]))
        return "s" + std::to_string(j) + lvl(n) + " is not a module map";
  }
  auto name = [](char a, std::size_t i, char b, std::size_t j) {
    return std::string(1, a) + std::to_string(i) + " " + std::string(1, b) + std::to_string(j);
  };
  // d_i d_j = d_{j-1} d_i (i < j)
  for (std::size_t n = 2; n <= top; ++n)
    for (std::size_t j = 1; j <= n; ++j)
      for (std::size_t i = 0; i < j; ++i)
        if (!zero_mod(levels[n - 2].group, faces[n - 1][i] * faces[n][j] - faces[n - 1][j - 1] * faces[n][i]))
          return name('d', i, 'd', j) + " = " + name('d', j - 1, 'd', i) + lvl(n);
  for (std::size_t n = 0; n < top; ++n) {
    const std::size_t m = n + 1;  // d_i : V_m -> V_n after s_j : V_n -> V_m
    for (std::size_t j = 0; j <= n; ++j)
      for (std::size_t i = 0; i <= m; ++i) {
        const Matrix lhs = faces[m][i] * degeneracies[n][j];
        Matrix rhs;
        std::string rname;
        if (i == j || i == j + 1) {
          rhs = Matrix::identity(levels[n].gens());
          rname = "id";
        } else if (i < j) {
          rhs = degeneracies[n - 1][j - 1] * faces[n][i];
          rname = name('s', j - 1, 'd', i);
        } else {
          rhs = degeneracies[n - 1][j] * faces[n][i - 1];
          rname = name('s', j, 'd', i - 1);
        }
        if (!zero_mod(levels[n].group, lhs - rhs)) return name('d', i, 's', j) + " = " + rname + lvl(n);
      }
  }
  // s_i s_j = s_{j+1} s_i (i <= j)
  for (std::size_t n = 0; n + 2 <= top; ++n)
    for (std::size_t j = 0; j <= n; ++j)
      for (std::size_t i = 0; i <= j; ++i)
        if (!zero_mod(levels[n + 2].group, degeneracies[n + 1][i] * degeneracies[n][j] -
                                               degeneracies[n + 1][j + 1] * degeneracies[n][i]))
          return name('s', i, 's', j) + " = " + name('s', j + 1, 's', i) + lvl(n);
  return std::nullopt;
}

ChainComplex SimplicialModule::alternating_complex() const {
  ChainComplex c;
  for (const auto& m : levels) c.groups.push_back(m.group);
  c.differentials.push_back(Matrix(0, levels.at(0).gens()));
  for (std::size_t n = 1; n < levels.size(); ++n) {
    Matrix d(levels[n - 1].gens(), levels[n].gens());
    for (std::size_t i = 0; i <= n; ++i) place(d, 0, 0, faces[n][i], (i % 2) ? -1 : 1);
    c.differentials.push_back(d);
  }
  return c;
}

ModuleComplex normalize_dk(const SimplicialModule& v) {
  const ChainComplex alt = v.alternating_complex();
  const std::size_t top = v.truncation();
  std::vector<std::vector<std::size_t>> kept(top + 1);
  std::vector<Matrix> rels(top + 1);
  ModuleComplex out;
  out.ring = v.ring;
  for (std::size_t n = 0; n <= top; ++n) {
    Matrix r = relations_of(v.levels[n].group);
    if (n > 0)
      for (const auto& s : v.degeneracies[n - 1]) r = hconcat(r, s);
    const std::size_t g = v.levels[n].gens();
    std::vector<bool> dead(g, false);
    // drop generators that a relation kills outright, until none remain
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t c = 0; c < r.cols(); ++c) {
        std::size_t hits = 0, at = 0;
        bool unit = true;
        for (std::size_t i = 0; i < g; ++i) {
          if (dead[i] || r(i, c) == 0) continue;
          ++hits;
          at = i;
          if (r(i, c) != 1 && r(i, c) != -1) unit = false;
        }
        if (hits == 1 && unit) {
          dead[at] = true;
          changed = true;
        }
      }
    }
    for (std::size_t i = 0; i < g; ++i)
      if (!dead[i]) kept[n].push_back(i);
    Matrix reduced = select_rows(r, kept[n]);
    std::vector<Vector> cols;
    std::set<Vector> seen;
    for (std::size_t c = 0; c < reduced.cols(); ++c) {
      Vector col = reduced.column(c);
      if (std::all_of(col.begin(), col.end(), [](Int x) { return x == 0; })) continue;
      if (seen.insert(col).second) cols.push_back(col);
    }
    Module m;
    m.ring = v.ring;
    m.group = PresentedGroup(kept[n].size(), from_columns(kept[n].size(), cols));
    for (const auto& a : v.levels[n].action) m.action.push_back(select_cols(select_rows(a, kept[n]), kept[n]));
    out.modules.push_back(m);
  }
  for (std::size_t n = 1; n <= top; ++n)
    out.d.push_back(select_cols(select_rows(alt.d(static_cast<int>(n)), kept[n - 1]), kept[n]));
  return out;
}

ChainComplex moore_complex(const SimplicialModule& v) { return normalize_dk(v).chain_complex(); }

std::vector<FGAbelianGroup> moore_homotopy(const SimplicialModule& v, std::size_t range) {
  if (range >= v.truncation()) throw Error("range exceeds truncation");
  const ChainComplex c = moore_complex(v);
  std::vector<FGAbelianGroup> out;
  for (std::size_t n = 0; n <= range; ++n) out.push_back(c.homology(static_cast<int>(n)));
  return out;
}

namespace {

struct DKLayout {
  std::vector<Monotone> summands;
  std::vector<std::size_t> offsets;
  std::size_t gens = 0;
};

DKLayout dk_layout(const ModuleComplex& c, int n) {
  DKLayout l;
  for (const auto& eta : surjections_from(n)) {
    const auto k = static_cast<std::size_t>(eta.back());
    l.summands.push_back(eta);
    l.offsets.push_back(l.gens);
    l.gens += k < c.modules.size() ? c.modules[k].gens() : 0;
  }
  return l;
}

// theta : [m] -> [n] induces Gamma_n -> Gamma_m.
Matrix dk_operator(const ModuleComplex& c, int n, int m, const Monotone& theta) {
  const DKLayout src = dk_layout(c, n), dst = dk_layout(c, m);
  Matrix out(dst.gens, src.gens);
  for (std::size_t s = 0; s < src.summands.size(); ++s) {
    const auto& eta = src.summands[s];
    const int k = eta.back();
    if (static_cast<std::size_t>(k) >= c.modules.size()) continue;
    const Monotone f = compose(eta, theta);
    std::vector<int> image(f.begin(), f.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    Monotone eta2(f.size());
    for (std::size_t t = 0; t < f.size(); ++t)
      eta2[t] = static_cast<int>(std::lower_bound(image.begin(), image.end(), f[t]) - image.begin());
    const auto it = std::find(dst.summands.begin(), dst.summands.end(), eta2);
    const std::size_t to = dst.offsets[static_cast<std::size_t>(it - dst.summands.begin())];
    const auto j = static_cast<int>(image.size()) - 1;
    if (j == k) {
      place(out, to, src.offsets[s], Matrix::identity(c.modules[static_cast<std::size_t>(k)].gens()));
    } else if (j == k - 1 && image.front() == 1) {
      place(out, to, src.offsets[s], c.d.at(static_cast<std::size_t>(k - 1)));
    }
  }
  return out;
}

}  // namespace

std::size_t dold_kan_offset(const ModuleComplex& c, int n, const Monotone& eta) {
  const DKLayout l = dk_layout(c, n);
  const auto it = std::find(l.summands.begin(), l.summands.end(), eta);
  if (it == l.summands.end()) throw Error("not a surjection from [" + std::to_string(n) + "]");
  return l.offsets[static_cast<std::size_t>(it - l.summands.begin())];
}

SimplicialModule dold_kan(const ModuleComplex& c, std::size_t truncation) {
  SimplicialModule v;
  v.ring = c.ring;
  for (std::size_t n = 0; n <= truncation; ++n) {
    Module level = Module::zero(c.ring);
    for (const auto& eta : surjections_from(static_cast<int>(n))) {
      const auto k = static_cast<std::size_t>(eta.back());
      if (k < c.modules.size()) level = level.direct_sum(c.modules[k]);
    }
    v.levels.push_back(level);
    const int ni = static_cast<int>(n);
    std::vector<Matrix> fs;
    if (n > 0)
      for (int i = 0; i <= ni; ++i) fs.push_back(dk_operator(c, ni, ni - 1, face_map(ni, i)));
    v.faces.push_back(fs);
  }
  for (std::size_t n = 0; n < truncation; ++n) {
    const int ni = static_cast<int>(n);
    std::vector<Matrix> ss;
    for (int j = 0; j <= ni; ++j) ss.push_back(dk_operator(c, ni, ni + 1, degeneracy_map(ni, j)));
    v.degeneracies.push_back(ss);
  }
  return v;
}

std::vector<Matrix> dold_kan_map(const ModuleComplex& c, const ModuleComplex& d, const std::vector<Matrix>& f,
                                 std::size_t truncation) {
  std::vector<Matrix> out;
  for (std::size_t n = 0; n <= truncation; ++n) {
    const int ni = static_cast<int>(n);
    const DKLayout src = dk_layout(c, ni), dst = dk_layout(d, ni);
    Matrix m(dst.gens, src.gens);
    for (std::size_t s = 0; s < src.summands.size(); ++s) {
      const auto k = static_cast<std::size_t>(src.summands[s].back());
      if (k >= c.modules.size() || k >= d.modules.size() || k >= f.size()) continue;
      place(m, dst.offsets[s], src.offsets[s], f[k]);
    }
    out.push_back(m);
  }
  return out;
}

ModuleComplex shifted(const Module& m, std::size_t n) {
  ModuleComplex c;
  c.ring = m.ring;
  for (std::size_t k = 0; k < n; ++k) c.modules.push_back(Module::zero(m.ring));
  c.modules.push_back(m);
  for (std::size_t k = 0; k < n; ++k) c.d.push_back(Matrix(c.modules[k].gens(), c.modules[k + 1].gens()));
  return c;
}

std::optional<std::size_t> free_rank(const Module& m) {
  const std::size_t dim = m.ring->dim();
  if (m.gens() % dim != 0) return std::nullopt;
  const std::size_t rank = m.gens() / dim, n = m.gens();
  // compare against Module::free(ring, rank) without building its actions
  const Ring& r = *m.ring;
  if (m.action.size() != dim) return std::nullopt;
  for (std::size_t b = 0; b < dim; ++b) {
    const Matrix& a = m.action[b];
    if (a.rows() != n || a.cols() != n) return std::nullopt;
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t h = 0; h < dim; ++h) {
        const std::size_t col = free_index(r, i, h), hit = free_index(r, i, r.basis_mul(b, h));
        for (std::size_t row = 0; row < n; ++row)
          if (a(row, col) != (row == hit ? 1 : 0)) return std::nullopt;
      }
  }
  Matrix expected(n, 0);
  if (r.kind() == Ring::Kind::IntegersMod) expected = scaled(Matrix::identity(n), r.characteristic());
  if (!same_lattice(expected, relations_of(m.group))) return std::nullopt;
  return rank;
}

SubobjectMap latching(const SimplicialModule& v, std::size_t n) {
  if (n > v.truncation()) throw Error("latching degree beyond truncation");
  if (n == 0) return {Module::zero(v.ring), Matrix(v.levels[0].gens(), 0)};
  for (std::size_t k = 0; k < n; ++k)
    if (!free_rank(v.levels[k])) throw Unsupported("latching objects need free levels");
  const Module& prev = v.levels[n - 1];
  const std::size_t g = prev.gens();
  Module sum = Module::zero(v.ring);
  for (std::size_t j = 0; j < n; ++j) sum = sum.direct_sum(prev);
  Matrix rel = relations_of(sum.group);
  if (n >= 2) {
    const std::size_t g2 = v.levels[n - 2].gens();
    // s_j s_i x in copy j equals s_i s_{j-1} x in copy i, for i < j
    for (std::size_t j = 1; j < n; ++j)
      for (std::size_t i = 0; i < j; ++i) {
        Matrix block(n * g, g2);
        place(block, j * g, 0, v.degeneracies[n - 2][i]);
        place(block, i * g, 0, v.degeneracies[n - 2][j - 1], -1);
        rel = hconcat(rel, block);
      }
  }
  sum.group = PresentedGroup(n * g, rel);
  Matrix map(v.levels[n].gens(), n * g);
  for (std::size_t j = 0; j < n; ++j) place(map, 0, j * g, v.degeneracies[n - 1][j]);
  return {sum, map};
}

MatchingObject matching(const SimplicialModule& v, std::size_t n) {
  if (n > v.truncation()) throw Error("matching degree beyond truncation");
  if (n == 0) return {Module::zero(v.ring), Matrix(0, 0), Matrix(0, v.levels[0].gens())};
  const Module& prev = v.levels[n - 1];
  const std::size_t g = prev.gens();
  const std::size_t copies = n + 1;
  Module prod = Module::zero(v.ring);
  for (std::size_t j = 0; j < copies; ++j) prod = prod.direct_sum(prev);
  Matrix lattice = Matrix::identity(copies * g);
  if (n >= 2) {
    const PresentedGroup& low = v.levels[n - 2].group;
    const std::size_t g2 = low.gens;
    const std::size_t pairs = copies * (copies - 1) / 2;
    Matrix a(pairs * g2, copies * g);
    std::size_t p = 0;
    for (std::size_t j = 1; j < copies; ++j)
      for (std::size_t i = 0; i < j; ++i, ++p) {
        place(a, p * g2, j * g, v.faces[n - 1][i]);
        place(a, p * g2, i * g, v.faces[n - 1][j - 1], -1);
      }
    lattice = preimage_lattice(a, relations_of(low.power(pairs)));
  }
  auto coords = [&](const Vector& x) {
    auto c = solve_in_lattice(lattice, x);
    if (!c) throw CheckFailed("vector outside the matching lattice");
    return *c;
  };
  std::vector<Vector> rels;
  const Matrix pr = relations_of(prod.group);
  for (std::size_t c = 0; c < pr.cols(); ++c) rels.push_back(coords(pr.column(c)));
  MatchingObject out;
  out.object.ring = v.ring;
  out.object.group = PresentedGroup(lattice.cols(), from_columns(lattice.cols(), rels));
  for (const auto& act : prod.action) {
    std::vector<Vector> cols;
    const Matrix moved = act * lattice;
    for (std::size_t c = 0; c < moved.cols(); ++c) cols.push_back(coords(moved.column(c)));
    out.object.action.push_back(from_columns(lattice.cols(), cols));
  }
  out.inclusion = lattice;
  Matrix tuple(copies * g, v.levels[n].gens());
  for (std::size_t i = 0; i < copies; ++i) place(tuple, i * g, 0, v.faces[n][i]);
  std::vector<Vector> cols;
  for (std::size_t c = 0; c < tuple.cols(); ++c) cols.push_back(coords(tuple.column(c)));
  out.matching_map = from_columns(lattice.cols(), cols);
  return out;
}

CosimplicialGroup CosimplicialGroup::constant(const PresentedGroup& a, std::size_t truncation) {
  CosimplicialGroup w;
  for (std::size_t n = 0; n <= truncation; ++n) {
    w.levels.push_back(a);
    if (n < truncation) w.cofaces.push_back(std::vector<Matrix>(n + 2, Matrix::identity(a.gens)));
  }
  return w;
}

CochainComplex CosimplicialGroup::alternating_complex() const {
  CochainComplex c;
  c.groups = levels;
  for (std::size_t n = 0; n + 1 < levels.size(); ++n) {
    Matrix d(levels[n + 1].gens, levels[n].gens);
    for (std::size_t i = 0; i < cofaces[n].size(); ++i) place(d, 0, 0, cofaces[n][i], (i % 2) ? -1 : 1);
    c.differentials.push_back(d);
  }
  return c;
}

std::vector<FGAbelianGroup> cohomotopy(const CosimplicialGroup& w, std::size_t range) {
  if (range >= w.truncation()) throw Error("range exceeds truncation");
  const CochainComplex c = w.alternating_complex();
  std::vector<FGAbelianGroup> out;
  for (std::size_t n = 0; n <= range; ++n) out.push_back(c.cohomology(static_cast<int>(n)));
  return out;
}

namespace {

std::vector<std::size_t> ranks_of(const SimplicialModule& v) {
  std::vector<std::size_t> r;
  for (const auto& l : v.levels) {
    auto k = free_rank(l);
    if (!k) throw Unsupported("needs free levels");
    r.push_back(*k);
  }
  return r;
}

}  // namespace

CosimplicialGroup hom_cosimplicial(const SimplicialModule& v, const Module& g) {
  const auto r = ranks_of(v);
  CosimplicialGroup w;
  for (std::size_t n = 0; n < r.size(); ++n) w.levels.push_back(g.group.power(r[n]));
  for (std::size_t n = 0; n + 1 < r.size(); ++n) {
    std::vector<Matrix> cf;
    for (const auto& d : v.faces[n + 1]) cf.push_back(hom_pullback(*v.ring, g, r[n + 1], r[n], d));
    w.cofaces.push_back(cf);
  }
  return w;
}

SimplicialModule tensor_simplicial(const SimplicialModule& v, const Module& g) {
  const auto r = ranks_of(v);
  SimplicialModule out;
  out.ring = Ring::integers();
  for (std::size_t n = 0; n < r.size(); ++n) {
    out.levels.push_back(z_module(g.group.power(r[n])));
    std::vector<Matrix> fs;
    if (n > 0)
      for (const auto& d : v.faces[n]) fs.push_back(tensor_pushforward(*v.ring, g, r[n], r[n - 1], d));
    out.faces.push_back(fs);
  }
  for (std::size_t n = 0; n + 1 < r.size(); ++n) {
    std::vector<Matrix> ss;
    for (const auto& s : v.degeneracies[n]) ss.push_back(tensor_pushforward(*v.ring, g, r[n], r[n + 1], s));
    out.degeneracies.push_back(ss);
  }
  return out;
}

}  // namespace aq
