#include "aq/bisimplicial.hpp"

#include "aq/error.hpp"

namespace aq {

namespace {

using Cube = std::vector<std::vector<std::vector<Matrix>>>;

Module z_module(const PresentedGroup& g) {
  Module m;
  m.ring = Ring::integers();
  m.group = g;
  m.action = {Matrix::identity(g.gens)};
  return m;
}

PresentedGroup tensor(const PresentedGroup& a, const PresentedGroup& b) {
  const Matrix left = kron(a.relations, Matrix::identity(b.gens));
  const Matrix right = kron(Matrix::identity(a.gens), b.relations);
  return {a.gens * b.gens, hconcat(left, right)};
}

bool zero_in(const PresentedGroup& g, const Matrix& m) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!g.contains_zero(m.column(j))) return false;
  return true;
}

Matrix alternating(const std::vector<Matrix>& maps, std::size_t rows, std::size_t cols) {
  Matrix out(rows, cols);
  for (std::size_t i = 0; i < maps.size(); ++i) out = out + scaled(maps[i], i % 2 == 0 ? 1 : -1);
  return out;
}

// Simplicial module along one direction with the other index fixed.
SimplicialModule row(const BisimplicialGroup& v, std::size_t fixed, bool horizontal) {
  const std::size_t top = v.truncation();
  auto lvl = [&](std::size_t k) -> const PresentedGroup& { return horizontal ? v.levels[k][fixed] : v.levels[fixed][k]; };
  SimplicialModule out;
  out.ring = Ring::integers();
  for (std::size_t k = 0; k <= top; ++k) {
    out.levels.push_back(z_module(lvl(k)));
    out.faces.push_back(horizontal ? v.hfaces[k][fixed] : v.vfaces[fixed][k]);
    if (k < top) out.degeneracies.push_back(horizontal ? v.hdegen[k][fixed] : v.vdegen[fixed][k]);
  }
  return out;
}

std::size_t free_rank_of(const PresentedGroup& g) {
  if (g.relations.cols() != 0 && !g.relations.is_zero()) throw Unsupported("Hom needs free levels");
  return g.gens;
}

// Groups of the Z-module complex E^1 with the induced differential.
FGAbelianGroup homology_of_induced(const std::vector<Subquotient>& sq, const std::vector<Matrix>& d, std::size_t s) {
  ChainComplex c;
  for (const auto& q : sq) c.groups.push_back(PresentedGroup::cyclic_sum(q.canon.moduli));
  c.differentials.push_back(Matrix(0, c.groups[0].gens));
  for (const auto& m : d) c.differentials.push_back(m);
  return c.homology(static_cast<int>(s));
}

}  // namespace

std::optional<std::string> BisimplicialGroup::identity_failure() const {
  const std::size_t top = truncation();
  for (const auto& l : levels)
    if (l.size() != top + 1) return "levels are not square";
  for (std::size_t k = 0; k <= top; ++k) {
    if (auto f = row(*this, k, true).identity_failure()) return "horizontal, row " + std::to_string(k) + ": " + *f;
    if (auto f = row(*this, k, false).identity_failure()) return "vertical, column " + std::to_string(k) + ": " + *f;
  }
  auto at = [](std::size_t p, std::size_t q) { return " at (" + std::to_string(p) + ", " + std::to_string(q) + ")"; };
  for (std::size_t p = 1; p <= top; ++p)
    for (std::size_t q = 1; q <= top; ++q)
      for (std::size_t i = 0; i <= p; ++i)
        for (std::size_t j = 0; j <= q; ++j)
          if (!zero_in(levels[p - 1][q - 1], vfaces[p - 1][q][j] * hfaces[p][q][i] - hfaces[p][q - 1][i] * vfaces[p][q][j]))
            return "horizontal and vertical faces do not commute" + at(p, q);
  for (std::size_t p = 0; p < top; ++p)
    for (std::size_t q = 1; q <= top; ++q)
      for (std::size_t i = 0; i <= p; ++i)
        for (std::size_t j = 0; j <= q; ++j)
          if (!zero_in(levels[p + 1][q - 1], vfaces[p + 1][q][j] * hdegen[p][q][i] - hdegen[p][q - 1][i] * vfaces[p][q][j]))
            return "horizontal degeneracies and vertical faces do not commute" + at(p, q);
  for (std::size_t p = 1; p <= top; ++p)
    for (std::size_t q = 0; q < top; ++q)
      for (std::size_t i = 0; i <= p; ++i)
        for (std::size_t j = 0; j <= q; ++j)
          if (!zero_in(levels[p - 1][q + 1], hfaces[p][q + 1][i] * vdegen[p][q][j] - vdegen[p - 1][q][j] * hfaces[p][q][i]))
            return "vertical degeneracies and horizontal faces do not commute" + at(p, q);
  return std::nullopt;
}

BisimplicialGroup external_tensor(const SimplicialModule& a, const SimplicialModule& b) {
  if (a.ring->kind() != Ring::Kind::Integers || b.ring->kind() != Ring::Kind::Integers)
    throw Error("external tensor needs simplicial Z-modules");
  const std::size_t top = std::min(a.truncation(), b.truncation());
  BisimplicialGroup v;
  v.levels.assign(top + 1, std::vector<PresentedGroup>(top + 1));
  v.hfaces = v.vfaces = v.hdegen = v.vdegen = Cube(top + 1, std::vector<std::vector<Matrix>>(top + 1));
  for (std::size_t p = 0; p <= top; ++p)
    for (std::size_t q = 0; q <= top; ++q) {
      const Matrix ia = Matrix::identity(a.levels[p].gens()), ib = Matrix::identity(b.levels[q].gens());
      v.levels[p][q] = tensor(a.levels[p].group, b.levels[q].group);
      if (p > 0)
        for (const auto& d : a.faces[p]) v.hfaces[p][q].push_back(kron(d, ib));
      if (q > 0)
        for (const auto& d : b.faces[q]) v.vfaces[p][q].push_back(kron(ia, d));
      if (p < top)
        for (const auto& s : a.degeneracies[p]) v.hdegen[p][q].push_back(kron(s, ib));
      if (q < top)
        for (const auto& s : b.degeneracies[q]) v.vdegen[p][q].push_back(kron(ia, s));
    }
  return v;
}

BisimplicialGroup direct_sum(const BisimplicialGroup& a, const BisimplicialGroup& b) {
  const std::size_t top = std::min(a.truncation(), b.truncation());
  BisimplicialGroup v;
  v.levels.assign(top + 1, std::vector<PresentedGroup>(top + 1));
  v.hfaces = v.vfaces = v.hdegen = v.vdegen = Cube(top + 1, std::vector<std::vector<Matrix>>(top + 1));
  auto sum = [](const std::vector<Matrix>& x, const std::vector<Matrix>& y) {
    std::vector<Matrix> out;
    for (std::size_t i = 0; i < x.size(); ++i) out.push_back(block_diag(x[i], y[i]));
    return out;
  };
  for (std::size_t p = 0; p <= top; ++p)
    for (std::size_t q = 0; q <= top; ++q) {
      v.levels[p][q] = a.levels[p][q].direct_sum(b.levels[p][q]);
      v.hfaces[p][q] = sum(a.hfaces[p][q], b.hfaces[p][q]);
      v.vfaces[p][q] = sum(a.vfaces[p][q], b.vfaces[p][q]);
      if (p < top) v.hdegen[p][q] = sum(a.hdegen[p][q], b.hdegen[p][q]);
      if (q < top) v.vdegen[p][q] = sum(a.vdegen[p][q], b.vdegen[p][q]);
    }
  return v;
}

SimplicialModule diagonal(const BisimplicialGroup& v) {
  const std::size_t top = v.truncation();
  SimplicialModule out;
  out.ring = Ring::integers();
  for (std::size_t n = 0; n <= top; ++n) {
    out.levels.push_back(z_module(v.levels[n][n]));
    std::vector<Matrix> fs;
    if (n > 0)
      for (std::size_t i = 0; i <= n; ++i) fs.push_back(v.hfaces[n][n - 1][i] * v.vfaces[n][n][i]);
    out.faces.push_back(fs);
    if (n < top) {
      std::vector<Matrix> ss;
      for (std::size_t j = 0; j <= n; ++j) ss.push_back(v.hdegen[n][n + 1][j] * v.vdegen[n][n][j]);
      out.degeneracies.push_back(ss);
    }
  }
  return out;
}

ChainComplex total_complex(const BisimplicialGroup& v) {
  const std::size_t top = v.truncation();
  ChainComplex c;
  // offsets[n][p]: first coordinate of V_{p, n-p} in Tot_n
  std::vector<std::vector<std::size_t>> offsets(top + 1);
  for (std::size_t n = 0; n <= top; ++n) {
    PresentedGroup g = PresentedGroup::free(0);
    for (std::size_t p = 0; p <= n; ++p) {
      offsets[n].push_back(g.gens);
      g = g.direct_sum(v.levels[p][n - p]);
    }
    c.groups.push_back(g);
  }
  c.differentials.push_back(Matrix(0, c.groups[0].gens));
  for (std::size_t n = 1; n <= top; ++n) {
    Matrix d(c.groups[n - 1].gens, c.groups[n].gens);
    for (std::size_t p = 0; p <= n; ++p) {
      const std::size_t q = n - p;
      const std::size_t cols = v.levels[p][q].gens, col0 = offsets[n][p];
      auto put = [&](const Matrix& m, std::size_t row0) {
        for (std::size_t i = 0; i < m.rows(); ++i)
          for (std::size_t j = 0; j < cols; ++j) d(row0 + i, col0 + j) += m(i, j);
      };
      if (p > 0) put(alternating(v.hfaces[p][q], v.levels[p - 1][q].gens, cols), offsets[n - 1][p - 1]);
      if (q > 0) {
        const Matrix dv = alternating(v.vfaces[p][q], v.levels[p][q - 1].gens, cols);
        put(p % 2 == 0 ? dv : scaled(dv, -1), offsets[n - 1][p]);
      }
    }
    c.differentials.push_back(d);
  }
  return c;
}

Grid e2_page(const BisimplicialGroup& v, std::size_t range) {
  const std::size_t top = v.truncation();
  if (range >= top) throw Error("e2_page: range must be below the truncation");
  // vertical homology of each column p
  std::vector<std::vector<Subquotient>> vert(range + 2);
  for (std::size_t p = 0; p <= range + 1; ++p) {
    const ChainComplex col = row(v, p, false).alternating_complex();
    for (std::size_t t = 0; t <= range; ++t) vert[p].push_back(col.homology_subquotient(static_cast<int>(t)));
  }
  Grid grid(range + 1, std::vector<FGAbelianGroup>(range + 1));
  for (std::size_t t = 0; t <= range; ++t) {
    std::vector<Subquotient> sq;
    std::vector<Matrix> d;
    for (std::size_t p = 0; p <= range + 1; ++p) {
      sq.push_back(vert[p][t]);
      if (p > 0)
        d.push_back(induced_map(vert[p][t], vert[p - 1][t],
                                alternating(v.hfaces[p][t], v.levels[p - 1][t].gens, v.levels[p][t].gens)));
    }
    for (std::size_t s = 0; s <= range; ++s) grid[s][t] = homology_of_induced(sq, d, s);
  }
  return grid;
}

BicosimplicialGroup hom_bisimplicial(const BisimplicialGroup& v, const PresentedGroup& g) {
  const std::size_t top = v.truncation();
  const RingPtr z = Ring::integers();
  const Module gm = z_module(g);
  BicosimplicialGroup w;
  w.levels.assign(top + 1, std::vector<PresentedGroup>(top + 1));
  w.hcofaces = w.vcofaces = Cube(top + 1, std::vector<std::vector<Matrix>>(top + 1));
  for (std::size_t p = 0; p <= top; ++p)
    for (std::size_t q = 0; q <= top; ++q) {
      const std::size_t r = free_rank_of(v.levels[p][q]);
      w.levels[p][q] = g.power(r);
      if (p < top)
        for (const auto& d : v.hfaces[p + 1][q])
          w.hcofaces[p][q].push_back(hom_pullback(*z, gm, free_rank_of(v.levels[p + 1][q]), r, d));
      if (q < top)
        for (const auto& d : v.vfaces[p][q + 1])
          w.vcofaces[p][q].push_back(hom_pullback(*z, gm, free_rank_of(v.levels[p][q + 1]), r, d));
    }
  return w;
}

CosimplicialGroup diagonal(const BicosimplicialGroup& w) {
  const std::size_t top = w.truncation();
  CosimplicialGroup out;
  for (std::size_t n = 0; n <= top; ++n) out.levels.push_back(w.levels[n][n]);
  for (std::size_t n = 0; n < top; ++n) {
    std::vector<Matrix> cf;
    for (std::size_t i = 0; i <= n + 1; ++i) cf.push_back(w.hcofaces[n][n + 1][i] * w.vcofaces[n][n][i]);
    out.cofaces.push_back(cf);
  }
  return out;
}

CochainComplex total_complex(const BicosimplicialGroup& w) {
  const std::size_t top = w.truncation();
  CochainComplex c;
  std::vector<std::vector<std::size_t>> offsets(top + 1);
  for (std::size_t n = 0; n <= top; ++n) {
    PresentedGroup g = PresentedGroup::free(0);
    for (std::size_t p = 0; p <= n; ++p) {
      offsets[n].push_back(g.gens);
      g = g.direct_sum(w.levels[p][n - p]);
    }
    c.groups.push_back(g);
  }
  for (std::size_t n = 0; n < top; ++n) {
    Matrix d(c.groups[n + 1].gens, c.groups[n].gens);
    for (std::size_t p = 0; p <= n; ++p) {
      const std::size_t q = n - p;
      const std::size_t cols = w.levels[p][q].gens, col0 = offsets[n][p];
      auto put = [&](const Matrix& m, std::size_t row0) {
        for (std::size_t i = 0; i < m.rows(); ++i)
          for (std::size_t j = 0; j < cols; ++j) d(row0 + i, col0 + j) += m(i, j);
      };
      put(alternating(w.hcofaces[p][q], w.levels[p + 1][q].gens, cols), offsets[n + 1][p + 1]);
      const Matrix dv = alternating(w.vcofaces[p][q], w.levels[p][q + 1].gens, cols);
      put(p % 2 == 0 ? dv : scaled(dv, -1), offsets[n + 1][p]);
    }
    c.differentials.push_back(d);
  }
  return c;
}

Grid e2_page(const BicosimplicialGroup& w, std::size_t range) {
  const std::size_t top = w.truncation();
  if (range >= top) throw Error("e2_page: range must be below the truncation");
  std::vector<std::vector<Subquotient>> vert(range + 2);
  for (std::size_t p = 0; p <= range + 1; ++p) {
    CochainComplex col;
    for (std::size_t q = 0; q <= top; ++q) col.groups.push_back(w.levels[p][q]);
    for (std::size_t q = 0; q < top; ++q)
      col.differentials.push_back(alternating(w.vcofaces[p][q], w.levels[p][q + 1].gens, w.levels[p][q].gens));
    for (std::size_t t = 0; t <= range; ++t) vert[p].push_back(col.cohomology_subquotient(static_cast<int>(t)));
  }
  Grid grid(range + 1, std::vector<FGAbelianGroup>(range + 1));
  for (std::size_t t = 0; t <= range; ++t) {
    CochainComplex c;
    for (std::size_t p = 0; p <= range + 1; ++p) c.groups.push_back(PresentedGroup::cyclic_sum(vert[p][t].canon.moduli));
    for (std::size_t p = 0; p <= range; ++p)
      c.differentials.push_back(induced_map(vert[p][t], vert[p + 1][t],
                                            alternating(w.hcofaces[p][t], w.levels[p + 1][t].gens, w.levels[p][t].gens)));
    for (std::size_t s = 0; s <= range; ++s) grid[s][t] = c.cohomology(static_cast<int>(s));
  }
  return grid;
}

}  // namespace aq
