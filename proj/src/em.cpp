#include "aq/em.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "aq/error.hpp"

namespace aq {

namespace {

SemidirectProduct semidirect_level(const std::optional<FiniteAlgebra>& base, const Module& m) {
  if (!base) throw Error("levels as groups need a base algebra");
  return semidirect_product(XModule(*base, m));
}

Matrix zero_matrix(std::size_t r, std::size_t c) { return Matrix(r, c); }

void place(Matrix& dst, std::size_t r0, std::size_t c0, const Matrix& b) {
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) dst(r0 + r, c0 + c) = b(r, c);
}

std::size_t generator_count(const Module& m) {
  const auto r = free_rank(m);
  if (!r) throw Unsupported("map spaces need free levels in the source");
  return *r;
}

SimplicialModule truncate_to(const SimplicialModule& v, std::size_t n) {
  if (v.truncation() < n) throw Error("simplicial object is truncated below the required level");
  return v.truncated(n);
}

// Matrix of src-parameters -> dst-parameters for the map dst = q ∘ src.
Matrix pushforward(const MapSpace& src, const MapSpace& dst, const std::vector<Matrix>& q,
                   const std::vector<std::size_t>& gens) {
  Matrix out(dst.parameters(), src.parameters());
  for (std::size_t m = 0; m <= dst.truncation(); ++m)
    for (std::size_t t = 0; t < gens[m]; ++t)
      if (dst.fresh(m, t)) place(out, dst.offset(m, t), src.value_offset(m, t), q[m] * src.value_block(m, t));
  return out;
}

// All elements of a finite subquotient as ambient vectors.
std::optional<std::vector<Vector>> elements(const Subquotient& s, std::size_t limit) {
  std::size_t total = 1;
  for (Int mod : s.canon.moduli) {
    if (mod == 0) return std::nullopt;
    total *= static_cast<std::size_t>(mod);
    if (total > limit) return std::nullopt;
  }
  std::vector<Vector> out;
  Vector c(s.canon.moduli.size(), 0);
  const Matrix lift = s.basis * s.canon.from_canonical;
  for (std::size_t k = 0; k < total; ++k) {
    out.push_back(lift * c);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (++c[i] < s.canon.moduli[i]) break;
      c[i] = 0;
    }
  }
  return out;
}

}  // namespace

SemidirectProduct EMObject::level(std::size_t m) const { return semidirect_level(base, kernel.levels.at(m)); }

std::vector<int> EMObject::face(std::size_t m, std::size_t i) const {
  if (!base) throw Error("faces as group maps need a base algebra");
  if (m == 0 || m > truncation() || i > m) throw Error("face index out of range");
  const XModule src(*base, kernel.levels[m]), dst(*base, kernel.levels[m - 1]);
  const auto nx = static_cast<int>(src.group().order());
  std::vector<int> out(src.size() * static_cast<std::size_t>(nx));
  for (std::size_t k = 0; k < src.size(); ++k) {
    const int image = dst.index_of(kernel.d(m, i) * src.lift(static_cast<int>(k)));
    for (int x = 0; x < nx; ++x) out[k * static_cast<std::size_t>(nx) + static_cast<std::size_t>(x)] = image * nx + x;
  }
  return out;
}

EMObject eilenberg_maclane(const Module& k, std::size_t n, std::size_t truncation) {
  if (n < 1) throw Error("Eilenberg-MacLane objects need n >= 1");
  EMObject e;
  e.coefficients = k;
  e.n = n;
  e.kernel = dold_kan(shifted(k, n), truncation);
  return e;
}

EMObject eilenberg_maclane(const FiniteAlgebra& x, const XModule& k, std::size_t n, std::size_t truncation) {
  EMObject e = eilenberg_maclane(k.module(), n, truncation);
  e.base = x;
  return e;
}

SemidirectProduct PathObject::level(std::size_t m) const { return semidirect_level(base, object.levels.at(m)); }

PathObject path_object(const EMObject& e) {
  const Module& k = e.coefficients;
  const std::size_t g = k.gens(), n = e.n;
  const ModuleComplex target = shifted(k, n);

  ModuleComplex c;
  c.ring = k.ring;
  for (std::size_t i = 0; i + 1 < n; ++i) c.modules.push_back(Module::zero(k.ring));
  c.modules.push_back(k);
  c.modules.push_back(k.direct_sum(k));
  for (std::size_t i = 0; i + 1 < c.modules.size(); ++i)
    c.d.push_back(zero_matrix(c.modules[i].gens(), c.modules[i + 1].gens()));
  Matrix diff(g, 2 * g);
  place(diff, 0, 0, Matrix::identity(g));
  place(diff, 0, g, scaled(Matrix::identity(g), -1));
  c.d[n - 1] = diff;

  std::vector<Matrix> f0, f1, incl;
  for (std::size_t i = 0; i <= n; ++i) {
    const std::size_t src = c.modules[i].gens(), dst = target.modules[i].gens();
    f0.push_back(zero_matrix(dst, src));
    f1.push_back(zero_matrix(dst, src));
    incl.push_back(zero_matrix(src, dst));
  }
  place(f0[n], 0, 0, Matrix::identity(g));
  place(f1[n], 0, g, Matrix::identity(g));
  place(incl[n], 0, 0, Matrix::identity(g));
  place(incl[n], g, 0, Matrix::identity(g));

  PathObject p;
  const std::size_t trunc = e.truncation();
  p.object = dold_kan(c, trunc);
  p.p0 = dold_kan_map(c, target, f0, trunc);
  p.p1 = dold_kan_map(c, target, f1, trunc);
  p.constants = dold_kan_map(target, c, incl, trunc);
  p.base = e.base;
  return p;
}

MapSpace::MapSpace(const SimplicialModule& a, const SimplicialModule& d, std::size_t truncation)
    : truncation_(truncation) {
  if (a.truncation() < truncation || d.truncation() < truncation)
    throw Error("map space truncation exceeds the objects");
  const Ring& ring = *a.ring;
  const std::size_t dim = ring.dim(), one = ring.one();

  std::vector<std::size_t> gens;
  for (std::size_t m = 0; m <= truncation; ++m) gens.push_back(generator_count(a.levels[m]));

  // Degenerate generators: s_j of a generator one level down is exactly t.
  std::vector<std::vector<std::optional<std::pair<std::size_t, std::size_t>>>> degenerate(truncation + 1);
  for (std::size_t m = 0; m <= truncation; ++m) degenerate[m].resize(gens[m]);
  for (std::size_t m = 0; m < truncation; ++m)
    for (std::size_t j = 0; j <= m; ++j)
      for (std::size_t u = 0; u < gens[m]; ++u) {
        const Vector col = a.s(m, j).column(free_index(ring, u, one));
        std::optional<std::size_t> hit;
        bool unit = true;
        for (std::size_t r = 0; r < col.size() && unit; ++r) {
          if (col[r] == 0) continue;
          if (col[r] != 1 || hit || r % dim != one) unit = false;
          hit = r;
        }
        if (unit && hit) {
          auto& slot = degenerate[m + 1][*hit / dim];
          if (!slot) slot = std::make_pair(j, u);
        }
      }

  // Parameters: one block of D_m coordinates per fresh generator.
  std::vector<std::pair<std::size_t, std::size_t>> blocks;  // (level, generator)
  offsets_.resize(truncation + 1);
  fresh_.resize(truncation + 1);
  for (std::size_t m = 0; m <= truncation; ++m) {
    offsets_[m].assign(gens[m], 0);
    fresh_[m].assign(gens[m], false);
    for (std::size_t t = 0; t < gens[m]; ++t) {
      if (degenerate[m][t] || d.levels[m].gens() == 0) continue;
      fresh_[m][t] = true;
      offsets_[m][t] = params_;
      params_ += d.levels[m].gens();
      blocks.emplace_back(m, t);
    }
  }
  values_.resize(truncation + 1);
  for (std::size_t m = 0; m <= truncation; ++m) {
    const std::size_t dg = d.levels[m].gens();
    for (std::size_t t = 0; t < gens[m]; ++t) {
      if (fresh_[m][t]) {
        values_[m].push_back({offsets_[m][t], Matrix::identity(dg)});
      } else if (degenerate[m][t] && dg > 0) {
        const auto [j, u] = *degenerate[m][t];
        const Value& lower = values_[m - 1][u];
        values_[m].push_back({lower.offset, d.s(m - 1, j) * lower.entries});
      } else {
        values_[m].push_back({0, Matrix(dg, 0)});
      }
    }
  }

  std::size_t param_rel_cols = 0;
  for (const auto& [m, t] : blocks) param_rel_cols += d.levels[m].group.relations.cols();
  Matrix param_rel(params_, param_rel_cols);
  for (std::size_t c0 = 0; const auto& [m, t] : blocks) {
    place(param_rel, offsets_[m][t], c0, d.levels[m].group.relations);
    c0 += d.levels[m].group.relations.cols();
  }
  param_group_ = PresentedGroup(params_, param_rel);

  // f_m applied to an ambient vector of A_m.
  auto apply = [&](std::size_t m, const Vector& v) {
    Matrix out(d.levels[m].gens(), params_);
    for (std::size_t idx = 0; idx < v.size(); ++idx) {
      if (v[idx] == 0) continue;
      const Matrix& act = d.levels[m].action[idx % dim];
      const Value& val = values_[m][idx / dim];
      for (std::size_t r = 0; r < act.rows(); ++r)
        for (std::size_t k = 0; k < act.cols(); ++k) {
          if (act(r, k) == 0) continue;
          const Int f = detail::checked_mul(act(r, k), v[idx]);
          for (std::size_t c = 0; c < val.entries.cols(); ++c)
            if (val.entries(k, c) != 0) {
              Int& e = out(r, val.offset + c);
              e = detail::checked_add(e, detail::checked_mul(f, val.entries(k, c)));
            }
        }
    }
    return out;
  };
  // apply(...) minus the value pushed along q; the sign is irrelevant for the kernel
  auto defect = [&](Matrix applied, const Matrix& q, const Value& val) {
    const Matrix pushed = q * val.entries;
    for (std::size_t r = 0; r < pushed.rows(); ++r)
      for (std::size_t c = 0; c < pushed.cols(); ++c)
        applied(r, val.offset + c) = detail::checked_sub(applied(r, val.offset + c), pushed(r, c));
    return applied;
  };

  // Constraint blocks are kept sparse and deduplicated through a hash.
  std::vector<std::size_t> row_levels, block_start;
  std::unordered_multimap<std::size_t, std::size_t> seen;
  auto add = [&](std::size_t level, const Matrix& block) {
    if (block.rows() == 0 || block.is_zero()) return;
    SparseRows sparse = sparse_rows(block);
    std::size_t h = level;
    for (const auto& row : sparse) {
      h = h * 1000003u ^ 0x9e3779b9u;
      for (const auto& [j, v] : row) h = (h * 1000003u ^ j) * 31u ^ static_cast<std::size_t>(v);
    }
    const auto [lo, hi] = seen.equal_range(h);
    for (auto it = lo; it != hi; ++it) {
      const std::size_t k = it->second;
      if (row_levels[k] == level &&
          std::equal(sparse.begin(), sparse.end(), constraints_.begin() + static_cast<std::ptrdiff_t>(block_start[k])))
        return;
    }
    seen.emplace(h, row_levels.size());
    row_levels.push_back(level);
    block_start.push_back(constraints_.size());
    for (auto& row : sparse) constraints_.push_back(std::move(row));
  };
  for (std::size_t m = 1; m <= truncation; ++m)
    for (std::size_t i = 0; i <= m; ++i)
      for (std::size_t t = 0; t < gens[m]; ++t)
        add(m - 1, defect(apply(m - 1, a.d(m, i).column(free_index(ring, t, one))), d.d(m, i), values_[m][t]));
  for (std::size_t m = 0; m < truncation; ++m)
    for (std::size_t j = 0; j <= m; ++j)
      for (std::size_t t = 0; t < gens[m]; ++t)
        add(m + 1, defect(apply(m + 1, a.s(m, j).column(free_index(ring, t, one))), d.s(m, j), values_[m][t]));

  target_relations_.reserve(constraints_.size());
  for (const std::size_t level : row_levels) {
    const std::size_t g = d.levels[level].gens();
    const Matrix& rel = d.levels[level].group.relations;
    for (std::size_t i = 0; i < g; ++i) {
      auto& row = target_relations_.emplace_back();
      if (rel.rows() != g) continue;
      for (std::size_t j = 0; j < rel.cols(); ++j)
        if (rel(i, j) != 0) row.emplace(target_relation_cols_ + j, rel(i, j));
    }
    if (rel.rows() == g) target_relation_cols_ += rel.cols();
  }
}

Subquotient MapSpace::maps() const { return maps_modulo(Matrix(params_, 0)); }

Subquotient MapSpace::maps_modulo(const Matrix& incoming) const {
  return make_subquotient(param_group_, constraints_, target_relations_, target_relation_cols_, incoming);
}

Vector MapSpace::parameters_of(const std::vector<std::vector<Vector>>& values) const {
  Vector out(params_, 0);
  for (std::size_t m = 0; m <= truncation_; ++m)
    for (std::size_t t = 0; t < fresh_[m].size(); ++t)
      if (fresh_[m][t])
        for (std::size_t r = 0; r < values.at(m).at(t).size(); ++r) out[offsets_[m][t] + r] = values[m][t][r];
  return out;
}

std::vector<std::vector<Vector>> MapSpace::values_of(const Vector& params) const {
  std::vector<std::vector<Vector>> out(truncation_ + 1);
  for (std::size_t m = 0; m <= truncation_; ++m)
    for (const auto& v : values_[m]) {
      Vector x(v.entries.cols());
      for (std::size_t c = 0; c < x.size(); ++c) x[c] = params.at(v.offset + c);
      out[m].push_back(v.entries * x);
    }
  return out;
}

namespace {

struct Spaces {
  MapSpace maps_to_e, maps_to_path;
  Matrix p0, p1;  // path parameters -> E parameters
};

Spaces build_spaces(const SimplicialModule& a, const EMObject& e) {
  const std::size_t top = e.n + 1;
  if (e.truncation() < top) throw Error("Eilenberg-MacLane object is truncated below n+1");
  // the top levels can be large, so only copy when something is cut off
  std::optional<SimplicialModule> cut;
  if (a.truncation() != top) cut = truncate_to(a, top);
  const SimplicialModule& src = cut ? *cut : a;
  const PathObject path = path_object(e);
  MapSpace me(src, e.kernel.truncated(top), top);
  MapSpace mp(src, path.object.truncated(top), top);
  std::vector<std::size_t> gens;
  for (std::size_t m = 0; m <= top; ++m) gens.push_back(generator_count(src.levels[m]));
  Matrix p0 = pushforward(mp, me, path.p0, gens);
  Matrix p1 = pushforward(mp, me, path.p1, gens);
  return {std::move(me), std::move(mp), std::move(p0), std::move(p1)};
}

}  // namespace

HomotopyClasses homotopy_classes(const SimplicialModule& a, const EMObject& e) {
  const Spaces s = build_spaces(a, e);
  const Matrix null = (s.p0 - s.p1) * s.maps_to_path.maps().basis;
  return {s.maps_to_e.maps_modulo(null)};
}

std::optional<RelationCheck> check_homotopy_relation(const SimplicialModule& a, const EMObject& e,
                                                     std::size_t limit) {
  const Spaces s = build_spaces(a, e);
  const auto maps = elements(s.maps_to_e.maps(), limit);
  const auto homotopies = elements(s.maps_to_path.maps(), limit);
  if (!maps || !homotopies) return std::nullopt;

  const CanonicalCoords canon = canonical_coords(s.maps_to_e.parameter_group());
  auto key = [&](const Vector& v) { return canon.reduce(canon.to_canonical * v); };

  std::map<Vector, std::size_t> index;
  for (const auto& f : *maps) index.emplace(key(f), index.size());
  const std::size_t count = index.size();
  std::vector<std::vector<bool>> rel(count, std::vector<bool>(count, false));
  for (const auto& h : *homotopies) {
    const auto i = index.find(key(s.p0 * h)), j = index.find(key(s.p1 * h));
    if (i == index.end() || j == index.end()) throw Error("path projections do not land in the map space");
    rel[i->second][j->second] = true;
  }

  RelationCheck out;
  out.maps = count;
  out.reflexive = out.symmetric = out.transitive = true;
  for (std::size_t i = 0; i < count; ++i) {
    if (!rel[i][i]) out.reflexive = false;
    for (std::size_t j = 0; j < count; ++j) {
      if (rel[i][j] != rel[j][i]) out.symmetric = false;
      if (!rel[i][j]) continue;
      for (std::size_t k = 0; k < count; ++k)
        if (rel[j][k] && !rel[i][k]) out.transitive = false;
    }
  }
  std::vector<bool> seen(count, false);
  for (std::size_t i = 0; i < count; ++i) {
    if (seen[i]) continue;
    ++out.classes;
    for (std::size_t j = 0; j < count; ++j)
      if (rel[i][j]) seen[j] = true;
  }
  return out;
}

}  // namespace aq
