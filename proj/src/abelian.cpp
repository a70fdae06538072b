#include "aq/abelian.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace aq {

namespace {

std::vector<std::pair<Int, int>> factorize(Int n) {
  std::vector<std::pair<Int, int>> out;
  for (Int p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

// Invariant factors from a multiset of prime powers.
std::vector<Int> combine_prime_powers(const std::vector<Int>& prime_powers) {
  std::map<Int, std::vector<Int>> by_prime;
  for (Int q : prime_powers) by_prime[factorize(q).front().first].push_back(q);
  std::size_t longest = 0;
  for (auto& [p, v] : by_prime) {
    std::sort(v.rbegin(), v.rend());
    longest = std::max(longest, v.size());
  }
  std::vector<Int> factors(longest, 1);
  for (auto& [p, v] : by_prime)
    for (std::size_t j = 0; j < v.size(); ++j) factors[j] = detail::checked_mul(factors[j], v[j]);
  std::sort(factors.begin(), factors.end());
  return factors;
}

}  // namespace

FGAbelianGroup FGAbelianGroup::cyclic(Int n) {
  if (n < 0) n = -n;
  if (n == 0) return free(1);
  if (n == 1) return zero();
  return {0, {n}};
}

FGAbelianGroup FGAbelianGroup::from_cyclic_orders(const std::vector<Int>& orders) {
  FGAbelianGroup g;
  std::vector<Int> powers;
  for (Int n : orders) {
    if (n < 0) n = -n;
    if (n == 0) {
      ++g.rank;
      continue;
    }
    for (auto [p, e] : factorize(n)) {
      Int q = 1;
      for (int i = 0; i < e; ++i) q *= p;
      powers.push_back(q);
    }
  }
  g.torsion = combine_prime_powers(powers);
  return g;
}

FGAbelianGroup FGAbelianGroup::from_addition_table(const std::vector<std::vector<int>>& add, int zero) {
  const Int n = static_cast<Int>(add.size());
  auto multiple = [&](int x, Int m) {
    int acc = zero;
    for (Int i = 0; i < m; ++i) acc = add[static_cast<std::size_t>(acc)][static_cast<std::size_t>(x)];
    return acc;
  };
  std::vector<Int> powers;
  for (auto [p, e] : factorize(n)) {
    // number of cyclic p-factors of order >= p^k is log_p(c_k / c_{k-1})
    std::vector<int> at_least;
    Int prev = 1, pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      Int count = 0;
      for (int x = 0; x < n; ++x)
        if (multiple(x, pk) == zero) ++count;
      Int ratio = count / prev;
      int logp = 0;
      while (ratio > 1) {
        ratio /= p;
        ++logp;
      }
      at_least.push_back(logp);
      prev = count;
    }
    Int q = 1;
    for (std::size_t k = 0; k < at_least.size(); ++k) {
      q *= p;
      const int next = k + 1 < at_least.size() ? at_least[k + 1] : 0;
      for (int i = 0; i < at_least[k] - next; ++i) powers.push_back(q);
    }
  }
  return {0, combine_prime_powers(powers)};
}

Int FGAbelianGroup::order() const {
  if (rank != 0) throw Error("order of an infinite group");
  Int o = 1;
  for (Int t : torsion) o = detail::checked_mul(o, t);
  return o;
}

FGAbelianGroup FGAbelianGroup::direct_sum(const FGAbelianGroup& other) const {
  std::vector<Int> orders = torsion;
  orders.insert(orders.end(), other.torsion.begin(), other.torsion.end());
  FGAbelianGroup g = from_cyclic_orders(orders);
  g.rank = rank + other.rank;
  return g;
}

std::vector<Int> FGAbelianGroup::elementary_divisors() const {
  std::vector<Int> out;
  for (Int t : torsion)
    for (auto [p, e] : factorize(t)) {
      Int q = 1;
      for (int i = 0; i < e; ++i) q *= p;
      out.push_back(q);
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::string FGAbelianGroup::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (Int t : torsion) {
    os << (first ? "" : " + ") << "Z/" << t;
    first = false;
  }
  if (rank > 0) {
    os << (first ? "" : " + ") << "Z";
    if (rank > 1) os << "^" << rank;
  }
  return os.str();
}

PresentedGroup PresentedGroup::cyclic_sum(const std::vector<Int>& orders) {
  std::size_t nonfree = 0;
  for (Int o : orders)
    if (o != 0) ++nonfree;
  Matrix rel(orders.size(), nonfree);
  std::size_t c = 0;
  for (std::size_t i = 0; i < orders.size(); ++i)
    if (orders[i] != 0) rel(i, c++) = orders[i];
  return {orders.size(), rel};
}

PresentedGroup PresentedGroup::power(std::size_t copies) const {
  const Matrix a = relations.rows() == gens ? relations : Matrix(gens, 0);
  Matrix rel(gens * copies, a.cols() * copies);
  for (std::size_t c = 0; c < copies; ++c)
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) rel(c * gens + i, c * a.cols() + j) = a(i, j);
  return {gens * copies, rel};
}

PresentedGroup PresentedGroup::direct_sum(const PresentedGroup& other) const {
  Matrix a = relations.rows() == gens ? relations : Matrix(gens, 0);
  Matrix b = other.relations.rows() == other.gens ? other.relations : Matrix(other.gens, 0);
  return {gens + other.gens, block_diag(a, b)};
}

namespace {

// A relation with a unit entry eliminates one generator; only the residual
// presentation needs a Smith form.
struct Presolved {
  struct Substitution {
    std::size_t gen;
    std::vector<std::pair<std::size_t, Int>> terms;  // class of e_gen
  };
  std::size_t gens = 0;
  std::vector<std::size_t> residual_gens;
  Matrix residual;
  std::vector<Substitution> subs;
};

Presolved presolve(const PresentedGroup& g) {
  using detail::checked_mul;
  using detail::checked_sub;
  const std::size_t n = g.gens, r = g.relations.rows() == n ? g.relations.cols() : 0;
  std::vector<std::map<std::size_t, Int>> rels(r);
  std::vector<std::set<std::size_t>> in_gen(n);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (g.relations(i, j) != 0) {
        rels[j][i] = g.relations(i, j);
        in_gen[i].insert(j);
      }

  Presolved out;
  out.gens = n;
  std::vector<bool> eliminated(n, false), alive(r, true);
  for (std::size_t j = 0; j < r; ++j) {
    std::size_t p = n;
    for (const auto& [i, v] : rels[j])
      if ((v == 1 || v == -1) && (p == n || in_gen[i].size() < in_gen[p].size())) p = i;
    if (p == n) continue;
    const Int u = rels[j][p];
    const auto pivot = rels[j];
    for (std::size_t k : std::vector<std::size_t>(in_gen[p].begin(), in_gen[p].end())) {
      if (k == j) continue;
      const Int f = checked_mul(rels[k][p], u);
      for (const auto& [i, v] : pivot) {
        Int& e = rels[k][i];
        if (e == 0) in_gen[i].insert(k);
        e = checked_sub(e, checked_mul(f, v));
        if (e == 0) {
          rels[k].erase(i);
          in_gen[i].erase(k);
        }
      }
    }
    Presolved::Substitution sub{p, {}};
    for (const auto& [i, v] : pivot) {
      in_gen[i].erase(j);
      if (i != p) sub.terms.emplace_back(i, checked_mul(-u, v));
    }
    out.subs.push_back(std::move(sub));
    rels[j].clear();
    alive[j] = false;
    eliminated[p] = true;
  }

  std::vector<std::size_t> position(n, 0), residual_rels;
  for (std::size_t i = 0; i < n; ++i)
    if (!eliminated[i]) {
      position[i] = out.residual_gens.size();
      out.residual_gens.push_back(i);
    }
  for (std::size_t j = 0; j < r; ++j)
    if (alive[j] && !rels[j].empty()) residual_rels.push_back(j);
  out.residual = Matrix(out.residual_gens.size(), residual_rels.size());
  for (std::size_t t = 0; t < residual_rels.size(); ++t)
    for (const auto& [i, v] : rels[residual_rels[t]]) out.residual(position[i], t) = v;
  return out;
}

}  // namespace

FGAbelianGroup PresentedGroup::invariants() const {
  FGAbelianGroup g;
  std::vector<Int> orders;
  const Presolved pre = presolve(*this);
  const auto divisors = pre.residual.cols() == 0 ? std::vector<BigInt>{} : elementary_divisors(pre.residual);
  for (const auto& d : divisors) {
    if (d > std::numeric_limits<Int>::max()) throw OverflowError();
    if (d != 1) orders.push_back(static_cast<Int>(d));
  }
  g = FGAbelianGroup::from_cyclic_orders(orders);
  g.rank = static_cast<Int>(pre.residual_gens.size()) - static_cast<Int>(divisors.size());
  return g;
}

bool PresentedGroup::contains_zero(const Vector& v) const { return in_lattice(relations, v); }

Vector CanonicalCoords::reduce(const Vector& canonical) const {
  Vector out = canonical;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (moduli[i] != 0) {
      out[i] %= moduli[i];
      if (out[i] < 0) out[i] += moduli[i];
    }
  return out;
}

CanonicalCoords canonical_coords(const PresentedGroup& g) {
  using detail::checked_add;
  using detail::checked_mul;
  const Presolved pre = presolve(g);
  const std::size_t n = g.gens, m = pre.residual_gens.size();
  const auto s = smith_normal_form(pre.residual);

  // projection onto residual coordinates
  Matrix proj(m, n);
  for (std::size_t i = 0; i < m; ++i) proj(i, pre.residual_gens[i]) = 1;
  for (auto sub = pre.subs.rbegin(); sub != pre.subs.rend(); ++sub)
    for (std::size_t row = 0; row < m; ++row) {
      Int x = 0;
      for (const auto& [i, v] : sub->terms) x = checked_add(x, checked_mul(v, proj(row, i)));
      proj(row, sub->gen) = x;
    }

  std::vector<std::size_t> keep;
  CanonicalCoords cc;
  for (std::size_t i = 0; i < m; ++i) {
    if (i < s.rank) {
      const Int d = s.D(i, i);
      if (d == 1) continue;
      keep.push_back(i);
      cc.moduli.push_back(d);
    } else {
      keep.push_back(i);
      cc.moduli.push_back(0);
    }
  }
  cc.to_canonical = select_rows(s.U, keep) * proj;
  const Matrix lifts = select_cols(s.Uinv, keep);
  cc.from_canonical = Matrix(n, keep.size());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t t = 0; t < keep.size(); ++t) cc.from_canonical(pre.residual_gens[i], t) = lifts(i, t);
  return cc;
}

Vector Subquotient::coordinates(const Vector& ambient) const {
  auto c = solver.solve(ambient);
  if (!c) throw Error("element does not lie in the subgroup");
  return *c;
}

Vector Subquotient::canonical(const Vector& ambient) const {
  return canon.reduce(canon.to_canonical * coordinates(ambient));
}

namespace {

Subquotient finish_subquotient(const PresentedGroup& source, Matrix basis, const Matrix& incoming) {
  Subquotient sq;
  sq.ambient_gens = source.gens;
  sq.basis = std::move(basis);
  sq.solver = LatticeSolver(sq.basis);
  std::vector<Vector> denominators;
  for (std::size_t j = 0; j < incoming.cols(); ++j) denominators.push_back(sq.coordinates(incoming.column(j)));
  for (std::size_t j = 0; j < source.relations.cols(); ++j)
    denominators.push_back(sq.coordinates(source.relations.column(j)));
  sq.quotient = PresentedGroup(sq.basis.cols(), from_columns(sq.basis.cols(), denominators));
  sq.canon = canonical_coords(sq.quotient);
  return sq;
}

}  // namespace

Subquotient make_subquotient(const PresentedGroup& source, const Matrix& outgoing, const PresentedGroup& target,
                             const Matrix& incoming) {
  const Matrix out = outgoing.cols() == source.gens ? outgoing : Matrix(target.gens, source.gens);
  return finish_subquotient(
      source, preimage_lattice(out, target.relations.rows() == target.gens ? target.relations : Matrix(target.gens, 0)),
      incoming);
}

Subquotient make_subquotient(const PresentedGroup& source, const SparseRows& outgoing,
                             const SparseRows& target_relations, std::size_t relation_cols, const Matrix& incoming) {
  return finish_subquotient(source, preimage_lattice(outgoing, source.gens, target_relations, relation_cols),
                            incoming);
}

Matrix induced_map(const Subquotient& src, const Subquotient& dst, const Matrix& ambient_map) {
  const std::size_t cols = src.canon.moduli.size();
  const std::size_t rows = dst.canon.moduli.size();
  Matrix m(rows, cols);
  for (std::size_t j = 0; j < cols; ++j) {
    const Vector lift = src.basis * src.canon.from_canonical.column(j);
    const Vector image = dst.canonical(ambient_map * lift);
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = image[i];
  }
  return m;
}

bool respects_relations(const PresentedGroup& a, const PresentedGroup& b, const Matrix& f) {
  if (a.relations.cols() == 0) return true;
  const Matrix img = f * a.relations;
  for (std::size_t j = 0; j < img.cols(); ++j)
    if (!in_lattice(b.relations, img.column(j))) return false;
  return true;
}

bool is_injective(const PresentedGroup& a, const PresentedGroup& b, const Matrix& f) {
  const Matrix k = preimage_lattice(f, b.relations.rows() == b.gens ? b.relations : Matrix(b.gens, 0));
  for (std::size_t j = 0; j < k.cols(); ++j)
    if (!in_lattice(a.relations, k.column(j))) return false;
  return true;
}

bool is_surjective(const PresentedGroup&, const PresentedGroup& b, const Matrix& f) {
  if (b.gens == 0) return true;
  const Matrix joint = hconcat(f, b.relations.rows() == b.gens ? b.relations : Matrix(b.gens, 0));
  const auto divisors = elementary_divisors(joint);
  if (divisors.size() != b.gens) return false;
  for (const auto& d : divisors)
    if (d != 1) return false;
  return true;
}

Matrix ChainComplex::d(int n) const {
  const bool has_src = n >= lowest && n <= highest();
  const bool has_dst = n - 1 >= lowest && n - 1 <= highest();
  const std::size_t cols = has_src ? at(n).gens : 0;
  const std::size_t rows = has_dst ? at(n - 1).gens : 0;
  if (has_src && has_dst) return differentials.at(static_cast<std::size_t>(n - lowest));
  return Matrix(rows, cols);
}

Subquotient ChainComplex::homology_subquotient(int n) const {
  const PresentedGroup empty = PresentedGroup::free(0);
  const PresentedGroup& target = (n - 1 >= lowest && n - 1 <= highest()) ? at(n - 1) : empty;
  return make_subquotient(at(n), d(n), target, d(n + 1));
}

bool ChainComplex::squares_to_zero() const {
  for (int n = lowest + 2; n <= highest(); ++n) {
    const Matrix dd = d(n - 1) * d(n);
    for (std::size_t j = 0; j < dd.cols(); ++j)
      if (!at(n - 2).contains_zero(dd.column(j))) return false;
  }
  return true;
}

Matrix CochainComplex::d(int n) const {
  const bool has_src = n >= lowest && n <= highest();
  const bool has_dst = n + 1 >= lowest && n + 1 <= highest();
  const std::size_t cols = has_src ? at(n).gens : 0;
  const std::size_t rows = has_dst ? at(n + 1).gens : 0;
  if (has_src && has_dst) return differentials.at(static_cast<std::size_t>(n - lowest));
  return Matrix(rows, cols);
}

Subquotient CochainComplex::cohomology_subquotient(int n) const {
  const PresentedGroup empty = PresentedGroup::free(0);
  const PresentedGroup& target = (n + 1 >= lowest && n + 1 <= highest()) ? at(n + 1) : empty;
  return make_subquotient(at(n), d(n), target, d(n - 1));
}

bool CochainComplex::squares_to_zero() const {
  for (int n = lowest; n + 2 <= highest(); ++n) {
    const Matrix dd = d(n + 1) * d(n);
    for (std::size_t j = 0; j < dd.cols(); ++j)
      if (!at(n + 2).contains_zero(dd.column(j))) return false;
  }
  return true;
}

}  // namespace aq
