#pragma once

// Finitely generated abelian groups: canonical invariants, presentations,
// subquotients with explicit coordinates, and (co)chain complexes of
// presented groups.

#include <map>
#include <string>
#include <vector>

#include "aq/matrix.hpp"

namespace aq {

// Z^rank ⊕ Z/t1 ⊕ ... ⊕ Z/tk with t1 | t2 | ... | tk and every ti >= 2.
struct FGAbelianGroup {
  Int rank = 0;
  std::vector<Int> torsion;

  static FGAbelianGroup zero() { return {}; }
  static FGAbelianGroup free(Int r) { return {r, {}}; }
  // Z/n, with n == 0 meaning Z.
  static FGAbelianGroup cyclic(Int n);
  // Canonicalizes an arbitrary list of cyclic orders (0 for Z, 1 dropped).
  static FGAbelianGroup from_cyclic_orders(const std::vector<Int>& orders);
  // Invariants of a finite abelian group given by its addition table, from
  // the counts |{x : p^k x = 0}|.
  static FGAbelianGroup from_addition_table(const std::vector<std::vector<int>>& add, int zero);

  bool is_zero() const { return rank == 0 && torsion.empty(); }
  bool is_finite() const { return rank == 0; }
  // Order of a finite group; throws for infinite groups.
  Int order() const;
  FGAbelianGroup direct_sum(const FGAbelianGroup& other) const;
  // Primary decomposition as a multiset of prime powers (finite part only).
  std::vector<Int> elementary_divisors() const;
  std::string to_string() const;

  friend bool operator==(const FGAbelianGroup&, const FGAbelianGroup&) = default;
};

// Z^gens / (column span of relations).
struct PresentedGroup {
  std::size_t gens = 0;
  Matrix relations;  // gens x r

  PresentedGroup() : relations(0, 0) {}
  PresentedGroup(std::size_t g, Matrix rel) : gens(g), relations(std::move(rel)) {}
  static PresentedGroup free(std::size_t g) { return {g, Matrix(g, 0)}; }
  // Z/n1 ⊕ ... ⊕ Z/nk (0 for Z).
  static PresentedGroup cyclic_sum(const std::vector<Int>& orders);
  // Direct sum of `copies` copies.
  PresentedGroup power(std::size_t copies) const;
  PresentedGroup direct_sum(const PresentedGroup& other) const;

  FGAbelianGroup invariants() const;
  bool contains_zero(const Vector& v) const;  // v represents 0
};

// Canonical coordinates of a presented group: x maps to (to_canonical * x)
// with coordinate i read modulo moduli[i] (0 means a free coordinate).
struct CanonicalCoords {
  Matrix to_canonical;
  Matrix from_canonical;  // columns are ambient lifts of canonical generators
  std::vector<Int> moduli;

  Vector reduce(const Vector& canonical) const;
};
CanonicalCoords canonical_coords(const PresentedGroup& g);

// Subgroup Z of a presented ambient group, modulo a further subgroup; the
// standard shape of a homology group.
struct Subquotient {
  std::size_t ambient_gens = 0;
  Matrix basis;             // ambient_gens x z, a lattice basis of the lift of Z
  PresentedGroup quotient;  // Z^z / (boundaries + relations) in basis coordinates
  CanonicalCoords canon;
  LatticeSolver solver;     // for basis

  FGAbelianGroup group() const { return quotient.invariants(); }
  // Coordinates of an ambient lift of an element of Z; throws if v is not in Z.
  Vector coordinates(const Vector& ambient) const;
  Vector canonical(const Vector& ambient) const;
};

// {x : a x ∈ target_relations} / (span(incoming) + source_relations).
Subquotient make_subquotient(const PresentedGroup& source, const Matrix& outgoing,
                             const PresentedGroup& target, const Matrix& incoming);
// Same, with outgoing and the target relations as sparse rows (one per target
// generator).
Subquotient make_subquotient(const PresentedGroup& source, const SparseRows& outgoing,
                             const SparseRows& target_relations, std::size_t relation_cols, const Matrix& incoming);

// Matrix of the map induced by `ambient_map` in canonical coordinates of the
// two subquotients (rows: dst canonical, cols: src canonical).
Matrix induced_map(const Subquotient& src, const Subquotient& dst, const Matrix& ambient_map);

// Homomorphism checks between presented groups; f is a lift Z^a -> Z^b.
bool respects_relations(const PresentedGroup& a, const PresentedGroup& b, const Matrix& f);
bool is_injective(const PresentedGroup& a, const PresentedGroup& b, const Matrix& f);
bool is_surjective(const PresentedGroup& a, const PresentedGroup& b, const Matrix& f);
inline bool is_isomorphism(const PresentedGroup& a, const PresentedGroup& b, const Matrix& f) {
  return respects_relations(a, b, f) && is_injective(a, b, f) && is_surjective(a, b, f);
}

// Chain complex C_lo, ..., C_hi with d_n : C_n -> C_{n-1}.
struct ChainComplex {
  int lowest = 0;
  std::vector<PresentedGroup> groups;  // groups[i] is C_{lowest+i}
  std::vector<Matrix> differentials;   // differentials[i] : C_{lowest+i} -> C_{lowest+i-1}; [0] is 0 x g

  int highest() const { return lowest + static_cast<int>(groups.size()) - 1; }
  const PresentedGroup& at(int n) const { return groups.at(static_cast<std::size_t>(n - lowest)); }
  // d_n (zero map when either side is outside the stored range)
  Matrix d(int n) const;
  Subquotient homology_subquotient(int n) const;
  FGAbelianGroup homology(int n) const { return homology_subquotient(n).group(); }
  // d_{n-1} d_n == 0 in the target presentation for every n.
  bool squares_to_zero() const;
};

// Cochain complex C^lo, ..., C^hi with d^n : C^n -> C^{n+1}.
struct CochainComplex {
  int lowest = 0;
  std::vector<PresentedGroup> groups;
  std::vector<Matrix> differentials;  // differentials[i] : C^{lowest+i} -> C^{lowest+i+1}

  int highest() const { return lowest + static_cast<int>(groups.size()) - 1; }
  const PresentedGroup& at(int n) const { return groups.at(static_cast<std::size_t>(n - lowest)); }
  Matrix d(int n) const;
  Subquotient cohomology_subquotient(int n) const;
  FGAbelianGroup cohomology(int n) const { return cohomology_subquotient(n).group(); }
  bool squares_to_zero() const;
};

}  // namespace aq
