#pragma once

// The registered coefficient rings (Z, Z/m, Z[G] for finite G) and finitely
// presented modules over them, stored as presented abelian groups with one
// action matrix per Z-basis element of the ring.

#include <memory>
#include <string>
#include <vector>

#include "aq/abelian.hpp"

namespace aq {

// A finite group by its multiplication table.
struct GroupTable {
  std::vector<std::string> labels;
  std::vector<std::vector<int>> mul;
  int identity = 0;
  std::vector<int> inverse;

  std::size_t order() const { return labels.size(); }
  int operator()(int a, int b) const { return mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  static GroupTable trivial();
  static GroupTable cyclic(int n);  // labels "0".."n-1"
  // Fills identity/inverse from mul; throws if mul is not a group table.
  void complete();
  bool is_abelian() const;
};

class Ring {
 public:
  enum class Kind { Integers, IntegersMod, GroupRing };

  static std::shared_ptr<const Ring> integers();
  static std::shared_ptr<const Ring> integers_mod(Int m);
  static std::shared_ptr<const Ring> group_ring(GroupTable g);
  // "Z", "Z/4"; group rings need a table so are not parsed here.
  static std::shared_ptr<const Ring> from_name(const std::string& name);

  Kind kind() const { return kind_; }
  Int characteristic() const { return modulus_; }  // 0 for Z and Z[G]
  // Size of the Z-basis (1, 1, |G|).
  std::size_t dim() const { return kind_ == Kind::GroupRing ? group_.order() : 1; }
  // Product of basis elements i*j (a basis element again).
  std::size_t basis_mul(std::size_t i, std::size_t j) const;
  std::size_t basis_inverse(std::size_t i) const;  // antipode on Z[G]; identity otherwise
  std::size_t one() const { return kind_ == Kind::GroupRing ? static_cast<std::size_t>(group_.identity) : 0; }
  const GroupTable& group() const { return group_; }
  std::string name() const;
  // Global dimension is at most one (hereditary): only Z here.
  bool hereditary() const { return kind_ == Kind::Integers; }

 private:
  Kind kind_ = Kind::Integers;
  Int modulus_ = 0;
  GroupTable group_;
};
using RingPtr = std::shared_ptr<const Ring>;

// Left R-module: underlying presented group plus action[b] for each basis
// element b of R.
struct Module {
  RingPtr ring;
  PresentedGroup group;
  std::vector<Matrix> action;

  static Module free(RingPtr r, std::size_t rank);
  // Z^k ⊕ Z/n1 ⊕ ... with trivial action of G (or the unique Z/m action).
  static Module trivial(RingPtr r, const std::vector<Int>& cyclic_orders);
  static Module zero(RingPtr r) { return free(std::move(r), 0); }

  std::size_t gens() const { return group.gens; }
  FGAbelianGroup invariants() const { return group.invariants(); }
  // Action relations hold: each action matrix respects relations, the unit acts
  // as identity, basis products compose, and the characteristic kills M.
  bool is_valid() const;
  Module direct_sum(const Module& other) const;
};

// f : Z^a.gens -> Z^b.gens commutes with the actions and respects relations.
bool is_module_hom(const Module& a, const Module& b, const Matrix& f);

// Free module R^rank in Z-coordinates: index (generator i, basis b) is i*dim+b.
inline std::size_t free_index(const Ring& r, std::size_t gen, std::size_t basis) { return gen * r.dim() + basis; }

// The R-linear map R^cols -> target sending generator j to images[j]
// (Z-coordinates in target), as a Z-matrix.
Matrix extend_linearly(const Module& target, const std::vector<Vector>& images);

// Greedily removes generators that lie in the R-span of the others (plus the
// relations of the ambient module). Returns kept indices.
std::vector<std::size_t> prune_generators(const Module& ambient, const std::vector<Vector>& gens);

// P_len -> ... -> P_0 -> M, each P_k free of rank ranks[k].
struct FreeResolution {
  Module target;
  std::vector<std::size_t> ranks;
  Matrix augmentation;               // Z-matrix P_0 -> target
  std::vector<Matrix> differentials;  // differentials[k] : P_{k+1} -> P_k (Z-matrices)

  std::size_t length() const { return differentials.size(); }
  Module level(std::size_t k) const { return Module::free(target.ring, ranks.at(k)); }
};

FreeResolution resolve(const Module& m, std::size_t length);

// Hom_R(P_*, G) and G ⊗_R P_* for a resolution, as (co)chain complexes of
// presented groups in degrees 0..length.
CochainComplex hom_complex(const FreeResolution& p, const Module& g);
ChainComplex tensor_complex(const FreeResolution& p, const Module& g);

// Hom_R(F, G) for F free of rank r, transported along an R-linear map of frees.
// Matrix of φ ↦ φ∘d where d : R^a -> R^b is a Z-matrix between free modules.
Matrix hom_pullback(const Ring& r, const Module& g, std::size_t a, std::size_t b, const Matrix& d);
// Matrix of G ⊗ d : G^a -> G^b.
Matrix tensor_pushforward(const Ring& r, const Module& g, std::size_t a, std::size_t b, const Matrix& d);

}  // namespace aq
