#pragma once

// X-modules over a finite group X, semidirect products, derivations, and
// the classification of abelian group objects over X.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "aq/algebra.hpp"

namespace aq {

// A finite abelian group K with a left action of the finite group X, kept
// both as a Z[X]-module and as explicit element tables.
class XModule {
 public:
  XModule() = default;
  // m must be a finite module over the group ring of base's group.
  XModule(FiniteAlgebra base, Module m);
  // Action given on a generating set of X (labels), closed under products.
  static XModule from_generator_actions(FiniteAlgebra base, PresentedGroup k,
                                        const std::map<std::string, Matrix>& actions);
  static XModule trivial(FiniteAlgebra base, const std::vector<Int>& cyclic_orders);
  static XModule zero(FiniteAlgebra base) { return trivial(std::move(base), {}); }

  const FiniteAlgebra& base() const { return base_; }
  const GroupTable& group() const { return group_; }
  const Module& module() const { return module_; }
  std::size_t size() const { return elements_.size(); }
  FGAbelianGroup invariants() const { return module_.invariants(); }

  int add(int a, int b) const { return add_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  int neg(int a) const { return neg_[static_cast<std::size_t>(a)]; }
  int zero() const { return zero_; }
  int act(int x, int k) const { return act_[static_cast<std::size_t>(x)][static_cast<std::size_t>(k)]; }
  // f̂ for the group ops: mul gives k1 + x1·k2, inv gives -(x^-1·k), e gives 0.
  int op_action(const std::string& op, const std::vector<int>& ks, const std::vector<int>& xs) const;
  const std::string& label(int k) const { return labels_.at(static_cast<std::size_t>(k)); }
  int index_of(const Vector& ambient) const;       // element of an ambient vector
  const Vector& lift(int k) const { return lifts_.at(static_cast<std::size_t>(k)); }
  bool trivial_action() const;

  // Composition law, additivity and unit, checked on element tables.
  void validate() const;
  // As an algebra over module_theory(gp, X).
  FiniteAlgebra to_algebra() const;
  const std::vector<std::vector<int>>& addition_table() const { return add_; }

 private:
  void build_tables();

  FiniteAlgebra base_;
  GroupTable group_;
  Module module_;
  CanonicalCoords canon_;
  std::vector<Vector> elements_;  // canonical coordinates
  std::vector<Vector> lifts_;
  std::vector<std::string> labels_;
  std::map<Vector, int> index_;
  std::vector<std::vector<int>> add_;
  std::vector<int> neg_;
  int zero_ = 0;
  std::vector<std::vector<int>> act_;
};

bool modules_isomorphic(const XModule& a, const XModule& b);

struct SemidirectProduct {
  FiniteAlgebra algebra;  // element (k, x) has index k * |X| + x
  AlgebraMap projection;
};
SemidirectProduct semidirect_product(const XModule& k);

// κ: kernel of a surjective hom p : Y -> X with the conjugation action;
// nullopt when the kernel is not abelian.
std::optional<XModule> kernel_module(const FiniteAlgebra& y, const FiniteAlgebra& x, const AlgebraMap& p);

struct DerivationSet {
  std::vector<std::vector<int>> values;  // xi as a function on elements (or generators)
  std::vector<std::vector<int>> add;     // pointwise sum table
  int zero = 0;
  FGAbelianGroup group;
};

// Der_p(Y, K) for finite Y by exhaustive search.
DerivationSet derivations(const FiniteAlgebra& y, const AlgebraMap& p, const XModule& k, Budget* budget = nullptr);
// Der_p(F T, K) = K^T for free Y (values on generators).
DerivationSet derivations_free(const FreeAlgebra& y, const std::vector<int>& p_images, const XModule& k);
bool is_derivation(const FiniteAlgebra& y, const AlgebraMap& p, const XModule& k, const std::vector<int>& xi);

struct HomDerivationWitness {
  std::size_t homs = 0;
  std::size_t derivations = 0;
  bool bijective = false;
  bool group_structures_agree = false;
};
HomDerivationWitness hom_as_derivations(const FiniteAlgebra& y, const AlgebraMap& p, const XModule& k,
                                        Budget* budget = nullptr);
HomDerivationWitness hom_as_derivations(const FreeAlgebra& y, const std::vector<int>& p_images, const XModule& k,
                                        Budget* budget = nullptr);

// Group-object structure on p : Y -> X: zero section X -> Y, multiplication
// on the fiber product (|Y| x |Y| table, -1 off the fiber product), inverse.
struct GroupObjectStructure {
  std::vector<int> zero;
  std::vector<int> mul;
  std::vector<int> inverse;
  friend auto operator<=>(const GroupObjectStructure&, const GroupObjectStructure&) = default;
};

struct ClassificationResult {
  std::string name;
  std::set<GroupObjectStructure> brute_force;
  std::set<GroupObjectStructure> from_formulas;
  std::optional<FGAbelianGroup> kernel;  // when abelian
  bool agree() const { return brute_force == from_formulas; }
};

ClassificationResult classify_group_objects(const FiniteAlgebra& y, const FiniteAlgebra& x, const AlgebraMap& p,
                                            Budget* budget = nullptr);

// Small groups used as the Y-fixture library (all groups of order <= 8).
std::vector<FiniteAlgebra> small_group_library(std::size_t max_order);
// All surjective homs y -> x.
std::vector<AlgebraMap> surjections(const FiniteAlgebra& y, const FiniteAlgebra& x, Budget* budget = nullptr);
std::vector<ClassificationResult> classify_group_objects(const FiniteAlgebra& x, std::size_t order_bound,
                                                         Budget* budget = nullptr);

struct LambdaKappaReport {
  std::size_t modules_checked = 0;
  std::size_t objects_checked = 0;
  bool ok = true;
  std::vector<std::string> failures;
};
// κλ(K) ≅ K for the given modules and λκ(p) ≅ Y over X for split
// surjections from the library with |Y| <= order_bound.
LambdaKappaReport lambda_kappa(const FiniteAlgebra& x, const std::vector<XModule>& modules, std::size_t order_bound,
                               Budget* budget = nullptr);

// Fox derivative of a word in the free group on n generators, as a vector
// over (generator, X-element) pairs, where p sends generator i to
// p_images[i] in X.
Vector fox_derivative(const Word& w, std::size_t ngens, const std::vector<int>& p_images, const GroupTable& x);
int word_image(const Word& w, const std::vector<int>& p_images, const GroupTable& x);

// A_Θ / Â_{Θ/X} on a free algebra: same generators over Θ_ab or Θ_X.
FreeAlgebra abelianize_free(const FreeAlgebra& f, const FiniteAlgebra* over = nullptr);
// Matrix of the induced map A(φ) for φ : F(T') -> F(T) given by generator
// images (group words in T). Absolute: exponent sums; over X: Fox derivatives
// with p given on T.
Matrix abelianize_map(const std::vector<Word>& images, std::size_t target_gens);
Matrix abelianize_map_over(const std::vector<Word>& images, std::size_t target_gens, const std::vector<int>& p_images,
                           const GroupTable& x);

}  // namespace aq
