#pragma once

// Eilenberg-MacLane objects E^X(K, n), their path objects, and homotopy
// classes of simplicial maps into them.
//
// A map W -> E over X from a degreewise free simplicial group is the same as
// a map of simplicial modules from the abelianization of W over X into the
// kernel part DK(K[n]), so the map spaces here are linear.

#include <optional>
#include <vector>

#include "aq/beck.hpp"
#include "aq/simplicial.hpp"

namespace aq {

struct EMObject {
  Module coefficients;
  std::size_t n = 0;
  SimplicialModule kernel;             // DK(K[n]), levels 0..truncation
  std::optional<FiniteAlgebra> base;   // X when built over a finite group

  std::size_t truncation() const { return kernel.truncation(); }
  // E_m = kernel_m ⋊ X (base required).
  SemidirectProduct level(std::size_t m) const;
  // d_i : E_m -> E_{m-1} on element indices of the semidirect products.
  std::vector<int> face(std::size_t m, std::size_t i) const;
};

// K concentrated in degree n, as a simplicial R-module.
EMObject eilenberg_maclane(const Module& k, std::size_t n, std::size_t truncation);
EMObject eilenberg_maclane(const FiniteAlgebra& x, const XModule& k, std::size_t n, std::size_t truncation);

// E^I = DK of K (degree n-1) <- K ⊕ K (degree n), d(a, b) = a - b, with the
// projections to E and the inclusion of constant paths.
struct PathObject {
  SimplicialModule object;
  std::vector<Matrix> p0, p1;      // levelwise object -> E.kernel
  std::vector<Matrix> constants;   // levelwise E.kernel -> object
  std::optional<FiniteAlgebra> base;

  SemidirectProduct level(std::size_t m) const;
};
PathObject path_object(const EMObject& e);

// Simplicial maps A -> D for A with free levels, on levels 0..truncation.
// Parameters are the values on generators that are not degenerate images of
// generators one level down; degenerate generators are substituted.
class MapSpace {
 public:
  MapSpace(const SimplicialModule& a, const SimplicialModule& d, std::size_t truncation);

  std::size_t parameters() const { return params_; }
  // Parameter group (values modulo the relations of D) and the linear
  // constraints (faces and degeneracies commute) with their target.
  const PresentedGroup& parameter_group() const { return param_group_; }
  const SparseRows& constraints() const { return constraints_; }
  // The group of maps, as a subquotient of the parameter group.
  Subquotient maps() const;
  // Maps modulo the span of `incoming` (parameter vectors as columns).
  Subquotient maps_modulo(const Matrix& incoming) const;
  // Value of the map on generator t of level m, as a D_m-vector linear in
  // the parameters (rows: D_m ambient coordinates). Only the parameters
  // value_offset(m, t) + [0, value_block(m, t).cols()) occur.
  const Matrix& value_block(std::size_t m, std::size_t t) const { return values_.at(m).at(t).entries; }
  std::size_t value_offset(std::size_t m, std::size_t t) const { return values_.at(m).at(t).offset; }
  bool fresh(std::size_t m, std::size_t t) const { return fresh_.at(m).at(t); }
  // First parameter of a fresh generator's value block.
  std::size_t offset(std::size_t m, std::size_t t) const { return offsets_.at(m).at(t); }
  std::size_t truncation() const { return truncation_; }
  // Parameters of the map whose values are given per level and generator.
  Vector parameters_of(const std::vector<std::vector<Vector>>& values) const;
  // Values of the map with the given parameters.
  std::vector<std::vector<Vector>> values_of(const Vector& params) const;

 private:
  std::size_t truncation_ = 0;
  std::size_t params_ = 0;
  struct Value {
    std::size_t offset = 0;
    Matrix entries;
  };
  std::vector<std::vector<Value>> values_;
  std::vector<std::vector<bool>> fresh_;
  std::vector<std::vector<std::size_t>> offsets_;
  PresentedGroup param_group_;
  SparseRows constraints_;
  // relations of the constraint target, one sparse row per constraint row
  SparseRows target_relations_;
  std::size_t target_relation_cols_ = 0;
};

// Homotopy classes [A, E] with the relation induced by the path object:
// maps modulo (p0 - p1) applied to maps into E^I. Levels up to n+1 of A are
// used, which is all that DK(K[n]) sees.
struct HomotopyClasses {
  Subquotient classes;
  FGAbelianGroup group() const { return classes.group(); }
};
HomotopyClasses homotopy_classes(const SimplicialModule& a, const EMObject& e);

// The relation f ~ g iff some H : A -> E^I has p0 H = f and p1 H = g, by
// enumerating both (finite) map groups. Returns nullopt when either group is
// infinite or larger than the limit; otherwise whether it is an equivalence
// relation and its number of classes.
struct RelationCheck {
  bool reflexive = false, symmetric = false, transitive = false;
  std::size_t maps = 0, classes = 0;
};
std::optional<RelationCheck> check_homotopy_relation(const SimplicialModule& a, const EMObject& e,
                                                     std::size_t limit = 4096);

}  // namespace aq
