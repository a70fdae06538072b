#pragma once

// André-Quillen cohomology and homology from a certified resolution, by the
// cochain route and by maps into Eilenberg-MacLane objects, with tensor and
// diagram coefficients. Degrees are AQ degrees (H^0 = Der) unless a function
// says classical.

#include <vector>

#include "aq/em.hpp"
#include "aq/resolutions.hpp"

namespace aq {

// Throws CheckFailed naming the first failed check when the certificate for
// `range` is invalid.
void require_certificate(const Resolution& r, std::size_t range);

// Cohomotopy of n -> Der(V_n, K) = Hom(A V_n, K); needs levels up to range + 1.
std::vector<FGAbelianGroup> cohomology(const Resolution& r, const Module& k, std::size_t range);
// pi_0 map(V, E(K, n)); n = 0 maps into the constant object.
FGAbelianGroup cohomology_via_em(const Resolution& r, const Module& k, std::size_t n);

// pi_* of the degreewise abelianization: absolute (free abelian groups on
// the generators), or over X as modules over Z[X] with their action.
std::vector<FGAbelianGroup> homology(const Resolution& r, std::size_t range);
std::vector<Module> homology_over(const Resolution& r, std::size_t range);
// pi_* of G ⊗ A V.
std::vector<FGAbelianGroup> homology_with_coeffs(const Resolution& r, const Module& g, std::size_t range);

// H_n of a module complex as a module, in canonical coordinates.
Module homology_module(const ModuleComplex& c, std::size_t n);

// Group resolutions in classical indexing: the Moore complex of A V spliced
// with 0 -> I -> Z[X] -> Z -> 0 is a free resolution of Z over Z[X].
FreeResolution classical_resolution(const GroupResolution& r);
std::vector<FGAbelianGroup> classical_cohomology(const GroupResolution& r, const Module& k, std::size_t range);
std::vector<FGAbelianGroup> classical_homology(const GroupResolution& r, const Module& m, std::size_t range);

// Coefficients indexed by a finite poset: one module per node and one map
// per arrow (Z-matrices between ambient coordinates).
struct CoefficientDiagram {
  struct Arrow {
    std::size_t from = 0, to = 0;
    Matrix map;
  };
  std::vector<Module> nodes;
  std::vector<Arrow> arrows;
};

enum class Variance { Cohomology, Homology };

struct DiagramResult {
  std::vector<std::vector<FGAbelianGroup>> values;  // values[node][degree]
  std::vector<std::vector<Matrix>> induced;         // induced[arrow][degree], canonical coordinates
  bool functorial = true;                           // checked on every composable pair of arrows
};
DiagramResult diagram_coefficients(const Resolution& r, const CoefficientDiagram& d, Variance v, std::size_t range);

}  // namespace aq
