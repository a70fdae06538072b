#pragma once

// E2 pages of the universal coefficient, Tor and reverse Adams spectral
// sequences in settings where the homotopy operations reduce to graded
// modules, with order/rank comparisons against directly computed groups.
//
// Indexing: cohomological pages have E2^{s,t} converging to total degree
// s + t with d_r : (s, t) -> (s + r, t - r + 1); homological pages have
// E^2_{s,t} with d_r : (s, t) -> (s - r, t + r - 1).

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "aq/bisimplicial.hpp"
#include "aq/invariants.hpp"

namespace aq {

struct GradedModule {
  RingPtr ring;
  std::vector<Module> degrees;  // degrees[t]; absent degrees are zero

  static GradedModule concentrated(const Module& m, std::size_t degree = 0);
  const Module* at(std::size_t t) const { return t < degrees.size() ? &degrees[t] : nullptr; }
  bool is_zero() const;
};

// H_t of the resolved object for t <= range: absolute (as Z-modules) for
// groups, over R for modules.
GradedModule homology_graded(const Resolution& r, std::size_t range);

enum class PageKind { UniversalCoefficients, Tor, ReverseAdamsHomology, ReverseAdamsCohomology };
std::string to_string(PageKind k);

enum class Agreement { Agrees, Disagrees, Undetermined };
std::string to_string(Agreement a);

struct ConvergenceEntry {
  std::size_t total = 0;
  FGAbelianGroup target;    // computed directly
  FGAbelianGroup e2_total;  // sum of E2 on the total-degree line
  bool collapsed = false;   // every d_r into or out of the line is forced to vanish
  Agreement agreement = Agreement::Undetermined;
  std::string detail;
};

// 0 -> sub -> middle -> quotient -> 0 over Z; split, so exact iff middle ≅ sub ⊕ quotient.
struct ShortExactCheck {
  std::size_t total = 0;
  FGAbelianGroup sub, middle, quotient;
  bool exact = false;
};

struct SpectralPage {
  PageKind kind = PageKind::UniversalCoefficients;
  RingPtr ring;
  std::string quadrant = "first";
  std::size_t range = 0;
  Grid grid;  // grid[s][t], s <= range + 1, t <= range
  // d2 in canonical coordinates where it is forced (zero); absent otherwise
  std::map<std::pair<std::size_t, std::size_t>, Matrix> d2;
  bool d2_determined = true;
  std::vector<ConvergenceEntry> convergence;
  std::vector<ShortExactCheck> sequences;

  bool cohomological() const;
  bool d2_squares_to_zero() const;
  // Every convergence entry agrees and every short exact sequence is exact.
  bool consistent() const;
};

// E2^{s,t} = Ext^s_R(H_t, G).
SpectralPage uct_e2(const GradedModule& h, const Module& g, std::size_t range);
// E^2_{s,t} = Tor_s^R(H_t, G).
SpectralPage tor_e2(const GradedModule& h, const Module& g, std::size_t range);
enum class Variant { Homology, Cohomology };
// L_s of Hom(-, G) or - ⊗ G on the graded module pi; the cohomology variant
// is the second-quadrant page.
SpectralPage reverse_adams_e2(const GradedModule& pi, const Module& g, Variant v, std::size_t range);

// Fills convergence entries from direct[n], n <= range; over Z also the two-
// column short exact sequences.
void compare_with(SpectralPage& page, const std::vector<FGAbelianGroup>& direct);

// The same pages for a resolved object, compared against cohomology and
// homology_with_coeffs. For groups G must be a Z-module; it is used with
// trivial action. Reverse Adams pages need a module resolution.
SpectralPage uct_e2(const Resolution& r, const Module& g, std::size_t range);
SpectralPage tor_e2(const Resolution& r, const Module& g, std::size_t range);
SpectralPage reverse_adams_e2(const Resolution& r, const Module& g, Variant v, std::size_t range);

struct CheckReport {
  std::vector<CertificateCheck> checks;
  bool passed() const;
};

// Diagonal E2 collapse on one-direction-constant fixtures, Eilenberg-Zilber
// (total against diagonal homology) and Tot Hom(V, G) against Hom(diag V, G)
// on `fixtures` random bisimplicial groups of rank <= 2.
CheckReport bicomplex_checks(std::size_t fixtures = 50, std::uint64_t seed = 1, std::size_t truncation = 3);

}  // namespace aq
