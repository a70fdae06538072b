#pragma once

// Simplicial and cosimplicial modules truncated at a finite degree, the
// Moore complex, Dold-Kan, latching and matching objects.
//
// Conventions: faces d_i : V_n -> V_{n-1} and degeneracies s_j : V_n -> V_{n+1}
// are Z-matrices in ambient coordinates of the level presentations. The
// alternating differential is sum (-1)^i d_i; cofaces likewise.

#include <optional>
#include <string>
#include <vector>

#include "aq/ring.hpp"

namespace aq {

// Nondecreasing surjection [n] -> [k] as its value list.
using Monotone = std::vector<int>;
std::vector<Monotone> surjections_from(int n);  // all [n] ->> [k], k <= n
std::vector<Monotone> surjections_onto(int n, int k);
Monotone face_map(int n, int i);        // delta^i : [n-1] -> [n]
Monotone degeneracy_map(int n, int j);  // sigma^j : [n+1] -> [n]
Monotone compose(const Monotone& f, const Monotone& g);  // f after g

// Module chain complex C_0 <- C_1 <- ... ; d[n] : C_{n+1} -> C_n.
struct ModuleComplex {
  RingPtr ring;
  std::vector<Module> modules;
  std::vector<Matrix> d;

  std::size_t length() const { return modules.empty() ? 0 : modules.size() - 1; }
  ChainComplex chain_complex() const;
  static ModuleComplex from_chain_complex(const ChainComplex& c);  // over Z, lowest must be 0
  friend bool operator==(const ModuleComplex& a, const ModuleComplex& b);
};

struct SimplicialModule {
  RingPtr ring;
  std::vector<Module> levels;                     // V_0 .. V_N
  std::vector<std::vector<Matrix>> faces;         // faces[n][i], n >= 1 (faces[0] empty)
  std::vector<std::vector<Matrix>> degeneracies;  // degeneracies[n][j] : V_n -> V_{n+1}, n < N

  std::size_t truncation() const { return levels.empty() ? 0 : levels.size() - 1; }
  const Matrix& d(std::size_t n, std::size_t i) const { return faces.at(n).at(i); }
  const Matrix& s(std::size_t n, std::size_t j) const { return degeneracies.at(n).at(j); }

  static SimplicialModule constant(const Module& m, std::size_t truncation);
  // Truncate to levels 0..n.
  SimplicialModule truncated(std::size_t n) const&;
  SimplicialModule truncated(std::size_t n) &&;

  // Name of the first violated identity ("d0 d1 = d0 d0 at level 2", ...),
  // or of a face/degeneracy that is not a module map; nullopt when all hold.
  std::optional<std::string> identity_failure() const;
  // Unnormalized complex with the alternating differential.
  ChainComplex alternating_complex() const;
};

// Moore complex, computed as V_n modulo degenerate elements with the induced
// alternating differential. Generators killed outright are dropped.
ModuleComplex normalize_dk(const SimplicialModule& v);
ChainComplex moore_complex(const SimplicialModule& v);
// pi_n for n in [0, range]; range must be below the truncation.
std::vector<FGAbelianGroup> moore_homotopy(const SimplicialModule& v, std::size_t range);

// Gamma(C)_n = sum over [n] ->> [k] of C_k, levels 0..truncation.
SimplicialModule dold_kan(const ModuleComplex& c, std::size_t truncation);
// Summand of Gamma(C)_n for the surjection eta: first ambient coordinate.
std::size_t dold_kan_offset(const ModuleComplex& c, int n, const Monotone& eta);

// Gamma(f) for a chain map f_k : C_k -> D_k, levelwise matrices.
std::vector<Matrix> dold_kan_map(const ModuleComplex& c, const ModuleComplex& d, const std::vector<Matrix>& f,
                                 std::size_t truncation);

// C concentrated in degree n.
ModuleComplex shifted(const Module& m, std::size_t n);

struct SubobjectMap {
  Module object;
  Matrix map;  // ambient coordinates of object -> ambient coordinates of the level
};
// L_n: coproduct of n copies of V_{n-1} modulo the s_i s_j identities, with
// its map to V_n. L_0 is the zero module. Requires free levels.
SubobjectMap latching(const SimplicialModule& v, std::size_t n);
// M_n: compatible (n+1)-tuples in V_{n-1}, with the inclusion into
// V_{n-1}^{n+1} and the matching map V_n -> M_n (in M_n generator coordinates).
struct MatchingObject {
  Module object;
  Matrix inclusion;      // object generators -> V_{n-1}^{n+1}
  Matrix matching_map;   // V_n -> object
};
MatchingObject matching(const SimplicialModule& v, std::size_t n);

// Rank when the module is R^r in the standard presentation.
std::optional<std::size_t> free_rank(const Module& m);

struct CosimplicialGroup {
  std::vector<PresentedGroup> levels;
  std::vector<std::vector<Matrix>> cofaces;  // cofaces[n][i] : W^n -> W^{n+1}, i = 0..n+1

  std::size_t truncation() const { return levels.empty() ? 0 : levels.size() - 1; }
  static CosimplicialGroup constant(const PresentedGroup& a, std::size_t truncation);
  CochainComplex alternating_complex() const;
};
std::vector<FGAbelianGroup> cohomotopy(const CosimplicialGroup& w, std::size_t range);

// Hom_R(V_n, G) with cofaces from pulling back the faces; V needs free levels.
CosimplicialGroup hom_cosimplicial(const SimplicialModule& v, const Module& g);
// G ⊗_R V_n as a simplicial Z-module; V needs free levels.
SimplicialModule tensor_simplicial(const SimplicialModule& v, const Module& g);

}  // namespace aq
