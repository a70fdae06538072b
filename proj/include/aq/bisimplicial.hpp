#pragma once

// Bisimplicial abelian groups and their duals: diagonal, total complex and
// the E2 grid of iterated homotopy, truncated at a common degree N in both
// directions. Levels are presented abelian groups (Z-modules).

#include <optional>
#include <string>
#include <vector>

#include "aq/simplicial.hpp"

namespace aq {

using Grid = std::vector<std::vector<FGAbelianGroup>>;  // grid[s][t]

struct BisimplicialGroup {
  std::vector<std::vector<PresentedGroup>> levels;  // levels[p][q], p, q <= N
  // hfaces[p][q][i] : V_{p,q} -> V_{p-1,q}; vfaces[p][q][i] : V_{p,q} -> V_{p,q-1}
  std::vector<std::vector<std::vector<Matrix>>> hfaces, vfaces;
  // hdegen[p][q][j] : V_{p,q} -> V_{p+1,q}; vdegen[p][q][j] : V_{p,q} -> V_{p,q+1}
  std::vector<std::vector<std::vector<Matrix>>> hdegen, vdegen;

  std::size_t truncation() const { return levels.empty() ? 0 : levels.size() - 1; }
  // Horizontal and vertical simplicial identities and the commutation of the
  // two directions; nullopt when everything holds.
  std::optional<std::string> identity_failure() const;
};

// V_{p,q} = A_p ⊗ B_q for simplicial Z-modules, truncated at the smaller truncation.
BisimplicialGroup external_tensor(const SimplicialModule& a, const SimplicialModule& b);
BisimplicialGroup direct_sum(const BisimplicialGroup& a, const BisimplicialGroup& b);

SimplicialModule diagonal(const BisimplicialGroup& v);
// Tot_n = sum of V_{p,q} over p + q = n, d = d^h + (-1)^p d^v, degrees 0..N.
ChainComplex total_complex(const BisimplicialGroup& v);
// pi^h_s pi^v_t for s, t <= range; range must be below the truncation.
Grid e2_page(const BisimplicialGroup& v, std::size_t range);

// W^{p,q} with cofaces in both directions.
struct BicosimplicialGroup {
  std::vector<std::vector<PresentedGroup>> levels;
  std::vector<std::vector<std::vector<Matrix>>> hcofaces, vcofaces;  // to (p+1, q) and (p, q+1)

  std::size_t truncation() const { return levels.empty() ? 0 : levels.size() - 1; }
};

// Hom(V_{p,q}, G); V needs free levels.
BicosimplicialGroup hom_bisimplicial(const BisimplicialGroup& v, const PresentedGroup& g);
CosimplicialGroup diagonal(const BicosimplicialGroup& w);
// Tot^n = sum of W^{p,q} over p + q = n, d = d_h + (-1)^p d_v.
CochainComplex total_complex(const BicosimplicialGroup& w);
// pi^s pi^t for s, t <= range.
Grid e2_page(const BicosimplicialGroup& w, std::size_t range);

}  // namespace aq
