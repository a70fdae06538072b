#pragma once

// Free simplicial resolutions: automatic ones for modules and groups,
// certificates for arbitrary ones, and the classical cohomology oracles.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "aq/beck.hpp"
#include "aq/free_simplicial.hpp"
#include "aq/simplicial.hpp"

namespace aq {

// A resolution of the finite group X over itself; level-0 generators map to
// X by the augmentation.
struct GroupResolution {
  FiniteAlgebra x;
  FreeSimplicialGroup object;
  std::vector<int> augmentation;
};

// A resolution of an R-module by free simplicial R-modules.
struct ModuleResolution {
  Module target;
  SimplicialModule object;
  Matrix augmentation;  // level 0 -> target, ambient coordinates
};

using Resolution = std::variant<GroupResolution, ModuleResolution>;

constexpr std::size_t kMaxResolutionLength = 32;

// Dold-Kan image of the SNF-built free resolution of y of the given length.
ModuleResolution resolve_module(const Module& y, std::size_t length, std::size_t truncation);
// Kan loop group of the nerve of x.
GroupResolution loop_group_resolution(const FiniteAlgebra& x, std::size_t truncation);

std::size_t truncation(const Resolution& r);
// Degreewise abelianization: over X for groups (free Z[X]-modules), the
// object itself for modules.
SimplicialModule abelianized(const Resolution& r);
RingPtr coefficient_ring(const Resolution& r);

struct CertificateCheck {
  std::string name;  // "simplicial identities", "free levels", "pi_0", "abelianized acyclicity"
  bool passed = false;
  std::string detail;
};

struct ResolutionCertificate {
  std::size_t range = 0;
  std::vector<CertificateCheck> checks;

  bool valid() const;
  std::optional<std::string> first_failure() const;
};

// The acyclicity check needs levels up to range + 1. For groups it uses the
// abelianization over X, whose pi_0 is the augmentation ideal of Z[X].
ResolutionCertificate check_certificate(const Resolution& r, std::size_t range);

// H^n(G; K) for n <= degree from the normalized bar complex.
std::vector<FGAbelianGroup> bar_resolution_group(const XModule& k, std::size_t degree, Budget* budget = nullptr);
// Same for any Z[G]-module, finite or not.
std::vector<FGAbelianGroup> bar_resolution_group(const GroupTable& g, const Module& k, std::size_t degree,
                                                 Budget* budget = nullptr);

// H^n(G; K) for n in {1, 2} by listing all cochains and keeping cocycles
// modulo coboundaries. Normalized cochains are used when the full list
// would exceed 2^20 candidates.
struct FactorSetResult {
  FGAbelianGroup group;
  std::size_t candidates = 0;
  std::size_t cocycles = 0;
  std::size_t coboundaries = 0;
  bool normalized = false;
};
FactorSetResult factor_set_cohomology(const XModule& k, int n, Budget* budget = nullptr);

}  // namespace aq
