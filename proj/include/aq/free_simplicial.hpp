#pragma once

// Simplicial free groups given by generators per level and the images of
// generators under faces and degeneracies, truncated at a finite degree.

#include <optional>
#include <string>
#include <vector>

#include "aq/algebra.hpp"
#include "aq/simplicial.hpp"

namespace aq {

using WordMap = std::vector<Word>;  // image of each source generator

Word substitute(const WordMap& images, const Word& w);
WordMap compose(const WordMap& f, const WordMap& g);  // f after g

struct FreeSimplicialGroup {
  std::vector<std::vector<std::string>> generators;  // generators[n]
  std::vector<std::vector<WordMap>> faces;           // faces[n][i] : level n -> n-1 (faces[0] empty)
  std::vector<std::vector<WordMap>> degeneracies;    // degeneracies[n][j] : level n -> n+1

  std::size_t truncation() const { return generators.empty() ? 0 : generators.size() - 1; }
  std::size_t rank(std::size_t n) const { return generators.at(n).size(); }
  FreeSimplicialGroup truncated(std::size_t n) const;
  // First violated simplicial identity on generators, by name.
  std::optional<std::string> identity_failure() const;
  // Images of level-n generators in X, from an augmentation on level 0
  // composed with iterated d_0.
  std::vector<int> over_x(std::size_t n, const std::vector<int>& augmentation, const GroupTable& x) const;
};

// Kan's loop group of the nerve of x: level n is free on the tuples
// [x0|...|xn] with x0 != e. Augmentation sends [x] to x.
FreeSimplicialGroup kan_loop_group(const GroupTable& x, std::size_t truncation);
std::vector<int> kan_augmentation(const GroupTable& x);

// Degreewise abelianization: absolute (free abelian on generators) or over X
// (free Z[X]-modules via Fox derivatives).
SimplicialModule abelianize(const FreeSimplicialGroup& v);
SimplicialModule abelianize_over(const FreeSimplicialGroup& v, const std::vector<int>& augmentation,
                                 const GroupTable& x);

// pi_0 as the group <T_0 | d0 t = d1 t>; checks that the augmentation
// induces an isomorphism onto x. Returns a failure description or nullopt.
std::optional<std::string> pi0_failure(const FreeSimplicialGroup& v, const std::vector<int>& augmentation,
                                       const GroupTable& x);

}  // namespace aq
