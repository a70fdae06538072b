#pragma once

// Finite algebras (carriers + op tables), free algebras with normal forms for
// the registered classes, hom enumeration, and presentations realized as
// finite algebras.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "aq/theory.hpp"

namespace aq {

class BoundExceeded : public Error {
 public:
  using Error::Error;
};

class FiniteAlgebra {
 public:
  FiniteAlgebra() = default;
  FiniteAlgebra(TheoryPresentation theory, std::string name);

  const TheoryPresentation& theory() const { return theory_; }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  void set_carrier(const std::string& sort, std::vector<std::string> labels);
  // Flattened table over argument tuples, first argument most significant.
  void set_table(const std::string& op, std::vector<int> values);

  const std::vector<std::string>& carrier(const std::string& sort) const;
  std::size_t size(const std::string& sort) const { return carrier(sort).size(); }
  std::size_t total_size() const;
  int index_of(const std::string& sort, const std::string& label) const;
  const std::string& label(const std::string& sort, int i) const { return carrier(sort).at(static_cast<std::size_t>(i)); }

  int apply(const std::string& op, const std::vector<int>& args) const;
  // Evaluates a term; variables are looked up in env by name.
  int eval(const Term& t, const std::map<std::string, int>& env) const;
  const std::vector<int>& table(const std::string& op) const { return tables_.at(op); }

  // Tables complete and in range, every equation holds on all assignments.
  // Throws CheckFailed naming the first violated equation.
  void validate(Budget* budget = nullptr) const;

  // For a sort carrying a group witness.
  GroupTable group_table(const std::string& sort) const;
  GroupTable group_table() const { return group_table(theory_.sorts.at(0)); }
  const std::string& main_sort() const { return theory_.sorts.at(0); }

 private:
  TheoryPresentation theory_;
  std::string name_;
  std::map<std::string, std::vector<std::string>> carriers_;
  std::map<std::string, std::vector<int>> tables_;
};

// Finite group algebra over the built-in group theory from a table.
FiniteAlgebra group_algebra(const GroupTable& g, const std::string& name);

// Element maps sort -> image indices.
struct AlgebraMap {
  std::map<std::string, std::vector<int>> images;
  friend bool operator==(const AlgebraMap&, const AlgebraMap&) = default;
  friend bool operator<(const AlgebraMap& a, const AlgebraMap& b) { return a.images < b.images; }
};

bool is_homomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b, const AlgebraMap& f);

struct Generator {
  std::string name;
  std::string sort;
};

// Reduced word: (generator index, exponent ±1) letters.
using Word = std::vector<std::pair<int, int>>;
Word word_mul(const Word& a, const Word& b);
Word word_inv(const Word& a);

// Element of a free algebra in normal form: a reduced word (groups), a
// coefficient vector over (generator, ring basis) (abelian and module
// classes), or a bare generator index (discrete theories).
using FreeElement = std::variant<Word, Vector, int>;

class FreeAlgebra {
 public:
  FreeAlgebra(TheoryPresentation theory, std::vector<Generator> gens);

  const TheoryPresentation& theory() const { return theory_; }
  const std::vector<Generator>& generators() const { return gens_; }
  // "gp", "ab", "mod" or "discrete".
  const std::string& engine() const { return engine_; }
  std::size_t ring_dim() const { return ring_->dim(); }
  const RingPtr& ring() const { return ring_; }

  FreeElement eval(const Term& t) const;
  Term to_term(const FreeElement& e) const;
  Term normalize(const Term& t) const { return to_term(eval(t)); }
  Term generator_term(std::size_t i) const { return Term::var(gens_.at(i).name, gens_.at(i).sort); }

  // Image of a normal form in a finite algebra under generator images.
  int evaluate_in(const FreeElement& e, const FiniteAlgebra& b, const std::vector<int>& gen_images) const;

 private:
  TheoryPresentation theory_;
  std::vector<Generator> gens_;
  std::string engine_;
  RingPtr ring_;
  GroupOps ops_;
  std::map<std::string, std::size_t> act_basis_;  // act op -> ring basis index
};

FreeAlgebra free_algebra(const TheoryPresentation& theta, const std::vector<Generator>& gens);

// Hom_Θ(F T, b): one entry per generator assignment (lexicographic), each
// validated as extending to a homomorphism on a ball of normal forms.
std::vector<std::vector<int>> enumerate_homs(const FreeAlgebra& a, const FiniteAlgebra& b, Budget* budget = nullptr);
// Hom_Θ(a, b) for finite a, by generator assignment plus closure propagation.
std::vector<AlgebraMap> enumerate_homs(const FiniteAlgebra& a, const FiniteAlgebra& b, Budget* budget = nullptr);

// |Hom(F_Θ T, b)| = prod_s |b_s|^{|T_s|}.
bool adjunction_check(const TheoryPresentation& theta, const std::vector<Generator>& gens, const FiniteAlgebra& b,
                      Budget* budget = nullptr);

// gens/rels over a registered class; rels are equations between terms in the
// generators. Throws BoundExceeded with "not finite within bound".
FiniteAlgebra realize_presentation(const TheoryPresentation& theta, const std::vector<Generator>& gens,
                                   const std::vector<Equation>& rels, std::size_t bound);

// Isomorphism search between finite algebras of the same theory.
std::optional<AlgebraMap> find_isomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b, Budget* budget = nullptr);

TheoryPresentation comma_theory(const TheoryPresentation& theta, const FiniteAlgebra& x);
TheoryPresentation module_theory(const TheoryPresentation& theta, const FiniteAlgebra& x);

// Signature-preserving interpretation of one theory in another.
struct TheoryMap {
  TheoryPresentation source, target;
  std::map<std::string, std::string> sort_map;
  std::map<std::string, Term> op_map;  // op -> term over $x0..$x{n-1}
};
// Images of the source equations hold in the target, decided by normal forms
// when the target class has an engine, else by the target's equation list.
bool check_theory_map(const TheoryMap& m);

}  // namespace aq
