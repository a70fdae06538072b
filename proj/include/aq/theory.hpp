#pragma once

// Multi-sorted equational theory presentations, the `.thy` DSL, group
// structure detection, and the syntactic theory constructions (discrete,
// product with a singly sorted theory, abelianization).

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aq/ring.hpp"

namespace aq {

struct Term {
  bool is_var = false;
  std::string name;  // variable name (without '$') or op name
  std::string sort;  // variable sort; for applications the result sort once checked
  std::vector<Term> args;

  static Term var(std::string name, std::string sort = {});
  static Term app(std::string op, std::vector<Term> args = {});

  std::string to_string() const;
  std::size_t size() const;
  friend bool operator==(const Term& a, const Term& b) {
    return a.is_var == b.is_var && a.name == b.name && a.args == b.args && (!a.is_var || a.sort == b.sort);
  }
  friend bool operator<(const Term& a, const Term& b) { return a.to_string() < b.to_string(); }
};

void collect_variables(const Term& t, std::vector<Term>& out);  // first-occurrence order
Term substitute(const Term& t, const std::map<std::string, Term>& sigma);
Term rename_ops(const Term& t, const std::map<std::string, std::string>& renaming);

struct OpSig {
  std::string name;
  std::vector<std::string> args;
  std::string result;
  friend bool operator==(const OpSig&, const OpSig&) = default;
};

struct Equation {
  Term lhs, rhs;
  friend bool operator==(const Equation&, const Equation&) = default;
};

struct GroupOps {
  std::string mul, inv, unit;
  friend bool operator==(const GroupOps&, const GroupOps&) = default;
};

struct TheoryPresentation {
  std::string name;
  std::vector<std::string> sorts;
  std::vector<OpSig> ops;
  std::vector<Equation> equations;
  std::map<std::string, GroupOps> group_witness;
  bool strength_flag = false;
  // Registered class: "discrete", "gp", "ab", "mod" (see ring), "comma", or
  // empty for enumeration-only theories.
  std::string class_tag;
  RingPtr ring;                          // module theories only
  std::map<std::string, std::string> module_actions;  // group-ring basis label -> act op
  std::vector<std::string> structure_tags;  // e.g. "phi:Ab" after product_theory

  const OpSig* find_op(const std::string& op) const;
  bool has_sort(const std::string& s) const;
  // Sorts every term (fills variable sorts), checks names; throws SortError /
  // DuplicateNameError.
  void validate();
  // DSL source; parse(print(t)) reproduces t.
  std::string print() const;
};

TheoryPresentation parse_theory(const std::string& text);
// One term in the same syntax; variable sorts are left empty.
Term parse_term(const std::string& text);

// "gp", "ab", "mod:Z", "mod:Z/m", "mod:Z[Z/n]", "set" (one sort, no ops),
// "trivial" (no sorts).
TheoryPresentation builtin_theory(const std::string& name);

// Equation present up to variable renaming and swapping sides.
bool has_equation(const TheoryPresentation& t, const Equation& e);

struct GroupStructureReport {
  bool ok = false;
  std::map<std::string, GroupOps> witness;
  std::vector<std::string> missing;  // "sort: axiom" entries
  bool strength_flag = false;
};
GroupStructureReport validate_group_structure(const TheoryPresentation& t);

// The five group axioms for the given ops on sort s.
std::vector<Equation> group_axioms(const std::string& sort, const GroupOps& ops);

TheoryPresentation discrete_theory(const TheoryPresentation& t);
TheoryPresentation product_theory(const TheoryPresentation& phi, const TheoryPresentation& theta,
                                  bool prefix_names = true);
TheoryPresentation abelianization_theory(const TheoryPresentation& theta);

// Θ_ab plus one unary op act@<label> per element of the finite group g, with
// additivity, composition (along a generating set of g) and unit axioms.
// theta must be singly sorted.
TheoryPresentation group_ring_module_theory(const TheoryPresentation& theta, const GroupTable& g,
                                            const std::string& name);

// Smallest generating set of g found greedily in label order.
std::vector<int> group_generators(const GroupTable& g);

}  // namespace aq
