#include <algorithm>
#include <functional>
#include <set>

#include "aq/algebra.hpp"

namespace aq {

FiniteAlgebra::FiniteAlgebra(TheoryPresentation theory, std::string name)
    : theory_(std::move(theory)), name_(std::move(name)) {}

void FiniteAlgebra::set_carrier(const std::string& sort, std::vector<std::string> labels) {
  if (!theory_.has_sort(sort)) throw SortError("algebra " + name_ + ": unknown sort '" + sort + "'");
  std::set<std::string> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second) throw DuplicateNameError("algebra " + name_ + ": duplicate element '" + l + "'");
  carriers_[sort] = std::move(labels);
}

void FiniteAlgebra::set_table(const std::string& op, std::vector<int> values) {
  if (!theory_.find_op(op)) throw SortError("algebra " + name_ + ": unknown op '" + op + "'");
  tables_[op] = std::move(values);
}

const std::vector<std::string>& FiniteAlgebra::carrier(const std::string& sort) const {
  auto it = carriers_.find(sort);
  if (it == carriers_.end()) throw Error("algebra " + name_ + " has no carrier for sort '" + sort + "'");
  return it->second;
}

std::size_t FiniteAlgebra::total_size() const {
  std::size_t n = 0;
  for (const auto& [s, c] : carriers_) n += c.size();
  return n;
}

int FiniteAlgebra::index_of(const std::string& sort, const std::string& label) const {
  const auto& c = carrier(sort);
  auto it = std::find(c.begin(), c.end(), label);
  if (it == c.end()) throw Error("algebra " + name_ + ": no element '" + label + "' of sort " + sort);
  return static_cast<int>(it - c.begin());
}

int FiniteAlgebra::apply(const std::string& op, const std::vector<int>& args) const {
  const OpSig* sig = theory_.find_op(op);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < args.size(); ++i) idx = idx * size(sig->args[i]) + static_cast<std::size_t>(args[i]);
  return tables_.at(op)[idx];
}

int FiniteAlgebra::eval(const Term& t, const std::map<std::string, int>& env) const {
  if (t.is_var) return env.at(t.name);
  std::vector<int> args;
  args.reserve(t.args.size());
  for (const auto& a : t.args) args.push_back(eval(a, env));
  return apply(t.name, args);
}

void FiniteAlgebra::validate(Budget* budget) const {
  for (const auto& s : theory_.sorts) carrier(s);
  for (const auto& op : theory_.ops) {
    auto it = tables_.find(op.name);
    if (it == tables_.end()) throw CheckFailed("algebra " + name_ + ": missing table for op '" + op.name + "'");
    std::size_t expected = 1;
    for (const auto& a : op.args) expected *= size(a);
    if (it->second.size() != expected)
      throw CheckFailed("algebra " + name_ + ": table for '" + op.name + "' has " + std::to_string(it->second.size()) +
                        " entries, expected " + std::to_string(expected));
    for (int v : it->second)
      if (v < 0 || static_cast<std::size_t>(v) >= size(op.result))
        throw CheckFailed("algebra " + name_ + ": table for '" + op.name + "' leaves the carrier");
  }
  for (const auto& e : theory_.equations) {
    std::vector<Term> vars;
    collect_variables(e.lhs, vars);
    collect_variables(e.rhs, vars);
    std::vector<int> cur(vars.size(), 0);
    std::map<std::string, int> env;
    bool empty = false;
    for (const auto& v : vars) empty = empty || size(v.sort) == 0;
    if (empty) continue;
    while (true) {
      if (budget) budget->spend();
      for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i].name] = cur[i];
      if (eval(e.lhs, env) != eval(e.rhs, env)) {
        std::string at;
        for (std::size_t i = 0; i < vars.size(); ++i)
          at += (i ? ", $" : " at $") + vars[i].name + "=" + label(vars[i].sort, cur[i]);
        throw CheckFailed("algebra " + name_ + " violates " + e.lhs.to_string() + " = " + e.rhs.to_string() + at);
      }
      std::size_t k = 0;
      while (k < vars.size() && ++cur[k] == static_cast<int>(size(vars[k].sort))) cur[k++] = 0;
      if (k == vars.size()) break;
    }
  }
}

GroupTable FiniteAlgebra::group_table(const std::string& sort) const {
  auto it = theory_.group_witness.find(sort);
  GroupOps ops;
  if (it != theory_.group_witness.end()) {
    ops = it->second;
  } else {
    const auto report = validate_group_structure(theory_);
    if (!report.witness.count(sort)) throw Error("sort " + sort + " carries no group structure");
    ops = report.witness.at(sort);
  }
  GroupTable g;
  g.labels = carrier(sort);
  const int n = static_cast<int>(g.labels.size());
  g.mul.assign(g.labels.size(), std::vector<int>(g.labels.size()));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.mul[a][b] = apply(ops.mul, {a, b});
  g.complete();
  return g;
}

FiniteAlgebra group_algebra(const GroupTable& g, const std::string& name) {
  FiniteAlgebra a(builtin_theory("gp"), name);
  a.set_carrier("g", g.labels);
  std::vector<int> mul, inv;
  for (std::size_t x = 0; x < g.order(); ++x) {
    for (std::size_t y = 0; y < g.order(); ++y) mul.push_back(g.mul[x][y]);
    inv.push_back(g.inverse[x]);
  }
  a.set_table("mul", mul);
  a.set_table("inv", inv);
  a.set_table("e", {g.identity});
  return a;
}

bool is_homomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b, const AlgebraMap& f) {
  const auto& t = a.theory();
  for (const auto& s : t.sorts) {
    auto it = f.images.find(s);
    if (it == f.images.end() || it->second.size() != a.size(s)) return false;
    for (int v : it->second)
      if (v < 0 || static_cast<std::size_t>(v) >= b.size(s)) return false;
  }
  for (const auto& op : t.ops) {
    std::vector<int> args(op.args.size(), 0);
    bool empty = false;
    for (const auto& s : op.args) empty = empty || a.size(s) == 0;
    if (empty) continue;
    while (true) {
      std::vector<int> imgs(args.size());
      for (std::size_t i = 0; i < args.size(); ++i) imgs[i] = f.images.at(op.args[i])[static_cast<std::size_t>(args[i])];
      if (f.images.at(op.result)[static_cast<std::size_t>(a.apply(op.name, args))] != b.apply(op.name, imgs))
        return false;
      std::size_t k = 0;
      while (k < args.size() && ++args[k] == static_cast<int>(a.size(op.args[k]))) args[k++] = 0;
      if (k == args.size()) break;
    }
  }
  return true;
}

namespace {

// Partial map closed under the ops of a; returns false on a conflict.
bool propagate(const FiniteAlgebra& a, const FiniteAlgebra& b, std::map<std::string, std::vector<int>>& img,
               Budget* budget) {
  const auto& t = a.theory();
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& op : t.ops) {
      std::vector<int> args(op.args.size(), 0);
      bool empty = false;
      for (const auto& s : op.args) empty = empty || a.size(s) == 0;
      if (empty) continue;
      while (true) {
        if (budget) budget->spend();
        bool known = true;
        std::vector<int> imgs(args.size());
        for (std::size_t i = 0; i < args.size() && known; ++i) {
          imgs[i] = img[op.args[i]][static_cast<std::size_t>(args[i])];
          known = imgs[i] >= 0;
        }
        if (known) {
          const int r = a.apply(op.name, args);
          const int v = b.apply(op.name, imgs);
          int& slot = img[op.result][static_cast<std::size_t>(r)];
          if (slot < 0) {
            slot = v;
            changed = true;
          } else if (slot != v) {
            return false;
          }
        }
        std::size_t k = 0;
        while (k < args.size() && ++args[k] == static_cast<int>(a.size(op.args[k]))) args[k++] = 0;
        if (k == args.size()) break;
      }
    }
  }
  return true;
}

// Greedy generating set: elements not reached from the earlier ones.
std::vector<std::pair<std::string, int>> generating_set(const FiniteAlgebra& a) {
  std::map<std::string, std::vector<int>> reach;
  for (const auto& s : a.theory().sorts) reach[s].assign(a.size(s), -1);
  // propagate a -> a with the identity as the partial map
  propagate(a, a, reach, nullptr);
  std::vector<std::pair<std::string, int>> gens;
  for (const auto& s : a.theory().sorts)
    for (int i = 0; i < static_cast<int>(a.size(s)); ++i) {
      if (reach[s][static_cast<std::size_t>(i)] >= 0) continue;
      gens.emplace_back(s, i);
      reach[s][static_cast<std::size_t>(i)] = i;
      propagate(a, a, reach, nullptr);
    }
  return gens;
}

}  // namespace

std::vector<AlgebraMap> enumerate_homs(const FiniteAlgebra& a, const FiniteAlgebra& b, Budget* budget) {
  Budget local;
  if (!budget) budget = &local;
  const auto gens = generating_set(a);
  std::vector<AlgebraMap> out;
  std::map<std::string, std::vector<int>> img;
  for (const auto& s : a.theory().sorts) img[s].assign(a.size(s), -1);
  if (!propagate(a, b, img, budget)) return out;
  std::function<void(std::size_t, std::map<std::string, std::vector<int>>&)> rec =
      [&](std::size_t k, std::map<std::string, std::vector<int>>& cur) {
        if (k == gens.size()) {
          AlgebraMap f{cur};
          if (!is_homomorphism(a, b, f)) throw CheckFailed("hom enumeration produced a non-homomorphism");
          out.push_back(std::move(f));
          return;
        }
        const auto& [sort, elem] = gens[k];
        for (int v = 0; v < static_cast<int>(b.size(sort)); ++v) {
          budget->spend();
          auto next = cur;
          int& slot = next[sort][static_cast<std::size_t>(elem)];
          if (slot >= 0 && slot != v) continue;
          slot = v;
          if (!propagate(a, b, next, budget)) continue;
          rec(k + 1, next);
        }
      };
  rec(0, img);
  return out;
}

std::optional<AlgebraMap> find_isomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b, Budget* budget) {
  for (const auto& s : a.theory().sorts)
    if (a.size(s) != b.size(s)) return std::nullopt;
  for (auto& f : enumerate_homs(a, b, budget)) {
    bool bijective = true;
    for (const auto& [s, v] : f.images) {
      std::set<int> distinct(v.begin(), v.end());
      bijective = bijective && distinct.size() == v.size();
    }
    if (bijective) return f;
  }
  return std::nullopt;
}

namespace {

std::string sort_at(const std::string& sort, const std::string& label) { return sort + "@" + label; }

std::string op_at(const std::string& op, const std::vector<std::string>& labels) {
  std::string s = op + "@";
  for (std::size_t i = 0; i < labels.size(); ++i) s += (i ? "@" : "") + labels[i];
  return s;
}

}  // namespace

TheoryPresentation comma_theory(const TheoryPresentation& theta, const FiniteAlgebra& x) {
  x.validate();
  TheoryPresentation r;
  r.name = theta.name + "/" + x.name();
  r.class_tag = "comma";
  for (const auto& s : theta.sorts)
    for (const auto& l : x.carrier(s)) r.sorts.push_back(sort_at(s, l));
  for (const auto& op : theta.ops) {
    std::vector<int> args(op.args.size(), 0);
    bool empty = false;
    for (const auto& s : op.args) empty = empty || x.size(s) == 0;
    if (empty) continue;
    while (true) {
      OpSig sig;
      std::vector<std::string> labels;
      for (std::size_t i = 0; i < args.size(); ++i) {
        labels.push_back(x.label(op.args[i], args[i]));
        sig.args.push_back(sort_at(op.args[i], labels.back()));
      }
      sig.name = op_at(op.name, labels);
      sig.result = sort_at(op.result, x.label(op.result, x.apply(op.name, args)));
      r.ops.push_back(sig);
      std::size_t k = 0;
      while (k < args.size() && ++args[k] == static_cast<int>(x.size(op.args[k]))) args[k++] = 0;
      if (k == args.size()) break;
    }
  }
  // instantiate each equation over all assignments of variables to elements
  std::function<Term(const Term&, const std::map<std::string, int>&, int&)> inst =
      [&](const Term& t, const std::map<std::string, int>& env, int& value) -> Term {
    if (t.is_var) {
      value = env.at(t.name);
      return Term::var(t.name, sort_at(t.sort, x.label(t.sort, value)));
    }
    std::vector<Term> args;
    std::vector<int> vals;
    std::vector<std::string> labels;
    const OpSig* sig = theta.find_op(t.name);
    for (std::size_t i = 0; i < t.args.size(); ++i) {
      int v = 0;
      args.push_back(inst(t.args[i], env, v));
      vals.push_back(v);
      labels.push_back(x.label(sig->args[i], v));
    }
    value = x.apply(t.name, vals);
    return Term::app(op_at(t.name, labels), std::move(args));
  };
  for (const auto& e : theta.equations) {
    std::vector<Term> vars;
    collect_variables(e.lhs, vars);
    collect_variables(e.rhs, vars);
    std::vector<int> cur(vars.size(), 0);
    bool empty = false;
    for (const auto& v : vars) empty = empty || x.size(v.sort) == 0;
    if (empty) continue;
    while (true) {
      std::map<std::string, int> env;
      for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i].name] = cur[i];
      int lv = 0, rv = 0;
      Equation ie{inst(e.lhs, env, lv), inst(e.rhs, env, rv)};
      if (lv != rv) throw CheckFailed(x.name() + " is not an algebra of " + theta.name);
      r.equations.push_back(std::move(ie));
      std::size_t k = 0;
      while (k < vars.size() && ++cur[k] == static_cast<int>(x.size(vars[k].sort))) cur[k++] = 0;
      if (k == vars.size()) break;
    }
  }
  r.validate();
  return r;
}

TheoryPresentation module_theory(const TheoryPresentation& theta, const FiniteAlgebra& x) {
  x.validate();
  return group_ring_module_theory(theta, x.group_table(), "Mod_" + x.name());
}

}  // namespace aq
