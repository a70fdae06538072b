#include <algorithm>
#include <set>
#include <sstream>

#include "aq/theory.hpp"

namespace aq {

Term Term::var(std::string name, std::string sort) {
  Term t;
  t.is_var = true;
  t.name = std::move(name);
  t.sort = std::move(sort);
  return t;
}

Term Term::app(std::string op, std::vector<Term> args) {
  Term t;
  t.name = std::move(op);
  t.args = std::move(args);
  return t;
}

std::string Term::to_string() const {
  if (is_var) return "$" + name;
  std::string s = name + "(";
  for (std::size_t i = 0; i < args.size(); ++i) s += (i ? "," : "") + args[i].to_string();
  return s + ")";
}

std::size_t Term::size() const {
  std::size_t n = 1;
  for (const auto& a : args) n += a.size();
  return n;
}

void collect_variables(const Term& t, std::vector<Term>& out) {
  if (t.is_var) {
    for (const auto& v : out)
      if (v.name == t.name) return;
    out.push_back(t);
    return;
  }
  for (const auto& a : t.args) collect_variables(a, out);
}

Term substitute(const Term& t, const std::map<std::string, Term>& sigma) {
  if (t.is_var) {
    auto it = sigma.find(t.name);
    return it == sigma.end() ? t : it->second;
  }
  Term r = t;
  for (auto& a : r.args) a = substitute(a, sigma);
  return r;
}

Term rename_ops(const Term& t, const std::map<std::string, std::string>& renaming) {
  if (t.is_var) return t;
  Term r = t;
  auto it = renaming.find(t.name);
  if (it != renaming.end()) r.name = it->second;
  for (auto& a : r.args) a = rename_ops(a, renaming);
  return r;
}

const OpSig* TheoryPresentation::find_op(const std::string& op) const {
  for (const auto& o : ops)
    if (o.name == op) return &o;
  return nullptr;
}

bool TheoryPresentation::has_sort(const std::string& s) const {
  return std::find(sorts.begin(), sorts.end(), s) != sorts.end();
}

namespace {

std::string infer(const TheoryPresentation& t, Term& term, const std::string& expected,
                  std::map<std::string, std::string>& var_sorts, const std::string& context) {
  if (term.is_var) {
    auto it = var_sorts.find(term.name);
    if (!expected.empty()) {
      if (it != var_sorts.end() && !it->second.empty() && it->second != expected)
        throw SortError("variable $" + term.name + " used at sorts " + it->second + " and " + expected + " in " +
                        context);
      var_sorts[term.name] = expected;
    } else if (it == var_sorts.end()) {
      var_sorts[term.name] = "";
    }
    return var_sorts[term.name];
  }
  const OpSig* op = t.find_op(term.name);
  if (!op) throw SortError("unknown op '" + term.name + "' in term " + term.to_string());
  if (op->args.size() != term.args.size())
    throw SortError("op '" + term.name + "' expects " + std::to_string(op->args.size()) + " arguments in term " +
                    term.to_string());
  if (!expected.empty() && op->result != expected)
    throw SortError("term " + term.to_string() + " has sort " + op->result + ", expected " + expected);
  for (std::size_t i = 0; i < op->args.size(); ++i) infer(t, term.args[i], op->args[i], var_sorts, context);
  term.sort = op->result;
  return op->result;
}

void assign_sorts(Term& term, const std::map<std::string, std::string>& var_sorts) {
  if (term.is_var) {
    term.sort = var_sorts.at(term.name);
    return;
  }
  for (auto& a : term.args) assign_sorts(a, var_sorts);
}

// Canonical text of an equation with variables renamed by first occurrence.
std::string canonical_text(const Term& lhs, const Term& rhs) {
  std::vector<Term> vars;
  collect_variables(lhs, vars);
  collect_variables(rhs, vars);
  std::map<std::string, Term> sigma;
  for (std::size_t i = 0; i < vars.size(); ++i) sigma[vars[i].name] = Term::var("v" + std::to_string(i));
  return substitute(lhs, sigma).to_string() + "=" + substitute(rhs, sigma).to_string();
}

void classify(TheoryPresentation& t) {
  if (!t.class_tag.empty()) return;
  if (t.ops.empty()) {
    t.class_tag = "discrete";
    return;
  }
  if (t.sorts.size() != 1 || t.ops.size() != 3) return;
  const auto report = validate_group_structure(t);
  if (!report.ok) return;
  const std::string& s = t.sorts[0];
  const GroupOps g = report.witness.at(s);
  const auto axioms = group_axioms(s, g);
  const Equation comm{Term::app(g.mul, {Term::var("x", s), Term::var("y", s)}),
                      Term::app(g.mul, {Term::var("y", s), Term::var("x", s)})};
  bool commutative = false;
  for (const auto& e : t.equations) {
    TheoryPresentation one;
    one.equations = {e};
    bool known = false;
    for (const auto& a : axioms) known = known || has_equation(one, a);
    if (has_equation(one, comm)) {
      commutative = true;
      known = true;
    }
    if (!known) return;
  }
  t.group_witness = report.witness;
  t.class_tag = commutative ? "ab" : "gp";
}

}  // namespace

void TheoryPresentation::validate() {
  std::set<std::string> seen;
  for (const auto& s : sorts)
    if (!seen.insert(s).second) throw DuplicateNameError("duplicate sort '" + s + "'");
  seen.clear();
  for (const auto& o : ops) {
    if (!seen.insert(o.name).second) throw DuplicateNameError("duplicate op '" + o.name + "'");
    for (const auto& a : o.args)
      if (!has_sort(a)) throw SortError("op '" + o.name + "' uses undeclared sort '" + a + "'");
    if (!has_sort(o.result)) throw SortError("op '" + o.name + "' uses undeclared sort '" + o.result + "'");
  }
  for (auto& e : equations) {
    const std::string context = e.lhs.to_string() + " = " + e.rhs.to_string();
    std::map<std::string, std::string> var_sorts;
    // two passes so a variable first seen at the top of one side picks up the
    // sort fixed on the other side
    for (int pass = 0; pass < 2; ++pass) {
      const std::string ls = infer(*this, e.lhs, "", var_sorts, context);
      const std::string rs = infer(*this, e.rhs, ls, var_sorts, context);
      if (ls.empty() && !rs.empty()) infer(*this, e.lhs, rs, var_sorts, context);
    }
    for (auto& [v, s] : var_sorts) {
      if (s.empty() && sorts.size() == 1) s = sorts[0];
      if (s.empty()) throw SortError("cannot infer the sort of $" + v + " in " + context);
    }
    infer(*this, e.lhs, "", var_sorts, context);
    const std::string ls = e.lhs.is_var ? var_sorts.at(e.lhs.name) : e.lhs.sort;
    infer(*this, e.rhs, ls, var_sorts, context);
    assign_sorts(e.lhs, var_sorts);
    assign_sorts(e.rhs, var_sorts);
  }
  for (const auto& [s, g] : group_witness) {
    if (!has_sort(s)) throw SortError("group structure on undeclared sort '" + s + "'");
    const OpSig* m = find_op(g.mul);
    const OpSig* i = find_op(g.inv);
    const OpSig* u = find_op(g.unit);
    if (!m || m->args != std::vector<std::string>{s, s} || m->result != s)
      throw SortError("group mul '" + g.mul + "' is not an op " + s + " " + s + " -> " + s);
    if (!i || i->args != std::vector<std::string>{s} || i->result != s)
      throw SortError("group inv '" + g.inv + "' is not an op " + s + " -> " + s);
    if (!u || !u->args.empty() || u->result != s)
      throw SortError("group unit '" + g.unit + "' is not an op -> " + s);
    for (const auto& ax : group_axioms(s, g))
      if (!has_equation(*this, ax))
        throw CheckFailed("group structure on sort " + s + " lacks axiom " + ax.lhs.to_string() + " = " +
                          ax.rhs.to_string());
  }
  classify(*this);
  strength_flag = validate_group_structure(*this).strength_flag;
}

std::string TheoryPresentation::print() const {
  std::ostringstream os;
  os << "theory " << name << " {\n";
  if (!sorts.empty()) {
    os << "  sort";
    for (const auto& s : sorts) os << " " << s;
    os << "\n";
  }
  for (const auto& o : ops) {
    os << "  op " << o.name << " :";
    for (const auto& a : o.args) os << " " << a;
    os << " -> " << o.result << "\n";
  }
  for (const auto& e : equations) os << "  eq " << e.lhs.to_string() << " = " << e.rhs.to_string() << "\n";
  for (const auto& [s, g] : group_witness)
    os << "  group " << s << " { mul = " << g.mul << ", inv = " << g.inv << ", unit = " << g.unit << " }\n";
  os << "}\n";
  return os.str();
}

bool has_equation(const TheoryPresentation& t, const Equation& e) {
  const std::string a = canonical_text(e.lhs, e.rhs);
  const std::string b = canonical_text(e.rhs, e.lhs);
  for (const auto& f : t.equations) {
    const std::string c = canonical_text(f.lhs, f.rhs);
    if (c == a || c == b) return true;
  }
  return false;
}

std::vector<Equation> group_axioms(const std::string& s, const GroupOps& g) {
  const Term x = Term::var("x", s), y = Term::var("y", s), z = Term::var("z", s);
  const Term e = Term::app(g.unit);
  auto m = [&](const Term& a, const Term& b) { return Term::app(g.mul, {a, b}); };
  auto i = [&](const Term& a) { return Term::app(g.inv, {a}); };
  return {
      {m(m(x, y), z), m(x, m(y, z))},
      {m(e, x), x},
      {m(x, e), x},
      {m(i(x), x), e},
      {m(x, i(x)), e},
  };
}

namespace {

const char* kAxiomNames[] = {"associativity", "left unit", "right unit", "left inverse", "right inverse"};

Equation additivity(const OpSig& f, const std::map<std::string, GroupOps>& w) {
  if (f.args.empty()) return {Term::app(f.name), Term::app(w.at(f.result).unit)};
  std::vector<Term> mixed, xs, ys;
  for (std::size_t i = 0; i < f.args.size(); ++i) {
    const Term x = Term::var("x" + std::to_string(i), f.args[i]);
    const Term y = Term::var("y" + std::to_string(i), f.args[i]);
    mixed.push_back(Term::app(w.at(f.args[i]).mul, {x, y}));
    xs.push_back(x);
    ys.push_back(y);
  }
  return {Term::app(f.name, mixed), Term::app(w.at(f.result).mul, {Term::app(f.name, xs), Term::app(f.name, ys)})};
}

}  // namespace

GroupStructureReport validate_group_structure(const TheoryPresentation& t) {
  GroupStructureReport r;
  r.ok = true;
  for (const auto& s : t.sorts) {
    std::vector<GroupOps> candidates;
    auto given = t.group_witness.find(s);
    if (given != t.group_witness.end()) {
      candidates.push_back(given->second);
    } else {
      std::vector<std::string> muls, invs, units;
      for (const auto& o : t.ops) {
        if (o.result != s) continue;
        if (o.args == std::vector<std::string>{s, s}) muls.push_back(o.name);
        if (o.args == std::vector<std::string>{s}) invs.push_back(o.name);
        if (o.args.empty()) units.push_back(o.name);
      }
      if (muls.empty()) r.missing.push_back(s + ": mul");
      if (invs.empty()) r.missing.push_back(s + ": inv");
      if (units.empty()) r.missing.push_back(s + ": unit");
      for (const auto& m : muls)
        for (const auto& i : invs)
          for (const auto& u : units) candidates.push_back({m, i, u});
      if (candidates.empty()) {
        r.ok = false;
        continue;
      }
    }
    bool found = false;
    std::vector<std::string> first_missing;
    for (std::size_t c = 0; c < candidates.size() && !found; ++c) {
      const auto axioms = group_axioms(s, candidates[c]);
      std::vector<std::string> miss;
      for (std::size_t a = 0; a < axioms.size(); ++a)
        if (!has_equation(t, axioms[a])) miss.push_back(s + ": " + kAxiomNames[a]);
      if (miss.empty()) {
        r.witness[s] = candidates[c];
        found = true;
      } else if (c == 0) {
        first_missing = miss;
      }
    }
    if (!found) {
      r.ok = false;
      r.missing.insert(r.missing.end(), first_missing.begin(), first_missing.end());
    }
  }
  if (!r.ok) return r;
  r.strength_flag = true;
  for (const auto& s : t.sorts) {
    const GroupOps& g = r.witness.at(s);
    const Equation comm{Term::app(g.mul, {Term::var("x", s), Term::var("y", s)}),
                        Term::app(g.mul, {Term::var("y", s), Term::var("x", s)})};
    if (!has_equation(t, comm)) r.strength_flag = false;
  }
  for (const auto& o : t.ops) {
    bool structural = false;
    for (const auto& [s, g] : r.witness) structural = structural || o.name == g.mul || o.name == g.inv || o.name == g.unit;
    if (!structural && !has_equation(t, additivity(o, r.witness))) r.strength_flag = false;
  }
  return r;
}

TheoryPresentation discrete_theory(const TheoryPresentation& t) {
  TheoryPresentation d;
  d.name = t.name + "_delta";
  d.sorts = t.sorts;
  d.class_tag = "discrete";
  return d;
}

TheoryPresentation product_theory(const TheoryPresentation& phi, const TheoryPresentation& theta, bool prefix_names) {
  if (phi.sorts.size() != 1) throw Error("product_theory needs a singly sorted phi");
  const std::string tag = "phi:" + phi.name;
  if (std::find(theta.structure_tags.begin(), theta.structure_tags.end(), tag) != theta.structure_tags.end())
    return theta;
  const std::string& ps = phi.sorts[0];

  TheoryPresentation r;
  r.name = phi.name + "x" + theta.name;
  r.sorts = theta.sorts;
  r.structure_tags = theta.structure_tags;
  r.structure_tags.push_back(tag);

  std::map<std::string, std::string> theta_names;
  for (const auto& o : theta.ops) theta_names[o.name] = prefix_names ? "theta." + o.name : o.name;
  auto phi_name = [&](const std::string& op, const std::string& sort) {
    return prefix_names ? "phi." + op + "." + sort : op + (theta.sorts.size() > 1 ? "." + sort : "");
  };

  for (const auto& o : theta.ops) r.ops.push_back({theta_names[o.name], o.args, o.result});
  for (const auto& s : theta.sorts)
    for (const auto& o : phi.ops) r.ops.push_back({phi_name(o.name, s), std::vector<std::string>(o.args.size(), s), s});
  {
    std::set<std::string> names;
    for (const auto& o : r.ops)
      if (!names.insert(o.name).second)
        throw DuplicateNameError("op name collision '" + o.name + "' in product theory (prefixing disabled)");
  }

  for (const auto& e : theta.equations) r.equations.push_back({rename_ops(e.lhs, theta_names), rename_ops(e.rhs, theta_names)});
  auto phi_in_sort = [&](const Term& t, const std::string& s) {
    std::map<std::string, std::string> ren;
    for (const auto& o : phi.ops) ren[o.name] = phi_name(o.name, s);
    return rename_ops(t, ren);
  };
  auto resort = [&](Term t, const std::string& s, auto&& self) -> Term {
    if (t.is_var) {
      t.sort = s;
      return t;
    }
    for (auto& a : t.args) a = self(a, s, self);
    return t;
  };
  for (const auto& s : theta.sorts)
    for (const auto& e : phi.equations)
      r.equations.push_back({resort(phi_in_sort(e.lhs, s), s, resort), resort(phi_in_sort(e.rhs, s), s, resort)});

  // commuting squares f(g(x_11..x_1n), ..., g(x_a1..x_an)) = g(f(x_11..x_a1), ..., f(x_1n..x_an))
  for (const auto& f : theta.ops)
    for (const auto& g : phi.ops) {
      const std::size_t a = f.args.size(), n = g.args.size();
      auto x = [&](std::size_t i, std::size_t j) {
        return Term::var("x" + std::to_string(i) + "_" + std::to_string(j), f.args[i]);
      };
      std::vector<Term> inner;
      for (std::size_t i = 0; i < a; ++i) {
        std::vector<Term> row;
        for (std::size_t j = 0; j < n; ++j) row.push_back(x(i, j));
        inner.push_back(Term::app(phi_name(g.name, f.args[i]), row));
      }
      std::vector<Term> outer;
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<Term> col;
        for (std::size_t i = 0; i < a; ++i) col.push_back(x(i, j));
        outer.push_back(Term::app(theta_names[f.name], col));
      }
      r.equations.push_back({Term::app(theta_names[f.name], inner), Term::app(phi_name(g.name, f.result), outer)});
    }
  (void)ps;

  for (const auto& [s, w] : phi.group_witness) {
    (void)s;
    for (const auto& ts : theta.sorts)
      r.group_witness[ts] = {phi_name(w.mul, ts), phi_name(w.inv, ts), phi_name(w.unit, ts)};
  }
  if (phi.ops.empty()) {
    for (const auto& [s, w] : theta.group_witness)
      r.group_witness[s] = {theta_names[w.mul], theta_names[w.inv], theta_names[w.unit]};
    r.class_tag = theta.class_tag;
    r.ring = theta.ring;
    for (const auto& [label, op] : theta.module_actions) r.module_actions[label] = theta_names.at(op);
  }
  r.validate();
  return r;
}

TheoryPresentation abelianization_theory(const TheoryPresentation& theta) {
  const auto report = validate_group_structure(theta);
  if (!report.ok) throw Error("not a group theory: missing " + (report.missing.empty() ? "?" : report.missing.front()));
  TheoryPresentation r = theta;
  r.group_witness = report.witness;
  std::vector<Equation> added;
  for (const auto& s : theta.sorts) {
    const GroupOps& g = report.witness.at(s);
    added.push_back({Term::app(g.mul, {Term::var("x", s), Term::var("y", s)}),
                     Term::app(g.mul, {Term::var("y", s), Term::var("x", s)})});
  }
  for (const auto& o : theta.ops) {
    bool structural = false;
    for (const auto& [s, g] : report.witness) structural = structural || o.name == g.mul || o.name == g.inv || o.name == g.unit;
    if (!structural) added.push_back(additivity(o, report.witness));
  }
  bool changed = false;
  for (const auto& e : added)
    if (!has_equation(r, e)) {
      r.equations.push_back(e);
      changed = true;
    }
  if (changed) {
    r.name = theta.name + "_ab";
    if (r.class_tag == "gp") r.class_tag = "ab";
    else if (r.class_tag != "ab" && r.class_tag != "mod") r.class_tag.clear();
  }
  r.validate();
  return r;
}

}  // namespace aq
