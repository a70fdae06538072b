#include <cctype>
#include <set>

#include "aq/theory.hpp"

namespace aq {

namespace {

std::string sanitize(const std::string& label) {
  std::string out;
  for (char c : label) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.') ? c : '_';
  return out.empty() ? "_" : out;
}

TheoryPresentation group_like(const std::string& name, const std::string& sort, const GroupOps& g, bool commutative) {
  TheoryPresentation t;
  t.name = name;
  t.sorts = {sort};
  t.ops = {{g.mul, {sort, sort}, sort}, {g.inv, {sort}, sort}, {g.unit, {}, sort}};
  t.equations = group_axioms(sort, g);
  if (commutative)
    t.equations.push_back({Term::app(g.mul, {Term::var("x", sort), Term::var("y", sort)}),
                           Term::app(g.mul, {Term::var("y", sort), Term::var("x", sort)})});
  t.group_witness[sort] = g;
  t.validate();
  return t;
}

}  // namespace

std::vector<int> group_generators(const GroupTable& g) {
  const int n = static_cast<int>(g.order());
  std::vector<int> gens;
  std::set<int> closure{g.identity};
  for (int x = 0; x < n; ++x) {
    if (closure.count(x)) continue;
    gens.push_back(x);
    closure.insert(x);
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<int> current(closure.begin(), closure.end());
      for (int a : current)
        for (int b : gens) {
          if (closure.insert(g(a, b)).second) grew = true;
        }
    }
  }
  return gens;
}

TheoryPresentation group_ring_module_theory(const TheoryPresentation& theta, const GroupTable& g,
                                            const std::string& name) {
  if (theta.sorts.size() != 1) throw Unsupported("module theories are built for singly sorted theories only");
  TheoryPresentation r = abelianization_theory(theta);
  if (g.order() == 1) return r;
  const std::string s = r.sorts[0];
  const GroupOps w = r.group_witness.at(s);
  r.name = name;
  std::vector<std::string> act;
  for (const auto& label : g.labels) {
    act.push_back("act@" + sanitize(label));
    r.ops.push_back({act.back(), {s}, s});
    r.module_actions[label] = act.back();
  }
  const Term m = Term::var("m", s), a = Term::var("a", s), b = Term::var("b", s);
  for (std::size_t x = 0; x < g.order(); ++x)
    r.equations.push_back({Term::app(act[x], {Term::app(w.mul, {a, b})}),
                           Term::app(w.mul, {Term::app(act[x], {a}), Term::app(act[x], {b})})});
  for (std::size_t x = 0; x < g.order(); ++x)
    for (int gen : group_generators(g)) {
      const auto xg = static_cast<std::size_t>(g(static_cast<int>(x), gen));
      r.equations.push_back({Term::app(act[xg], {m}), Term::app(act[x], {Term::app(act[static_cast<std::size_t>(gen)], {m})})});
    }
  r.equations.push_back({Term::app(act[static_cast<std::size_t>(g.identity)], {m}), m});
  r.class_tag = "mod";
  r.ring = Ring::group_ring(g);
  r.validate();
  return r;
}

TheoryPresentation builtin_theory(const std::string& name) {
  if (name == "gp") return group_like("Gp", "g", {"mul", "inv", "e"}, false);
  if (name == "ab") return group_like("Ab", "a", {"add", "neg", "zero"}, true);
  if (name == "set") {
    TheoryPresentation t;
    t.name = "Set";
    t.sorts = {"s"};
    t.validate();
    return t;
  }
  if (name == "trivial") {
    TheoryPresentation t;
    t.name = "Trivial";
    t.validate();
    return t;
  }
  if (name.rfind("mod:", 0) == 0) {
    const std::string ring = name.substr(4);
    TheoryPresentation ab = group_like("Ab", "a", {"add", "neg", "zero"}, true);
    if (ring.size() > 3 && ring.rfind("Z[Z/", 0) == 0 && ring.back() == ']') {
      const int n = std::stoi(ring.substr(4, ring.size() - 5));
      return group_ring_module_theory(ab, GroupTable::cyclic(n), "Mod_" + ring);
    }
    auto r = Ring::from_name(ring);
    ab.name = "Mod_" + ring;
    ab.class_tag = "mod";
    ab.ring = r;
    if (r->characteristic() != 0) {
      const Term x = Term::var("x", "a");
      Term sum = x;
      for (Int i = 1; i < r->characteristic(); ++i) sum = Term::app("add", {x, sum});
      ab.equations.push_back({sum, Term::app("zero")});
    }
    ab.validate();
    return ab;
  }
  throw Error("unknown built-in theory '" + name + "'");
}

}  // namespace aq
