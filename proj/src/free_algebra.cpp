#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>

#include "aq/algebra.hpp"

namespace aq {

Word word_mul(const Word& a, const Word& b) {
  Word out = a;
  for (const auto& l : b) {
    if (!out.empty() && out.back().first == l.first && out.back().second == -l.second) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word word_inv(const Word& a) {
  Word out;
  for (auto it = a.rbegin(); it != a.rend(); ++it) out.emplace_back(it->first, -it->second);
  return out;
}

FreeAlgebra::FreeAlgebra(TheoryPresentation theory, std::vector<Generator> gens)
    : theory_(std::move(theory)), gens_(std::move(gens)), ring_(Ring::integers()) {
  for (const auto& g : gens_)
    if (!theory_.has_sort(g.sort)) throw SortError("generator " + g.name + " has unknown sort '" + g.sort + "'");
  const std::string& tag = theory_.class_tag;
  if (tag == "gp" || tag == "ab" || tag == "mod" || tag == "discrete") {
    engine_ = tag;
  } else if (gens_.empty()) {
    engine_ = "empty";
  } else {
    throw Unsupported("theory " + theory_.name + " has no normal-form engine (unregistered class)");
  }
  if (engine_ == "gp" || engine_ == "ab" || engine_ == "mod") ops_ = theory_.group_witness.at(theory_.sorts.at(0));
  if (engine_ == "mod") {
    ring_ = theory_.ring ? theory_.ring : Ring::integers();
    for (const auto& [label, op] : theory_.module_actions) {
      const auto& labels = ring_->group().labels;
      act_basis_[op] = static_cast<std::size_t>(std::find(labels.begin(), labels.end(), label) - labels.begin());
    }
  }
}

FreeAlgebra free_algebra(const TheoryPresentation& theta, const std::vector<Generator>& gens) {
  return FreeAlgebra(theta, gens);
}

namespace {

std::size_t generator_index(const std::vector<Generator>& gens, const std::string& name) {
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i].name == name) return i;
  throw Error("unknown generator $" + name);
}

}  // namespace

FreeElement FreeAlgebra::eval(const Term& t) const {
  const std::size_t d = ring_->dim();
  const std::size_t n = gens_.size() * d;
  const Int m = ring_->characteristic();
  auto reduce = [&](Vector v) {
    if (m != 0)
      for (auto& x : v) x = ((x % m) + m) % m;
    return v;
  };
  if (t.is_var) {
    const std::size_t i = generator_index(gens_, t.name);
    if (engine_ == "gp") return Word{{static_cast<int>(i), 1}};
    if (engine_ == "discrete") return static_cast<int>(i);
    Vector v(n, 0);
    v[free_index(*ring_, i, ring_->one())] = 1;
    return v;
  }
  std::vector<FreeElement> args;
  for (const auto& a : t.args) args.push_back(eval(a));
  if (engine_ == "gp") {
    if (t.name == ops_.mul) return word_mul(std::get<Word>(args[0]), std::get<Word>(args[1]));
    if (t.name == ops_.inv) return word_inv(std::get<Word>(args[0]));
    if (t.name == ops_.unit) return Word{};
  } else if (engine_ == "ab" || engine_ == "mod") {
    if (t.name == ops_.mul) {
      Vector v = std::get<Vector>(args[0]);
      const Vector& w = std::get<Vector>(args[1]);
      for (std::size_t i = 0; i < n; ++i) v[i] = detail::checked_add(v[i], w[i]);
      return reduce(v);
    }
    if (t.name == ops_.inv) {
      Vector v = std::get<Vector>(args[0]);
      for (auto& x : v) x = -x;
      return reduce(v);
    }
    if (t.name == ops_.unit) return Vector(n, 0);
    auto it = act_basis_.find(t.name);
    if (it != act_basis_.end()) {
      const Vector& v = std::get<Vector>(args[0]);
      Vector out(n, 0);
      for (std::size_t g = 0; g < gens_.size(); ++g)
        for (std::size_t h = 0; h < d; ++h)
          out[free_index(*ring_, g, ring_->basis_mul(it->second, h))] = v[free_index(*ring_, g, h)];
      return out;
    }
  }
  throw Unsupported("op '" + t.name + "' has no normal-form rule in engine " + engine_);
}

Term FreeAlgebra::to_term(const FreeElement& e) const {
  std::vector<Term> parts;
  if (engine_ == "discrete") return generator_term(static_cast<std::size_t>(std::get<int>(e)));
  if (engine_ == "gp") {
    for (const auto& [g, ex] : std::get<Word>(e)) {
      Term x = generator_term(static_cast<std::size_t>(g));
      parts.push_back(ex > 0 ? x : Term::app(ops_.inv, {x}));
    }
  } else {
    const Vector& v = std::get<Vector>(e);
    std::map<std::size_t, std::string> act_name;
    for (const auto& [op, b] : act_basis_) act_name[b] = op;
    for (std::size_t g = 0; g < gens_.size(); ++g)
      for (std::size_t h = 0; h < ring_->dim(); ++h) {
        const Int c = v[free_index(*ring_, g, h)];
        if (c == 0) continue;
        Term base = generator_term(g);
        if (h != ring_->one()) base = Term::app(act_name.at(h), {base});
        if (c < 0) base = Term::app(ops_.inv, {base});
        for (Int k = 0; k < (c < 0 ? -c : c); ++k) parts.push_back(base);
      }
  }
  if (parts.empty()) return Term::app(ops_.unit);
  Term acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = Term::app(ops_.mul, {parts[i], acc});
  return acc;
}

int FreeAlgebra::evaluate_in(const FreeElement& e, const FiniteAlgebra& b, const std::vector<int>& gen_images) const {
  if (engine_ == "discrete") return gen_images.at(static_cast<std::size_t>(std::get<int>(e)));
  int acc = b.apply(ops_.unit, {});
  if (engine_ == "gp") {
    for (const auto& [g, ex] : std::get<Word>(e)) {
      int x = gen_images.at(static_cast<std::size_t>(g));
      if (ex < 0) x = b.apply(ops_.inv, {x});
      acc = b.apply(ops_.mul, {acc, x});
    }
    return acc;
  }
  std::map<std::size_t, std::string> act_name;
  for (const auto& [op, basis] : act_basis_) act_name[basis] = op;
  const Vector& v = std::get<Vector>(e);
  for (std::size_t g = 0; g < gens_.size(); ++g)
    for (std::size_t h = 0; h < ring_->dim(); ++h) {
      const Int c = v[free_index(*ring_, g, h)];
      if (c == 0) continue;
      int x = gen_images.at(g);
      if (h != ring_->one()) x = b.apply(act_name.at(h), {x});
      if (c < 0) x = b.apply(ops_.inv, {x});
      for (Int k = 0; k < (c < 0 ? -c : c); ++k) acc = b.apply(ops_.mul, {acc, x});
    }
  return acc;
}

std::vector<std::vector<int>> enumerate_homs(const FreeAlgebra& a, const FiniteAlgebra& b, Budget* budget) {
  Budget local;
  if (!budget) budget = &local;
  const auto& gens = a.generators();
  std::vector<std::size_t> sizes;
  for (const auto& g : gens) sizes.push_back(b.size(g.sort));
  std::vector<std::vector<int>> out;
  if (gens.empty()) return {{}};
  for (auto s : sizes)
    if (s == 0) return out;

  // ball of terms on which the extension is checked to be a homomorphism
  const auto& t = a.theory();
  std::vector<Term> ball;
  for (std::size_t i = 0; i < gens.size(); ++i) ball.push_back(a.generator_term(i));
  for (const auto& op : t.ops) {
    if (op.args.empty()) ball.push_back(Term::app(op.name));
    if (op.args.size() == 1)
      for (std::size_t i = 0; i < gens.size(); ++i)
        if (gens[i].sort == op.args[0]) ball.push_back(Term::app(op.name, {a.generator_term(i)}));
  }
  std::vector<FreeElement> ball_nf;
  for (const auto& x : ball) ball_nf.push_back(a.eval(x));
  auto sort_of = [&](const Term& x) { return x.is_var ? x.sort : t.find_op(x.name)->result; };

  std::vector<int> cur(gens.size(), 0);
  while (true) {
    budget->spend();
    std::vector<int> vals(ball.size());
    for (std::size_t i = 0; i < ball.size(); ++i) vals[i] = a.evaluate_in(ball_nf[i], b, cur);
    for (const auto& op : t.ops) {
      std::vector<std::size_t> pick(op.args.size(), 0);
      std::vector<std::vector<std::size_t>> choices;
      for (const auto& s : op.args) {
        std::vector<std::size_t> c;
        for (std::size_t i = 0; i < ball.size(); ++i)
          if (sort_of(ball[i]) == s) c.push_back(i);
        choices.push_back(c);
      }
      bool empty = false;
      for (const auto& c : choices) empty = empty || c.empty();
      if (empty) continue;
      while (true) {
        budget->spend();
        std::vector<Term> args;
        std::vector<int> imgs;
        for (std::size_t k = 0; k < pick.size(); ++k) {
          args.push_back(ball[choices[k][pick[k]]]);
          imgs.push_back(vals[choices[k][pick[k]]]);
        }
        if (a.evaluate_in(a.eval(Term::app(op.name, args)), b, cur) != b.apply(op.name, imgs))
          throw CheckFailed("generator assignment does not extend to a homomorphism");
        std::size_t k = 0;
        while (k < pick.size() && ++pick[k] == choices[k].size()) pick[k++] = 0;
        if (k == pick.size()) break;
      }
    }
    out.push_back(cur);
    std::size_t k = gens.size();
    while (k > 0) {
      --k;
      if (++cur[k] < static_cast<int>(sizes[k])) break;
      cur[k] = 0;
      if (k == 0) return out;
    }
    if (gens.empty()) return out;
  }
}

bool adjunction_check(const TheoryPresentation& theta, const std::vector<Generator>& gens, const FiniteAlgebra& b,
                      Budget* budget) {
  const FreeAlgebra f(theta, gens);
  const auto homs = enumerate_homs(f, b, budget);
  Int expected = 1;
  for (const auto& g : gens) expected = detail::checked_mul(expected, static_cast<Int>(b.size(g.sort)));
  std::vector<std::vector<int>> sorted = homs;
  std::sort(sorted.begin(), sorted.end());
  const bool distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  return distinct && static_cast<Int>(homs.size()) == expected;
}

namespace {

// Todd-Coxeter coset enumeration (HLT with coincidences) over the trivial
// subgroup; columns 2i and 2i+1 are generator i and its inverse.
class CosetTable {
 public:
  CosetTable(std::size_t ngens, std::vector<std::vector<int>> relators, std::size_t limit)
      : cols_(2 * ngens), relators_(std::move(relators)), limit_(limit) {
    new_coset();
  }

  void run() {
    for (std::size_t c = 0; c < table_.size(); ++c) {
      if (!alive(static_cast<int>(c))) continue;
      for (const auto& r : relators_) {
        if (!alive(static_cast<int>(c))) break;
        scan_and_fill(static_cast<int>(c), r);
      }
      if (!alive(static_cast<int>(c))) continue;
      for (std::size_t x = 0; x < cols_; ++x)
        if (table_[c][x] < 0) define(static_cast<int>(c), static_cast<int>(x));
    }
  }

  std::vector<int> live() const {
    std::vector<int> out;
    for (std::size_t c = 0; c < table_.size(); ++c)
      if (alive(static_cast<int>(c))) out.push_back(static_cast<int>(c));
    return out;
  }
  int act(int c, int x) const { return table_[static_cast<std::size_t>(c)][static_cast<std::size_t>(x)]; }

 private:
  static int inv(int x) { return x ^ 1; }
  bool alive(int c) const { return parent_[static_cast<std::size_t>(c)] == c; }

  int new_coset() {
    if (table_.size() >= limit_) throw BoundExceeded("not finite within bound");
    table_.emplace_back(cols_, -1);
    parent_.push_back(static_cast<int>(parent_.size()));
    return static_cast<int>(table_.size() - 1);
  }
  void define(int c, int x) {
    const int n = new_coset();
    table_[static_cast<std::size_t>(c)][static_cast<std::size_t>(x)] = n;
    table_[static_cast<std::size_t>(n)][static_cast<std::size_t>(inv(x))] = c;
  }
  int rep(int c) {
    int r = c;
    while (parent_[static_cast<std::size_t>(r)] != r) r = parent_[static_cast<std::size_t>(r)];
    while (parent_[static_cast<std::size_t>(c)] != r) {
      const int next = parent_[static_cast<std::size_t>(c)];
      parent_[static_cast<std::size_t>(c)] = r;
      c = next;
    }
    return r;
  }
  void merge(int k, int l, std::deque<int>& queue) {
    k = rep(k);
    l = rep(l);
    if (k == l) return;
    if (k > l) std::swap(k, l);
    parent_[static_cast<std::size_t>(l)] = k;
    queue.push_back(l);
  }
  void coincidence(int a, int b) {
    std::deque<int> queue;
    merge(a, b, queue);
    while (!queue.empty()) {
      const int e = queue.front();
      queue.pop_front();
      for (int x = 0; x < static_cast<int>(cols_); ++x) {
        const int f = table_[static_cast<std::size_t>(e)][static_cast<std::size_t>(x)];
        if (f < 0) continue;
        table_[static_cast<std::size_t>(f)][static_cast<std::size_t>(inv(x))] = -1;
        const int e1 = rep(e), f1 = rep(f);
        int& ex = table_[static_cast<std::size_t>(e1)][static_cast<std::size_t>(x)];
        int& fx = table_[static_cast<std::size_t>(f1)][static_cast<std::size_t>(inv(x))];
        if (ex >= 0) {
          merge(f1, ex, queue);
        } else if (fx >= 0) {
          merge(e1, fx, queue);
        } else {
          ex = f1;
          fx = e1;
        }
      }
    }
  }
  void scan_and_fill(int c, const std::vector<int>& w) {
    if (w.empty()) return;
    int f = c, b = c;
    std::size_t i = 0, j = w.size();  // j is one past the last unscanned letter
    while (true) {
      while (i < j && table_[static_cast<std::size_t>(f)][static_cast<std::size_t>(w[i])] >= 0)
        f = table_[static_cast<std::size_t>(f)][static_cast<std::size_t>(w[i++])];
      if (i == j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j > i && table_[static_cast<std::size_t>(b)][static_cast<std::size_t>(inv(w[j - 1]))] >= 0)
        b = table_[static_cast<std::size_t>(b)][static_cast<std::size_t>(inv(w[--j]))];
      if (j == i) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        table_[static_cast<std::size_t>(f)][static_cast<std::size_t>(w[i])] = b;
        table_[static_cast<std::size_t>(b)][static_cast<std::size_t>(inv(w[i]))] = f;
        return;
      }
      define(f, w[i]);
    }
  }

  std::size_t cols_;
  std::vector<std::vector<int>> relators_;
  std::size_t limit_;
  std::vector<std::vector<int>> table_;
  std::vector<int> parent_;
};

FiniteAlgebra realize_group(const TheoryPresentation& theta, const FreeAlgebra& f, const std::vector<Equation>& rels,
                            std::size_t bound) {
  std::vector<std::vector<int>> relators;
  for (const auto& r : rels) {
    const Word w = word_mul(std::get<Word>(f.eval(r.lhs)), word_inv(std::get<Word>(f.eval(r.rhs))));
    std::vector<int> letters;
    for (const auto& [g, e] : w) letters.push_back(2 * g + (e > 0 ? 0 : 1));
    relators.push_back(letters);
  }
  CosetTable ct(f.generators().size(), relators, std::max<std::size_t>(64, 64 * bound));
  ct.run();
  const auto live = ct.live();
  if (live.size() > bound) throw BoundExceeded("not finite within bound");
  // BFS for shortest words and compact numbering
  std::map<int, int> index;
  std::vector<int> order{live.front()};
  std::vector<std::vector<int>> words{{}};
  index[live.front()] = 0;
  const int cols = static_cast<int>(2 * f.generators().size());
  for (std::size_t q = 0; q < order.size(); ++q)
    for (int x = 0; x < cols; ++x) {
      const int n = ct.act(order[q], x);
      if (n >= 0 && !index.count(n)) {
        index[n] = static_cast<int>(order.size());
        order.push_back(n);
        auto w = words[q];
        w.push_back(x);
        words.push_back(w);
      }
    }
  const std::size_t n = order.size();
  std::vector<std::string> labels;
  for (const auto& w : words) {
    if (w.empty()) {
      labels.push_back("e");
      continue;
    }
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i)
      s += (i ? "*" : "") + f.generators()[static_cast<std::size_t>(w[i] / 2)].name + (w[i] % 2 ? "^-1" : "");
    labels.push_back(s);
  }
  auto trace = [&](int coset, const std::vector<int>& w) {
    for (int x : w) coset = ct.act(coset, x);
    return index.at(coset);
  };
  const GroupOps ops = theta.group_witness.at(theta.sorts[0]);
  std::vector<int> mul(n * n), inv(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) mul[a * n + b] = trace(order[a], words[b]);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (mul[a * n + b] == 0) inv[a] = static_cast<int>(b);
  FiniteAlgebra alg(theta, "");
  alg.set_carrier(theta.sorts[0], labels);
  alg.set_table(ops.mul, mul);
  alg.set_table(ops.inv, inv);
  alg.set_table(ops.unit, {0});
  return alg;
}

FiniteAlgebra realize_linear(const TheoryPresentation& theta, const FreeAlgebra& f, const std::vector<Equation>& rels,
                             std::size_t bound) {
  const Ring& ring = *f.ring();
  const std::size_t n = f.generators().size() * ring.dim();
  const Module free = Module::free(f.ring(), f.generators().size());
  std::vector<Vector> cols;
  for (const auto& r : rels) {
    Vector v = std::get<Vector>(f.eval(r.lhs));
    const Vector w = std::get<Vector>(f.eval(r.rhs));
    for (std::size_t i = 0; i < n; ++i) v[i] -= w[i];
    for (const auto& a : free.action) cols.push_back(a * v);
  }
  for (std::size_t c = 0; c < free.group.relations.cols(); ++c) cols.push_back(free.group.relations.column(c));
  const PresentedGroup g(n, from_columns(n, cols));
  const auto inv = g.invariants();
  if (!inv.is_finite() || static_cast<std::size_t>(inv.order()) > bound) throw BoundExceeded("not finite within bound");
  const auto cc = canonical_coords(g);
  const std::size_t k = cc.moduli.size();
  // enumerate canonical tuples in mixed radix, first coordinate slowest
  std::vector<Vector> elems;
  Vector cur(k, 0);
  while (true) {
    elems.push_back(cur);
    std::size_t i = k;
    bool done = true;
    while (i > 0) {
      --i;
      if (++cur[i] < cc.moduli[i]) {
        done = false;
        break;
      }
      cur[i] = 0;
    }
    if (done) break;
  }
  std::map<Vector, int> index;
  std::vector<std::string> labels;
  for (std::size_t e = 0; e < elems.size(); ++e) {
    index[elems[e]] = static_cast<int>(e);
    std::string s;
    if (k == 1) s = std::to_string(elems[e][0]);
    else {
      s = "(";
      for (std::size_t i = 0; i < k; ++i) s += (i ? "," : "") + std::to_string(elems[e][i]);
      s += ")";
    }
    labels.push_back(k == 0 ? "0" : s);
  }
  auto canon = [&](const Vector& ambient) { return index.at(cc.reduce(cc.to_canonical * ambient)); };
  const GroupOps ops = theta.group_witness.at(theta.sorts[0]);
  const std::size_t m = elems.size();
  std::vector<int> add(m * m), neg(m);
  std::vector<Vector> lifts;
  for (const auto& e : elems) lifts.push_back(cc.from_canonical * e);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      Vector s = lifts[a];
      for (std::size_t i = 0; i < n; ++i) s[i] += lifts[b][i];
      add[a * m + b] = canon(s);
    }
    Vector v = lifts[a];
    for (auto& x : v) x = -x;
    neg[a] = canon(v);
  }
  FiniteAlgebra alg(theta, "");
  alg.set_carrier(theta.sorts[0], labels);
  alg.set_table(ops.mul, add);
  alg.set_table(ops.inv, neg);
  alg.set_table(ops.unit, {canon(Vector(n, 0))});
  const auto& glabels = ring.group().labels;
  for (const auto& [label, op] : theta.module_actions) {
    const auto b = static_cast<std::size_t>(std::find(glabels.begin(), glabels.end(), label) - glabels.begin());
    std::vector<int> act(m);
    for (std::size_t a = 0; a < m; ++a) act[a] = canon(free.action[b] * lifts[a]);
    alg.set_table(op, act);
  }
  return alg;
}

}  // namespace

FiniteAlgebra realize_presentation(const TheoryPresentation& theta, const std::vector<Generator>& gens,
                                   const std::vector<Equation>& rels, std::size_t bound) {
  const FreeAlgebra f(theta, gens);
  FiniteAlgebra alg;
  if (f.engine() == "gp") {
    alg = realize_group(theta, f, rels, bound);
  } else if (f.engine() == "ab" || f.engine() == "mod") {
    alg = realize_linear(theta, f, rels, bound);
  } else if (f.engine() == "discrete") {
    std::vector<int> parent(gens.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (const auto& r : rels) {
      const int a = std::get<int>(f.eval(r.lhs)), b = std::get<int>(f.eval(r.rhs));
      parent[static_cast<std::size_t>(std::max(find(a), find(b)))] = std::min(find(a), find(b));
    }
    alg = FiniteAlgebra(theta, "");
    std::map<std::string, std::vector<std::string>> carriers;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (find(static_cast<int>(i)) == static_cast<int>(i)) carriers[gens[i].sort].push_back(gens[i].name);
    for (const auto& s : theta.sorts) alg.set_carrier(s, carriers[s]);
  } else {
    throw Unsupported("cannot realize presentations over theory " + theta.name);
  }
  alg.validate();
  return alg;
}

}  // namespace aq

namespace aq {

bool check_theory_map(const TheoryMap& m) {
  std::function<Term(const Term&)> translate = [&](const Term& t) -> Term {
    if (t.is_var) {
      auto it = m.sort_map.find(t.sort);
      return Term::var(t.name, it == m.sort_map.end() ? t.sort : it->second);
    }
    auto it = m.op_map.find(t.name);
    if (it == m.op_map.end()) throw Error("theory map does not send op '" + t.name + "'");
    std::map<std::string, Term> sigma;
    for (std::size_t i = 0; i < t.args.size(); ++i) sigma["x" + std::to_string(i)] = translate(t.args[i]);
    return substitute(it->second, sigma);
  };
  for (const auto& e : m.source.equations) {
    const Equation img{translate(e.lhs), translate(e.rhs)};
    if (img.lhs == img.rhs) continue;
    std::vector<Term> vars;
    collect_variables(img.lhs, vars);
    collect_variables(img.rhs, vars);
    std::vector<Generator> gens;
    for (const auto& v : vars) gens.push_back({v.name, v.sort});
    try {
      const FreeAlgebra f(m.target, gens);
      if (f.eval(img.lhs) != f.eval(img.rhs)) return false;
    } catch (const Unsupported&) {
      if (!has_equation(m.target, img)) return false;
    }
  }
  return true;
}

}  // namespace aq
