#include "aq/free_simplicial.hpp"

#include <map>

#include "aq/beck.hpp"

namespace aq {

Word substitute(const WordMap& images, const Word& w) {
  Word out;
  for (const auto& [g, e] : w) {
    const Word& img = images.at(static_cast<std::size_t>(g));
    out = word_mul(out, e > 0 ? img : word_inv(img));
  }
  return out;
}

WordMap compose(const WordMap& f, const WordMap& g) {
  WordMap out;
  out.reserve(g.size());
  for (const auto& w : g) out.push_back(substitute(f, w));
  return out;
}

FreeSimplicialGroup FreeSimplicialGroup::truncated(std::size_t n) const {
  if (n > truncation()) throw Error("cannot extend a truncation");
  FreeSimplicialGroup v;
  v.generators.assign(generators.begin(), generators.begin() + static_cast<std::ptrdiff_t>(n + 1));
  v.faces.assign(faces.begin(), faces.begin() + static_cast<std::ptrdiff_t>(n + 1));
  v.degeneracies.assign(degeneracies.begin(), degeneracies.begin() + static_cast<std::ptrdiff_t>(n));
  return v;
}

std::optional<std::string> FreeSimplicialGroup::identity_failure() const {
  const std::size_t top = truncation();
  auto lvl = [](std::size_t n) { return " at level " + std::to_string(n); };
  auto name = [](char a, std::size_t i, char b, std::size_t j) {
    return std::string(1, a) + std::to_string(i) + " " + std::string(1, b) + std::to_string(j);
  };
  auto well_formed = [&](const WordMap& m, std::size_t src, std::size_t dst) {
    if (m.size() != rank(src)) return false;
    for (const auto& w : m)
      for (const auto& [g, e] : w)
        if (g < 0 || static_cast<std::size_t>(g) >= rank(dst) || (e != 1 && e != -1)) return false;
    return true;
  };
  for (std::size_t n = 1; n <= top; ++n) {
    if (faces.at(n).size() != n + 1) return "level " + std::to_string(n) + " needs " + std::to_string(n + 1) + " faces";
    for (std::size_t i = 0; i <= n; ++i)
      if (!well_formed(faces[n][i], n, n - 1)) return "d" + std::to_string(i) + lvl(n) + " is malformed";
  }
  for (std::size_t n = 0; n < top; ++n) {
    if (degeneracies.at(n).size() != n + 1)
      return "level " + std::to_string(n) + " needs " + std::to_string(n + 1) + " degeneracies";
    for (std::size_t j = 0; j <= n; ++j)
      if (!well_formed(degeneracies[n][j], n, n + 1)) return "s" + std::to_string(j) + lvl(n) + " is malformed";
  }
  for (std::size_t n = 2; n <= top; ++n)
    for (std::size_t j = 1; j <= n; ++j)
      for (std::size_t i = 0; i < j; ++i)
        if (compose(faces[n - 1][i], faces[n][j]) != compose(faces[n - 1][j - 1], faces[n][i]))
          return name('d', i, 'd', j) + " = " + name('d', j - 1, 'd', i) + lvl(n);
  for (std::size_t n = 0; n < top; ++n) {
    const std::size_t m = n + 1;
    WordMap id;
    for (std::size_t t = 0; t < rank(n); ++t) id.push_back({{static_cast<int>(t), 1}});
    for (std::size_t j = 0; j <= n; ++j)
      for (std::size_t i = 0; i <= m; ++i) {
        const WordMap lhs = compose(faces[m][i], degeneracies[n][j]);
        WordMap rhs;
        std::string rname;
        if (i == j || i == j + 1) {
          rhs = id;
          rname = "id";
        } else if (i < j) {
          rhs = compose(degeneracies[n - 1][j - 1], faces[n][i]);
          rname = name('s', j - 1, 'd', i);
        } else {
          rhs = compose(degeneracies[n - 1][j], faces[n][i - 1]);
          rname = name('s', j, 'd', i - 1);
        }
        if (lhs != rhs) return name('d', i, 's', j) + " = " + rname + lvl(n);
      }
  }
  for (std::size_t n = 0; n + 2 <= top; ++n)
    for (std::size_t j = 0; j <= n; ++j)
      for (std::size_t i = 0; i <= j; ++i)
        if (compose(degeneracies[n + 1][i], degeneracies[n][j]) != compose(degeneracies[n + 1][j + 1], degeneracies[n][i]))
          return name('s', i, 's', j) + " = " + name('s', j + 1, 's', i) + lvl(n);
  return std::nullopt;
}

std::vector<int> FreeSimplicialGroup::over_x(std::size_t n, const std::vector<int>& augmentation,
                                             const GroupTable& x) const {
  std::vector<int> p = augmentation;
  if (p.size() != rank(0)) throw Error("augmentation needs one image per level-0 generator");
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<int> next;
    for (const auto& w : faces.at(k).at(0)) next.push_back(word_image(w, p, x));
    p = std::move(next);
  }
  return p;
}

namespace {

using Tuple = std::vector<int>;

std::string tuple_name(const Tuple& t, const GroupTable& x) {
  std::string s = "[";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "|" : "") + x.labels[static_cast<std::size_t>(t[i])];
  return s + "]";
}

}  // namespace

FreeSimplicialGroup kan_loop_group(const GroupTable& x, std::size_t truncation) {
  const int order = static_cast<int>(x.order());
  // level n generators: tuples of length n+1 (simplices of dimension n+1 of the nerve) with t[0] != e
  std::vector<std::vector<Tuple>> gens(truncation + 2);
  std::vector<std::map<Tuple, int>> index(truncation + 2);
  for (std::size_t n = 0; n <= truncation + 1; ++n) {
    Tuple t(n + 1, 0);
    while (true) {
      if (t[0] != x.identity) {
        index[n][t] = static_cast<int>(gens[n].size());
        gens[n].push_back(t);
      }
      std::size_t i = n + 1;
      bool done = true;
      while (i > 0) {
        --i;
        if (++t[i] < order) {
          done = false;
          break;
        }
        t[i] = 0;
      }
      if (done) break;
    }
  }
  auto tau = [&](std::size_t n, const Tuple& t) -> Word {
    if (t[0] == x.identity) return {};
    return {{index[n].at(t), 1}};
  };
  // nerve faces on a simplex of dimension n+1 (tuple of length n+1)
  auto nerve_face = [&](const Tuple& t, std::size_t i) {
    Tuple r;
    const std::size_t len = t.size();
    for (std::size_t k = 0; k < len; ++k) {
      if (i == 0 && k == 0) continue;
      if (i == len && k == len - 1) continue;
      if (i > 0 && i < len && k == i - 1) {
        r.push_back(x(t[k], t[k + 1]));
        ++k;
        continue;
      }
      r.push_back(t[k]);
    }
    return r;
  };
  FreeSimplicialGroup v;
  for (std::size_t n = 0; n <= truncation; ++n) {
    std::vector<std::string> names;
    for (const auto& t : gens[n]) names.push_back(tuple_name(t, x));
    v.generators.push_back(names);
    std::vector<WordMap> fs;
    if (n > 0)
      for (std::size_t i = 0; i <= n; ++i) {
        WordMap m;
        for (const auto& t : gens[n]) {
          if (i == 0)
            m.push_back(word_mul(tau(n - 1, nerve_face(t, 1)), word_inv(tau(n - 1, nerve_face(t, 0)))));
          else
            m.push_back(tau(n - 1, nerve_face(t, i + 1)));
        }
        fs.push_back(m);
      }
    v.faces.push_back(fs);
  }
  for (std::size_t n = 0; n < truncation; ++n) {
    std::vector<WordMap> ss;
    for (std::size_t j = 0; j <= n; ++j) {
      WordMap m;
      for (const auto& t : gens[n]) {
        Tuple r = t;  // s_{j+1} inserts the unit at position j+1
        r.insert(r.begin() + static_cast<std::ptrdiff_t>(j + 1), x.identity);
        m.push_back(tau(n + 1, r));
      }
      ss.push_back(m);
    }
    v.degeneracies.push_back(ss);
  }
  return v;
}

std::vector<int> kan_augmentation(const GroupTable& x) {
  std::vector<int> out;
  for (int e = 0; e < static_cast<int>(x.order()); ++e)
    if (e != x.identity) out.push_back(e);
  return out;
}

SimplicialModule abelianize(const FreeSimplicialGroup& v) {
  SimplicialModule a;
  a.ring = Ring::integers();
  const std::size_t top = v.truncation();
  for (std::size_t n = 0; n <= top; ++n) {
    a.levels.push_back(Module::free(a.ring, v.rank(n)));
    std::vector<Matrix> fs;
    if (n > 0)
      for (const auto& f : v.faces[n]) fs.push_back(abelianize_map(f, v.rank(n - 1)));
    a.faces.push_back(fs);
  }
  for (std::size_t n = 0; n < top; ++n) {
    std::vector<Matrix> ss;
    for (const auto& s : v.degeneracies[n]) ss.push_back(abelianize_map(s, v.rank(n + 1)));
    a.degeneracies.push_back(ss);
  }
  return a;
}

SimplicialModule abelianize_over(const FreeSimplicialGroup& v, const std::vector<int>& augmentation,
                                 const GroupTable& x) {
  SimplicialModule a;
  a.ring = Ring::group_ring(x);
  const std::size_t top = v.truncation();
  std::vector<std::vector<int>> p;
  for (std::size_t n = 0; n <= top; ++n) p.push_back(v.over_x(n, augmentation, x));
  for (std::size_t n = 0; n <= top; ++n) {
    a.levels.push_back(Module::free(a.ring, v.rank(n)));
    std::vector<Matrix> fs;
    if (n > 0)
      for (const auto& f : v.faces[n]) fs.push_back(abelianize_map_over(f, v.rank(n - 1), p[n - 1], x));
    a.faces.push_back(fs);
  }
  for (std::size_t n = 0; n < top; ++n) {
    std::vector<Matrix> ss;
    for (const auto& s : v.degeneracies[n]) ss.push_back(abelianize_map_over(s, v.rank(n + 1), p[n + 1], x));
    a.degeneracies.push_back(ss);
  }
  return a;
}

std::optional<std::string> pi0_failure(const FreeSimplicialGroup& v, const std::vector<int>& augmentation,
                                       const GroupTable& x) {
  if (augmentation.size() != v.rank(0)) return "augmentation needs one image per level-0 generator";
  if (v.truncation() < 1) return "pi_0 needs level 1";
  // the augmentation coequalizes d0 and d1
  for (std::size_t t = 0; t < v.rank(1); ++t)
    if (word_image(v.faces[1][0][t], augmentation, x) != word_image(v.faces[1][1][t], augmentation, x))
      return "augmentation does not coequalize d0 and d1 on " + v.generators[1][t];
  std::vector<bool> hit(x.order(), false);
  for (int a : augmentation) hit[static_cast<std::size_t>(a)] = true;
  const TheoryPresentation gp = builtin_theory("gp");
  std::vector<Generator> gens;
  for (const auto& g : v.generators[0]) gens.push_back({g, "g"});
  FreeAlgebra f(gp, gens);
  std::vector<Equation> rels;
  for (std::size_t t = 0; t < v.rank(1); ++t)
    rels.push_back({f.to_term(v.faces[1][0][t]), f.to_term(v.faces[1][1][t])});
  FiniteAlgebra pi0;
  try {
    pi0 = realize_presentation(gp, gens, rels, 64 * x.order());
  } catch (const BoundExceeded&) {
    return "pi_0 is not finite within bound";
  }
  if (pi0.size("g") != x.order()) return "pi_0 has order " + std::to_string(pi0.size("g")) + ", expected " +
                                         std::to_string(x.order());
  // surjective augmentation from a group of the same order: check the
  // generator images generate x
  std::vector<int> reach{x.identity};
  std::vector<bool> seen(x.order(), false);
  seen[static_cast<std::size_t>(x.identity)] = true;
  for (std::size_t q = 0; q < reach.size(); ++q)
    for (int a : augmentation) {
      const int y = x(reach[q], a);
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = true;
        reach.push_back(y);
      }
    }
  if (reach.size() != x.order()) return "augmentation is not surjective";
  return std::nullopt;
}

}  // namespace aq
