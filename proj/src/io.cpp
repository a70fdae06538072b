#include "aq/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "aq/error.hpp"

namespace aq {

namespace fs = std::filesystem;

namespace {

struct Line {
  int no = 0;
  std::string keyword;
  std::string rest;  // after the keyword, trimmed
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw FixtureError(path.string(), 0, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<Line> read_lines(const fs::path& path) {
  std::istringstream in(read_file(path));
  std::vector<Line> out;
  int no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++no;
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    const auto sp = text.find_first_of(" \t");
    Line l;
    l.no = no;
    l.keyword = text.substr(0, sp);
    l.rest = sp == std::string::npos ? "" : trim(text.substr(sp));
    out.push_back(l);
  }
  return out;
}

// "lhs : rhs" split at the first colon.
std::pair<std::string, std::string> split_colon(const std::string& path, const Line& l) {
  const auto c = l.rest.find(':');
  if (c == std::string::npos) throw FixtureError(path, l.no, "expected ':' in " + l.keyword + " line");
  return {trim(l.rest.substr(0, c)), trim(l.rest.substr(c + 1))};
}

std::size_t parse_size(const std::string& path, int line, const std::string& w) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(w, &used);
    if (used != w.size() || v < 0) throw std::invalid_argument(w);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw FixtureError(path, line, "expected a nonnegative integer, found '" + w + "'");
  }
}

Int parse_int(const std::string& path, int line, const std::string& w) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(w, &used);
    if (used != w.size()) throw std::invalid_argument(w);
    return v;
  } catch (const std::exception&) {
    throw FixtureError(path, line, "expected an integer, found '" + w + "'");
  }
}

std::vector<Int> parse_orders(const std::string& path, const Line& l) {
  std::vector<Int> out;
  for (const auto& w : words(l.rest)) out.push_back(parse_int(path, l.no, w));
  return out;
}

const Line& header(const std::string& path, const std::vector<Line>& lines, const std::string& keyword) {
  if (lines.empty() || lines[0].keyword != keyword) throw FixtureError(path, lines.empty() ? 0 : lines[0].no, "expected '" + keyword + " NAME'");
  if (words(lines[0].rest).size() != 1) throw FixtureError(path, lines[0].no, "expected a single name after " + keyword);
  return lines[0];
}

Matrix matrix_at(const std::string& path, const Line& l, const std::string& text, std::size_t rows, std::size_t cols) {
  try {
    return parse_matrix(text, rows, cols);
  } catch (const Error& e) {
    throw FixtureError(path, l.no, e.what());
  }
}

void assign_sorts(Term& t, const std::map<std::string, std::string>& sorts, const std::string& path, int line) {
  if (t.is_var) {
    const auto it = sorts.find(t.name);
    if (it == sorts.end()) throw FixtureError(path, line, "unknown generator $" + t.name);
    t.sort = it->second;
    return;
  }
  for (auto& a : t.args) assign_sorts(a, sorts, path, line);
}

Term term_at(const std::string& path, int line, const std::string& text) {
  try {
    return parse_term(text);
  } catch (const Error& e) {
    throw FixtureError(path, line, e.what());
  }
}

std::string join(const std::vector<std::string>& xs, const std::string& sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

std::vector<std::string> split_on(const std::string& s, char c) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == c) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::string format_word(const Word& w, const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::vector<std::string> letters;
  for (const auto& [g, e] : w) letters.push_back(names.at(static_cast<std::size_t>(g)) + (e < 0 ? "^-1" : ""));
  return join(letters);
}

Word parse_word(const std::string& path, int line, const std::string& text, const std::vector<std::string>& names) {
  Word w;
  for (const auto& letter : words(text)) {
    if (letter == "1") continue;
    std::string name = letter;
    int e = 1;
    if (name.size() > 3 && name.substr(name.size() - 3) == "^-1") {
      name = name.substr(0, name.size() - 3);
      e = -1;
    }
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw FixtureError(path, line, "unknown generator '" + name + "'");
    w = word_mul(w, Word{{static_cast<int>(it - names.begin()), e}});
  }
  return w;
}

// face / degen lines: "N I : payload"
struct IndexedLine {
  std::size_t level = 0, index = 0;
  std::string payload;
  const Line* line = nullptr;
};

IndexedLine indexed(const std::string& path, const Line& l) {
  const auto [lhs, rhs] = split_colon(path, l);
  const auto ws = words(lhs);
  if (ws.size() != 2) throw FixtureError(path, l.no, "expected '" + l.keyword + " N I : ...'");
  return {parse_size(path, l.no, ws[0]), parse_size(path, l.no, ws[1]), rhs, &l};
}

template <class T>
void place_indexed(const std::string& path, std::vector<std::vector<std::optional<T>>>& slots, const IndexedLine& il,
                   T value, const std::string& what) {
  if (il.level >= slots.size() || il.index >= slots[il.level].size())
    throw FixtureError(path, il.line->no, what + " index out of range");
  if (slots[il.level][il.index]) throw FixtureError(path, il.line->no, what + " given twice");
  slots[il.level][il.index] = std::move(value);
}

template <class T>
std::vector<std::vector<T>> require_all(const std::string& path, std::vector<std::vector<std::optional<T>>>& slots,
                                        const std::string& what) {
  std::vector<std::vector<T>> out(slots.size());
  for (std::size_t n = 0; n < slots.size(); ++n)
    for (std::size_t i = 0; i < slots[n].size(); ++i) {
      if (!slots[n][i]) throw FixtureError(path, 0, "missing " + what + " " + std::to_string(n) + " " + std::to_string(i));
      out[n].push_back(std::move(*slots[n][i]));
    }
  return out;
}

Resolution load_group_resolution(const std::string& path, const fs::path& dir, const std::vector<Line>& lines) {
  GroupResolution r;
  bool have_base = false;
  std::map<std::size_t, std::vector<std::string>> levels;
  std::vector<const Line*> face_lines, degen_lines;
  const Line* augment = nullptr;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.keyword == "base") {
      r.x = load_algebra(dir / l.rest);
      have_base = true;
    } else if (l.keyword == "level") {
      const auto [lhs, rhs] = split_colon(path, l);
      const std::size_t n = parse_size(path, l.no, lhs);
      if (levels.count(n)) throw FixtureError(path, l.no, "level " + lhs + " given twice");
      levels[n] = words(rhs);
    } else if (l.keyword == "face") {
      face_lines.push_back(&l);
    } else if (l.keyword == "degen") {
      degen_lines.push_back(&l);
    } else if (l.keyword == "augment") {
      augment = &l;
    } else {
      throw FixtureError(path, l.no, "unknown keyword '" + l.keyword + "'");
    }
  }
  if (!have_base) throw FixtureError(path, 0, "missing base line");
  if (levels.empty()) throw FixtureError(path, 0, "no levels");
  const std::size_t top = levels.size() - 1;
  for (std::size_t n = 0; n <= top; ++n) {
    if (!levels.count(n)) throw FixtureError(path, 0, "levels must be numbered 0.." + std::to_string(top));
    r.object.generators.push_back(levels[n]);
  }
  std::vector<std::vector<std::optional<WordMap>>> faces(top + 1), degens(top + 1);
  for (std::size_t n = 0; n <= top; ++n) {
    if (n > 0) faces[n].resize(n + 1);
    if (n < top) degens[n].resize(n + 1);
  }
  auto word_map = [&](const IndexedLine& il, const std::vector<std::string>& src, const std::vector<std::string>& dst) {
    const auto images = split_on(il.payload, ';');
    if (images.size() != src.size())
      throw FixtureError(path, il.line->no, "expected " + std::to_string(src.size()) + " images separated by ';'");
    WordMap m;
    for (const auto& w : images) m.push_back(parse_word(path, il.line->no, w, dst));
    return m;
  };
  for (const Line* l : face_lines) {
    const auto il = indexed(path, *l);
    if (il.level == 0 || il.level > top) throw FixtureError(path, l->no, "face level out of range");
    place_indexed(path, faces, il, word_map(il, levels[il.level], levels[il.level - 1]), "face");
  }
  for (const Line* l : degen_lines) {
    const auto il = indexed(path, *l);
    if (il.level >= top) throw FixtureError(path, l->no, "degeneracy level out of range");
    place_indexed(path, degens, il, word_map(il, levels[il.level], levels[il.level + 1]), "degeneracy");
  }
  r.object.faces = require_all(path, faces, "face");
  r.object.degeneracies = require_all(path, degens, "degeneracy");
  r.object.degeneracies.pop_back();
  if (!augment) throw FixtureError(path, 0, "missing augment line");
  const auto [lhs, rhs] = split_colon(path, *augment);
  const auto labels = words(rhs);
  if (labels.size() != levels[0].size())
    throw FixtureError(path, augment->no, "augment needs one label per level-0 generator");
  for (const auto& lab : labels) {
    try {
      r.augmentation.push_back(r.x.index_of(r.x.main_sort(), lab));
    } catch (const Error&) {
      throw FixtureError(path, augment->no, "unknown element '" + lab + "' of the base");
    }
  }
  return r;
}

Resolution load_module_resolution(const std::string& path, const std::vector<Line>& lines) {
  ModuleResolution r;
  RingPtr ring;
  std::vector<Int> target;
  bool have_target = false;
  std::map<std::size_t, std::size_t> ranks;
  std::vector<const Line*> face_lines, degen_lines;
  const Line* augment = nullptr;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.keyword == "ring") {
      try {
        ring = Ring::from_name(l.rest);
      } catch (const Error& e) {
        throw FixtureError(path, l.no, e.what());
      }
    } else if (l.keyword == "target") {
      target = parse_orders(path, l);
      have_target = true;
    } else if (l.keyword == "level") {
      const auto ws = words(l.rest);
      if (ws.size() != 3 || ws[1] != "rank") throw FixtureError(path, l.no, "expected 'level N rank R'");
      const std::size_t n = parse_size(path, l.no, ws[0]);
      if (ranks.count(n)) throw FixtureError(path, l.no, "level given twice");
      ranks[n] = parse_size(path, l.no, ws[2]);
    } else if (l.keyword == "face") {
      face_lines.push_back(&l);
    } else if (l.keyword == "degen") {
      degen_lines.push_back(&l);
    } else if (l.keyword == "augment") {
      augment = &l;
    } else {
      throw FixtureError(path, l.no, "unknown keyword '" + l.keyword + "'");
    }
  }
  if (!ring) throw FixtureError(path, 0, "missing ring line");
  if (!have_target) throw FixtureError(path, 0, "missing target line");
  if (ranks.empty()) throw FixtureError(path, 0, "no levels");
  const std::size_t top = ranks.size() - 1, dim = ring->dim();
  r.object.ring = ring;
  for (std::size_t n = 0; n <= top; ++n) {
    if (!ranks.count(n)) throw FixtureError(path, 0, "levels must be numbered 0.." + std::to_string(top));
    r.object.levels.push_back(Module::free(ring, ranks[n]));
  }
  r.target = Module::trivial(ring, target);
  std::vector<std::vector<std::optional<Matrix>>> faces(top + 1), degens(top + 1);
  for (std::size_t n = 0; n <= top; ++n) {
    if (n > 0) faces[n].resize(n + 1);
    if (n < top) degens[n].resize(n + 1);
  }
  for (const Line* l : face_lines) {
    const auto il = indexed(path, *l);
    if (il.level == 0 || il.level > top) throw FixtureError(path, l->no, "face level out of range");
    place_indexed(path, faces, il,
                  matrix_at(path, *l, il.payload, ranks[il.level - 1] * dim, ranks[il.level] * dim), "face");
  }
  for (const Line* l : degen_lines) {
    const auto il = indexed(path, *l);
    if (il.level >= top) throw FixtureError(path, l->no, "degeneracy level out of range");
    place_indexed(path, degens, il,
                  matrix_at(path, *l, il.payload, ranks[il.level + 1] * dim, ranks[il.level] * dim), "degeneracy");
  }
  r.object.faces = require_all(path, faces, "face");
  r.object.degeneracies = require_all(path, degens, "degeneracy");
  r.object.degeneracies.pop_back();
  if (!augment) throw FixtureError(path, 0, "missing augment line");
  r.augmentation = matrix_at(path, *augment, split_colon(path, *augment).second, r.target.gens(), ranks[0] * dim);
  return r;
}

Json group_json(const FGAbelianGroup& g) { return Json{{"rank", g.rank}, {"torsion", g.torsion}}; }
FGAbelianGroup group_from(const Json& j) {
  FGAbelianGroup g;
  g.rank = j.at("rank").get<Int>();
  g.torsion = j.at("torsion").get<std::vector<Int>>();
  return g;
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

Matrix matrix_from(const Json& j) {
  Matrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
  const auto& e = j.at("entries");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = e.at(i).at(k).get<Int>();
  return m;
}

}  // namespace

std::string format_matrix(const Matrix& m) {
  std::vector<std::string> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::vector<std::string> entries;
    for (std::size_t j = 0; j < m.cols(); ++j) entries.push_back(std::to_string(m(i, j)));
    rows.push_back(join(entries));
  }
  return join(rows, "; ");
}

Matrix parse_matrix(const std::string& text, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  if (rows == 0 || cols == 0) {
    if (!trim(text).empty()) throw Error("expected an empty matrix");
    return m;
  }
  const auto row_text = split_on(text, ';');
  if (row_text.size() != rows)
    throw Error("expected " + std::to_string(rows) + " matrix rows, found " + std::to_string(row_text.size()));
  for (std::size_t i = 0; i < rows; ++i) {
    const auto entries = words(row_text[i]);
    if (entries.size() != cols)
      throw Error("matrix row " + std::to_string(i) + " needs " + std::to_string(cols) + " entries");
    for (std::size_t j = 0; j < cols; ++j) {
      try {
        std::size_t used = 0;
        m(i, j) = std::stoll(entries[j], &used);
        if (used != entries[j].size()) throw std::invalid_argument(entries[j]);
      } catch (const std::exception&) {
        throw Error("bad matrix entry '" + entries[j] + "'");
      }
    }
  }
  return m;
}

TheoryPresentation resolve_theory(const std::string& ref, const fs::path& base_dir) {
  if (ref.size() > 4 && ref.substr(ref.size() - 4) == ".thy") return load_theory_file(base_dir / ref);
  return builtin_theory(ref);
}

TheoryPresentation load_theory_file(const fs::path& path) {
  const std::string text = read_file(path);
  try {
    return parse_theory(text);
  } catch (const SyntaxError& e) {
    throw FixtureError(path.string(), e.line(), e.what());
  } catch (const FixtureError&) {
    throw;
  } catch (const Error& e) {
    throw FixtureError(path.string(), 0, e.what());
  }
}

FiniteAlgebra load_algebra(const fs::path& path) {
  const std::string p = path.string();
  const auto lines = read_lines(path);
  const std::string name = header(p, lines, "algebra").rest;
  if (lines.size() < 2 || lines[1].keyword != "theory") throw FixtureError(p, lines.size() > 1 ? lines[1].no : 0, "expected 'theory REF'");
  TheoryPresentation theory;
  try {
    theory = resolve_theory(lines[1].rest, path.parent_path());
  } catch (const FixtureError&) {
    throw;
  } catch (const Error& e) {
    throw FixtureError(p, lines[1].no, e.what());
  }

  std::map<std::string, std::vector<std::string>> carriers;
  std::vector<const Line*> tables;
  std::vector<Generator> gens;
  std::vector<const Line*> rels;
  std::optional<std::size_t> bound;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.keyword == "carrier") {
      const auto [sort, labels] = split_colon(p, l);
      if (!theory.has_sort(sort)) throw FixtureError(p, l.no, "unknown sort '" + sort + "'");
      if (carriers.count(sort)) throw FixtureError(p, l.no, "carrier of " + sort + " given twice");
      carriers[sort] = words(labels);
    } else if (l.keyword == "table") {
      tables.push_back(&l);
    } else if (l.keyword == "gen") {
      const auto [g, sort] = split_colon(p, l);
      if (!theory.has_sort(sort)) throw FixtureError(p, l.no, "unknown sort '" + sort + "'");
      gens.push_back({g, sort});
    } else if (l.keyword == "rel") {
      rels.push_back(&l);
    } else if (l.keyword == "realize") {
      const auto ws = words(l.rest);
      if (ws.size() != 1 || ws[0].rfind("bound=", 0) != 0) throw FixtureError(p, l.no, "expected 'realize bound=N'");
      bound = parse_size(p, l.no, ws[0].substr(6));
    } else {
      throw FixtureError(p, l.no, "unknown keyword '" + l.keyword + "'");
    }
  }

  const bool presented = !gens.empty() || !rels.empty() || bound;
  if (presented && (!carriers.empty() || !tables.empty()))
    throw FixtureError(p, 0, "an algebra is given either by tables or by a presentation");
  if (presented) {
    if (!bound) throw FixtureError(p, 0, "a presentation needs 'realize bound=N'");
    std::map<std::string, std::string> sorts;
    for (const auto& g : gens) sorts[g.name] = g.sort;
    std::vector<Equation> eqs;
    for (const Line* l : rels) {
      const auto eq = l->rest.find('=');
      if (eq == std::string::npos) throw FixtureError(p, l->no, "expected 'rel TERM = TERM'");
      Equation e{term_at(p, l->no, l->rest.substr(0, eq)), term_at(p, l->no, l->rest.substr(eq + 1))};
      assign_sorts(e.lhs, sorts, p, l->no);
      assign_sorts(e.rhs, sorts, p, l->no);
      eqs.push_back(e);
    }
    try {
      FiniteAlgebra a = realize_presentation(theory, gens, eqs, *bound);
      a.set_name(name);
      return a;
    } catch (const Error& e) {
      throw FixtureError(p, 0, e.what());
    }
  }

  FiniteAlgebra a(theory, name);
  for (const auto& sort : theory.sorts) {
    if (!carriers.count(sort)) throw FixtureError(p, 0, "missing carrier for sort " + sort);
    a.set_carrier(sort, carriers[sort]);
  }
  std::set<std::string> seen;
  for (const Line* l : tables) {
    const auto [op, values] = split_colon(p, *l);
    const OpSig* sig = theory.find_op(op);
    if (!sig) throw FixtureError(p, l->no, "unknown op '" + op + "'");
    if (!seen.insert(op).second) throw FixtureError(p, l->no, "table of " + op + " given twice");
    std::size_t expected = 1;
    for (const auto& s : sig->args) expected *= carriers[s].size();
    const auto labels = words(values);
    if (labels.size() != expected)
      throw FixtureError(p, l->no, "table of " + op + " needs " + std::to_string(expected) + " entries");
    std::vector<int> idx;
    for (const auto& lab : labels) {
      const auto& car = carriers[sig->result];
      const auto it = std::find(car.begin(), car.end(), lab);
      if (it == car.end()) throw FixtureError(p, l->no, "'" + lab + "' is not in the carrier of " + sig->result);
      idx.push_back(static_cast<int>(it - car.begin()));
    }
    a.set_table(op, idx);
  }
  for (const auto& op : theory.ops)
    if (!seen.count(op.name)) throw FixtureError(p, 0, "missing table for op " + op.name);
  try {
    a.validate();
  } catch (const CheckFailed& e) {
    throw CheckFailed(p + ": " + e.what());
  }
  return a;
}

XModule load_xmodule(const fs::path& path) {
  const std::string p = path.string();
  const auto lines = read_lines(path);
  header(p, lines, "xmodule");
  std::optional<FiniteAlgebra> base;
  std::optional<std::vector<Int>> orders;
  std::vector<const Line*> acts;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.keyword == "base") base = load_algebra(path.parent_path() / l.rest);
    else if (l.keyword == "group") orders = parse_orders(p, l);
    else if (l.keyword == "act") acts.push_back(&l);
    else throw FixtureError(p, l.no, "unknown keyword '" + l.keyword + "'");
  }
  if (!base) throw FixtureError(p, 0, "missing base line");
  if (!orders) throw FixtureError(p, 0, "missing group line");
  for (Int o : *orders)
    if (o <= 0) throw FixtureError(p, 0, "X-module carriers must be finite (orders > 0)");
  const PresentedGroup k = PresentedGroup::cyclic_sum(*orders);
  std::map<std::string, Matrix> actions;
  for (const auto& label : base->carrier(base->main_sort())) actions[label] = Matrix::identity(k.gens);
  for (const Line* l : acts) {
    const auto [label, m] = split_colon(p, *l);
    if (!actions.count(label)) throw FixtureError(p, l->no, "'" + label + "' is not an element of the base");
    actions[label] = matrix_at(p, *l, m, k.gens, k.gens);
  }
  try {
    XModule x = XModule::from_generator_actions(*base, k, actions);
    x.validate();
    return x;
  } catch (const CheckFailed& e) {
    throw CheckFailed(p + ": " + e.what());
  } catch (const Error& e) {
    throw FixtureError(p, 0, e.what());
  }
}

Resolution load_resolution(const fs::path& path, bool validate) {
  const std::string p = path.string();
  const auto lines = read_lines(path);
  header(p, lines, "sres");
  if (lines.size() < 2 || lines[1].keyword != "kind") throw FixtureError(p, lines.size() > 1 ? lines[1].no : 0, "expected 'kind group|module'");
  Resolution r;
  if (lines[1].rest == "group") r = load_group_resolution(p, path.parent_path(), lines);
  else if (lines[1].rest == "module") r = load_module_resolution(p, lines);
  else throw FixtureError(p, lines[1].no, "kind must be group or module");
  if (validate) {
    const auto failure = std::visit([](const auto& x) { return x.object.identity_failure(); }, r);
    if (failure) throw CheckFailed(p + ": simplicial identities: " + *failure);
  }
  return r;
}

Fixture load_fixture(const fs::path& path) {
  const std::string ext = path.extension().string();
  if (ext == ".thy") return load_theory_file(path);
  if (ext == ".alg") return load_algebra(path);
  if (ext == ".xmod") return load_xmodule(path);
  if (ext == ".sres") return load_resolution(path);
  throw FixtureError(path.string(), 0, "unknown fixture extension '" + ext + "'");
}

std::string write_algebra(const FiniteAlgebra& a, const std::string& theory_ref) {
  std::ostringstream out;
  out << "algebra " << a.name() << "\n";
  out << "theory " << theory_ref << "\n";
  for (const auto& s : a.theory().sorts) out << "carrier " << s << " : " << join(a.carrier(s)) << "\n";
  for (const auto& op : a.theory().ops) {
    std::vector<std::string> labels;
    for (int v : a.table(op.name)) labels.push_back(a.label(op.result, v));
    out << "table " << op.name << " : " << join(labels) << "\n";
  }
  return out.str();
}

std::string write_xmodule(const XModule& k, const std::string& base_ref) {
  std::ostringstream out;
  out << "xmodule " << k.base().name() << "-module\n";
  out << "base " << base_ref << "\n";
  const auto orders = k.module().group;
  std::vector<std::string> os;
  // the module group is written in its own presentation, which must be a cyclic sum
  for (std::size_t i = 0; i < orders.gens; ++i) {
    Int o = 0;
    for (std::size_t j = 0; j < orders.relations.cols(); ++j)
      if (orders.relations(i, j) != 0) o = std::abs(orders.relations(i, j));
    os.push_back(std::to_string(o));
  }
  out << "group " << join(os) << "\n";
  const auto& g = k.group();
  for (std::size_t x = 0; x < g.order(); ++x) {
    const Matrix& act = k.module().action[x];
    if (act == Matrix::identity(act.rows())) continue;
    out << "act " << g.labels[x] << " : " << format_matrix(act) << "\n";
  }
  return out.str();
}

std::string write_resolution(const Resolution& r, const std::string& name, const std::string& base_ref) {
  std::ostringstream out;
  out << "sres " << name << "\n";
  if (const auto* g = std::get_if<GroupResolution>(&r)) {
    out << "kind group\n";
    out << "base " << base_ref << "\n";
    const auto& v = g->object;
    for (std::size_t n = 0; n <= v.truncation(); ++n) out << "level " << n << " : " << join(v.generators[n]) << "\n";
    for (std::size_t n = 1; n <= v.truncation(); ++n)
      for (std::size_t i = 0; i <= n; ++i) {
        std::vector<std::string> ws;
        for (const auto& w : v.faces[n][i]) ws.push_back(format_word(w, v.generators[n - 1]));
        out << "face " << n << " " << i << " : " << join(ws, " ; ") << "\n";
      }
    for (std::size_t n = 0; n < v.truncation(); ++n)
      for (std::size_t j = 0; j <= n; ++j) {
        std::vector<std::string> ws;
        for (const auto& w : v.degeneracies[n][j]) ws.push_back(format_word(w, v.generators[n + 1]));
        out << "degen " << n << " " << j << " : " << join(ws, " ; ") << "\n";
      }
    std::vector<std::string> labels;
    for (int x : g->augmentation) labels.push_back(g->x.label(g->x.main_sort(), x));
    out << "augment : " << join(labels) << "\n";
    return out.str();
  }
  const auto& m = std::get<ModuleResolution>(r);
  out << "kind module\n";
  out << "ring " << m.object.ring->name() << "\n";
  std::vector<std::string> orders;
  for (Int o : m.target.invariants().torsion) orders.push_back(std::to_string(o));
  for (Int i = 0; i < m.target.invariants().rank; ++i) orders.push_back("0");
  out << "target " << join(orders) << "\n";
  const auto& v = m.object;
  for (std::size_t n = 0; n <= v.truncation(); ++n)
    out << "level " << n << " rank " << v.levels[n].gens() / v.ring->dim() << "\n";
  for (std::size_t n = 1; n <= v.truncation(); ++n)
    for (std::size_t i = 0; i <= n; ++i) out << "face " << n << " " << i << " : " << format_matrix(v.faces[n][i]) << "\n";
  for (std::size_t n = 0; n < v.truncation(); ++n)
    for (std::size_t j = 0; j <= n; ++j)
      out << "degen " << n << " " << j << " : " << format_matrix(v.degeneracies[n][j]) << "\n";
  out << "augment : " << format_matrix(m.augmentation) << "\n";
  return out.str();
}

Json groups_to_json(const std::vector<FGAbelianGroup>& groups) {
  Json out = Json::array();
  for (std::size_t n = 0; n < groups.size(); ++n) {
    Json e = group_json(groups[n]);
    e["degree"] = n;
    out.push_back(e);
  }
  return out;
}

std::vector<FGAbelianGroup> groups_from_json(const Json& j) {
  std::vector<FGAbelianGroup> out(j.size());
  for (const auto& e : j) {
    const auto n = e.at("degree").get<std::size_t>();
    if (n >= out.size()) throw Error("degree out of range in JSON result");
    out[n] = group_from(e);
  }
  return out;
}

Json modules_to_json(const std::vector<Module>& modules) {
  Json out = Json::array();
  for (std::size_t n = 0; n < modules.size(); ++n) {
    Json e = group_json(modules[n].invariants());
    e["degree"] = n;
    Json act = Json::array();
    for (const auto& a : modules[n].action) act.push_back(matrix_json(a));
    e["action"] = act;
    out.push_back(e);
  }
  return out;
}

Json page_to_json(const SpectralPage& p) {
  Json j;
  j["kind"] = to_string(p.kind);
  j["ring"] = p.ring ? p.ring->name() : "";
  j["quadrant"] = p.quadrant;
  j["range"] = p.range;
  Json grid = Json::array();
  for (std::size_t s = 0; s < p.grid.size(); ++s)
    for (std::size_t t = 0; t < p.grid[s].size(); ++t) {
      Json c = group_json(p.grid[s][t]);
      c["s"] = s;
      c["t"] = t;
      grid.push_back(c);
    }
  j["grid"] = grid;
  Json d2 = Json::array();
  for (const auto& [key, m] : p.d2) {
    Json e = matrix_json(m);
    e["s"] = key.first;
    e["t"] = key.second;
    d2.push_back(e);
  }
  j["d2"] = d2;
  j["d2_determined"] = p.d2_determined;
  Json conv = Json::array();
  for (const auto& c : p.convergence)
    conv.push_back({{"total", c.total},
                    {"target", group_json(c.target)},
                    {"e2_total", group_json(c.e2_total)},
                    {"collapsed", c.collapsed},
                    {"agreement", to_string(c.agreement)},
                    {"detail", c.detail}});
  Json seqs = Json::array();
  for (const auto& q : p.sequences)
    seqs.push_back({{"total", q.total},
                    {"sub", group_json(q.sub)},
                    {"middle", group_json(q.middle)},
                    {"quotient", group_json(q.quotient)},
                    {"exact", q.exact}});
  j["convergence"] = {{"entries", conv}, {"sequences", seqs}, {"consistent", p.consistent()}};
  return j;
}

SpectralPage page_from_json(const Json& j) {
  SpectralPage p;
  const std::string kind = j.at("kind").get<std::string>();
  bool found = false;
  for (auto k : {PageKind::UniversalCoefficients, PageKind::Tor, PageKind::ReverseAdamsHomology,
                 PageKind::ReverseAdamsCohomology})
    if (to_string(k) == kind) {
      p.kind = k;
      found = true;
    }
  if (!found) throw Error("unknown page kind '" + kind + "'");
  const std::string ring = j.at("ring").get<std::string>();
  if (!ring.empty()) p.ring = Ring::from_name(ring);
  p.quadrant = j.at("quadrant").get<std::string>();
  p.range = j.at("range").get<std::size_t>();
  for (const auto& c : j.at("grid")) {
    const auto s = c.at("s").get<std::size_t>(), t = c.at("t").get<std::size_t>();
    if (p.grid.size() <= s) p.grid.resize(s + 1);
    if (p.grid[s].size() <= t) p.grid[s].resize(t + 1);
    p.grid[s][t] = group_from(c);
  }
  for (const auto& e : j.at("d2")) p.d2[{e.at("s").get<std::size_t>(), e.at("t").get<std::size_t>()}] = matrix_from(e);
  p.d2_determined = j.at("d2_determined").get<bool>();
  const auto& conv = j.at("convergence");
  for (const auto& e : conv.at("entries")) {
    ConvergenceEntry c;
    c.total = e.at("total").get<std::size_t>();
    c.target = group_from(e.at("target"));
    c.e2_total = group_from(e.at("e2_total"));
    c.collapsed = e.at("collapsed").get<bool>();
    const std::string a = e.at("agreement").get<std::string>();
    c.agreement = a == "agrees" ? Agreement::Agrees : a == "disagrees" ? Agreement::Disagrees : Agreement::Undetermined;
    c.detail = e.at("detail").get<std::string>();
    p.convergence.push_back(c);
  }
  for (const auto& e : conv.at("sequences")) {
    ShortExactCheck q;
    q.total = e.at("total").get<std::size_t>();
    q.sub = group_from(e.at("sub"));
    q.middle = group_from(e.at("middle"));
    q.quotient = group_from(e.at("quotient"));
    q.exact = e.at("exact").get<bool>();
    p.sequences.push_back(q);
  }
  return p;
}

}  // namespace aq
