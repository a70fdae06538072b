#pragma once

// Fixture files (.thy, .alg, .xmod, .sres) and JSON results.
//
// .alg, .xmod and .sres are line oriented; '#' starts a comment. Paths
// inside a fixture are relative to the fixture's directory. Every load error
// is a FixtureError of the form "path:line: message".
//
//   .alg   algebra NAME / theory REF (built-in name or .thy path), then either
//          carrier SORT : labels...   and   table OP : result labels...
//          (flattened, first argument most significant), or
//          gen NAME : SORT / rel TERM = TERM / realize bound=N
//   .xmod  xmodule NAME / base ALG / group ORDERS... / act LABEL : MATRIX
//          (elements without an act line act as the identity)
//   .sres  sres NAME / kind group|module, then for groups
//            base ALG / level N : GENS... / face N I : WORD ; WORD ...
//            degen N J : WORD ; ... / augment : LABELS...
//          and for modules
//            ring Z|Z/m / target ORDERS... / level N rank R /
//            face N I : MATRIX / degen N J : MATRIX / augment : MATRIX
//
// Words are space separated letters NAME or NAME^-1 ("1" is empty); matrices
// are rows separated by ';' with space separated entries.

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "aq/beck.hpp"
#include "aq/resolutions.hpp"
#include "aq/spectral.hpp"

namespace aq {

class FixtureError : public Error {
 public:
  FixtureError(const std::string& path, int line, const std::string& what)
      : Error(path + ":" + std::to_string(line) + ": " + what) {}
};

// Built-in theory name, or a .thy path relative to base_dir.
TheoryPresentation resolve_theory(const std::string& ref, const std::filesystem::path& base_dir = {});

TheoryPresentation load_theory_file(const std::filesystem::path& path);
FiniteAlgebra load_algebra(const std::filesystem::path& path);
XModule load_xmodule(const std::filesystem::path& path);
// With validate, the simplicial identities must hold (CheckFailed otherwise).
Resolution load_resolution(const std::filesystem::path& path, bool validate = true);

using Fixture = std::variant<TheoryPresentation, FiniteAlgebra, XModule, Resolution>;
Fixture load_fixture(const std::filesystem::path& path);

// Writers; refs are written verbatim as the theory / base lines.
std::string write_algebra(const FiniteAlgebra& a, const std::string& theory_ref);
std::string write_xmodule(const XModule& k, const std::string& base_ref);
std::string write_resolution(const Resolution& r, const std::string& name, const std::string& base_ref = {});

std::string format_matrix(const Matrix& m);
Matrix parse_matrix(const std::string& text, std::size_t rows, std::size_t cols);

using Json = nlohmann::json;

// [{"degree": n, "rank": r, "torsion": [...]}, ...]; modules add "action".
Json groups_to_json(const std::vector<FGAbelianGroup>& groups);
std::vector<FGAbelianGroup> groups_from_json(const Json& j);
Json modules_to_json(const std::vector<Module>& modules);
Json page_to_json(const SpectralPage& p);
SpectralPage page_from_json(const Json& j);

}  // namespace aq
