#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ipcf/syntax.hpp"

namespace ipcf {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, std::vector<std::string> expected, std::string found,
             const std::string& message);

  int line;
  int col;
  std::vector<std::string> expected;  // token descriptions acceptable here
  std::string found;
};

// One `def name : Type = term;` declaration, positions at the `def` keyword.
struct Decl {
  std::string name;
  Type type;
  Term term;
  int line = 0;
  int col = 0;
};

struct SourceFile {
  std::vector<Decl> decls;
  std::optional<Term> main;
  std::optional<Type> mainType;  // `main : T = …` — checked instead of inferred
  int mainLine = 0;
  int mainCol = 0;
};

Term parseTerm(std::string_view text);
Type parseTypeText(std::string_view text);
SourceFile parseFile(std::string_view text);

// ---------------------------------------------------------------------------
// Declaration expansion. `def` is substitution sugar: occurrences of earlier
// names are replaced by their (already expanded) terms before checking.
// ---------------------------------------------------------------------------

struct ElabDef {
  std::string name;
  Type declared;
  Term expanded;
  int line = 0;
  int col = 0;
  bool fromBase = false;  // came from the base (prelude) rather than the file
};

struct Program {
  std::vector<ElabDef> defs;  // base + file, in scope order
  std::optional<Term> main;   // fully expanded
  std::optional<Type> mainType;
  int mainLine = 0;
  int mainCol = 0;
};

// Expands `file` on top of `base` definitions. A file def with the same name
// replaces the base one (in place); duplicate names within one file are a
// ParseError at the second site.
Program elaborate(const SourceFile& file, const std::vector<ElabDef>& base = {});

// Expands the def names visible in `defs` inside an ad-hoc term (REPL input).
Term expandTerm(const Term& t, const std::vector<ElabDef>& defs);

}  // namespace ipcf
