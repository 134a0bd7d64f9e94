#pragma once

#include <string_view>
#include <vector>

#include "ipcf/ops.hpp"
#include "ipcf/parser.hpp"

namespace ipcf {

namespace detail {
const char* preludeTextData();  // generated from prelude.ipcf at build time
}

// Source text of the shipped prelude.
std::string_view preludeText();

// The prelude parsed and expanded once, with fromBase set; commands prepend
// these unless --no-prelude. Parse failures throw ParseError (a packaging
// defect, not a user error).
const std::vector<ElabDef>& preludeDefs();

struct PreludeEntry {
  std::string name;
  Type declared;
  Term expanded;
};

// preludeDefs() with every entry checked at its declared type. The shipped
// prelude needs the full default registry (por uses ~done?/~tick, the virus
// model uses in). Throws TypeError if any entry fails — build-breaking.
std::vector<PreludeEntry> loadPrelude(const OpRegistry& reg);

}  // namespace ipcf
