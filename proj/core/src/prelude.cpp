#include "ipcf/prelude.hpp"

#include "ipcf/typecheck.hpp"

namespace ipcf {

std::string_view preludeText() { return detail::preludeTextData(); }

const std::vector<ElabDef>& preludeDefs() {
  static const std::vector<ElabDef> defs = [] {
    Program p = elaborate(parseFile(preludeText()));
    for (ElabDef& d : p.defs) d.fromBase = true;
    return std::move(p.defs);
  }();
  return defs;
}

std::vector<PreludeEntry> loadPrelude(const OpRegistry& reg) {
  std::vector<PreludeEntry> entries;
  for (const ElabDef& d : preludeDefs()) {
    check(TypingContext{}, d.expanded, d.declared, reg);
    entries.push_back(PreludeEntry{d.name, d.declared, d.expanded});
  }
  return entries;
}

}  // namespace ipcf
