#pragma once

#include <string>

#include "ipcf/parser.hpp"
#include "ipcf/reduce.hpp"
#include "ipcf/typecheck.hpp"

namespace ipcf {

// Machine-readable trace: {"initial", "steps": [{step, rule, path, term}],
// "status", "final"}, every term pretty-printed.
std::string traceToJson(const Trace& trace);

// Type errors carry no term spans, so callers pass the enclosing definition's
// position; the offending subterm is included pretty-printed.
std::string typeErrorToJson(const TypeError& e, int line, int col);

std::string parseErrorToJson(const ParseError& e);

}  // namespace ipcf
