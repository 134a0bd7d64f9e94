#pragma once

#include <string>

#include "ipcf/syntax.hpp"

namespace ipcf {

// Concrete syntax with minimal parentheses; parseTerm(printTerm(t)) is
// α-equal to t (in fact syntactically equal).
std::string printTerm(const Term& t);
std::string printType(const Type& t);

}  // namespace ipcf
