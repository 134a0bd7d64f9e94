#include "ipcf/printer.hpp"

namespace ipcf {

namespace {

void typeGo(const Type& t, bool parenArrow, std::string& out) {
  std::visit(Overloaded{
                 [&](Ground g) { out += groundName(g); },
                 [&](const ArrowType& a) {
                   if (parenArrow) out += '(';
                   typeGo(a.dom, /*parenArrow=*/true, out);
                   out += " -> ";
                   typeGo(a.cod, /*parenArrow=*/false, out);
                   if (parenArrow) out += ')';
                 },
                 [&](const BoxType& b) {
                   out += "[]";
                   typeGo(b.inner, /*parenArrow=*/true, out);
                 },
             },
             t.data().node);
}

// Where a term occurs decides its parenthesization:
//   Top — extends maximally (bodies of binders, let-box subjects, file level)
//   Fn  — function position of an application
//   Arg — argument position of an application
enum class Pos { Top, Fn, Arg };

void termGo(const Term& t, Pos pos, std::string& out) {
  std::visit(
      Overloaded{
          [&](const VarTerm& v) { out += v.name; },
          [&](const LamTerm& l) {
            bool paren = pos != Pos::Top;
            if (paren) out += '(';
            out += '\\';
            out += l.binder;
            out += ':';
            typeGo(l.annot, false, out);
            out += ". ";
            termGo(l.body, Pos::Top, out);
            if (paren) out += ')';
          },
          [&](const AppTerm& a) {
            bool paren = pos == Pos::Arg;
            if (paren) out += '(';
            termGo(a.fn, Pos::Fn, out);
            out += ' ';
            termGo(a.arg, Pos::Arg, out);
            if (paren) out += ')';
          },
          [&](const BoxTermNode& b) {
            bool paren = pos != Pos::Top;
            if (paren) out += '(';
            out += "box ";
            termGo(b.body, Pos::Top, out);
            if (paren) out += ')';
          },
          [&](const LetBoxTerm& lb) {
            bool paren = pos != Pos::Top;
            if (paren) out += '(';
            out += "let box ";
            out += lb.binder;
            out += " = ";
            termGo(lb.subject, Pos::Top, out);
            out += " in ";
            termGo(lb.body, Pos::Top, out);
            if (paren) out += ')';
          },
          [&](const FixBoxTerm& f) {
            bool paren = pos != Pos::Top;
            if (paren) out += '(';
            out += "fix ";
            out += f.binder;
            out += ". ";
            termGo(f.body, Pos::Top, out);
            if (paren) out += ')';
          },
          [&](const NatTerm& n) { out += std::to_string(n.value); },
          [&](const ConstTerm& c) {
            // `in` only starts an atom sequence; elsewhere it needs parens.
            bool paren = c.kind == ConstKind::In && pos == Pos::Arg;
            if (paren) out += '(';
            out += constName(c.kind, c.condSort);
            if (paren) out += ')';
          },
          [&](const PrimTerm& p) {
            out += '~';
            out += p.name;
          },
      },
      t.data().node);
}

}  // namespace

std::string printTerm(const Term& t) {
  std::string out;
  termGo(t, Pos::Top, out);
  return out;
}

std::string printType(const Type& t) {
  std::string out;
  typeGo(t, false, out);
  return out;
}

}  // namespace ipcf
