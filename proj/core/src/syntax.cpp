#include "ipcf/syntax.hpp"

#include <algorithm>
#include <map>

namespace ipcf {

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

std::string_view groundName(Ground g) {
  switch (g) {
    case Ground::Nat:
      return "Nat";
    case Ground::Bool:
      return "Bool";
    case Ground::File:
      return "F";
  }
  return "?";
}

Type Type::ground(Ground g) {
  return Type(std::make_shared<const TypeData>(TypeData{g}));
}
Type Type::nat() { return ground(Ground::Nat); }
Type Type::boolean() { return ground(Ground::Bool); }
Type Type::file() { return ground(Ground::File); }
Type Type::arrow(Type dom, Type cod) {
  return Type(std::make_shared<const TypeData>(
      TypeData{ArrowType{std::move(dom), std::move(cod)}}));
}
Type Type::boxed(Type inner) {
  return Type(std::make_shared<const TypeData>(TypeData{BoxType{std::move(inner)}}));
}

bool Type::isGround() const { return std::holds_alternative<Ground>(rep_->node); }
bool Type::isArrow() const { return std::holds_alternative<ArrowType>(rep_->node); }
bool Type::isBox() const { return std::holds_alternative<BoxType>(rep_->node); }

Ground Type::asGround() const { return std::get<Ground>(rep_->node); }
const Type& Type::dom() const { return std::get<ArrowType>(rep_->node).dom; }
const Type& Type::cod() const { return std::get<ArrowType>(rep_->node).cod; }
const Type& Type::inner() const { return std::get<BoxType>(rep_->node).inner; }

bool operator==(const Type& a, const Type& b) {
  if (&a.data() == &b.data()) return true;
  return std::visit(
      Overloaded{
          [&](Ground ga) { return b.isGround() && b.asGround() == ga; },
          [&](const ArrowType& ar) {
            return b.isArrow() && ar.dom == b.dom() && ar.cod == b.cod();
          },
          [&](const BoxType& bx) { return b.isBox() && bx.inner == b.inner(); },
      },
      a.data().node);
}

// ---------------------------------------------------------------------------
// Term constructors
// ---------------------------------------------------------------------------

std::string_view constName(ConstKind k, Ground condSort) {
  switch (k) {
    case ConstKind::True:
      return "true";
    case ConstKind::False:
      return "false";
    case ConstKind::Succ:
      return "succ";
    case ConstKind::Pred:
      return "pred";
    case ConstKind::ZeroTest:
      return "zero?";
    case ConstKind::Cond:
      switch (condSort) {
        case Ground::Nat:
          return "if_Nat";
        case Ground::Bool:
          return "if_Bool";
        case Ground::File:
          return "if_F";
      }
      return "if_?";
    case ConstKind::In:
      return "in";
    case ConstKind::Out:
      return "out";
  }
  return "?";
}

Term Term::var(std::string name) {
  return Term(std::make_shared<const TermData>(TermData{VarTerm{std::move(name)}}));
}
Term Term::lam(std::string binder, Type annot, Term body) {
  return Term(std::make_shared<const TermData>(
      TermData{LamTerm{std::move(binder), std::move(annot), std::move(body)}}));
}
Term Term::app(Term fn, Term arg) {
  return Term(std::make_shared<const TermData>(
      TermData{AppTerm{std::move(fn), std::move(arg)}}));
}
Term Term::app(Term fn, Term a, Term b) {
  return app(app(std::move(fn), std::move(a)), std::move(b));
}
Term Term::app(Term fn, Term a, Term b, Term c) {
  return app(app(app(std::move(fn), std::move(a)), std::move(b)), std::move(c));
}
Term Term::box(Term body) {
  return Term(std::make_shared<const TermData>(TermData{BoxTermNode{std::move(body)}}));
}
Term Term::letBox(std::string binder, Term subject, Term body) {
  return Term(std::make_shared<const TermData>(TermData{
      LetBoxTerm{std::move(binder), std::move(subject), std::move(body)}}));
}
Term Term::fixBox(std::string binder, Term body) {
  return Term(std::make_shared<const TermData>(
      TermData{FixBoxTerm{std::move(binder), std::move(body)}}));
}
Term Term::nat(std::uint64_t value) {
  return Term(std::make_shared<const TermData>(TermData{NatTerm{value}}));
}
Term Term::constant(ConstKind kind) {
  return Term(std::make_shared<const TermData>(TermData{ConstTerm{kind, Ground::Nat}}));
}
Term Term::cond(Ground sort) {
  return Term(std::make_shared<const TermData>(TermData{ConstTerm{ConstKind::Cond, sort}}));
}
Term Term::prim(std::string opName) {
  return Term(std::make_shared<const TermData>(TermData{PrimTerm{std::move(opName)}}));
}

// ---------------------------------------------------------------------------
// Free variables
// ---------------------------------------------------------------------------

namespace {

void collectFree(const Term& t, std::set<std::string>& bound, std::set<std::string>& out) {
  std::visit(
      Overloaded{
          [&](const VarTerm& v) {
            if (!bound.count(v.name)) out.insert(v.name);
          },
          [&](const LamTerm& l) {
            bool fresh = bound.insert(l.binder).second;
            collectFree(l.body, bound, out);
            if (fresh) bound.erase(l.binder);
          },
          [&](const AppTerm& a) {
            collectFree(a.fn, bound, out);
            collectFree(a.arg, bound, out);
          },
          [&](const BoxTermNode& b) { collectFree(b.body, bound, out); },
          [&](const LetBoxTerm& lb) {
            collectFree(lb.subject, bound, out);
            bool fresh = bound.insert(lb.binder).second;
            collectFree(lb.body, bound, out);
            if (fresh) bound.erase(lb.binder);
          },
          [&](const FixBoxTerm& f) {
            bool fresh = bound.insert(f.binder).second;
            collectFree(f.body, bound, out);
            if (fresh) bound.erase(f.binder);
          },
          [&](const NatTerm&) {},
          [&](const ConstTerm&) {},
          [&](const PrimTerm&) {},
      },
      t.data().node);
}

}  // namespace

std::set<std::string> freeVars(const Term& t) {
  std::set<std::string> bound, out;
  collectFree(t, bound, out);
  return out;
}

bool isClosed(const Term& t) { return freeVars(t).empty(); }

// ufv: free occurrences not under any box / fix body.
// bfv: free occurrences under at least one box / fix body.
namespace {
void collectUfv(const Term& t, std::set<std::string>& bound, std::set<std::string>& out) {
  std::visit(
      Overloaded{
          [&](const VarTerm& v) {
            if (!bound.count(v.name)) out.insert(v.name);
          },
          [&](const LamTerm& l) {
            bool fresh = bound.insert(l.binder).second;
            collectUfv(l.body, bound, out);
            if (fresh) bound.erase(l.binder);
          },
          [&](const AppTerm& a) {
            collectUfv(a.fn, bound, out);
            collectUfv(a.arg, bound, out);
          },
          [&](const BoxTermNode&) {},  // ufv(box M) = ∅
          [&](const LetBoxTerm& lb) {
            collectUfv(lb.subject, bound, out);
            bool fresh = bound.insert(lb.binder).second;
            collectUfv(lb.body, bound, out);
            if (fresh) bound.erase(lb.binder);
          },
          [&](const FixBoxTerm&) {},  // ufv(fix z. M) = ∅
          [&](const NatTerm&) {},
          [&](const ConstTerm&) {},
          [&](const PrimTerm&) {},
      },
      t.data().node);
}

void collectBfv(const Term& t, std::set<std::string>& bound, std::set<std::string>& out) {
  std::visit(
      Overloaded{
          [&](const VarTerm&) {},
          [&](const LamTerm& l) {
            bool fresh = bound.insert(l.binder).second;
            collectBfv(l.body, bound, out);
            if (fresh) bound.erase(l.binder);
          },
          [&](const AppTerm& a) {
            collectBfv(a.fn, bound, out);
            collectBfv(a.arg, bound, out);
          },
          [&](const BoxTermNode& b) { collectFree(b.body, bound, out); },
          [&](const LetBoxTerm& lb) {
            collectBfv(lb.subject, bound, out);
            bool fresh = bound.insert(lb.binder).second;
            collectBfv(lb.body, bound, out);
            if (fresh) bound.erase(lb.binder);
          },
          [&](const FixBoxTerm& f) {
            bool fresh = bound.insert(f.binder).second;
            collectFree(f.body, bound, out);
            if (fresh) bound.erase(f.binder);
          },
          [&](const NatTerm&) {},
          [&](const ConstTerm&) {},
          [&](const PrimTerm&) {},
      },
      t.data().node);
}
}  // namespace

std::set<std::string> unboxedFreeVars(const Term& t) {
  std::set<std::string> bound, out;
  collectUfv(t, bound, out);
  return out;
}

std::set<std::string> boxedFreeVars(const Term& t) {
  std::set<std::string> bound, out;
  collectBfv(t, bound, out);
  return out;
}

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

std::string freshName(std::string_view base, const std::set<std::string>& avoid) {
  std::string cand(base);
  while (avoid.count(cand)) cand += '\'';
  return cand;
}

namespace {

// Shared binder logic: returns the (possibly renamed) binder and the body
// with [replacement/var] applied, or the originals when var is shadowed.
std::pair<std::string, Term> substUnder(const std::string& binder, const Term& body,
                                        const Term& repl, const std::string& var) {
  if (binder == var) return {binder, body};
  auto bodyFv = freeVars(body);
  if (!bodyFv.count(var)) return {binder, body};
  auto replFv = freeVars(repl);
  std::string b = binder;
  Term newBody = body;
  if (replFv.count(b)) {
    std::set<std::string> avoid = replFv;
    avoid.insert(bodyFv.begin(), bodyFv.end());
    avoid.insert(var);
    avoid.insert(b);
    std::string fresh = freshName(b, avoid);
    newBody = substitute(newBody, Term::var(fresh), b);
    b = fresh;
  }
  return {b, substitute(newBody, repl, var)};
}

}  // namespace

Term substitute(const Term& target, const Term& repl, const std::string& var) {
  return std::visit(
      Overloaded{
          [&](const VarTerm& v) { return v.name == var ? repl : target; },
          [&](const LamTerm& l) {
            auto [b, body] = substUnder(l.binder, l.body, repl, var);
            if (b == l.binder && syntacticEq(body, l.body)) return target;
            return Term::lam(b, l.annot, body);
          },
          [&](const AppTerm& a) {
            return Term::app(substitute(a.fn, repl, var), substitute(a.arg, repl, var));
          },
          [&](const BoxTermNode& b) { return Term::box(substitute(b.body, repl, var)); },
          [&](const LetBoxTerm& lb) {
            Term subject = substitute(lb.subject, repl, var);
            auto [b, body] = substUnder(lb.binder, lb.body, repl, var);
            return Term::letBox(b, subject, body);
          },
          [&](const FixBoxTerm& f) {
            auto [b, body] = substUnder(f.binder, f.body, repl, var);
            if (b == f.binder && syntacticEq(body, f.body)) return target;
            return Term::fixBox(b, body);
          },
          [&](const NatTerm&) { return target; },
          [&](const ConstTerm&) { return target; },
          [&](const PrimTerm&) { return target; },
      },
      target.data().node);
}

// ---------------------------------------------------------------------------
// α-equivalence and canonical keys
// ---------------------------------------------------------------------------

namespace {

// Pairs of bound names, innermost last. A name is free iff it appears in
// neither column when scanning from the innermost binding outwards.
struct AlphaEnv {
  std::vector<std::pair<std::string, std::string>> pairs;

  bool varEq(const std::string& a, const std::string& b) const {
    for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) {
      bool hitA = it->first == a;
      bool hitB = it->second == b;
      if (hitA || hitB) return hitA && hitB;
    }
    return a == b;
  }
};

bool alphaEqGo(const Term& x, const Term& y, AlphaEnv& env) {
  if (&x.data() == &y.data() && env.pairs.empty()) return true;
  return std::visit(
      Overloaded{
          [&](const VarTerm& v) {
            auto* w = y.get<VarTerm>();
            return w && env.varEq(v.name, w->name);
          },
          [&](const LamTerm& l) {
            auto* m = y.get<LamTerm>();
            if (!m || !(l.annot == m->annot)) return false;
            env.pairs.emplace_back(l.binder, m->binder);
            bool ok = alphaEqGo(l.body, m->body, env);
            env.pairs.pop_back();
            return ok;
          },
          [&](const AppTerm& a) {
            auto* b = y.get<AppTerm>();
            return b && alphaEqGo(a.fn, b->fn, env) && alphaEqGo(a.arg, b->arg, env);
          },
          [&](const BoxTermNode& b) {
            auto* c = y.get<BoxTermNode>();
            return c && alphaEqGo(b.body, c->body, env);
          },
          [&](const LetBoxTerm& lb) {
            auto* m = y.get<LetBoxTerm>();
            if (!m || !alphaEqGo(lb.subject, m->subject, env)) return false;
            env.pairs.emplace_back(lb.binder, m->binder);
            bool ok = alphaEqGo(lb.body, m->body, env);
            env.pairs.pop_back();
            return ok;
          },
          [&](const FixBoxTerm& f) {
            auto* g = y.get<FixBoxTerm>();
            if (!g) return false;
            env.pairs.emplace_back(f.binder, g->binder);
            bool ok = alphaEqGo(f.body, g->body, env);
            env.pairs.pop_back();
            return ok;
          },
          [&](const NatTerm& n) {
            auto* m = y.get<NatTerm>();
            return m && m->value == n.value;
          },
          [&](const ConstTerm& c) {
            auto* d = y.get<ConstTerm>();
            if (!d || d->kind != c.kind) return false;
            return c.kind != ConstKind::Cond || c.condSort == d->condSort;
          },
          [&](const PrimTerm& p) {
            auto* q = y.get<PrimTerm>();
            return q && q->name == p.name;
          },
      },
      x.data().node);
}

void typeKey(const Type& t, std::string& out) {
  std::visit(Overloaded{
                 [&](Ground g) { out += groundName(g); },
                 [&](const ArrowType& a) {
                   out += '(';
                   typeKey(a.dom, out);
                   out += '>';
                   typeKey(a.cod, out);
                   out += ')';
                 },
                 [&](const BoxType& b) {
                   out += '[';
                   typeKey(b.inner, out);
                   out += ']';
                 },
             },
             t.data().node);
}

void alphaKeyGo(const Term& t, std::map<std::string, int>& bound, int& counter,
                std::string& out) {
  std::visit(
      Overloaded{
          [&](const VarTerm& v) {
            auto it = bound.find(v.name);
            if (it == bound.end()) {
              out += '!';
              out += v.name;
              out += ';';
            } else {
              out += '%';
              out += std::to_string(it->second);
              out += ';';
            }
          },
          [&](const LamTerm& l) {
            out += "\\:";
            typeKey(l.annot, out);
            out += '.';
            auto it = bound.find(l.binder);
            std::optional<int> saved;
            if (it != bound.end()) saved = it->second;
            bound[l.binder] = counter++;
            alphaKeyGo(l.body, bound, counter, out);
            if (saved)
              bound[l.binder] = *saved;
            else
              bound.erase(l.binder);
          },
          [&](const AppTerm& a) {
            out += '(';
            alphaKeyGo(a.fn, bound, counter, out);
            out += ' ';
            alphaKeyGo(a.arg, bound, counter, out);
            out += ')';
          },
          [&](const BoxTermNode& b) {
            out += "#(";
            alphaKeyGo(b.body, bound, counter, out);
            out += ')';
          },
          [&](const LetBoxTerm& lb) {
            out += "L(";
            alphaKeyGo(lb.subject, bound, counter, out);
            out += ")(";
            auto it = bound.find(lb.binder);
            std::optional<int> saved;
            if (it != bound.end()) saved = it->second;
            bound[lb.binder] = counter++;
            alphaKeyGo(lb.body, bound, counter, out);
            if (saved)
              bound[lb.binder] = *saved;
            else
              bound.erase(lb.binder);
            out += ')';
          },
          [&](const FixBoxTerm& f) {
            out += "Y.";
            auto it = bound.find(f.binder);
            std::optional<int> saved;
            if (it != bound.end()) saved = it->second;
            bound[f.binder] = counter++;
            alphaKeyGo(f.body, bound, counter, out);
            if (saved)
              bound[f.binder] = *saved;
            else
              bound.erase(f.binder);
          },
          [&](const NatTerm& n) {
            out += 'n';
            out += std::to_string(n.value);
            out += ';';
          },
          [&](const ConstTerm& c) {
            out += 'c';
            out += constName(c.kind, c.condSort);
            out += ';';
          },
          [&](const PrimTerm& p) {
            out += '~';
            out += p.name;
            out += ';';
          },
      },
      t.data().node);
}

}  // namespace

bool alphaEq(const Term& a, const Term& b) {
  AlphaEnv env;
  return alphaEqGo(a, b, env);
}

std::string alphaKey(const Term& t) {
  std::map<std::string, int> bound;
  int counter = 0;
  std::string out;
  alphaKeyGo(t, bound, counter, out);
  return out;
}

namespace {

// FNV-1a over the same canonical token stream alphaKeyGo emits, folded
// without materializing the string.
struct Fnv {
  std::uint64_t h = 1469598103934665603ull;
  void byte(unsigned char b) { h = (h ^ b) * 1099511628211ull; }
  void tag(char c) { byte(static_cast<unsigned char>(c)); }
  void str(std::string_view s) {
    for (char c : s) byte(static_cast<unsigned char>(c));
  }
  void num(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) byte(static_cast<unsigned char>(v >> (8 * i)));
  }
};

void typeHashGo(const Type& t, Fnv& h) {
  std::visit(Overloaded{
                 [&](Ground g) { h.str(groundName(g)); },
                 [&](const ArrowType& a) {
                   h.tag('(');
                   typeHashGo(a.dom, h);
                   h.tag('>');
                   typeHashGo(a.cod, h);
                   h.tag(')');
                 },
                 [&](const BoxType& b) {
                   h.tag('[');
                   typeHashGo(b.inner, h);
                   h.tag(']');
                 },
             },
             t.data().node);
}

void alphaHashGo(const Term& t, std::map<std::string, int>& bound, int& counter,
                 Fnv& h) {
  auto bind = [&](const std::string& name, const Term& body) {
    auto it = bound.find(name);
    std::optional<int> saved;
    if (it != bound.end()) saved = it->second;
    bound[name] = counter++;
    alphaHashGo(body, bound, counter, h);
    if (saved)
      bound[name] = *saved;
    else
      bound.erase(name);
  };
  std::visit(
      Overloaded{
          [&](const VarTerm& v) {
            auto it = bound.find(v.name);
            if (it == bound.end()) {
              h.tag('!');
              h.str(v.name);
              h.tag(';');
            } else {
              h.tag('%');
              h.num(std::uint64_t(it->second));
            }
          },
          [&](const LamTerm& l) {
            h.tag('\\');
            typeHashGo(l.annot, h);
            h.tag('.');
            bind(l.binder, l.body);
          },
          [&](const AppTerm& a) {
            h.tag('(');
            alphaHashGo(a.fn, bound, counter, h);
            h.tag(' ');
            alphaHashGo(a.arg, bound, counter, h);
            h.tag(')');
          },
          [&](const BoxTermNode& b) {
            h.tag('#');
            alphaHashGo(b.body, bound, counter, h);
            h.tag(')');
          },
          [&](const LetBoxTerm& lb) {
            h.tag('L');
            alphaHashGo(lb.subject, bound, counter, h);
            h.tag(')');
            bind(lb.binder, lb.body);
          },
          [&](const FixBoxTerm& f) {
            h.tag('Y');
            bind(f.binder, f.body);
          },
          [&](const NatTerm& n) {
            h.tag('n');
            h.num(n.value);
          },
          [&](const ConstTerm& c) {
            h.tag('c');
            h.str(constName(c.kind, c.condSort));
          },
          [&](const PrimTerm& p) {
            h.tag('~');
            h.str(p.name);
            h.tag(';');
          },
      },
      t.data().node);
}

}  // namespace

std::uint64_t alphaHash(const Term& t) {
  std::map<std::string, int> bound;
  int counter = 0;
  Fnv h;
  alphaHashGo(t, bound, counter, h);
  return h.h;
}

bool syntacticEq(const Term& a, const Term& b) {
  if (&a.data() == &b.data()) return true;
  return std::visit(
      Overloaded{
          [&](const VarTerm& v) {
            auto* w = b.get<VarTerm>();
            return w && w->name == v.name;
          },
          [&](const LamTerm& l) {
            auto* m = b.get<LamTerm>();
            return m && m->binder == l.binder && m->annot == l.annot &&
                   syntacticEq(l.body, m->body);
          },
          [&](const AppTerm& x) {
            auto* y = b.get<AppTerm>();
            return y && syntacticEq(x.fn, y->fn) && syntacticEq(x.arg, y->arg);
          },
          [&](const BoxTermNode& x) {
            auto* y = b.get<BoxTermNode>();
            return y && syntacticEq(x.body, y->body);
          },
          [&](const LetBoxTerm& x) {
            auto* y = b.get<LetBoxTerm>();
            return y && y->binder == x.binder && syntacticEq(x.subject, y->subject) &&
                   syntacticEq(x.body, y->body);
          },
          [&](const FixBoxTerm& x) {
            auto* y = b.get<FixBoxTerm>();
            return y && y->binder == x.binder && syntacticEq(x.body, y->body);
          },
          [&](const NatTerm& n) {
            auto* m = b.get<NatTerm>();
            return m && m->value == n.value;
          },
          [&](const ConstTerm& c) {
            auto* d = b.get<ConstTerm>();
            if (!d || d->kind != c.kind) return false;
            return c.kind != ConstKind::Cond || c.condSort == d->condSort;
          },
          [&](const PrimTerm& p) {
            auto* q = b.get<PrimTerm>();
            return q && q->name == p.name;
          },
      },
      a.data().node);
}

// ---------------------------------------------------------------------------
// Paths
// ---------------------------------------------------------------------------

namespace {
std::optional<Term> childAt(const Term& t, int i) {
  return std::visit(
      Overloaded{
          [&](const LamTerm& l) -> std::optional<Term> {
            if (i == 0) return l.body;
            return std::nullopt;
          },
          [&](const AppTerm& a) -> std::optional<Term> {
            if (i == 0) return a.fn;
            if (i == 1) return a.arg;
            return std::nullopt;
          },
          [&](const BoxTermNode& b) -> std::optional<Term> {
            if (i == 0) return b.body;
            return std::nullopt;
          },
          [&](const LetBoxTerm& lb) -> std::optional<Term> {
            if (i == 0) return lb.subject;
            if (i == 1) return lb.body;
            return std::nullopt;
          },
          [&](const FixBoxTerm& f) -> std::optional<Term> {
            if (i == 0) return f.body;
            return std::nullopt;
          },
          [&](const auto&) -> std::optional<Term> { return std::nullopt; },
      },
      t.data().node);
}

std::optional<Term> withChild(const Term& t, int i, const Term& c) {
  return std::visit(
      Overloaded{
          [&](const LamTerm& l) -> std::optional<Term> {
            if (i == 0) return Term::lam(l.binder, l.annot, c);
            return std::nullopt;
          },
          [&](const AppTerm& a) -> std::optional<Term> {
            if (i == 0) return Term::app(c, a.arg);
            if (i == 1) return Term::app(a.fn, c);
            return std::nullopt;
          },
          [&](const BoxTermNode&) -> std::optional<Term> {
            if (i == 0) return Term::box(c);
            return std::nullopt;
          },
          [&](const LetBoxTerm& lb) -> std::optional<Term> {
            if (i == 0) return Term::letBox(lb.binder, c, lb.body);
            if (i == 1) return Term::letBox(lb.binder, lb.subject, c);
            return std::nullopt;
          },
          [&](const FixBoxTerm& f) -> std::optional<Term> {
            if (i == 0) return Term::fixBox(f.binder, c);
            return std::nullopt;
          },
          [&](const auto&) -> std::optional<Term> { return std::nullopt; },
      },
      t.data().node);
}
}  // namespace

std::optional<Term> subtermAt(const Term& t, const Path& p) {
  Term cur = t;
  for (int i : p) {
    auto c = childAt(cur, i);
    if (!c) return std::nullopt;
    cur = *c;
  }
  return cur;
}

std::optional<Term> replaceAt(const Term& t, const Path& p, const Term& sub) {
  if (p.empty()) return sub;
  auto c = childAt(t, p.front());
  if (!c) return std::nullopt;
  auto inner = replaceAt(*c, Path(p.begin() + 1, p.end()), sub);
  if (!inner) return std::nullopt;
  return withChild(t, p.front(), *inner);
}

// ---------------------------------------------------------------------------
// TypingContext
// ---------------------------------------------------------------------------

namespace {
const Type* lookupIn(const std::vector<Binding>& zone, std::string_view name) {
  for (auto it = zone.rbegin(); it != zone.rend(); ++it)
    if (it->name == name) return &it->type;
  return nullptr;
}
void dropName(std::vector<Binding>& zone, const std::string& name) {
  zone.erase(std::remove_if(zone.begin(), zone.end(),
                            [&](const Binding& b) { return b.name == name; }),
             zone.end());
}
}  // namespace

const Type* TypingContext::lookupModal(std::string_view name) const {
  return lookupIn(modal, name);
}
const Type* TypingContext::lookupOrdinary(std::string_view name) const {
  return lookupIn(ordinary, name);
}

TypingContext TypingContext::withModal(const std::string& name, const Type& type) const {
  TypingContext c = *this;
  dropName(c.modal, name);
  dropName(c.ordinary, name);
  c.modal.push_back(Binding{name, type});
  return c;
}

TypingContext TypingContext::withOrdinary(const std::string& name, const Type& type) const {
  TypingContext c = *this;
  dropName(c.modal, name);
  dropName(c.ordinary, name);
  c.ordinary.push_back(Binding{name, type});
  return c;
}

TypingContext TypingContext::withoutOrdinary() const {
  TypingContext c;
  c.modal = modal;
  return c;
}

std::set<std::string> TypingContext::modalNames() const {
  std::set<std::string> s;
  for (const auto& b : modal) s.insert(b.name);
  return s;
}
std::set<std::string> TypingContext::ordinaryNames() const {
  std::set<std::string> s;
  for (const auto& b : ordinary) s.insert(b.name);
  return s;
}
std::set<std::string> TypingContext::allNames() const {
  auto s = modalNames();
  auto o = ordinaryNames();
  s.insert(o.begin(), o.end());
  return s;
}

bool TypingContext::wellFormed() const {
  auto m = modalNames();
  auto o = ordinaryNames();
  if (m.size() != modal.size() || o.size() != ordinary.size()) return false;
  for (const auto& n : o)
    if (m.count(n)) return false;
  return true;
}

}  // namespace ipcf
