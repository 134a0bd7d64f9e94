#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ipcf {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

// ---------------------------------------------------------------------------
// Types: ground types Nat, Bool, F; arrows; and the box modality [].
// ---------------------------------------------------------------------------

enum class Ground { Nat, Bool, File };

std::string_view groundName(Ground g);  // "Nat" | "Bool" | "F"

struct TypeData;

// Immutable shared type tree; copies are O(1).
class Type {
 public:
  static Type ground(Ground g);
  static Type nat();
  static Type boolean();
  static Type file();
  static Type arrow(Type dom, Type cod);
  static Type boxed(Type inner);

  const TypeData& data() const { return *rep_; }

  bool isGround() const;
  bool isArrow() const;
  bool isBox() const;

  // Accessors; precondition: the corresponding is*() holds.
  Ground asGround() const;
  const Type& dom() const;
  const Type& cod() const;
  const Type& inner() const;

 private:
  explicit Type(std::shared_ptr<const TypeData> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const TypeData> rep_;
};

struct ArrowType {
  Type dom;
  Type cod;
};
struct BoxType {
  Type inner;
};

struct TypeData {
  std::variant<Ground, ArrowType, BoxType> node;
};

// Structural equality (types have no binders).
bool operator==(const Type& a, const Type& b);
inline bool operator!=(const Type& a, const Type& b) { return !(a == b); }

// ---------------------------------------------------------------------------
// Terms.
//
// Constants are curried: `succ 3` is App(Const succ, NatLit 3) and
// `if_Nat b t e` is a three-deep App spine headed by Const ⊃_Nat.
// ---------------------------------------------------------------------------

enum class ConstKind { True, False, Succ, Pred, ZeroTest, Cond, In, Out };

std::string_view constName(ConstKind k, Ground condSort = Ground::Nat);

struct TermData;

// Immutable shared term tree; copies are O(1), rebuilds share subtrees.
class Term {
 public:
  static Term var(std::string name);
  static Term lam(std::string binder, Type annot, Term body);
  static Term app(Term fn, Term arg);
  static Term app(Term fn, Term a, Term b);
  static Term app(Term fn, Term a, Term b, Term c);
  static Term box(Term body);
  static Term letBox(std::string binder, Term subject, Term body);
  static Term fixBox(std::string binder, Term body);
  static Term nat(std::uint64_t value);
  static Term constant(ConstKind kind);
  static Term cond(Ground sort);  // ⊃_G, i.e. if_Nat / if_Bool / if_F
  static Term prim(std::string opName);  // ~opName

  const TermData& data() const { return *rep_; }
  template <class T>
  const T* get() const;

 private:
  explicit Term(std::shared_ptr<const TermData> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const TermData> rep_;
};

struct VarTerm {
  std::string name;
};
struct LamTerm {
  std::string binder;
  Type annot;
  Term body;
};
struct AppTerm {
  Term fn;
  Term arg;
};
struct BoxTermNode {
  Term body;
};
struct LetBoxTerm {
  std::string binder;  // modal binder u
  Term subject;
  Term body;
};
struct FixBoxTerm {
  std::string binder;  // z, in scope in body with type []A
  Term body;
};
struct NatTerm {
  std::uint64_t value;
};
struct ConstTerm {
  ConstKind kind;
  Ground condSort;  // meaningful only when kind == Cond
};
struct PrimTerm {
  std::string name;
};

struct TermData {
  std::variant<VarTerm, LamTerm, AppTerm, BoxTermNode, LetBoxTerm, FixBoxTerm,
               NatTerm, ConstTerm, PrimTerm>
      node;
};

template <class T>
const T* Term::get() const {
  return std::get_if<T>(&rep_->node);
}

// ---------------------------------------------------------------------------
// Free variables and substitution.
//
// fv(t) = ufv(t) ∪ bfv(t). Box is a binder for "unboxed" occurrences:
// ufv(box M) = ∅ while bfv(box M) = fv(M); bfv(fix z. M) = fv(M) \ {z}.
// ---------------------------------------------------------------------------

std::set<std::string> freeVars(const Term& t);
std::set<std::string> unboxedFreeVars(const Term& t);
std::set<std::string> boxedFreeVars(const Term& t);
bool isClosed(const Term& t);

// Smallest base, base', base'', ... not in avoid.
std::string freshName(std::string_view base, const std::set<std::string>& avoid);

// Capture-avoiding target[replacement/var]; binders renamed only when needed.
Term substitute(const Term& target, const Term& replacement, const std::string& var);

// α-equivalence. This is the observable equality on terms; annotations count.
bool alphaEq(const Term& a, const Term& b);

// Canonical string key: alphaKey(a) == alphaKey(b) iff alphaEq(a, b).
std::string alphaKey(const Term& t);

// α-invariant 64-bit hash: alphaEq(a, b) implies alphaHash(a) == alphaHash(b).
// Collisions are possible; pair with alphaEq for exact comparisons.
std::uint64_t alphaHash(const Term& t);

// Node-for-node equality, binder names included. Used only where "verbatim
// preservation" is the point (e.g. no-reduction-under-box checks).
bool syntacticEq(const Term& a, const Term& b);

// ---------------------------------------------------------------------------
// Positions: child-index paths. Lam/Box/FixBox: 0 = body. App: 0 = fn,
// 1 = arg. LetBox: 0 = subject, 1 = body.
// ---------------------------------------------------------------------------

using Path = std::vector<int>;

std::optional<Term> subtermAt(const Term& t, const Path& p);
std::optional<Term> replaceAt(const Term& t, const Path& p, const Term& sub);

// ---------------------------------------------------------------------------
// Dual typing context Δ; Γ. Names within each zone are distinct and the two
// zones are disjoint; with*() maintains both by letting the new binding
// shadow (replace) any stale one.
// ---------------------------------------------------------------------------

struct Binding {
  std::string name;
  Type type;
};

struct TypingContext {
  std::vector<Binding> modal;     // Δ
  std::vector<Binding> ordinary;  // Γ

  const Type* lookupModal(std::string_view name) const;
  const Type* lookupOrdinary(std::string_view name) const;

  TypingContext withModal(const std::string& name, const Type& type) const;
  TypingContext withOrdinary(const std::string& name, const Type& type) const;
  TypingContext withoutOrdinary() const;  // (Δ; ·)

  std::set<std::string> modalNames() const;
  std::set<std::string> ordinaryNames() const;
  std::set<std::string> allNames() const;
  bool wellFormed() const;
};

}  // namespace ipcf
