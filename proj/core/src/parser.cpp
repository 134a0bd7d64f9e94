#include "ipcf/parser.hpp"

#include <cctype>
#include <map>

namespace ipcf {

namespace {

std::string joinExpected(const std::vector<std::string>& expected) {
  std::string s;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i) s += expected.size() == 2 ? " or " : (i + 1 == expected.size() ? ", or " : ", ");
    s += expected[i];
  }
  return s;
}

}  // namespace

ParseError::ParseError(int line, int col, std::vector<std::string> expected_,
                       std::string found_, const std::string& message)
    : std::runtime_error(message),
      line(line),
      col(col),
      expected(std::move(expected_)),
      found(std::move(found_)) {}

namespace {

enum class Tok {
  Ident,
  PrimName,  // ~name
  Number,
  KwDef,
  KwMain,
  KwLet,
  KwBox,
  KwIn,
  KwFix,
  KwTrue,
  KwFalse,
  KwSucc,
  KwPred,
  KwZeroTest,
  KwIfNat,
  KwIfBool,
  KwIfF,
  KwOut,
  KwTyNat,
  KwTyBool,
  KwTyF,
  Lambda,
  Dot,
  Colon,
  Semi,
  Equals,
  Arrow,
  LParen,
  RParen,
  BoxBrackets,  // []
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::uint64_t number = 0;
  int line = 1;
  int col = 1;
};

const std::map<std::string, Tok, std::less<>> kKeywords = {
    {"def", Tok::KwDef},     {"main", Tok::KwMain},     {"let", Tok::KwLet},
    {"box", Tok::KwBox},     {"in", Tok::KwIn},         {"fix", Tok::KwFix},
    {"true", Tok::KwTrue},   {"false", Tok::KwFalse},   {"succ", Tok::KwSucc},
    {"pred", Tok::KwPred},   {"zero?", Tok::KwZeroTest},{"if_Nat", Tok::KwIfNat},
    {"if_Bool", Tok::KwIfBool}, {"if_F", Tok::KwIfF},   {"out", Tok::KwOut},
    {"Nat", Tok::KwTyNat},   {"Bool", Tok::KwTyBool},   {"F", Tok::KwTyF},
};

bool identStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool identCont(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    skipTrivia();
    tok_ = Token{};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= text_.size()) {
      tok_.kind = Tok::End;
      tok_.text = "end of input";
      return;
    }
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      lexNumber();
      return;
    }
    if (identStart(c)) {
      lexIdent(/*primName=*/false);
      return;
    }
    switch (c) {
      case '~':
        bump();
        if (pos_ >= text_.size() || !identStart(text_[pos_]))
          fail({"operation name after '~'"});
        lexIdent(/*primName=*/true);
        return;
      case '\\':
        bump();
        tok_.kind = Tok::Lambda;
        tok_.text = "\\";
        return;
      case '.':
        bump();
        tok_.kind = Tok::Dot;
        tok_.text = ".";
        return;
      case ':':
        bump();
        tok_.kind = Tok::Colon;
        tok_.text = ":";
        return;
      case ';':
        bump();
        tok_.kind = Tok::Semi;
        tok_.text = ";";
        return;
      case '=':
        bump();
        tok_.kind = Tok::Equals;
        tok_.text = "=";
        return;
      case '(':
        bump();
        tok_.kind = Tok::LParen;
        tok_.text = "(";
        return;
      case ')':
        bump();
        tok_.kind = Tok::RParen;
        tok_.text = ")";
        return;
      case '[':
        bump();
        if (pos_ >= text_.size() || text_[pos_] != ']') fail({"']' after '['"});
        bump();
        tok_.kind = Tok::BoxBrackets;
        tok_.text = "[]";
        return;
      case '-':
        bump();
        if (pos_ < text_.size() && text_[pos_] == '>') {
          bump();
          tok_.kind = Tok::Arrow;
          tok_.text = "->";
          return;
        }
        fail({"'->'"});
        return;
      default:
        fail({"a token"});
    }
  }

  void lexNumber() {
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      std::uint64_t d = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (UINT64_MAX - d) / 10) fail({"a 64-bit natural literal"});
      v = v * 10 + d;
      tok_.text += text_[pos_];
      bump();
    }
    tok_.kind = Tok::Number;
    tok_.number = v;
  }

  // Op names (after '~') additionally allow interior '-' as in ~is-app;
  // a '-' only joins the name when an identifier character follows it.
  void lexIdent(bool primName) {
    std::string s;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (identCont(c)) {
        s += c;
        bump();
        continue;
      }
      if (primName && c == '-' && pos_ + 1 < text_.size() && identCont(text_[pos_ + 1]) &&
          !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
        s += c;
        bump();
        continue;
      }
      if (c == '?') {
        s += c;
        bump();
      }
      break;
    }
    tok_.text = s;
    if (primName) {
      tok_.kind = Tok::PrimName;
      return;
    }
    auto it = kKeywords.find(s);
    tok_.kind = it == kKeywords.end() ? Tok::Ident : it->second;
  }

  void skipTrivia() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        bump();
      } else if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
        while (pos_ < text_.size() && text_[pos_] != '\n') bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    std::string found = pos_ < text_.size() ? std::string(1, text_[pos_]) : "end of input";
    throw ParseError(line_, col_, expected, found,
                     "parse error at " + std::to_string(line_) + ":" +
                         std::to_string(col_) + ": expected " + joinExpected(expected) +
                         ", found '" + found + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {}

  Term termOnly() {
    Term t = term();
    expect(Tok::End, "end of input");
    return t;
  }

  Type typeOnly() {
    Type t = type();
    expect(Tok::End, "end of input");
    return t;
  }

  SourceFile file() {
    SourceFile f;
    while (lex_.peek().kind == Tok::KwDef) {
      Token kw = lex_.take();
      std::string name = expect(Tok::Ident, "definition name").text;
      for (const auto& prev : f.decls)
        if (prev.name == name)
          throw ParseError(kw.line, kw.col, {"a fresh definition name"}, name,
                           "parse error at " + std::to_string(kw.line) + ":" +
                               std::to_string(kw.col) + ": duplicate definition '" +
                               name + "'");
      expect(Tok::Colon, "':'");
      Type declared = type();
      expect(Tok::Equals, "'='");
      Term body = term();
      expect(Tok::Semi, "';'");
      f.decls.push_back(Decl{std::move(name), std::move(declared), std::move(body),
                             kw.line, kw.col});
    }
    if (lex_.peek().kind == Tok::KwMain) {
      Token kw = lex_.take();
      f.mainLine = kw.line;
      f.mainCol = kw.col;
      if (lex_.peek().kind == Tok::Colon) {
        lex_.take();
        f.mainType = type();
      }
      expect(Tok::Equals, "'='");
      f.main = term();
      expect(Tok::Semi, "';'");
    }
    expect(Tok::End, "'def', 'main', or end of input");
    return f;
  }

 private:
  Token expect(Tok kind, const std::string& what) {
    if (lex_.peek().kind != kind) fail({what});
    return lex_.take();
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    const Token& t = lex_.peek();
    throw ParseError(t.line, t.col, expected, t.text,
                     "parse error at " + std::to_string(t.line) + ":" +
                         std::to_string(t.col) + ": expected " + joinExpected(expected) +
                         ", found '" + t.text + "'");
  }

  // type := btype ['->' type]        (right associative)
  // btype := '[]' btype | atype
  Type type() {
    Type lhs = btype();
    if (lex_.peek().kind == Tok::Arrow) {
      lex_.take();
      return Type::arrow(lhs, type());
    }
    return lhs;
  }

  Type btype() {
    switch (lex_.peek().kind) {
      case Tok::BoxBrackets:
        lex_.take();
        return Type::boxed(btype());
      default:
        return atype();
    }
  }

  Type atype() {
    switch (lex_.peek().kind) {
      case Tok::KwTyNat:
        lex_.take();
        return Type::nat();
      case Tok::KwTyBool:
        lex_.take();
        return Type::boolean();
      case Tok::KwTyF:
        lex_.take();
        return Type::file();
      case Tok::LParen: {
        lex_.take();
        Type t = type();
        expect(Tok::RParen, "')'");
        return t;
      }
      default:
        fail({"'Nat'", "'Bool'", "'F'", "'[]'", "'('"});
    }
  }

  // term := '\' x ':' type '.' term
  //       | 'let' 'box' u '=' term 'in' term
  //       | 'fix' z '.' term
  //       | 'box' term
  //       | appterm
  Term term() {
    switch (lex_.peek().kind) {
      case Tok::Lambda: {
        lex_.take();
        std::string x = expect(Tok::Ident, "a variable name").text;
        expect(Tok::Colon, "':'");
        Type a = type();
        expect(Tok::Dot, "'.'");
        return Term::lam(std::move(x), a, term());
      }
      case Tok::KwLet: {
        lex_.take();
        expect(Tok::KwBox, "'box'");
        std::string u = expect(Tok::Ident, "a variable name").text;
        expect(Tok::Equals, "'='");
        Term subject = term();
        expect(Tok::KwIn, "'in'");
        Term body = term();
        return Term::letBox(std::move(u), subject, body);
      }
      case Tok::KwFix: {
        lex_.take();
        std::string z = expect(Tok::Ident, "a variable name").text;
        expect(Tok::Dot, "'.'");
        return Term::fixBox(std::move(z), term());
      }
      case Tok::KwBox: {
        lex_.take();
        return Term::box(term());
      }
      default:
        return appTerm();
    }
  }

  // appterm := atom { atom }    — left associative; 'in' only as first atom
  Term appTerm() {
    Term t = atom(/*first=*/true);
    while (startsAtom(/*first=*/false)) t = Term::app(t, atom(/*first=*/false));
    return t;
  }

  bool startsAtom(bool first) const {
    switch (lex_.peek().kind) {
      case Tok::Ident:
      case Tok::PrimName:
      case Tok::Number:
      case Tok::KwTrue:
      case Tok::KwFalse:
      case Tok::KwSucc:
      case Tok::KwPred:
      case Tok::KwZeroTest:
      case Tok::KwIfNat:
      case Tok::KwIfBool:
      case Tok::KwIfF:
      case Tok::KwOut:
      case Tok::LParen:
        return true;
      case Tok::KwIn:
        return first;  // continuation 'in' always closes a let-box
      default:
        return false;
    }
  }

  Term atom(bool first) {
    if (!startsAtom(first)) fail({"a term"});
    Token t = lex_.take();
    switch (t.kind) {
      case Tok::Ident:
        return Term::var(t.text);
      case Tok::PrimName:
        return Term::prim(t.text);
      case Tok::Number:
        return Term::nat(t.number);
      case Tok::KwTrue:
        return Term::constant(ConstKind::True);
      case Tok::KwFalse:
        return Term::constant(ConstKind::False);
      case Tok::KwSucc:
        return Term::constant(ConstKind::Succ);
      case Tok::KwPred:
        return Term::constant(ConstKind::Pred);
      case Tok::KwZeroTest:
        return Term::constant(ConstKind::ZeroTest);
      case Tok::KwIfNat:
        return Term::cond(Ground::Nat);
      case Tok::KwIfBool:
        return Term::cond(Ground::Bool);
      case Tok::KwIfF:
        return Term::cond(Ground::File);
      case Tok::KwIn:
        return Term::constant(ConstKind::In);
      case Tok::KwOut:
        return Term::constant(ConstKind::Out);
      case Tok::LParen: {
        Term inner = term();
        expect(Tok::RParen, "')'");
        return inner;
      }
      default:
        fail({"a term"});
    }
  }

  Lexer lex_;
};

}  // namespace

Term parseTerm(std::string_view text) { return Parser(text).termOnly(); }
Type parseTypeText(std::string_view text) { return Parser(text).typeOnly(); }
SourceFile parseFile(std::string_view text) { return Parser(text).file(); }

// ---------------------------------------------------------------------------
// Elaboration
// ---------------------------------------------------------------------------

namespace {

// Substitute defs into t, newest first, so a name refers to the def in scope
// at its own site and never to a later one.
Term expandAgainst(const Term& t, const std::vector<ElabDef>& defs) {
  Term cur = t;
  for (auto it = defs.rbegin(); it != defs.rend(); ++it) {
    if (freeVars(cur).count(it->name)) cur = substitute(cur, it->expanded, it->name);
  }
  return cur;
}

}  // namespace

Term expandTerm(const Term& t, const std::vector<ElabDef>& defs) {
  return expandAgainst(t, defs);
}

Program elaborate(const SourceFile& file, const std::vector<ElabDef>& base) {
  Program p;
  p.defs = base;
  for (const Decl& d : file.decls) {
    ElabDef e{d.name, d.type, expandAgainst(d.term, p.defs), d.line, d.col,
              /*fromBase=*/false};
    bool replaced = false;
    for (auto& existing : p.defs) {
      if (existing.name == e.name) {
        existing = e;
        replaced = true;
        break;
      }
    }
    if (!replaced) p.defs.push_back(std::move(e));
  }
  if (file.main) {
    p.main = expandAgainst(*file.main, p.defs);
    p.mainType = file.mainType;
    p.mainLine = file.mainLine;
    p.mainCol = file.mainCol;
  }
  return p;
}

}  // namespace ipcf
