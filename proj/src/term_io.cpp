#include "ordcert/term_io.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <vector>

namespace ordcert {

namespace {

enum class Tok {
  LParen, RParen, LBracket, RBracket, LBrace, RBrace,
  Backslash, Dot, Colon, Arrow, Caret, Zero, Ident, End
};

struct Token {
  Tok kind;
  std::string text;
  size_t pos;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0;
  auto push = [&](Tok k, std::string t, size_t p) {
    out.push_back({k, std::move(t), p});
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    switch (c) {
      case '(': push(Tok::LParen, "(", i); ++i; continue;
      case ')': push(Tok::RParen, ")", i); ++i; continue;
      case '[': push(Tok::LBracket, "[", i); ++i; continue;
      case ']': push(Tok::RBracket, "]", i); ++i; continue;
      case '{': push(Tok::LBrace, "{", i); ++i; continue;
      case '}': push(Tok::RBrace, "}", i); ++i; continue;
      case '\\': push(Tok::Backslash, "\\", i); ++i; continue;
      case '.': push(Tok::Dot, ".", i); ++i; continue;
      case ':': push(Tok::Colon, ":", i); ++i; continue;
      case '^': push(Tok::Caret, "^", i); ++i; continue;
      case '0': push(Tok::Zero, "0", i); ++i; continue;
      case '-':
        if (i + 1 < s.size() && s[i + 1] == '>') {
          push(Tok::Arrow, "->", i);
          i += 2;
          continue;
        }
        throw ParseError("stray '-'", i);
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = i;
      while (i < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[i])) ||
              s[i] == '_' || s[i] == '\''))
        ++i;
      push(Tok::Ident, s.substr(start, i - start), start);
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", i);
  }
  push(Tok::End, "", s.size());
  return out;
}

class Parser {
public:
  Parser(const std::string& text, FreshNameSource* observe)
      : toks_(lex(text)), observe_(observe) {}

  Term parse_term_all() {
    Term t = parse_app();
    expect(Tok::End, "end of input");
    check_consistent_naming(t);
    return t;
  }

  FiniteType parse_type_all() {
    FiniteType t = parse_type_chain();
    expect(Tok::End, "end of input");
    return t;
  }

private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_++]; }
  void expect(Tok k, const std::string& what) {
    if (peek().kind != k)
      throw ParseError("expected " + what + ", got \"" + peek().text + "\"",
                       peek().pos);
    ++pos_;
  }

  FiniteType parse_type_atom() {
    if (peek().kind == Tok::Ident && peek().text == "o") {
      ++pos_;
      return FiniteType::ground();
    }
    if (peek().kind == Tok::LParen) {
      ++pos_;
      FiniteType t = parse_type_chain();
      expect(Tok::RParen, "')'");
      return t;
    }
    throw ParseError("expected a type", peek().pos);
  }

  FiniteType parse_type_chain() {
    std::vector<FiniteType> parts;
    parts.push_back(parse_type_atom());
    while (peek().kind == Tok::Arrow) {
      ++pos_;
      parts.push_back(parse_type_atom());
    }
    FiniteType t = parts.back();
    for (size_t i = parts.size() - 1; i-- > 0;)
      t = FiniteType::arrow(parts[i], t);
    return t;
  }

  bool starts_atom() const {
    switch (peek().kind) {
      case Tok::LParen:
      case Tok::Backslash:
      case Tok::Zero:
        return true;
      case Tok::Ident:
        return peek().text != "o";
      default:
        return false;
    }
  }

  Term parse_app() {
    Term t = parse_atom();
    while (starts_atom()) {
      Term u = parse_atom();
      try {
        t = Term::app(t, u);
      } catch (const TypeError& e) {
        throw ParseError(e.what(), peek().pos);
      }
    }
    return t;
  }

  FiniteType parse_bracketed_type() {
    expect(Tok::LBracket, "'['");
    FiniteType t = parse_type_chain();
    expect(Tok::RBracket, "']'");
    return t;
  }

  Term parse_atom() {
    const Token& tk = peek();
    switch (tk.kind) {
      case Tok::Zero:
        ++pos_;
        return Term::zero();
      case Tok::LParen: {
        ++pos_;
        Term t = parse_app();
        expect(Tok::RParen, "')'");
        return t;
      }
      case Tok::Backslash: {
        ++pos_;
        Token name = next();
        if (name.kind != Tok::Ident)
          throw ParseError("expected a binder name", name.pos);
        if (name.text == "S" || name.text == "D" || name.text == "R" ||
            name.text == "o")
          throw ParseError("\"" + name.text + "\" is reserved", name.pos);
        expect(Tok::Colon, "':'");
        FiniteType ty = parse_type_chain();
        expect(Tok::Dot, "'.'");
        TypedVar binder{name.text, ty};
        note_name(binder);
        scope_.push_back(binder);
        Term body = parse_app();
        scope_.pop_back();
        return Term::lam(binder, body);
      }
      case Tok::Ident: {
        if (tk.text == "S") {
          ++pos_;
          return Term::succ();
        }
        if (tk.text == "D") {
          ++pos_;
          return Term::case_d(parse_bracketed_type());
        }
        if (tk.text == "R") {
          ++pos_;
          if (peek().kind == Tok::Caret) {
            ++pos_;
            expect(Tok::LBrace, "'{'");
            Term t = parse_app();
            expect(Tok::RBrace, "'}'");
            FiniteType tau = parse_bracketed_type();
            try {
              return Term::rec_applied(tau, t);
            } catch (const TypeError& e) {
              throw ParseError(e.what(), tk.pos);
            }
          }
          return Term::rec(parse_bracketed_type());
        }
        if (tk.text == "o")
          throw ParseError("'o' is reserved for the ground type", tk.pos);
        ++pos_;
        // variable: annotated, or bare and resolved from scope/known names
        if (peek().kind == Tok::Colon) {
          ++pos_;
          FiniteType ty = parse_type_chain();
          TypedVar v{tk.text, ty};
          note_name(v);
          return Term::var(v);
        }
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
          if (it->name == tk.text) return Term::var(*it);
        auto known = names_.find(tk.text);
        if (known != names_.end())
          return Term::var(TypedVar{tk.text, known->second});
        throw ParseError("variable " + tk.text +
                             " needs a type annotation on first use",
                         tk.pos);
      }
      default:
        throw ParseError("expected a term, got \"" + tk.text + "\"", tk.pos);
    }
  }

  void note_name(const TypedVar& v) {
    if (observe_) observe_->observe(v.name);
    names_.emplace(v.name, v.type);
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  std::vector<TypedVar> scope_;
  std::map<std::string, FiniteType> names_;
  FreshNameSource* observe_;
};

void print_walk(const Term& t, std::vector<std::string>& scope,
                std::string& out, bool parens_app, bool parens_lam) {
  switch (t.kind()) {
    case TermKind::Zero:
      out += "0";
      return;
    case TermKind::Succ:
      out += "S";
      return;
    case TermKind::CaseD:
      out += "D[" + t.tau_of().to_string() + "]";
      return;
    case TermKind::Rec:
      out += "R[" + t.tau_of().to_string() + "]";
      return;
    case TermKind::RecApplied: {
      out += "R^{";
      print_walk(t.rec_arg(), scope, out, false, false);
      out += "}[" + t.tau_of().to_string() + "]";
      return;
    }
    case TermKind::Var: {
      const std::string& n = t.var_of().name;
      for (auto it = scope.rbegin(); it != scope.rend(); ++it)
        if (*it == n) {
          out += n;
          return;
        }
      out += n + ":" + t.var_of().type.to_string();
      return;
    }
    case TermKind::App: {
      if (parens_app) out += "(";
      print_walk(t.fun(), scope, out, false, true);
      out += " ";
      print_walk(t.arg(), scope, out, true, true);
      if (parens_app) out += ")";
      return;
    }
    case TermKind::Lam: {
      if (parens_lam) out += "(";
      out += "\\" + t.var_of().name + ":" + t.var_of().type.to_string() +
             ". ";
      scope.push_back(t.var_of().name);
      print_walk(t.body(), scope, out, false, false);
      scope.pop_back();
      if (parens_lam) out += ")";
      return;
    }
  }
}

}  // namespace

Term parse_term(const std::string& text, FreshNameSource* observe) {
  return Parser(text, observe).parse_term_all();
}

FiniteType parse_type(const std::string& text) {
  return Parser(text, nullptr).parse_type_all();
}

std::string print_term(const Term& t) {
  std::string out;
  std::vector<std::string> scope;
  print_walk(t, scope, out, false, false);
  return out;
}

std::string print_type(const FiniteType& t) { return t.to_string(); }

}  // namespace ordcert
