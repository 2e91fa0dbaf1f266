#include "jetcalc/expr.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace jetcalc {

namespace {

struct Token {
  enum class Kind { num, ident, op, end };
  Kind kind = Kind::end;
  Integer value = 0;
  std::string text;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) bump();
    tok_ = Token{};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= src_.size()) {
      tok_.kind = Token::Kind::end;
      return;
    }
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        digits += src_[pos_];
        bump();
      }
      tok_.kind = Token::Kind::num;
      tok_.value = Integer(digits);
      tok_.text = digits;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string name;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        name += src_[pos_];
        bump();
      }
      tok_.kind = Token::Kind::ident;
      tok_.text = name;
      return;
    }
    if (std::string("+-*/^()").find(c) != std::string::npos) {
      tok_.kind = Token::Kind::op;
      tok_.text = std::string(1, c);
      bump();
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(const std::string& src) : lex_(src) {}

  Expr parse() {
    Expr e = sum();
    if (lex_.peek().kind != Token::Kind::end)
      throw ParseError("trailing input '" + lex_.peek().text + "'", lex_.peek().line,
                       lex_.peek().col);
    return e;
  }

 private:
  Expr sum() {
    Expr e = product();
    while (lex_.peek().kind == Token::Kind::op &&
           (lex_.peek().text == "+" || lex_.peek().text == "-")) {
      Token op = lex_.take();
      Expr rhs = product();
      Expr n;
      n.kind = op.text == "+" ? Expr::Kind::add : Expr::Kind::sub;
      n.kids = {std::move(e), std::move(rhs)};
      e = std::move(n);
    }
    return e;
  }

  Expr product() {
    Expr e = unary();
    while (lex_.peek().kind == Token::Kind::op &&
           (lex_.peek().text == "*" || lex_.peek().text == "/")) {
      Token op = lex_.take();
      Expr rhs = unary();
      Expr n;
      n.kind = op.text == "*" ? Expr::Kind::mul : Expr::Kind::div;
      n.kids = {std::move(e), std::move(rhs)};
      e = std::move(n);
    }
    return e;
  }

  Expr unary() {
    if (lex_.peek().kind == Token::Kind::op && lex_.peek().text == "-") {
      lex_.take();
      Expr n;
      n.kind = Expr::Kind::neg;
      n.kids = {unary()};
      return n;
    }
    return power();
  }

  Expr power() {
    Expr e = atom();
    while (lex_.peek().kind == Token::Kind::op && lex_.peek().text == "^") {
      Token caret = lex_.take();
      if (lex_.peek().kind != Token::Kind::num)
        throw ParseError("exponent must be a nonnegative integer literal", lex_.peek().line,
                         lex_.peek().col);
      Token expt = lex_.take();
      if (expt.value < 0 || expt.value > 4096)
        throw ParseError("exponent out of range", caret.line, caret.col);
      Expr n;
      n.kind = Expr::Kind::pow;
      n.exponent = static_cast<unsigned>(expt.value.get_ui());
      n.kids = {std::move(e)};
      e = std::move(n);
    }
    return e;
  }

  Expr atom() {
    Token t = lex_.peek();
    if (t.kind == Token::Kind::num) {
      lex_.take();
      Expr n;
      n.kind = Expr::Kind::num;
      n.value = t.value;
      return n;
    }
    if (t.kind == Token::Kind::ident) {
      lex_.take();
      Expr n;
      n.kind = Expr::Kind::var;
      n.name = t.text;
      return n;
    }
    if (t.kind == Token::Kind::op && t.text == "(") {
      lex_.take();
      Expr e = sum();
      if (!(lex_.peek().kind == Token::Kind::op && lex_.peek().text == ")"))
        throw ParseError("expected ')'", lex_.peek().line, lex_.peek().col);
      lex_.take();
      return e;
    }
    throw ParseError("expected a number, variable or '('", t.line, t.col);
  }

  Lexer lex_;
};

int precedence(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::add:
    case Expr::Kind::sub: return 1;
    case Expr::Kind::mul:
    case Expr::Kind::div: return 2;
    case Expr::Kind::neg: return 3;
    case Expr::Kind::pow: return 4;
    default: return 5;
  }
}

void print_rec(const Expr& e, int parent_prec, bool right_operand, std::string& out) {
  int prec = precedence(e.kind);
  bool parens = prec < parent_prec || (prec == parent_prec && right_operand);
  if (parens) out += '(';
  switch (e.kind) {
    case Expr::Kind::num: out += e.value.get_str(); break;
    case Expr::Kind::var: out += e.name; break;
    case Expr::Kind::neg:
      out += '-';
      print_rec(e.kids[0], prec, true, out);
      break;
    case Expr::Kind::add:
    case Expr::Kind::sub:
    case Expr::Kind::mul:
    case Expr::Kind::div: {
      const char* op = e.kind == Expr::Kind::add ? " + "
                       : e.kind == Expr::Kind::sub ? " - "
                       : e.kind == Expr::Kind::mul ? "*" : "/";
      print_rec(e.kids[0], prec, false, out);
      out += op;
      print_rec(e.kids[1], prec, true, out);
      break;
    }
    case Expr::Kind::pow:
      print_rec(e.kids[0], prec + 1, false, out);
      out += '^';
      out += std::to_string(e.exponent);
      break;
  }
  if (parens) out += ')';
}

void collect_rec(const Expr& e, std::set<std::string>& names) {
  if (e.kind == Expr::Kind::var) names.insert(e.name);
  for (const Expr& kid : e.kids) collect_rec(kid, names);
}

RatFunc rf_num(const Rat& c) { return RatFunc{Poly(c), Poly(1)}; }

RatFunc to_ratfunc(const Expr& e, const std::map<std::string, unsigned>& idx) {
  switch (e.kind) {
    case Expr::Kind::num: return RatFunc{Poly(Rat(e.value)), Poly(1)};
    case Expr::Kind::var: return RatFunc{Poly::var(idx.at(e.name)), Poly(1)};
    case Expr::Kind::neg: {
      RatFunc a = to_ratfunc(e.kids[0], idx);
      return RatFunc{-a.num, a.den};
    }
    case Expr::Kind::add:
    case Expr::Kind::sub: {
      RatFunc a = to_ratfunc(e.kids[0], idx);
      RatFunc b = to_ratfunc(e.kids[1], idx);
      Poly n = e.kind == Expr::Kind::add ? a.num * b.den + b.num * a.den
                                         : a.num * b.den - b.num * a.den;
      return RatFunc{std::move(n), a.den * b.den};
    }
    case Expr::Kind::mul: {
      RatFunc a = to_ratfunc(e.kids[0], idx);
      RatFunc b = to_ratfunc(e.kids[1], idx);
      return RatFunc{a.num * b.num, a.den * b.den};
    }
    case Expr::Kind::div: {
      RatFunc a = to_ratfunc(e.kids[0], idx);
      RatFunc b = to_ratfunc(e.kids[1], idx);
      if (b.num.is_zero()) throw std::domain_error("division by the zero expression");
      return RatFunc{a.num * b.den, a.den * b.num};
    }
    case Expr::Kind::pow: {
      RatFunc a = to_ratfunc(e.kids[0], idx);
      RatFunc r = rf_num(Rat(1));
      for (unsigned i = 0; i < e.exponent; ++i) r = RatFunc{r.num * a.num, r.den * a.den};
      return r;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

Expr parse_expr(const std::string& src) { return Parser(src).parse(); }

std::string print_expr(const Expr& e) {
  std::string out;
  print_rec(e, 0, false, out);
  return out;
}

std::vector<std::string> collect_vars(const Expr& e) {
  std::set<std::string> names;
  collect_rec(e, names);
  std::vector<std::string> out(names.begin(), names.end());
  bool all_indexed = !out.empty();
  for (const std::string& n : out) {
    if (n.size() < 2 || n[0] != 'x' ||
        !std::all_of(n.begin() + 1, n.end(), [](char c) { return std::isdigit((unsigned char)c); }))
      all_indexed = false;
  }
  if (all_indexed)
    std::sort(out.begin(), out.end(), [](const std::string& a, const std::string& b) {
      return std::stol(a.substr(1)) < std::stol(b.substr(1));
    });
  return out;
}

RatFunc expr_to_ratfunc(const Expr& e, const std::vector<std::string>& vars) {
  std::map<std::string, unsigned> idx;
  for (unsigned i = 0; i < vars.size(); ++i) idx[vars[i]] = i;
  RatFunc r = to_ratfunc(e, idx);
  if (r.den.is_zero()) throw std::domain_error("division by the zero expression");
  return r;
}

PolyFunc expr_to_polyfunc(const Expr& e, const std::vector<std::string>& vars) {
  RatFunc r = expr_to_ratfunc(e, vars);
  if (!r.den.is_constant())
    throw std::domain_error("expression is rational, not polynomial");
  Rat d = r.den.constant_value();
  if (d.is_zero()) throw std::domain_error("division by the zero expression");
  std::vector<Poly> comps{r.num * d.inv()};
  return PolyFunc(static_cast<unsigned>(vars.size()), std::move(comps));
}

}  // namespace jetcalc
