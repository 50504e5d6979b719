#include "carrollian/parse.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <optional>

namespace carrollian {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  double number = 0.0;
  std::string ident;
  size_t pos = 0;
};

struct Lexer {
  const std::string& s;
  size_t i = 0;
  explicit Lexer(const std::string& text) : s(text) {}

  Token next() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    size_t pos = i;
    if (i >= s.size()) return {Tok::End, 0.0, "", pos};
    char ch = s[i];
    switch (ch) {
      case '+': ++i; return {Tok::Plus, 0.0, "", pos};
      case '-': ++i; return {Tok::Minus, 0.0, "", pos};
      case '*': ++i; return {Tok::Star, 0.0, "", pos};
      case '/': ++i; return {Tok::Slash, 0.0, "", pos};
      case '^': ++i; return {Tok::Caret, 0.0, "", pos};
      case '(': ++i; return {Tok::LParen, 0.0, "", pos};
      case ')': ++i; return {Tok::RParen, 0.0, "", pos};
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      const char* start = s.c_str() + i;
      char* end = nullptr;
      double v = std::strtod(start, &end);
      if (end == start) throw ParseError("malformed number", pos);
      i += static_cast<size_t>(end - start);
      return {Tok::Number, v, "", pos};
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])))) ++j;
      std::string id = s.substr(i, j - i);
      i = j;
      return {Tok::Ident, 0.0, id, pos};
    }
    throw ParseError(std::string("unexpected character '") + ch + "'", pos);
  }
};

// A parsed value: scalar expression or differential form.
struct Val {
  bool is_form = false;
  Expr e;
  Form f;
  size_t pos = 0;
};

struct Parser {
  Lexer lex;
  Token cur;
  int n;

  Parser(const std::string& text, int dim) : lex(text), n(dim) { cur = lex.next(); }

  void advance() { cur = lex.next(); }

  void expect(Tok k, const char* what) {
    if (cur.kind != k) throw ParseError(std::string("expected ") + what, cur.pos);
    advance();
  }

  [[noreturn]] void fail(const std::string& msg, size_t pos) const { throw ParseError(msg, pos); }

  int coord_index(const std::string& id, size_t pos) const {  // 0-based axis for x<k>
    int axis = -1;
    if (id.size() > 1 && id[0] == 'x' && std::isdigit(static_cast<unsigned char>(id[1]))) {
      axis = std::atoi(id.c_str() + 1) - 1;
    } else if (id == "x" && n >= 1 && n <= 3) {
      axis = 0;
    } else if (id == "y" && n >= 2 && n <= 3) {
      axis = 1;
    } else if (id == "z" && n == 3) {
      axis = 2;
    }
    if (axis < 0) fail("unknown identifier '" + id + "'", pos);
    if (axis >= n) fail("coordinate index exceeds chart dimension " + std::to_string(n), pos);
    return axis;
  }

  std::optional<int> coframe_index(const std::string& id) const {  // 1-based for dx<k>
    if (id == "dx" && n >= 1 && n <= 3) return 1;
    if (id == "dy" && n >= 2 && n <= 3) return 2;
    if (id == "dz" && n == 3) return 3;
    if (id.size() > 2 && id[0] == 'd' && id[1] == 'x' && std::isdigit(static_cast<unsigned char>(id[2])))
      return std::atoi(id.c_str() + 2);
    return std::nullopt;
  }

  Val atom() {
    size_t pos = cur.pos;
    switch (cur.kind) {
      case Tok::Number: {
        Val v;
        v.e = Expr::constant(cur.number);
        v.pos = pos;
        advance();
        return v;
      }
      case Tok::LParen: {
        advance();
        Val v = expression();
        expect(Tok::RParen, "')'");
        v.pos = pos;
        return v;
      }
      case Tok::Ident: {
        std::string id = cur.ident;
        advance();
        if (id == "sin" || id == "cos" || id == "exp" || id == "ln") {
          expect(Tok::LParen, "'(' after function name");
          Val arg = expression();
          expect(Tok::RParen, "')'");
          if (arg.is_form) fail("function argument must be a scalar", pos);
          Val v;
          v.pos = pos;
          if (id == "sin") v.e = Expr::sin(arg.e);
          else if (id == "cos") v.e = Expr::cos(arg.e);
          else if (id == "exp") v.e = Expr::exp(arg.e);
          else v.e = Expr::ln_abs(arg.e);
          return v;
        }
        if (id == "t") {
          Val v;
          v.e = Expr::fibre();
          v.pos = pos;
          return v;
        }
        if (id == "th") {
          Val v;
          v.is_form = true;
          v.f = theta_form(n);
          v.pos = pos;
          return v;
        }
        if (auto k = coframe_index(id)) {
          if (*k < 1 || *k > n) fail("coframe index exceeds chart dimension " + std::to_string(n), pos);
          Val v;
          v.is_form = true;
          v.f = Form::monomial(n, Monomial::dx(*k), Expr::constant(1.0));
          v.pos = pos;
          return v;
        }
        Val v;
        v.e = Expr::coord(coord_index(id, pos));
        v.pos = pos;
        return v;
      }
      default:
        fail("expected a number, identifier or '('", pos);
    }
  }

  Val power() {
    Val base = atom();
    while (cur.kind == Tok::Caret) {
      size_t pos = cur.pos;
      advance();
      if (base.is_form) {
        Val rhs = unary();  // wedge factor, e.g. dx1^dx2^th
        if (!rhs.is_form) fail("wedge requires a form on both sides of '^'", pos);
        base.f = wedge(base.f, rhs.f);
      } else {
        Val rhs = unary();
        if (rhs.is_form) fail("cannot raise a scalar to a form", pos);
        if (!rhs.e.is_constant()) fail("exponent must be an integer literal", pos);
        double v = rhs.e.constant_value();
        double r = std::round(v);
        if (std::fabs(v - r) > 1e-12 || std::fabs(r) > 1e6) fail("exponent must be an integer literal", pos);
        base.e = Expr::pow(base.e, static_cast<int>(r));
      }
    }
    return base;
  }

  Val unary() {
    if (cur.kind == Tok::Minus) {
      size_t pos = cur.pos;
      advance();
      Val v = unary();
      if (v.is_form)
        v.f = -v.f;
      else
        v.e = -v.e;
      v.pos = pos;
      return v;
    }
    if (cur.kind == Tok::Plus) {
      advance();
      return unary();
    }
    return power();
  }

  Val term() {
    Val acc = unary();
    while (cur.kind == Tok::Star || cur.kind == Tok::Slash) {
      bool div = cur.kind == Tok::Slash;
      size_t pos = cur.pos;
      advance();
      Val rhs = unary();
      if (div) {
        if (rhs.is_form) fail("cannot divide by a form", pos);
        if (acc.is_form)
          acc.f = Expr::pow(rhs.e, -1) * acc.f;
        else
          acc.e = acc.e / rhs.e;
      } else if (acc.is_form && rhs.is_form) {
        acc.f = wedge(acc.f, rhs.f);
      } else if (acc.is_form) {
        acc.f = rhs.e * acc.f;
      } else if (rhs.is_form) {
        Expr s = acc.e;
        acc = rhs;
        acc.f = s * acc.f;
      } else {
        acc.e = acc.e * rhs.e;
      }
    }
    return acc;
  }

  Val expression() {
    Val acc = term();
    while (cur.kind == Tok::Plus || cur.kind == Tok::Minus) {
      bool minus = cur.kind == Tok::Minus;
      size_t pos = cur.pos;
      advance();
      Val rhs = term();
      if (minus) {
        if (rhs.is_form)
          rhs.f = -rhs.f;
        else
          rhs.e = -rhs.e;
      }
      if (acc.is_form != rhs.is_form) {
        // promote scalars to 0-forms only when the other side is degree 0
        // (a structurally zero form side is degree-compatible with anything)
        Val& formside = acc.is_form ? acc : rhs;
        Val& scalside = acc.is_form ? rhs : acc;
        if (formside.f.structurally_zero()) formside.f.degree = 0;
        if (formside.f.degree != 0) fail("cannot add a scalar and a form of positive degree", pos);
        scalside.is_form = true;
        scalside.f = Form::scalar(n, scalside.e);
      }
      if (acc.is_form) {
        if (acc.f.degree != rhs.f.degree) {
          // adding a structural zero of any degree is tolerated
          if (acc.f.structurally_zero())
            acc.f.degree = rhs.f.degree;
          else if (rhs.f.structurally_zero())
            rhs.f.degree = acc.f.degree;
          else
            fail("cannot add forms of different degree", pos);
        }
        acc.f = acc.f + rhs.f;
      } else {
        acc.e = acc.e + rhs.e;
      }
    }
    return acc;
  }

  Val parse_all() {
    Val v = expression();
    if (cur.kind != Tok::End) fail("unexpected trailing input", cur.pos);
    return v;
  }
};

}  // namespace

Expr parse_scalar(const std::string& text, int n) {
  Parser p(text, n);
  Val v = p.parse_all();
  if (v.is_form) {
    if (v.f.degree == 0) return v.f.coeff(Monomial::scalar());
    throw ParseError("expected a scalar expression, got a form", 0);
  }
  return v.e;
}

Form parse_form(const std::string& text, int n) {
  Parser p(text, n);
  Val v = p.parse_all();
  if (!v.is_form) return Form::scalar(n, v.e);
  return v.f;
}

}  // namespace carrollian
