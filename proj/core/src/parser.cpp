#include "fibdiff/parser.hpp"

#include <cctype>
#include <set>

#include "fibdiff/errors.hpp"

namespace fibdiff {

namespace {

enum class Tok { Int, Ident, Punct, End };

struct Token {
  Tok type;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Int, std::string(s.substr(i, j - i)), i});
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), i});
      i = j;
    } else if (std::string_view("+-*/^=()[],").find(c) != std::string_view::npos) {
      out.push_back({Tok::Punct, std::string(1, c), i});
      ++i;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

const std::set<std::string>& reserved() {
  static const std::set<std::string> r{"alpha", "beta", "tau", "sigma", "sqrtD", "binom",
                                       "sum",   "arctan", "p",  "q",     "pi"};
  return r;
}

bool is_index_name(const std::string& s) {
  return !s.empty() && std::islower(static_cast<unsigned char>(s[0])) && !reserved().count(s);
}

class Parser {
 public:
  Parser(std::string_view text, const Context* ctx) : toks_(tokenize(text)), ctx_(ctx) {}

  Identity identity(std::vector<Constraint> constraints, std::string provenance) {
    Expr l = expr();
    expect("=");
    Expr r = expr();
    expect_end();
    return Identity::make(l, r, *ctx_, std::move(constraints), std::move(provenance));
  }

  Expr whole_expr() {
    Expr e = expr();
    expect_end();
    return e;
  }

  Sub whole_subscript() {
    Sub s = subscript();
    expect_end();
    return s;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at(const char* punct, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.type == Tok::Punct && t.text == punct;
  }
  Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().pos); }
  void expect(const char* punct) {
    if (!at(punct)) {
      fail(std::string("expected '") + punct + "'" +
           (peek().type == Tok::End ? " but input ended" : " but found '" + peek().text + "'"));
    }
    ++pos_;
  }
  void expect_end() {
    if (peek().type != Tok::End) fail("unexpected '" + peek().text + "'");
  }

  Expr expr() {
    std::vector<Expr> terms{term()};
    while (at("+") || at("-")) {
      bool minus = next().text == "-";
      Expr t = term();
      terms.push_back(minus ? negate(t) : t);
    }
    return ex::add(std::move(terms));
  }

  Expr term() {
    std::vector<Expr> factors{factor()};
    while (at("*") || at("/")) {
      bool divide = next().text == "/";
      std::size_t where = peek().pos;
      Expr f = factor();
      if (!divide) {
        factors.push_back(f);
        continue;
      }
      Expr num = product(factors);
      if (f.is_zero()) throw ParseError("division by zero", where);
      Expr q = (num.is_const() && f.is_const()) ? ex::constant(num.value() / f.value())
                                                 : ex::div(num, f);
      factors.assign(1, q);
    }
    return product(factors);
  }

  // Flattens nested products and folds runs of adjacent constants.
  static Expr product(const std::vector<Expr>& factors) {
    std::vector<Expr> out;
    auto push = [&](const Expr& f) {
      if (!out.empty() && out.back().is_const() && f.is_const()) {
        out.back() = ex::constant(out.back().value() * f.value());
      } else {
        out.push_back(f);
      }
    };
    for (const auto& f : factors) {
      if (f.kind() == Kind::Mul) {
        for (const auto& g : f.args()) push(g);
      } else {
        push(f);
      }
    }
    return ex::mul(std::move(out));
  }

  Expr factor() {
    if (at("-")) {
      ++pos_;
      return negate(factor());
    }
    bool int_literal = peek().type == Tok::Int;
    Expr base = atom();
    if (!at("^")) return base;
    ++pos_;
    Sub e = exponent();
    if (base.is_const() && base.value() == Rational(-1) && !int_literal) return ex::minus_one_pow(e);
    return ex::pow(base, e);
  }

  Sub exponent() {
    if (at("(")) {
      ++pos_;
      Sub s = subscript();
      expect(")");
      return s;
    }
    if (peek().type == Tok::Int) return Sub(std::stol(next().text));
    if (peek().type == Tok::Ident && is_index_name(peek().text)) return Sub::var(next().text);
    fail("expected an exponent");
  }

  Expr power_atom(bool tau) {
    if (!at("^")) fail("expected '^' after " + std::string(tau ? "tau/alpha" : "sigma/beta"));
    ++pos_;
    Sub e = exponent();
    return tau ? ex::tau_pow(e) : ex::sigma_pow(e);
  }

  Expr atom() {
    const Token& t = peek();
    if (t.type == Tok::Int) {
      ++pos_;
      return ex::constant(Rational::parse(t.text));
    }
    if (at("(")) {
      ++pos_;
      Expr e = expr();
      expect(")");
      return e;
    }
    if (t.type != Tok::Ident) fail(t.type == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
    std::string id = next().text;
    if (id == "alpha" || id == "tau") return power_atom(true);
    if (id == "beta" || id == "sigma") return power_atom(false);
    if (id == "sqrtD") return ex::sqrt_d();
    if (id == "p" || id == "q") return ex::param(id);
    if (id == "binom") {
      expect("(");
      Sub top = subscript();
      expect(",");
      Sub bottom = subscript();
      expect(")");
      return ex::binom(top, bottom);
    }
    if (id == "sum") {
      expect("(");
      if (peek().type != Tok::Ident || !is_index_name(peek().text)) fail("expected summation variable");
      std::string var = next().text;
      if (bound_.count(var)) fail("summation variable " + var + " shadows an enclosing sum");
      expect(",");
      Sub lo = subscript();
      expect(",");
      Sub hi = subscript();
      expect(",");
      if (lo.contains(var) || hi.contains(var)) fail("summation bounds mention the summation variable");
      bound_.insert(var);
      Expr body = expr();
      bound_.erase(var);
      expect(")");
      return ex::sum(var, lo, hi, body);
    }
    if (id == "arctan") {
      expect("(");
      Expr a = expr();
      expect(")");
      return ex::arctan(a);
    }
    if (std::isupper(static_cast<unsigned char>(id[0]))) {
      if (!ctx_->find(id)) throw ParseError("unknown family symbol " + id, t.pos);
      expect("[");
      Sub s = subscript();
      expect("]");
      return ex::seq(id, s);
    }
    if (is_index_name(id)) return ex::index(Sub::var(id));
    throw ParseError("unexpected identifier " + id, t.pos);
  }

  Sub subscript() {
    Sub s = sterm();
    while (at("+") || at("-")) {
      bool minus = next().text == "-";
      Sub t = sterm();
      s = minus ? s - t : s + t;
    }
    return s;
  }

  Sub sterm() {
    Sub s = sunary();
    for (;;) {
      if (at("*")) {
        ++pos_;
        s = s * sunary();
      } else if (prev_closes_or_int() &&
                 ((peek().type == Tok::Ident && is_index_name(peek().text)) || at("("))) {
        s = s * sunary();
      } else {
        return s;
      }
    }
  }

  bool prev_closes_or_int() const {
    if (pos_ == 0) return false;
    const Token& p = toks_[pos_ - 1];
    return p.type == Tok::Int || (p.type == Tok::Punct && p.text == ")");
  }

  Sub sunary() {
    if (at("-")) {
      ++pos_;
      return -sunary();
    }
    if (peek().type == Tok::Int && at("^", 1)) {
      std::size_t where = peek().pos;
      long base = std::stol(next().text);
      ++pos_;
      Sub e = sexp_atom();
      try {
        return Sub::power(base, e);
      } catch (const PreconditionError& err) {
        throw ParseError(err.what(), where);
      }
    }
    return satom();
  }

  Sub sexp_atom() {
    if (at("(")) {
      ++pos_;
      Sub s = subscript();
      expect(")");
      return s;
    }
    if (peek().type == Tok::Int) return Sub(std::stol(next().text));
    if (peek().type == Tok::Ident && is_index_name(peek().text)) return Sub::var(next().text);
    fail("expected an exponent in subscript");
  }

  Sub satom() {
    const Token& t = peek();
    if (t.type == Tok::Int) {
      ++pos_;
      return Sub(std::stol(t.text));
    }
    if (at("(")) {
      ++pos_;
      Sub s = subscript();
      expect(")");
      return s;
    }
    if (t.type == Tok::Ident && is_index_name(t.text)) {
      ++pos_;
      return Sub::var(t.text);
    }
    fail(t.type == Tok::End ? "unexpected end of subscript" : "unexpected '" + t.text + "' in subscript");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Context* ctx_;
  std::set<std::string> bound_;
};

}  // namespace

Expr negate(const Expr& e) {
  if (e.is_const()) return ex::constant(-e.value());
  if (e.kind() == Kind::Neg) return e.arg(0);
  if (e.kind() == Kind::Mul && e.arg(0).is_const()) {
    std::vector<Expr> f = e.args();
    f[0] = ex::constant(-f[0].value());
    if (f[0].is_one()) f.erase(f.begin());
    return ex::mul(std::move(f));
  }
  return ex::mul(ex::constant(Rational(-1)), e);
}

Identity parse_identity(std::string_view text, const Context& ctx, std::vector<Constraint> constraints,
                        std::string provenance) {
  Parser p(text, &ctx);
  return p.identity(std::move(constraints), std::move(provenance));
}

Expr parse_expr(std::string_view text, const Context& ctx) {
  Parser p(text, &ctx);
  return p.whole_expr();
}

Sub parse_subscript(std::string_view text) {
  Context ctx;
  Parser p(text, &ctx);
  return p.whole_subscript();
}

}  // namespace fibdiff
