#pragma once

#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "fibdiff/rational.hpp"
#include "fibdiff/subscript.hpp"

namespace fibdiff {

enum class Kind {
  Const,
  Seq,          // family[sub]
  TauPow,       // tau^sub
  SigmaPow,     // sigma^sub
  MinusOnePow,  // (-1)^sub
  SqrtD,        // sqrt(p^2 - 4q) = tau - sigma
  Pi,
  LnTau,
  ImagUnit,
  Param,        // p or q
  Index,        // integer value of a subscript expression
  Add,
  Mul,
  Div,
  Neg,
  Pow,          // args[0]^sub
  Binom,        // binom(sub, sub2)
  Sum,          // sum over name from sub to sub2 of args[0]
  Arctan,
  DerivSeq,     // d family[sub] / d wrt
};

class Expr;

struct Node {
  Kind kind = Kind::Const;
  Rational value;
  std::string name;
  std::string wrt;
  Sub sub;
  Sub sub2;
  std::vector<Expr> args;
};

class Expr {
 public:
  Expr();
  explicit Expr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

  const Node& node() const { return *n_; }
  Kind kind() const { return n_->kind; }
  const std::vector<Expr>& args() const { return n_->args; }
  const Expr& arg(std::size_t i) const { return n_->args.at(i); }
  const Sub& sub() const { return n_->sub; }
  const Sub& sub2() const { return n_->sub2; }
  const std::string& name() const { return n_->name; }
  const Rational& value() const { return n_->value; }

  bool is_const() const { return kind() == Kind::Const; }
  bool is_zero() const { return is_const() && value().is_zero(); }
  bool is_one() const { return is_const() && value().is_one(); }
  bool same_node(const Expr& o) const { return n_ == o.n_; }

 private:
  std::shared_ptr<const Node> n_;
};

int compare(const Expr& a, const Expr& b);
inline bool operator==(const Expr& a, const Expr& b) { return compare(a, b) == 0; }
inline bool operator!=(const Expr& a, const Expr& b) { return compare(a, b) != 0; }
inline bool operator<(const Expr& a, const Expr& b) { return compare(a, b) < 0; }

namespace ex {

Expr constant(const Rational& v);
Expr seq(const std::string& family, const Sub& sub);
Expr tau_pow(const Sub& e);
Expr sigma_pow(const Sub& e);
Expr minus_one_pow(const Sub& e);
Expr sqrt_d();
Expr pi();
Expr ln_tau();
Expr imag_unit();
Expr param(const std::string& which);
Expr index(const Sub& s);
// add and mul flatten nested nodes of the same kind; singletons collapse.
Expr add(std::vector<Expr> terms);
Expr mul(std::vector<Expr> factors);
Expr add(const Expr& a, const Expr& b);
Expr sub(const Expr& a, const Expr& b);
Expr mul(const Expr& a, const Expr& b);
Expr div(const Expr& num, const Expr& den);
Expr neg(const Expr& a);
Expr pow(const Expr& base, const Sub& e);
Expr binom(const Sub& top, const Sub& bottom);
Expr sum(const std::string& var, const Sub& lo, const Sub& hi, const Expr& body);
Expr arctan(const Expr& a);
Expr deriv_seq(const std::string& family, const Sub& sub, const std::string& wrt);

}  // namespace ex

// Rebuilds e with each child replaced by f(child); subscripts are untouched.
Expr map_children(const Expr& e, const std::function<Expr(const Expr&)>& f);
// Rebuilds e with every subscript (and Index value) passed through f.
// Sum bound variables are passed to f through the bound set.
Expr map_subscripts(const Expr& e,
                    const std::function<Sub(const Sub&, const std::set<std::string>& bound)>& f);
bool any_node(const Expr& e, const std::function<bool(const Expr&)>& pred);
bool contains_kind(const Expr& e, Kind k);
std::set<std::string> families_used(const Expr& e);
// Index variables occurring free (not bound by an enclosing sum).
std::set<std::string> free_vars(const Expr& e);
std::set<std::string> bound_vars(const Expr& e);
// Capture-avoiding substitution of an index variable.
Expr substitute_index(const Expr& e, const std::string& var, const Sub& replacement);
Expr substitute_indices(const Expr& e, const std::map<std::string, Sub>& bindings);

}  // namespace fibdiff
