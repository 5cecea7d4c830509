#include "fibdiff/identity.hpp"

#include <cctype>
#include <regex>

#include "fibdiff/errors.hpp"

namespace fibdiff {

Context Context::default_table(const Rational& p, const Rational& q) {
  Context c;
  c.p = p;
  c.q = q;
  if (c.golden()) {
    c.families.push_back({"F", FamilyRole::Fibonacci});
    c.families.push_back({"L", FamilyRole::Lucas});
  }
  c.families.push_back({"U", FamilyRole::LucasU});
  c.families.push_back({"V", FamilyRole::LucasV});
  for (char ch = 'A'; ch <= 'Z'; ++ch) {
    if (ch == 'F' || ch == 'L' || ch == 'U' || ch == 'V') continue;
    c.families.push_back({std::string(1, ch), c.symbolic_role()});
  }
  return c;
}

const FamilyDecl* Context::find(const std::string& name) const {
  for (const auto& f : families) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

void Context::declare(const std::string& name, FamilyRole role) {
  if (name.empty() || !std::isupper(static_cast<unsigned char>(name[0]))) {
    throw PreconditionError("family names start with a capital letter: '" + name + "'");
  }
  if (const FamilyDecl* f = find(name)) {
    if (f->role != role) {
      throw PreconditionError("family " + name + " already declared as " + role_name(f->role));
    }
    return;
  }
  families.push_back({name, role});
}

const QuadField& Context::field() const {
  Rational d = radicand();
  if (QuadField::is_degenerate(d)) return QuadField::rational_only();
  return QuadField::get(d);
}

SequenceSpec Context::spec(const std::string& name) const {
  const FamilyDecl* f = find(name);
  if (!f) throw PreconditionError("undeclared family " + name);
  return SequenceSpec::make(name, f->role, p, q, field());
}

QuadExt Context::sqrt_value() const {
  const QuadField& f = field();
  if (f.has_radical()) return QuadExt::radical(f);
  Rational d = radicand();
  if (d.sign() <= 0) throw PreconditionError("p^2 - 4q = " + d.str() + " is not positive");
  BigInt n, m;
  mpz_sqrt(n.get_mpz_t(), d.numerator().get_mpz_t());
  mpz_sqrt(m.get_mpz_t(), d.denominator().get_mpz_t());
  return QuadExt(f, Rational(n, m));
}

QuadExt Context::tau_value() const {
  return (QuadExt(field(), p) + sqrt_value()) * Rational(BigInt(1), BigInt(2));
}

QuadExt Context::sigma_value() const {
  return (QuadExt(field(), p) - sqrt_value()) * Rational(BigInt(1), BigInt(2));
}

std::optional<std::string> Context::family_with_role(FamilyRole role) const {
  for (const auto& f : families) {
    if (f.role == role) return f.name;
  }
  return std::nullopt;
}

std::string Context::fresh_family(const std::string& base, const std::set<std::string>& taken) const {
  for (int i = 1;; ++i) {
    std::string name = i == 1 ? base : base + std::to_string(i);
    if (!taken.count(name)) return name;
  }
}

std::string Context::str() const {
  std::string out = "p=" + p.str() + ", q=" + q.str() + ";";
  for (const auto& f : families) out += " " + f.name + ":" + role_name(f.role);
  return out;
}

Constraint Constraint::parse(const std::string& text) {
  static const std::regex parity(R"(^\s*([a-z][a-z0-9_]*)\s+(even|odd)\s*$)");
  static const std::regex bound(R"(^\s*([a-z][a-z0-9_]*)\s*(>=|<=|!=|>|<)\s*(-?\d+)\s*$)");
  std::smatch m;
  Constraint c;
  c.text = text;
  if (std::regex_match(text, m, parity)) {
    c.index = m[1];
    c.kind = m[2] == "even" ? Kind::Even : Kind::Odd;
  } else if (std::regex_match(text, m, bound)) {
    c.index = m[1];
    std::string op = m[2];
    c.value = std::stol(m[3]);
    c.kind = op == ">=" ? Kind::Ge
           : op == "<=" ? Kind::Le
           : op == "!=" ? Kind::Ne
           : op == ">"  ? Kind::Gt
                        : Kind::Lt;
  } else if (text == "real-valid") {
    c.kind = Kind::RealValid;
  } else {
    c.kind = Kind::Text;
  }
  return c;
}

bool Constraint::admits(long v) const {
  switch (kind) {
    case Kind::Even: return v % 2 == 0;
    case Kind::Odd: return v % 2 != 0;
    case Kind::Ge: return v >= value;
    case Kind::Gt: return v > value;
    case Kind::Le: return v <= value;
    case Kind::Lt: return v < value;
    case Kind::Ne: return v != value;
    default: return true;
  }
}

int Constraint::parity() const {
  if (kind == Kind::Even) return 1;
  if (kind == Kind::Odd) return -1;
  return 0;
}

std::string Constraint::str() const {
  switch (kind) {
    case Kind::Even: return index + " even";
    case Kind::Odd: return index + " odd";
    case Kind::Ge: return index + " >= " + std::to_string(value);
    case Kind::Gt: return index + " > " + std::to_string(value);
    case Kind::Le: return index + " <= " + std::to_string(value);
    case Kind::Lt: return index + " < " + std::to_string(value);
    case Kind::Ne: return index + " != " + std::to_string(value);
    case Kind::RealValid: return "real-valid";
    case Kind::Text: return text;
  }
  return text;
}

bool operator==(const Constraint& a, const Constraint& b) { return a.str() == b.str(); }

Identity Identity::make(Expr lhs, Expr rhs, Context ctx, std::vector<Constraint> constraints,
                        std::string provenance) {
  Identity id{std::move(lhs), std::move(rhs), {}, std::move(constraints), std::move(provenance),
              std::move(ctx)};
  id.free_indices = fibdiff::free_indices(id);
  for (const auto& c : id.constraints) {
    if (c.has_index() && !id.free_indices.count(c.index)) {
      throw PreconditionError("constraint '" + c.str() + "' names an index that is not free");
    }
  }
  return id;
}

bool Identity::has_constraint(Constraint::Kind k) const {
  for (const auto& c : constraints) {
    if (c.kind == k) return true;
  }
  return false;
}

Identity Identity::with_sides(Expr l, Expr r) const {
  Identity out{std::move(l), std::move(r), {}, {}, provenance, ctx};
  out.free_indices = fibdiff::free_indices(out);
  for (const auto& c : constraints) {
    if (!c.has_index() || out.free_indices.count(c.index)) out.constraints.push_back(c);
  }
  return out;
}

bool structurally_equal(const Identity& a, const Identity& b) {
  return a.lhs == b.lhs && a.rhs == b.rhs && a.free_indices == b.free_indices;
}

std::set<std::string> free_indices(const Identity& id) {
  std::set<std::string> out = free_vars(id.lhs);
  auto r = free_vars(id.rhs);
  out.insert(r.begin(), r.end());
  return out;
}

Identity substitute_index(const Identity& id, const std::string& var, const Sub& replacement) {
  Identity out = id;
  out.lhs = substitute_index(id.lhs, var, replacement);
  out.rhs = substitute_index(id.rhs, var, replacement);
  out.free_indices = free_indices(out);
  out.constraints.clear();
  for (auto c : id.constraints) {
    if (!c.has_index() || c.index != var) {
      out.constraints.push_back(c);
      continue;
    }
    if (auto v = replacement.as_var()) {
      c.index = *v;
      c.text = c.str();
      out.constraints.push_back(c);
    } else if (auto k = replacement.as_constant()) {
      if (!c.admits(*k)) {
        throw PreconditionError("substitution " + var + " := " + std::to_string(*k) +
                                " violates constraint '" + c.str() + "'");
      }
    } else {
      Constraint t;
      t.kind = Constraint::Kind::Text;
      t.text = c.str() + " with " + var + " = " + replacement.str();
      out.constraints.push_back(t);
    }
  }
  return out;
}

}  // namespace fibdiff
