#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace fibdiff {

class Sub;

// Either an index variable or base^(exponent) with an integer base >= 2.
struct SubAtom {
  std::string var;
  long base = 0;
  std::shared_ptr<const Sub> exponent;
  bool is_var() const { return base == 0; }
};

int compare(const SubAtom& a, const SubAtom& b);

using SubMono = std::vector<std::pair<SubAtom, int>>;

struct SubMonoLess {
  bool operator()(const SubMono& a, const SubMono& b) const;
};

struct Affine {
  std::map<std::string, long> coeffs;  // nonzero coefficients only
  long constant = 0;
  long coeff(const std::string& v) const {
    auto it = coeffs.find(v);
    return it == coeffs.end() ? 0 : it->second;
  }
};

// Integer-valued subscript expression, kept as a canonical integer polynomial
// over index variables and exponential atoms. Structural equality is polynomial equality.
class Sub {
 public:
  Sub() = default;
  Sub(long c);
  static Sub var(const std::string& name);
  static Sub power(long base, const Sub& exponent);
  static Sub from_affine(const Affine& a);

  bool is_constant() const;
  std::optional<long> as_constant() const;
  bool is_zero() const { return terms_.empty(); }
  // The single-variable form "v" (coefficient 1, no constant).
  std::optional<std::string> as_var() const;
  std::optional<Affine> affine() const;
  std::set<std::string> vars() const;
  bool contains(const std::string& v) const;
  // True if v occurs inside the exponent of an exponential atom.
  bool in_exponent(const std::string& v) const;
  bool has_exponential() const;

  Sub substitute(const std::string& v, const Sub& replacement) const;
  Sub substitute(const std::map<std::string, Sub>& bindings) const;
  Sub derivative(const std::string& v) const;
  // Integer value, or nullopt when an exponential has a negative exponent.
  std::optional<long> eval(const std::map<std::string, long>& env) const;

  Sub operator-() const;
  Sub& operator+=(const Sub& o);
  Sub& operator-=(const Sub& o);
  friend Sub operator+(Sub a, const Sub& b) { return a += b; }
  friend Sub operator-(Sub a, const Sub& b) { return a -= b; }
  friend Sub operator*(const Sub& a, const Sub& b);
  friend bool operator==(const Sub& a, const Sub& b);
  friend int compare(const Sub& a, const Sub& b);
  friend bool operator<(const Sub& a, const Sub& b) { return compare(a, b) < 0; }

  std::string str() const;

  const std::map<SubMono, long, SubMonoLess>& terms() const { return terms_; }

 private:
  void add(const SubMono& m, long c);
  std::map<SubMono, long, SubMonoLess> terms_;
};

}  // namespace fibdiff
