#pragma once

#include "plectic/rational.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace plectic {

/// Ordered list of coordinate names, shared between all polynomials on a patch.
using VarList = std::shared_ptr<const std::vector<std::string>>;

VarList make_vars(std::vector<std::string> names);

/// Exponent vector, dense, length = number of variables.
using Exp = std::vector<int>;

/// Sparse multivariate polynomial with exact rational coefficients.
/// No zero coefficients are ever stored; all arithmetic is exact.
class Poly {
public:
  Poly() = default;
  explicit Poly(VarList vars) : vars_(std::move(vars)) {}

  static Poly zero(VarList vars) { return Poly(std::move(vars)); }
  static Poly constant(VarList vars, const Rat& c);
  static Poly var(VarList vars, int i);
  static Poly monomial(VarList vars, Exp e, const Rat& c);

  const VarList& vars() const { return vars_; }
  int nvars() const { return vars_ ? static_cast<int>(vars_->size()) : 0; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rat constant_value() const; // throws unless constant
  int total_degree() const;   // -1 for the zero polynomial
  size_t term_count() const { return terms_.size(); }
  const std::map<Exp, Rat>& terms() const { return terms_; }

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator*(const Rat& c) const;
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly derivative(int var) const;
  Rat eval(const std::vector<Rat>& point) const;
  Rat eval_at_zero() const;

  /// Split into homogeneous components, keyed by total degree.
  std::map<int, Poly> homogeneous_parts() const;

  void add_term(const Exp& e, const Rat& c);

  /// Canonical textual form, e.g. "3/2*x^2*y - 1*z".  Round-trips exactly
  /// through parse().
  std::string str() const;
  static Poly parse(const std::string& s, const VarList& vars);

private:
  void check_compat(const Poly& o) const;

  VarList vars_;
  std::map<Exp, Rat> terms_;
};

inline Poly operator*(const Rat& c, const Poly& p) { return p * c; }

} // namespace plectic
