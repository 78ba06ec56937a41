#pragma once

#include "plectic/poly.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace plectic {

/// Coordinate patch: an R^N with named coordinates.  All forms and
/// multivector fields below live on one patch; coefficients are Poly.
struct Patch {
  VarList coords;

  Patch() = default;
  explicit Patch(std::vector<std::string> names) : coords(make_vars(std::move(names))) {}
  int dim() const { return coords ? static_cast<int>(coords->size()) : 0; }
  const std::string& name(int i) const { return (*coords)[i]; }
  bool same_as(const Patch& o) const;
};

/// Index subsets {i1 < ... < ip} of coordinates as bitmasks.
using Mask = uint32_t;

int mask_popcount(Mask m);
std::vector<int> mask_indices(Mask m);

/// Shared storage for forms and multivector fields: a map from
/// strictly-increasing coordinate index subsets to Poly coefficients.
/// Forms print their basis as "dx", multivectors as "Dx".
class GradedTerms {
public:
  GradedTerms() = default;
  GradedTerms(Patch p, int degree) : patch_(std::move(p)), deg_(degree) {}

  const Patch& patch() const { return patch_; }
  int degree() const { return deg_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Mask, Poly>& terms() const { return terms_; }

  void add_term(Mask m, const Poly& c);
  void negate();
  void add_in(const GradedTerms& o, const Rat& scale);
  bool equals(const GradedTerms& o) const;

protected:
  Patch patch_;
  int deg_ = 0;
  std::map<Mask, Poly> terms_;
};

class MultiVec;

/// Differential form of fixed degree with polynomial coefficients.
class PolyForm : public GradedTerms {
public:
  PolyForm() = default;
  PolyForm(Patch p, int degree);

  static PolyForm zero(const Patch& p, int degree) { return PolyForm(p, degree); }
  static PolyForm from_poly(const Patch& p, const Poly& f); // degree 0
  static PolyForm basis(const Patch& p, const std::vector<int>& idx, const Poly& coeff);

  PolyForm operator-() const;
  PolyForm& operator+=(const PolyForm& o);
  PolyForm& operator-=(const PolyForm& o);
  friend PolyForm operator+(PolyForm a, const PolyForm& b) { return a += b; }
  friend PolyForm operator-(PolyForm a, const PolyForm& b) { return a -= b; }
  PolyForm operator*(const Rat& c) const;
  PolyForm scaled_by(const Poly& f) const;
  friend bool operator==(const PolyForm& a, const PolyForm& b) { return a.equals(b); }
  friend bool operator!=(const PolyForm& a, const PolyForm& b) { return !a.equals(b); }

  /// Coefficients evaluated at the origin; degree unchanged.
  PolyForm eval_coeffs_at_zero() const;

  std::string str() const;
  static PolyForm parse(const std::string& s, const Patch& p);
};

/// Multivector field of fixed degree; degree 1 is a vector field.
class MultiVec : public GradedTerms {
public:
  MultiVec() = default;
  MultiVec(Patch p, int degree);

  static MultiVec zero(const Patch& p, int degree) { return MultiVec(p, degree); }
  static MultiVec coordinate_field(const Patch& p, int i); // d/dx_i
  static MultiVec basis(const Patch& p, const std::vector<int>& idx, const Poly& coeff);

  MultiVec operator-() const;
  MultiVec& operator+=(const MultiVec& o);
  MultiVec& operator-=(const MultiVec& o);
  friend MultiVec operator+(MultiVec a, const MultiVec& b) { return a += b; }
  friend MultiVec operator-(MultiVec a, const MultiVec& b) { return a -= b; }
  MultiVec operator*(const Rat& c) const;
  MultiVec scaled_by(const Poly& f) const;
  friend bool operator==(const MultiVec& a, const MultiVec& b) { return a.equals(b); }
  friend bool operator!=(const MultiVec& a, const MultiVec& b) { return !a.equals(b); }

  std::string str() const;
  static MultiVec parse(const std::string& s, const Patch& p);
};

PolyForm operator*(const Rat& c, const PolyForm& a);
MultiVec operator*(const Rat& c, const MultiVec& a);

/// Exterior product; graded-commutative.
PolyForm wedge(const PolyForm& a, const PolyForm& b);
MultiVec wedge(const MultiVec& a, const MultiVec& b);

/// Exterior differential; d∘d = 0.
PolyForm exterior_d(const PolyForm& a);

/// Interior product of a multivector with a form; on decomposables
/// ι_{v1∧..∧vq} = ι_{vq} ∘ .. ∘ ι_{v1}, extended linearly over coefficients.
PolyForm interior(const MultiVec& u, const PolyForm& a);

/// Lie derivative along a multivector: L_u = d ι_u - (-1)^{deg u} ι_u d.
PolyForm lie_derivative(const MultiVec& u, const PolyForm& a);

/// Schouten bracket; restricts to the vector-field Lie bracket in degree 1.
/// Degree of the result is deg u + deg v - 1.
MultiVec schouten(const MultiVec& u, const MultiVec& v);

/// Contraction homotopy for the de Rham complex on the patch:
/// d∘h + h∘d = id on forms of degree >= 1, and h(df) = f - f(0).
/// On a term with homogeneous coefficient degree k and form degree p, it acts
/// as 1/(k+p) ι_E with E the radial field.  Throws on degree-0 input.
PolyForm poincare_homotopy(const PolyForm& a);

struct IdentityReport {
  bool pass = true;
  std::string residual; // serialized residual when failing
};

/// ι_{[u,v]} a == (-1)^{(deg u - 1) deg v} L_u ι_v a - ι_v L_u a, exactly.
IdentityReport check_cartan_commutator(const MultiVec& u, const MultiVec& v, const PolyForm& a);

/// The k-field contraction identity:
/// (-1)^k d ι_{v1∧..∧vk} b = Σ_{i<j} (-1)^{i+j} ι_{[vi,vj]∧..} b
///   + Σ_i (-1)^i ι_{..} L_{vi} b + ι_{v1∧..∧vk} db   (1-based signs).
IdentityReport check_extended_cartan(const PolyForm& beta, const std::vector<MultiVec>& vs);

/// Wedge of a list of vector fields (empty list => degree-0 unit).
MultiVec wedge_all(const Patch& p, const std::vector<MultiVec>& vs);

} // namespace plectic
