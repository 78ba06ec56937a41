#pragma once

#include "plectic/chain_fd.hpp"
#include "plectic/forms.hpp"

#include <functional>
#include <vector>

namespace plectic {

/// All monomials over the patch variables with total degree <= max_deg.
struct MonomialBasis {
  VarList vars;
  int max_deg = 0;
  std::vector<Exp> exps;

  MonomialBasis() = default;
  MonomialBasis(VarList v, int d);
  int dim() const { return static_cast<int>(exps.size()); }
  int index_of(const Exp& e) const; // -1 when out of range
};

/// Enumerated space of p-forms with coefficient degree <= coeff_deg.
struct FormSpace {
  Patch patch;
  int fdeg = 0;
  MonomialBasis mono;
  std::vector<Mask> masks;

  FormSpace() = default;
  FormSpace(Patch p, int form_deg, int coeff_deg);
  int dim() const { return static_cast<int>(masks.size()) * mono.dim(); }
  std::vector<Rat> coords(const PolyForm& a) const;
  PolyForm from_coords(const std::vector<Rat>& x) const;
};

/// Enumerated space of q-multivectors with coefficient degree <= coeff_deg.
struct MultiVecSpace {
  Patch patch;
  int vdeg = 0;
  MonomialBasis mono;
  std::vector<Mask> masks;

  MultiVecSpace() = default;
  MultiVecSpace(Patch p, int vec_deg, int coeff_deg);
  int dim() const { return static_cast<int>(masks.size()) * mono.dim(); }
  std::vector<Rat> coords(const MultiVec& a) const;
  MultiVec from_coords(const std::vector<Rat>& x) const;
};

Mat matrix_of(const std::function<PolyForm(const PolyForm&)>& f, const FormSpace& src,
              const FormSpace& dst);
Mat matrix_of_vec(const std::function<PolyForm(const MultiVec&)>& f, const MultiVecSpace& src,
                  const FormSpace& dst);

/// The de Rham complex on the patch with the weighted truncation
/// coefficient degree + form degree <= budget, which is closed under both
/// the differential and the contraction homotopy.  Homological degree of
/// Omega^j is -j; the returned spaces are kept alongside the complex.
struct DeRhamTruncation {
  ChainComplexFD complex;   // degrees -N..0 with C_{-j} = Omega^j
  std::vector<FormSpace> spaces;  // spaces[j] for Omega^j
};

DeRhamTruncation de_rham_truncated(const Patch& p, int budget);

/// A linear subspace given by a basis matrix inside an ambient enumerated
/// space; coordinates of members are solved exactly.
struct Subspace {
  Mat basis; // ambient_dim x sub_dim
  int dim() const { return basis.cols(); }
  std::vector<Rat> ambient(const std::vector<Rat>& sub) const;
  std::optional<std::vector<Rat>> coords(const std::vector<Rat>& amb) const;
};

} // namespace plectic
