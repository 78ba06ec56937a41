#pragma once

#include "plectic/linfty.hpp"
#include "plectic/matq.hpp"

#include <functional>
#include <string>
#include <vector>

namespace plectic {

/// Finite-dimensional Lie algebra given by structure constants
/// [e_i, e_j] = sum_k c[i][j][k] e_k.
struct FDLieAlgebra {
  std::vector<std::string> names;
  std::vector<std::vector<std::vector<Rat>>> c;

  int dim() const { return static_cast<int>(names.size()); }
  std::vector<Rat> bracket(const std::vector<Rat>& x, const std::vector<Rat>& y) const;
  Mat ad(int i) const;
  Mat ad_vec(const std::vector<Rat>& x) const;

  IdentityReport check_antisymmetry() const;
  IdentityReport check_jacobi() const; // exhaustive over basis triples

  static FDLieAlgebra su2();
  static FDLieAlgebra abelian(int n);
};

/// Killing form K(x, y) = tr(ad_x ad_y) as a matrix on the basis.
Mat killing_matrix(const FDLieAlgebra& g);

/// Alternating k-linear real-valued cochain on g, evaluated on basis tuples.
using CECochain = std::function<Rat(const std::vector<int>&)>;

/// Chevalley-Eilenberg coboundary (trivial coefficients) evaluated on a basis
/// (k+1)-tuple: (delta c)(x_0..x_k) = sum_{i<j} (-1)^{i+j} c([x_i,x_j], ..hat i..hat j..).
Rat ce_coboundary(const FDLieAlgebra& g, const CECochain& c, int k,
                  const std::vector<int>& tuple);

/// Exhaustive coboundary-vanishing check over increasing basis (k+1)-tuples.
IdentityReport check_ce_cocycle(const FDLieAlgebra& g, const CECochain& c, int k);

/// The trilinear form mu(x,y,z) = K(x, [y,z]) on a Lie algebra with
/// nondegenerate Killing form, plus the Lie 2-algebra it classifies.
struct StringData {
  Mat killing;
  std::vector<std::vector<std::vector<Rat>>> mu; // mu[i][j][k]
  LInftyPtr lie2;        // degrees 0 (g) and 1 (R): l2 = bracket, l3 = -mu
  FiberSquare square;    // chain-level fiber presentation
};

StringData string_cocycle(const FDLieAlgebra& g, const SampleCfg& cfg);

/// Central extension of g by R classified by a 2-cocycle: basis e_1..e_n, z.
FDLieAlgebra central_extension(const FDLieAlgebra& g, const CECochain& two_cocycle);

/// Domain + abelian or bracket structure over a finite-dimensional graded
/// vector space (used for FD Lie algebras and R[n]).
struct FDGraded {
  DomainPtr dom;
  ComplexPtr complex;
};

FDGraded fd_domain(const std::string& name, ComplexPtr complex);

/// Elements are coordinate vectors in the given degree.
Elem fd_elem(int degree, std::vector<Rat> coords);
const std::vector<Rat>& fd_coords(const Elem& e);

/// A Lie algebra (concentrated in degree 0) as an LInfty structure.
LInftyPtr fd_lie_structure(const FDLieAlgebra& g);

} // namespace plectic
