#pragma once

#include "plectic/matq.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace plectic {

/// Finite-dimensional chain complex with exact differential matrices of
/// homological degree -1.  Degrees run lo..hi inclusive.
struct ChainComplexFD {
  int lo = 0, hi = -1;
  std::vector<int> dims;                            // dims[k - lo]
  std::vector<Mat> diff;                            // diff[k - lo]: C_k -> C_{k-1}; unused at k == lo
  std::vector<std::vector<std::string>> labels;     // optional, per degree

  int dim(int k) const { return (k < lo || k > hi) ? 0 : dims[k - lo]; }
  Mat d(int k) const;                               // zero-shaped matrix outside range
  void set_d(int k, Mat m);
  void resize(int lo_deg, int hi_deg);

  static ChainComplexFD concentrated(int degree, int dimension);
};

using ComplexPtr = std::shared_ptr<const ChainComplexFD>;

struct ComplexReport {
  bool pass = true;
  std::string detail;
};

/// Verifies d∘d = 0 and dimension consistency, exactly.
ComplexReport is_complex(const ChainComplexFD& c);

/// Exact Betti numbers: dim ker d_k - rank d_{k+1}.
std::map<int, int> cohomology_dims(const ChainComplexFD& c);

/// Degreewise chain map f: A -> B.
struct ChainMapFD {
  ComplexPtr src;
  ComplexPtr dst;
  std::vector<Mat> mats;    // indexed by k - lo
  int lo = 0, hi = -1;

  Mat mat(int k) const;
  void set(int k, Mat m);
};

ChainMapFD make_chain_map(ComplexPtr src, ComplexPtr dst);
ChainMapFD identity_map(ComplexPtr c);

ComplexReport is_chain_map(const ChainMapFD& f);

/// Mapping cone of f: A -> B.  Cone_k = A_{k-1} ⊕ B_k with
/// d(a, b) = (d_A a, f(a) - d_B b); the projection (a,b) -> a onto the
/// shifted copy is then a chain map to A[1].
ChainComplexFD cone(const ChainMapFD& f);

/// Cone of the identity; always acyclic.
ChainComplexFD cone_identity(ComplexPtr c);

/// Degreewise pullback {(a,b) : f a = g b} of f: A -> C, g: B -> C,
/// presented by kernel bases, with the two projections as chain maps.
struct FiberProductFD {
  ComplexPtr total;
  ChainMapFD to_a;
  ChainMapFD to_b;
};

FiberProductFD fiber_product(const ChainMapFD& f, const ChainMapFD& g);

} // namespace plectic
