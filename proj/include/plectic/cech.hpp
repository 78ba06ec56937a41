#pragma once

#include "plectic/forms.hpp"
#include "plectic/linfty.hpp"
#include "plectic/truncate.hpp"

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace plectic {

/// Open interval with optional endpoints (nullopt = unbounded).
struct Interval {
  std::optional<Rat> lo, hi;
  bool intersects(const Interval& o) const;
  Interval meet(const Interval& o) const;
};

struct OpenBox {
  std::string name;
  std::vector<Interval> box; // one interval per coordinate
};

/// Finite cover by named boxes; the nerve is computed exactly from the
/// interval data and is closed under subsets.
struct Cover {
  Patch patch;
  std::vector<OpenBox> opens;
  std::vector<std::vector<int>> nerve;

  Cover(Patch p, std::vector<OpenBox> boxes);
  int size() const { return static_cast<int>(opens.size()); }
  bool in_nerve(const std::vector<int>& sorted_simplex) const;
  std::vector<std::vector<int>> simplices(int cech_deg) const;
  /// True when every index tuple intersects (the nerve is a full simplex);
  /// the formal collation operators require this.
  bool full_nerve() const;
};

using CoverPtr = std::shared_ptr<const Cover>;

CoverPtr trivial_cover(const Patch& p);

/// Cochain of j-forms on the i-fold intersections, stored antisymmetrically
/// on sorted nerve tuples.  A form "on an intersection" is a global
/// polynomial expression; restrictions are identities.
class CechCochain {
public:
  CechCochain() = default;
  CechCochain(CoverPtr cover, int cech_deg, int form_deg);

  const CoverPtr& cover() const { return cover_; }
  int cech_deg() const { return cdeg_; }
  int form_deg() const { return fdeg_; }
  bool is_zero() const;

  /// Signed lookup on an arbitrary tuple: repeated indices give zero, and
  /// tuples outside the nerve give zero.
  PolyForm get(const std::vector<int>& simplex) const;
  void set(const std::vector<int>& sorted_simplex, PolyForm a);
  void add(const std::vector<int>& sorted_simplex, const PolyForm& a);
  const std::map<std::vector<int>, PolyForm>& values() const { return vals_; }

  CechCochain operator+(const CechCochain& o) const;
  CechCochain operator-(const CechCochain& o) const;
  CechCochain operator*(const Rat& c) const;
  friend bool operator==(const CechCochain& a, const CechCochain& b);

  std::string str() const;

private:
  CoverPtr cover_;
  int cdeg_ = 0;
  int fdeg_ = 0;
  std::map<std::vector<int>, PolyForm> vals_;
};

/// Alternating-sum coboundary; delta^2 = 0 and delta commutes with i_v.
CechCochain cech_delta(const CechCochain& c);
CechCochain cech_d(const CechCochain& c);
CechCochain cech_interior(const MultiVec& u, const CechCochain& c);
CechCochain cech_lie(const MultiVec& u, const CechCochain& c);

/// Element of the total complex: components theta^{m-i} in cech degree i,
/// form degree m-i.  An optional form-degree cutoff keeps the truncated
/// variants (only form degrees <= cutoff are stored).
class TotElem {
public:
  TotElem() = default;
  TotElem(CoverPtr cover, int total_deg, int max_fdeg = 1 << 20);

  const CoverPtr& cover() const { return cover_; }
  int total() const { return total_; }
  int cutoff() const { return max_fdeg_; }
  bool is_zero() const;

  const CechCochain& comp(int cech_deg) const; // zero cochain when absent
  void set_comp(CechCochain c);
  void add_comp(const CechCochain& c);
  const std::map<int, CechCochain>& comps() const { return comp_; }

  TotElem operator+(const TotElem& o) const;
  TotElem operator-(const TotElem& o) const;
  TotElem operator*(const Rat& c) const;
  friend bool operator==(const TotElem& a, const TotElem& b);

  std::string str() const;

private:
  CoverPtr cover_;
  int total_ = 0;
  int max_fdeg_ = 1 << 20;
  std::map<int, CechCochain> comp_;
};

/// d_tot = delta + (-1)^i d, with the cutoff applied on the way out.
TotElem d_tot(const TotElem& t);
TotElem tot_interior(const MultiVec& u, const TotElem& t);
TotElem tot_lie(const MultiVec& u, const TotElem& t);
/// A global form as a cech-degree-0 element (the same expression per open).
TotElem res_form(const CoverPtr& cover, const PolyForm& a, int max_fdeg = 1 << 20);
TotElem tot_truncate(const TotElem& t, int max_fdeg);

/// Random total element of the given degree (all nerve simplices filled).
TotElem random_tot(const CoverPtr& cover, int total_deg, const SampleCfg& cfg, Rng& rng,
                   int max_fdeg = 1 << 20);

/// Degree-n cocycle data lifting a closed (n+1)-form: components A^{n-i} in
/// cech degree i, with the real-valued top component in the log presentation.
struct DeligneCocycle {
  CoverPtr cover;
  int n = 1;
  std::vector<CechCochain> A; // A[i] has cech degree i, form degree n-i

  TotElem as_tot() const;
  /// Signed aggregate sum_i (-1)^{mi} A^{n-i}.
  TotElem twisted(int m) const;
};

struct DeligneReport {
  bool pass = true;
  std::string violated; // names the first violated relation
};

/// Verifies the descent relations delta A^{n-i} = (-1)^i d A^{n-i-1}, the
/// local constancy of delta A^0, and the curvature condition d A^n = omega.
DeligneReport check_deligne(const DeligneCocycle& A, const PolyForm& omega);

/// Collation operators for a formal weight family summing to 1.
struct Collation {
  CoverPtr cover;
  std::vector<Poly> weights;

  Collation(CoverPtr c, std::vector<Poly> w);

  /// (K theta)_{a0..a_{i-1}} = sum_a w_a theta_{a,a0,..}; on cech degree 0 it
  /// collates to a global form (the augmentation).
  CechCochain K(const CechCochain& c) const;
  PolyForm K_augment(const CechCochain& c) const;
  /// Signed de Rham differential D'' = (-1)^i d.
  CechCochain D2(const CechCochain& c) const;
  /// Chain homotopy H with id - res.j = d_tot H + H d_tot.
  TotElem H(const TotElem& t) const;
  /// The homotopy inverse j of res.
  PolyForm collate(const TotElem& t) const;
};

/// Total-complex cohomology with the weighted polynomial truncation
/// (coefficient degree + form degree <= budget), reported by total degree,
/// together with the same truncation of the global de Rham complex.
struct TotCohomology {
  std::map<int, int> tot_dims;
  std::map<int, int> de_rham_dims;
};

TotCohomology truncated_tot_cohomology(const CoverPtr& cover, int n_top, int budget);

/// Enumerated FD model of Tot^m spaces for one budget (used by rank checks).
struct TotSpace {
  CoverPtr cover;
  int total = 0;
  int budget = 0;
  int max_fdeg = 1 << 20;
  // Per cech degree i: the simplex list and the form space at degree m-i.
  std::vector<std::pair<int, FormSpace>> parts; // (cech degree, space)
  std::vector<std::vector<std::vector<int>>> simp; // simplices per part

  TotSpace() = default;
  TotSpace(CoverPtr c, int total_deg, int budget_deg, int cutoff = 1 << 20);
  int dim() const;
  std::vector<Rat> coords(const TotElem& t) const;
  TotElem from_coords(const std::vector<Rat>& x) const;
};

} // namespace plectic
