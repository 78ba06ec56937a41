#pragma once

#include "plectic/chain_fd.hpp"
#include "plectic/rational.hpp"
#include "plectic/rng.hpp"
#include "plectic/signs.hpp"

#include <any>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace plectic {

/// A graded element of some element domain: homological degree plus an
/// opaque payload.  An empty payload is the canonical zero in any degree.
class Elem {
public:
  Elem() = default;
  Elem(int degree, std::any payload) : deg_(degree), payload_(std::move(payload)) {}

  static Elem zero(int degree) { return Elem(degree, std::any()); }

  int degree() const { return deg_; }
  bool has_payload() const { return payload_.has_value(); }
  const std::any& payload() const { return payload_; }

  template <typename T>
  const T& as() const { return std::any_cast<const T&>(payload_); }

private:
  int deg_ = 0;
  std::any payload_;
};

/// Vector-space operations and sampling for one element domain.
/// All callbacks must be pure; structures built on a domain are immutable
/// and safe to use from parallel sample loops.
struct Domain {
  std::string name;
  int min_deg = 0;
  int max_deg = 0;
  std::function<Elem(const Elem&, const Elem&)> add;        // same degree
  std::function<Elem(const Rat&, const Elem&)> scale;
  std::function<bool(const Elem&)> is_zero;
  std::function<std::string(const Elem&)> show;
  std::function<Elem(int, const SampleCfg&, Rng&)> sample;  // may be empty

  Elem add_e(const Elem& a, const Elem& b) const;
  Elem scale_e(const Rat& c, const Elem& a) const;
  bool zero_e(const Elem& a) const;
  std::string show_e(const Elem& a) const;
};

using DomainPtr = std::shared_ptr<const Domain>;

/// Intensional L-infinity structure: brackets are evaluators on elements.
/// l1 has degree -1 and lk (k >= 2) has degree k-2; brackets beyond
/// max_arity vanish identically.
struct LInfty {
  DomainPtr dom;
  int max_arity = 2;
  std::function<Elem(const Elem&)> l1;
  std::function<Elem(int, const std::vector<Elem>&)> lk;

  Elem apply_l1(const Elem& x) const;
  Elem apply_lk(int k, const std::vector<Elem>& xs) const;
};

using LInftyPtr = std::shared_ptr<const LInfty>;

/// Intensional L-infinity morphism; component f_k has degree k-1.
struct LMorphism {
  LInftyPtr src;
  LInftyPtr dst;
  int max_arity = 1;
  std::function<Elem(const Elem&)> f1;
  std::function<Elem(int, const std::vector<Elem>&)> fk;

  Elem apply_f(int k, const std::vector<Elem>& xs) const;
};

struct CheckReport {
  bool pass = true;
  long samples = 0;
  std::string witness;   // serialized first failing input/residual
};

/// Generalized Jacobi identity at arity m:
/// sum over k+l=m+1 and (k,m-k)-unshuffles of
///   chi(sigma) (-1)^{k(l-1)} l_l(l_k(x_{s1..sk}), x_{s(k+1)..sm}) = 0.
Elem jacobi_defect(const LInfty& L, const std::vector<Elem>& xs);

/// Blocks of the morphism identity at arity m, target a dg Lie algebra.
/// The full identity is  l'_1 f_m + sum_k I_k + J = 0.
Elem morphism_block_l1f(const LMorphism& F, const std::vector<Elem>& xs);
Elem morphism_block_I(const LMorphism& F, int k, const std::vector<Elem>& xs);
Elem morphism_block_J(const LMorphism& F, const std::vector<Elem>& xs);
Elem morphism_defect(const LMorphism& F, const std::vector<Elem>& xs);

/// Samples tuples of the given arity and checks the Jacobi identity.
CheckReport check_generalized_jacobi(const LInfty& L, int m, const SampleCfg& cfg,
                                     uint64_t seed, int count);

/// Samples tuples and checks the full morphism identity.
CheckReport check_morphism(const LMorphism& F, int m, const SampleCfg& cfg,
                           uint64_t seed, int count);

/// Composite of two morphisms with components in arities 1 and 2 only:
/// (F.G)_1 = F_1 G_1 and (F.G)_2(x,y) = F_1 G_2(x,y) + F_2(G_1 x, G_1 y).
LMorphism compose_low(const LMorphism& F, const LMorphism& G);

/// Strict morphism from a single linear component.
LMorphism strict_morphism(LInftyPtr src, LInftyPtr dst, std::function<Elem(const Elem&)> f1);

/// Data of a commuting square
///     FP --piB--> B
///      |          |
///     piL        pA
///      v          v
///      A  --f-->  C
/// together with finite-dimensional truncations used for the rank checks.
struct FiberSquare {
  LMorphism piL;        // strict
  LMorphism piB;
  LMorphism f;
  LMorphism pA_morph;   // strict chain map B -> C

  ComplexPtr a_fd, b_fd, c_fd, fp_fd;
  ChainMapFD pa_fd;     // B -> C
  ChainMapFD f1_fd;     // A -> C
  ChainMapFD pil_fd;    // FP -> A
  ChainMapFD pib_fd;    // FP -> B
};

struct FiberHypothesesReport {
  CheckReport fibration;       // pA degreewise surjective on the truncation
  CheckReport acyclic;         // H(B) = 0 on the truncation
  CheckReport square_commutes; // pA.piB = f.piL on samples, all arities
  CheckReport pullback;        // chain-level square is a pullback on the truncation
  bool pass() const {
    return fibration.pass && acyclic.pass && square_commutes.pass && pullback.pass;
  }
};

FiberHypothesesReport check_fiber_hypotheses(const FiberSquare& sq, const SampleCfg& cfg,
                                             uint64_t seed, int count, int max_arity);

/// Utility: sample a tuple of elements with random degrees, forcing a few
/// degenerate cases (zeros and repeats) into every stream.
std::vector<Elem> sample_tuple(const Domain& dom, int arity, const SampleCfg& cfg, Rng& rng);

} // namespace plectic
