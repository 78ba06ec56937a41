#pragma once

#include "plectic/cech.hpp"
#include "plectic/observables.hpp"

namespace plectic {

/// Element of the quantomorphism algebra: a vector field plus a total-complex
/// component (the field is zero in positive degrees).
struct QuElt {
  MultiVec v;
  TotElem th;
};

Elem qu_elem(int degree, QuElt e);
const QuElt& qu_payload(const Elem& e);

/// The strict Lie n-algebra of infinitesimal symmetries of the descent data:
/// degree 0 is {v + theta : L_v A = d_tot theta}, positive degrees are total
/// complex elements, the bracket is the semidirect one.
LInftyPtr build_dglie_qu(const DeligneCocycle& A, const PrePlecticPatch& P,
                         int sampler_coeff_deg = 3);

/// Defining condition of a degree-0 element, checked exactly.
IdentityReport check_qu_element(const DeligneCocycle& A, const MultiVec& v, const TotElem& th);

/// S_m(x_1..x_m) = sum_i (-1)^i i_{v_1^..^hat v_i^..^v_m} theta_i  (1-based).
PolyForm s_map(const PrePlecticPatch& P, const std::vector<Elem>& xs);

/// The morphism from the observables algebra into the quantomorphism algebra:
/// f_1(v + H) = v - res H + i_v A(1), f_1(eta) = -res eta,
/// f_m = zeta(m)(res S_m + i_{v_1^..^v_m} A(m)) for 2 <= m <= n.
LMorphism descent_morphism(const DeligneCocycle& A, const PrePlecticPatch& P,
                           LInftyPtr obs, LInftyPtr qu);

/// Blockwise evaluation of the morphism identity
/// l'_1 f_m + I_1 + I_2 + I_3 + J = 0 at arity m.
struct MasterBlocks {
  Elem l1f, i1, i2, i3, j;
  Elem total;
};

MasterBlocks master_blocks(const LMorphism& F, const std::vector<Elem>& xs);

struct MasterReport {
  bool pass = true;
  long samples = 0;
  std::string witness; // block values on the first failure
};

MasterReport verify_master_equation(const LMorphism& F, int m, const SampleCfg& cfg,
                                    uint64_t seed, int count);

/// Standalone identities used on the way to the master equation; each one
/// computes both sides independently on the given tuple.
IdentityReport lemma_i1_closed_form(const LMorphism& F, const DeligneCocycle& A,
                                    const PrePlecticPatch& P, const std::vector<Elem>& xs);
IdentityReport lemma_i2_closed_form(const LMorphism& F, const DeligneCocycle& A,
                                    const PrePlecticPatch& P, const std::vector<Elem>& xs);
IdentityReport lemma_i3_closed_form(const LMorphism& F, const DeligneCocycle& A,
                                    const PrePlecticPatch& P, const std::vector<Elem>& xs);
IdentityReport lemma_j_as_single_brackets(const LMorphism& F, const std::vector<Elem>& xs);
IdentityReport lemma_j_closed_form(const LMorphism& F, const DeligneCocycle& A,
                                   const PrePlecticPatch& P, const std::vector<Elem>& xs);
IdentityReport lemma_l1f_closed_form(const LMorphism& F, const DeligneCocycle& A,
                                     const PrePlecticPatch& P, const std::vector<Elem>& xs);

/// Every degree-0 element covers a Hamiltonian field: i_v omega is exact.
IdentityReport check_qu_covers_hamiltonian(const PrePlecticPatch& P, const MultiVec& v);

} // namespace plectic
