#pragma once

#include "plectic/quanto.hpp"

namespace plectic {

/// ---- n = 1 -------------------------------------------------------------

/// Bracket on X(X) + C^inf(X): [v1,v2] + L_1 c2 - L_2 c1 - i_{v1^v2} omega.
struct Atiyah1Elt {
  MultiVec v;
  PolyForm c; // 0-form
};

Atiyah1Elt atiyah1_bracket(const PrePlecticPatch& P, const Atiyah1Elt& a, const Atiyah1Elt& b);
IdentityReport check_atiyah1_jacobi(const PrePlecticPatch& P, const Atiyah1Elt& a,
                                    const Atiyah1Elt& b, const Atiyah1Elt& c);

/// Descent-side model at n = 1: pairs (v, theta in C^0(U, Omega^0)) with
/// L_v A^0 = delta theta, bracket semidirect.
struct LieAtElt {
  MultiVec v;
  CechCochain th; // cech degree 0, form degree 0
};

LieAtElt lie_at_bracket(const LieAtElt& a, const LieAtElt& b);
IdentityReport check_lie_at_member(const DeligneCocycle& A, const LieAtElt& e);

/// psi(v + c) = v - res c + i_v A^1; a bracket-preserving bijection.
LieAtElt atiyah1_psi(const DeligneCocycle& A, const Atiyah1Elt& e);

struct Psi1Report {
  CheckReport bracket_preserved;
  CheckReport square_commutes; // psi . incl = incl . f1 on Hamiltonian pairs
  CheckReport bijective;       // matrix rank on a truncated slice
};

Psi1Report check_atiyah1_psi(const DeligneCocycle& A, const PrePlecticPatch& P,
                             const SampleCfg& cfg, uint64_t seed, int count, int truncation);

/// ---- n = 2 -------------------------------------------------------------

/// Payloads: degree 0 of the Courant algebra holds (v, 1-form), degree 1 a
/// function; the Atiyah 2-algebra holds a field in degree 0.
struct CouElt {
  MultiVec v;
  PolyForm th; // 1-form
};

Elem cou_elem0(const Patch& p, CouElt e);
Elem cou_elem1(const Patch& p, PolyForm f);
const CouElt& cou_payload(const Elem& e);
const PolyForm& cou_fun(const Elem& e);

Elem at2_elem0(const Patch& p, MultiVec v);
Elem at2_elem1(const Patch& p, PolyForm f);
const MultiVec& at2_field(const Elem& e);
const PolyForm& at2_fun(const Elem& e);

/// Symmetric pairing <v1 + th1, v2 + th2> = i_{v1} th2 + i_{v2} th1.
PolyForm courant_pairing(const CouElt& a, const CouElt& b);

LInftyPtr atiyah2(const PrePlecticPatch& P, int sampler_coeff_deg = 3);
LInftyPtr courant2(const PrePlecticPatch& P, int sampler_coeff_deg = 3);

/// The two morphisms observables -> courant -> atiyah.
LMorphism phi_morphism(const PrePlecticPatch& P, LInftyPtr obs, LInftyPtr cou);
LMorphism psi_morphism(const PrePlecticPatch& P, LInftyPtr cou, LInftyPtr at);

/// Standalone identities from the proof that psi is a morphism, plus the
/// closed form of the ternary Courant bracket.
IdentityReport courant_l3_closed_form(const PrePlecticPatch& P, const CouElt& x1,
                                      const CouElt& x2, const CouElt& x3);
IdentityReport psi_proof_identity_eta(const PrePlecticPatch& P, const PolyForm& eta,
                                      const CouElt& x);
IdentityReport psi_proof_identity_cyclic_psi2(const PrePlecticPatch& P, const CouElt& x1,
                                              const CouElt& x2, const CouElt& x3);
IdentityReport psi_proof_identity_cyclic_bracket(const PrePlecticPatch& P, const CouElt& x1,
                                                 const CouElt& x2, const CouElt& x3);

/// Truncated descent levels at n = 2: the connective level keeps form degrees
/// <= 1, the bundle level keeps only functions.
LInftyPtr dglie_courant(const DeligneCocycle& A, const PrePlecticPatch& P,
                        int sampler_coeff_deg = 3);
LInftyPtr dglie_atiyah(const DeligneCocycle& A, const PrePlecticPatch& P,
                       int sampler_coeff_deg = 3);

IdentityReport check_cou_member(const DeligneCocycle& A, const QuElt& e);
IdentityReport check_at_member(const DeligneCocycle& A, const QuElt& e);

/// Forgetful maps: i includes the full descent level into the connective one,
/// p forgets the 1-form block.
LMorphism include_qu_to_cou(LInftyPtr qu, LInftyPtr cou_dg);
LMorphism project_cou_to_at(LInftyPtr cou_dg, LInftyPtr at_dg);

/// The equivalences onto the descent models.
LMorphism fa_morphism(const DeligneCocycle& A, const PrePlecticPatch& P, LInftyPtr at,
                      LInftyPtr at_dg);
LMorphism fc_morphism(const DeligneCocycle& A, const PrePlecticPatch& P, LInftyPtr cou,
                      LInftyPtr cou_dg);

/// The six identities from the proof that f^a and f^c are morphisms.
IdentityReport fc_proof_bracket_f1(const DeligneCocycle& A, const PrePlecticPatch& P,
                                   const CouElt& x1, const CouElt& x2);
IdentityReport fc_proof_cyclic_f2(const DeligneCocycle& A, const PrePlecticPatch& P,
                                  const CouElt& x1, const CouElt& x2, const CouElt& x3);
IdentityReport fc_proof_cyclic_bracket(const DeligneCocycle& A, const PrePlecticPatch& P,
                                       const CouElt& x1, const CouElt& x2, const CouElt& x3);
IdentityReport fa_proof_bracket_f1(const DeligneCocycle& A, const PrePlecticPatch& P,
                                   const MultiVec& v1, const MultiVec& v2);
IdentityReport fa_proof_cyclic_f2(const DeligneCocycle& A, const PrePlecticPatch& P,
                                  const MultiVec& v1, const MultiVec& v2, const MultiVec& v3);
IdentityReport fa_proof_cyclic_bracket(const DeligneCocycle& A, const PrePlecticPatch& P,
                                       const MultiVec& v1, const MultiVec& v2,
                                       const MultiVec& v3);

/// Exact sameness of two arity-<=2 morphisms on sampled tuples.
CheckReport morphisms_agree(const LMorphism& F, const LMorphism& G, const SampleCfg& cfg,
                            uint64_t seed, int count, int max_arity);

/// Rank evidence that a linear component is a quasi-isomorphism on matched
/// truncations: chain map, zero kernel, equal Betti numbers, and an injective
/// induced map on homology.
struct QuasiIsoReport {
  CheckReport chain_map;
  CheckReport kernel_zero;
  CheckReport betti_match;
  CheckReport induced_injective;
  bool pass() const {
    return chain_map.pass && kernel_zero.pass && betti_match.pass && induced_injective.pass;
  }
};

QuasiIsoReport quasi_iso_evidence(const ChainMapFD& f);

/// FD truncations of the n = 2 diagram columns with the f^a / f^c matrices.
struct CourantTruncation {
  ComplexPtr at2_fd, cou_fd, at_dg_fd, cou_dg_fd;
  ChainMapFD fa_fd; // atiyah2 -> dgLie_At
  ChainMapFD fc_fd; // courant2 -> dgLie_Cou
};

CourantTruncation courant_truncation(const DeligneCocycle& A, const PrePlecticPatch& P,
                                     int truncation);

} // namespace plectic
