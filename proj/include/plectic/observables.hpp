#pragma once

#include "plectic/fd_lie.hpp"
#include "plectic/linfty.hpp"
#include "plectic/truncate.hpp"

namespace plectic {

/// Closed (n+1)-form on a coordinate patch.  Closedness is verified at
/// construction; no nondegeneracy is assumed.
struct PrePlecticPatch {
  Patch patch;
  int n = 1;
  PolyForm omega;

  PrePlecticPatch(Patch p, int n_deg, PolyForm om);
};

/// Pair of a vector field and an (n-1)-form with i_v omega + dH = 0.
struct HamPair {
  MultiVec v;
  PolyForm H;
};

IdentityReport is_hamiltonian(const PrePlecticPatch& P, const MultiVec& v, const PolyForm& H);

/// H = -h(i_v omega) via the contraction homotopy; throws when i_v omega is
/// not closed (v not even a symmetry of omega).
HamPair solve_hamiltonian(const PrePlecticPatch& P, const MultiVec& v);

/// Sign attached to the k-ary bracket of the observables algebra, k >= 3.
Rat bracket_sign(int k);
/// Sign attached to the k-ary component of the classifying cocycle.
Rat cocycle_sign(int k);

/// Precomputed basis of the space of Hamiltonian fields with coefficient
/// degree <= coeff_deg (kernel of v -> d(i_v omega), computed exactly).
struct HamFieldSpace {
  MultiVecSpace ambient;
  Subspace fields;   // inside ambient coordinates
  MultiVec sample(const SampleCfg& cfg, Rng& rng) const;
  MultiVec member(const std::vector<Rat>& coords) const;
};

HamFieldSpace hamiltonian_fields(const PrePlecticPatch& P, int coeff_deg);

/// Element payloads for the observables algebra: degree 0 holds a HamPair,
/// positive degrees hold a PolyForm of form degree n-1-deg.
Elem obs_elem0(const PrePlecticPatch& P, HamPair pair);
Elem obs_elem(const PrePlecticPatch& P, int degree, PolyForm eta);
const HamPair& obs_pair(const Elem& e);
const PolyForm& obs_form(const Elem& e);

/// The Lie n-algebra of local observables of (X, omega).
LInftyPtr build_observables(const PrePlecticPatch& P, int sampler_coeff_deg = 3);

/// The abelian structure on Omega^0 -> .. -> Omega^{n-1} -> d Omega^{n-1},
/// with the exact n-forms in degree 0.
LInftyPtr bh_complex(const PrePlecticPatch& P);
Elem bh_elem(const PrePlecticPatch& P, int degree, PolyForm a);
const PolyForm& bh_form(const Elem& e);
/// Degree-0 membership: exact n-forms, decided constructively.
bool bh_degree0_member(const PrePlecticPatch& P, const PolyForm& a);

/// Hamiltonian vector fields as a Lie algebra (degree 0 only).
LInftyPtr hamiltonian_lie(const PrePlecticPatch& P, int sampler_coeff_deg = 3);
Elem ham_elem(const MultiVec& v);
const MultiVec& ham_field(const Elem& e);

/// The classifying cocycle: components kappa(k) i_{v1^..^vk} omega from the
/// Hamiltonian fields into the shifted truncated de Rham complex.
LMorphism kks_cocycle(const PrePlecticPatch& P, LInftyPtr ham, LInftyPtr bh);

/// Standalone contraction identity used to prove the cocycle property:
/// d i_{v1^..^vk} omega = sum_{i<j} (-1)^{i+j+k} i_{[vi,vj]^..} omega.
IdentityReport check_kks_proof_identity(const PrePlecticPatch& P,
                                        const std::vector<MultiVec>& vs);

/// Homotopy-fiber presentation of the observables algebra: the cone of the
/// identity over the truncated de Rham complex, the projection onto the
/// shifted slot, and the lift of the cocycle.
FiberSquare kks_fiber_data(const PrePlecticPatch& P, int truncation, int sampler_coeff_deg = 3);

/// Pullback of the cocycle along a Lie algebra action by Hamiltonian fields.
struct RestrictedCocycle {
  std::vector<std::function<PolyForm(const std::vector<int>&)>> components; // arity k -> basis tuple
  CECochain top_scalar;  // arity n+1 evaluated at the origin
  IdentityReport action_ok;
};

RestrictedCocycle restrict_cocycle(const FDLieAlgebra& g, const std::vector<MultiVec>& rho,
                                   const PrePlecticPatch& P, bool evaluate_at_zero);

} // namespace plectic
