#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "plectic/observables.hpp"

using namespace plectic;

namespace {

PrePlecticPatch r2_symplectic() {
  Patch p({"x", "y"});
  return PrePlecticPatch(p, 1, PolyForm::parse("1 dx^dy", p));
}

PrePlecticPatch r3_2plectic() {
  Patch p({"x", "y", "z"});
  return PrePlecticPatch(p, 2, PolyForm::parse("1 dx^dy^dz", p));
}

} // namespace

TEST_CASE("sign conventions pinned by the printed low-arity cases") {
  CHECK(bracket_sign(2) == Rat(1));
  CHECK(bracket_sign(3) == Rat(-1));
  CHECK(bracket_sign(4) == Rat(-1));
  CHECK(cocycle_sign(1) == Rat(-1));
  CHECK(cocycle_sign(2) == Rat(1));
  CHECK(cocycle_sign(3) == Rat(1));
  CHECK(cocycle_sign(4) == Rat(-1));
}

TEST_CASE("hamiltonian pairs") {
  PrePlecticPatch P2 = r2_symplectic();
  const Patch& p2 = P2.patch;
  CHECK(is_hamiltonian(P2, MultiVec::parse("1 Dx", p2), PolyForm::parse("-1*y", p2)).pass);
  CHECK_FALSE(is_hamiltonian(P2, MultiVec::parse("1 Dx", p2), PolyForm::parse("y", p2)).pass);

  PrePlecticPatch P3 = r3_2plectic();
  const Patch& p3 = P3.patch;
  CHECK(is_hamiltonian(P3, MultiVec::parse("1 Dx", p3), PolyForm::parse("-1*y dz", p3)).pass);
  // Closed (n-1)-forms are Hamiltonian for the zero field.
  CHECK(is_hamiltonian(P3, MultiVec(p3, 1), PolyForm::parse("1 dz", p3)).pass);
}

TEST_CASE("solve_hamiltonian") {
  PrePlecticPatch P2 = r2_symplectic();
  const Patch& p2 = P2.patch;
  HamPair a = solve_hamiltonian(P2, MultiVec::parse("1 Dx", p2));
  CHECK(a.H == PolyForm::parse("-1*y", p2));
  CHECK(is_hamiltonian(P2, a.v, a.H).pass);

  HamPair z = solve_hamiltonian(P2, MultiVec(p2, 1));
  CHECK(z.H.is_zero());

  PrePlecticPatch P3 = r3_2plectic();
  const Patch& p3 = P3.patch;
  HamPair b = solve_hamiltonian(P3, MultiVec::parse("1 Dz", p3));
  CHECK(b.H == PolyForm::parse("-1/2*x dy + 1/2*y dx", p3));
  CHECK(is_hamiltonian(P3, b.v, b.H).pass);

  // A field that does not preserve omega is rejected.
  CHECK_THROWS(solve_hamiltonian(P2, MultiVec::parse("x Dx", p2)));
}

TEST_CASE("hamiltonian fields preserve omega and close under the bracket") {
  PrePlecticPatch P = r3_2plectic();
  HamFieldSpace hs = hamiltonian_fields(P, 2);
  SampleCfg cfg;
  Rng rng(19);
  for (int i = 0; i < 40; ++i) {
    MultiVec v = hs.sample(cfg, rng);
    CHECK(lie_derivative(v, P.omega).is_zero());
    MultiVec w = hs.sample(cfg, rng);
    // [v, w] is Hamiltonian with form i_{v^w} omega.
    CHECK(is_hamiltonian(P, schouten(v, w), interior(wedge(v, w), P.omega)).pass);
  }
}

TEST_CASE("observables bracket tables") {
  PrePlecticPatch P2 = r2_symplectic();
  const Patch& p2 = P2.patch;
  auto L2 = build_observables(P2, 2);
  Elem x1 = obs_elem0(P2, HamPair{MultiVec::parse("1 Dx", p2), PolyForm::parse("-1*y", p2)});
  Elem x2 = obs_elem0(P2, HamPair{MultiVec::parse("1 Dy", p2), PolyForm::parse("x", p2)});
  Elem br = L2->apply_lk(2, {x1, x2});
  CHECK(obs_pair(br).v.is_zero());
  CHECK(obs_pair(br).H == PolyForm::parse("1", p2));

  PrePlecticPatch P3 = r3_2plectic();
  const Patch& p3 = P3.patch;
  auto L3 = build_observables(P3, 2);
  Elem y1 = obs_elem0(P3, HamPair{MultiVec::parse("1 Dx", p3), PolyForm::parse("-1*y dz", p3)});
  Elem y2 = obs_elem0(P3, HamPair{MultiVec::parse("1 Dy", p3), PolyForm::parse("x dz", p3)});
  Elem y3 = obs_elem0(P3, solve_hamiltonian(P3, MultiVec::parse("1 Dz", p3)));
  Elem br2 = L3->apply_lk(2, {y1, y2});
  CHECK(obs_pair(br2).v.is_zero());
  CHECK(obs_pair(br2).H == PolyForm::parse("1 dz", p3));
  Elem tr = L3->apply_lk(3, {y1, y2, y3});
  CHECK(tr.degree() == 1);
  CHECK(obs_form(tr) == PolyForm::parse("-1", p3));
}

TEST_CASE("higher brackets vanish on positive-degree arguments") {
  PrePlecticPatch P = r3_2plectic();
  auto L = build_observables(P, 2);
  SampleCfg cfg;
  Rng rng(23);
  for (int i = 0; i < 30; ++i) {
    Elem a = L->dom->sample(0, cfg, rng);
    Elem b = L->dom->sample(0, cfg, rng);
    Elem c = L->dom->sample(1, cfg, rng);
    CHECK(L->dom->zero_e(L->apply_lk(3, {a, b, c})));
    CHECK(L->dom->zero_e(L->apply_lk(2, {a, c})));
  }
}

TEST_CASE("observables satisfy generalized Jacobi") {
  SampleCfg cfg;
  cfg.poly_degree = 2;
  PrePlecticPatch P2 = r2_symplectic();
  auto L2 = build_observables(P2, 2);
  for (int m = 1; m <= 3; ++m) CHECK(check_generalized_jacobi(*L2, m, cfg, 101, 25).pass);
  PrePlecticPatch P3 = r3_2plectic();
  auto L3 = build_observables(P3, 2);
  for (int m = 1; m <= 4; ++m) CHECK(check_generalized_jacobi(*L3, m, cfg, 102, 25).pass);
}

TEST_CASE("shifted de Rham coefficients") {
  PrePlecticPatch P2 = r2_symplectic();
  const Patch& p2 = P2.patch;
  CHECK(bh_degree0_member(P2, exterior_d(PolyForm::parse("x + y", p2))));
  // Not every 1-form is exact on the n=1 patch: d(x dy) != 0.
  CHECK_FALSE(bh_degree0_member(P2, PolyForm::parse("x dy", p2)));

  PrePlecticPatch P3 = r3_2plectic();
  auto bh = bh_complex(P3);
  CHECK(bh->dom->max_deg == 2);
  SampleCfg cfg;
  for (int m = 1; m <= 3; ++m) CHECK(check_generalized_jacobi(*bh, m, cfg, 103, 20).pass);
}

TEST_CASE("classifying cocycle components") {
  PrePlecticPatch P = r3_2plectic();
  const Patch& p = P.patch;
  auto ham = hamiltonian_lie(P, 2);
  auto bh = bh_complex(P);
  LMorphism kks = kks_cocycle(P, ham, bh);
  Elem vx = ham_elem(MultiVec::parse("1 Dx", p));
  Elem vy = ham_elem(MultiVec::parse("1 Dy", p));
  Elem vz = ham_elem(MultiVec::parse("1 Dz", p));
  CHECK(bh_form(kks.apply_f(1, {vx})) == PolyForm::parse("-1 dy^dz", p));
  CHECK(bh_form(kks.apply_f(2, {vx, vy})) == PolyForm::parse("1 dz", p));
  CHECK(bh_form(kks.apply_f(3, {vx, vy, vz})) == PolyForm::parse("1", p));
}

TEST_CASE("cocycle passes the morphism identity") {
  SampleCfg cfg;
  cfg.poly_degree = 2;
  PrePlecticPatch P2 = r2_symplectic();
  auto kks2 = kks_cocycle(P2, hamiltonian_lie(P2, 2), bh_complex(P2));
  for (int m = 1; m <= 3; ++m) CHECK(check_morphism(kks2, m, cfg, 104, 25).pass);
  PrePlecticPatch P3 = r3_2plectic();
  auto kks3 = kks_cocycle(P3, hamiltonian_lie(P3, 2), bh_complex(P3));
  for (int m = 1; m <= 4; ++m) CHECK(check_morphism(kks3, m, cfg, 105, 25).pass);
}

TEST_CASE("contraction identity behind the cocycle property") {
  PrePlecticPatch P = r3_2plectic();
  HamFieldSpace hs = hamiltonian_fields(P, 2);
  SampleCfg cfg;
  Rng rng(31);
  for (int k = 1; k <= 3; ++k)
    for (int i = 0; i < 25; ++i) {
      std::vector<MultiVec> vs;
      for (int t = 0; t < k; ++t) vs.push_back(hs.sample(cfg, rng));
      CHECK(check_kks_proof_identity(P, vs).pass);
    }
}

TEST_CASE("fiber presentation of the observables algebra") {
  SampleCfg cfg;
  cfg.poly_degree = 2;

  PrePlecticPatch P2 = r2_symplectic();
  FiberSquare s2 = kks_fiber_data(P2, 2, 2);
  auto rep2 = check_fiber_hypotheses(s2, cfg, 11, 20, 3);
  CHECK(rep2.fibration.pass);
  CHECK(rep2.acyclic.pass);
  CHECK(rep2.square_commutes.pass);
  CHECK(rep2.pullback.pass);

  // Degenerate form: the lift has no higher components but everything passes.
  Patch p2({"x", "y"});
  PrePlecticPatch Pz(p2, 1, PolyForm(p2, 2));
  FiberSquare sz = kks_fiber_data(Pz, 1, 1);
  auto repz = check_fiber_hypotheses(sz, cfg, 12, 10, 3);
  CHECK(repz.fibration.pass);
  CHECK(repz.acyclic.pass);
  CHECK(repz.square_commutes.pass);
  CHECK(repz.pullback.pass);

  PrePlecticPatch P3 = r3_2plectic();
  FiberSquare s3 = kks_fiber_data(P3, 1, 1);
  auto rep3 = check_fiber_hypotheses(s3, cfg, 13, 12, 4);
  CHECK(rep3.fibration.pass);
  CHECK(rep3.acyclic.pass);
  CHECK(rep3.square_commutes.pass);
  CHECK(rep3.pullback.pass);
}

TEST_CASE("restricting the cocycle along constant fields gives the classical 2-cocycle") {
  PrePlecticPatch P = r2_symplectic();
  const Patch& p = P.patch;
  FDLieAlgebra v2 = FDLieAlgebra::abelian(2);
  std::vector<MultiVec> rho = {MultiVec::parse("1 Dx", p), MultiVec::parse("1 Dy", p)};
  RestrictedCocycle rc = restrict_cocycle(v2, rho, P, true);
  REQUIRE(rc.action_ok.pass);
  CHECK(rc.top_scalar({0, 1}) == Rat(1));
  CHECK(check_ce_cocycle(v2, rc.top_scalar, 2).pass);
  FDLieAlgebra heis = central_extension(v2, rc.top_scalar);
  CHECK(heis.check_jacobi().pass);
  CHECK(heis.c[0][1][2] == Rat(1));
}

TEST_CASE("restricting along a non-action is rejected") {
  PrePlecticPatch P = r2_symplectic();
  const Patch& p = P.patch;
  FDLieAlgebra v2 = FDLieAlgebra::abelian(2);
  // These fields do not commute, so rho is not a morphism from the abelian algebra.
  std::vector<MultiVec> rho = {MultiVec::parse("1 Dx", p), MultiVec::parse("x Dy", p)};
  RestrictedCocycle rc = restrict_cocycle(v2, rho, P, false);
  CHECK_FALSE(rc.action_ok.pass);
}

TEST_CASE("zero omega restriction gives the zero cocycle") {
  Patch p({"x", "y"});
  PrePlecticPatch P(p, 1, PolyForm(p, 2));
  FDLieAlgebra v2 = FDLieAlgebra::abelian(2);
  std::vector<MultiVec> rho = {MultiVec::parse("1 Dx", p), MultiVec::parse("1 Dy", p)};
  RestrictedCocycle rc = restrict_cocycle(v2, rho, P, true);
  REQUIRE(rc.action_ok.pass);
  CHECK(rc.top_scalar({0, 1}) == Rat(0));
}
