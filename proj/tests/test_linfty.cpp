#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "plectic/fd_lie.hpp"
#include "plectic/linfty.hpp"

using namespace plectic;

TEST_CASE("abelian structures satisfy every Jacobi identity") {
  auto cx = std::make_shared<ChainComplexFD>();
  cx->resize(0, 2);
  cx->dims = {2, 2, 1};
  Mat d1(2, 2);
  d1.at(0, 0) = Rat(1);
  Mat d2(2, 1);
  d2.at(1, 0) = Rat(1);
  cx->diff[1] = d1;
  cx->diff[2] = d2;
  REQUIRE(is_complex(*cx).pass);

  FDGraded fg = fd_domain("abelian", cx);
  auto L = std::make_shared<LInfty>();
  L->dom = fg.dom;
  L->max_arity = 1;
  ComplexPtr cc = cx;
  L->l1 = [cc](const Elem& x) {
    return fd_elem(x.degree() - 1, cc->d(x.degree()).apply(fd_coords(x)));
  };
  L->lk = [](int k, const std::vector<Elem>& xs) {
    int deg = k - 2;
    for (const auto& x : xs) deg += x.degree();
    return Elem::zero(deg);
  };
  SampleCfg cfg;
  for (int m = 1; m <= 4; ++m) CHECK(check_generalized_jacobi(*L, m, cfg, 42, 40).pass);
}

TEST_CASE("su(2) satisfies Jacobi; a corrupted copy does not") {
  FDLieAlgebra su2 = FDLieAlgebra::su2();
  CHECK(su2.check_antisymmetry().pass);
  CHECK(su2.check_jacobi().pass);
  auto L = fd_lie_structure(su2);
  SampleCfg cfg;
  for (int m = 1; m <= 3; ++m) CHECK(check_generalized_jacobi(*L, m, cfg, 7, 60).pass);

  FDLieAlgebra bad = su2;
  bad.c[0][1][2] = Rat(-1); // flip one structure constant
  CHECK_FALSE(bad.check_jacobi().pass);
  auto Lbad = fd_lie_structure(bad);
  CHECK_FALSE(check_generalized_jacobi(*Lbad, 3, cfg, 7, 60).pass);
}

TEST_CASE("identity morphism passes the morphism identity") {
  auto L = fd_lie_structure(FDLieAlgebra::su2());
  LMorphism id;
  id.src = L;
  id.dst = L;
  id.max_arity = 1;
  id.f1 = [](const Elem& x) { return x; };
  id.fk = [](int k, const std::vector<Elem>& xs) {
    int deg = k - 1;
    for (const auto& x : xs) deg += x.degree();
    return Elem::zero(deg);
  };
  SampleCfg cfg;
  for (int m = 1; m <= 2; ++m) CHECK(check_morphism(id, m, cfg, 13, 60).pass);
}

TEST_CASE("chain map between abelian structures passes for all arities") {
  auto cx = std::make_shared<ChainComplexFD>();
  cx->resize(0, 1);
  cx->dims = {2, 2};
  Mat d(2, 2);
  d.at(0, 0) = Rat(2);
  cx->diff[1] = d;
  FDGraded fg = fd_domain("a", cx);
  auto mk = [&](DomainPtr dom) {
    auto L = std::make_shared<LInfty>();
    L->dom = dom;
    L->max_arity = 1;
    ComplexPtr cc = cx;
    L->l1 = [cc](const Elem& x) {
      return fd_elem(x.degree() - 1, cc->d(x.degree()).apply(fd_coords(x)));
    };
    L->lk = [](int k, const std::vector<Elem>& xs) {
      int deg = k - 2;
      for (const auto& x : xs) deg += x.degree();
      return Elem::zero(deg);
    };
    return L;
  };
  auto L = mk(fg.dom);
  // f1 = multiplication by 3 commutes with d.
  LMorphism f = strict_morphism(L, L, [](const Elem& x) {
    std::vector<Rat> v = fd_coords(x);
    for (auto& r : v) r *= Rat(3);
    return fd_elem(x.degree(), std::move(v));
  });
  SampleCfg cfg;
  for (int m = 1; m <= 4; ++m) CHECK(check_morphism(f, m, cfg, 5, 40).pass);
}

TEST_CASE("string data on su(2)") {
  SampleCfg cfg;
  StringData sd = string_cocycle(FDLieAlgebra::su2(), cfg);
  // Killing form -2*delta.
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(sd.killing.at(i, j) == (i == j ? Rat(-2) : Rat(0)));
  CHECK(sd.mu[0][1][2] == Rat(-2));
  // Full antisymmetry of mu.
  int idx[6][3] = {{0, 1, 2}, {1, 0, 2}, {1, 2, 0}, {2, 1, 0}, {2, 0, 1}, {0, 2, 1}};
  int sgn[6] = {1, -1, 1, -1, 1, -1};
  for (int t = 0; t < 6; ++t)
    CHECK(sd.mu[idx[t][0]][idx[t][1]][idx[t][2]] == Rat(-2 * sgn[t]));
  // mu is a 3-cocycle.
  FDLieAlgebra g = FDLieAlgebra::su2();
  CECochain mu = [&](const std::vector<int>& t) { return sd.mu[t[0]][t[1]][t[2]]; };
  CHECK(check_ce_cocycle(g, mu, 3).pass);
  // Lie 2-algebra Jacobi up to arity 4.
  for (int m = 1; m <= 4; ++m)
    CHECK(check_generalized_jacobi(*sd.lie2, m, cfg, 99, 60).pass);
  // Chain-level fiber hypotheses.
  auto rep = check_fiber_hypotheses(sd.square, cfg, 11, 40, 4);
  CHECK(rep.fibration.pass);
  CHECK(rep.acyclic.pass);
  CHECK(rep.square_commutes.pass);
  CHECK(rep.pullback.pass);
}

TEST_CASE("degenerate Killing form is rejected") {
  SampleCfg cfg;
  CHECK_THROWS(string_cocycle(FDLieAlgebra::abelian(2), cfg));
}

TEST_CASE("heisenberg extension satisfies Jacobi") {
  FDLieAlgebra v2 = FDLieAlgebra::abelian(2);
  CECochain c = [](const std::vector<int>& t) {
    return (t[0] == 0 && t[1] == 1) ? Rat(1) : Rat(0);
  };
  FDLieAlgebra heis = central_extension(v2, c);
  CHECK(heis.dim() == 3);
  CHECK(heis.check_antisymmetry().pass);
  CHECK(heis.check_jacobi().pass);
  CHECK(heis.c[0][1][2] == Rat(1));
}

TEST_CASE("compose_low on strict morphisms and associativity") {
  auto L = fd_lie_structure(FDLieAlgebra::su2());
  auto scale_by = [&](long k) {
    return strict_morphism(L, L, [k](const Elem& x) {
      std::vector<Rat> v = fd_coords(x);
      for (auto& r : v) r *= Rat(k);
      return fd_elem(x.degree(), std::move(v));
    });
  };
  // Scaling is not a Lie morphism, but compose_low is purely formulaic.
  LMorphism a = scale_by(2), b = scale_by(3), c = scale_by(5);
  LMorphism ab_c = compose_low(compose_low(a, b), c);
  LMorphism a_bc = compose_low(a, compose_low(b, c));
  SampleCfg cfg;
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    std::vector<Elem> xs = sample_tuple(*L->dom, 2, cfg, rng);
    for (int m = 1; m <= 2; ++m) {
      std::vector<Elem> args(xs.begin(), xs.begin() + m);
      Elem lhs = ab_c.apply_f(m, args);
      Elem rhs = a_bc.apply_f(m, args);
      Elem diff = L->dom->add_e(lhs, L->dom->scale_e(Rat(-1), rhs));
      CHECK(L->dom->zero_e(diff));
    }
  }
  // Composite with the identity is the original.
  LMorphism idm = strict_morphism(L, L, [](const Elem& x) { return x; });
  LMorphism comp = compose_low(a, idm);
  Rng rng2(4);
  for (int i = 0; i < 30; ++i) {
    std::vector<Elem> xs = sample_tuple(*L->dom, 1, cfg, rng2);
    Elem diff = L->dom->add_e(comp.apply_f(1, xs),
                              L->dom->scale_e(Rat(-1), a.apply_f(1, xs)));
    CHECK(L->dom->zero_e(diff));
  }
}
