#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "plectic/quanto.hpp"
#include "plectic/zoo.hpp"

using namespace plectic;

namespace {

struct Setup {
  PrequantData data;
  LInftyPtr obs, qu;
  LMorphism f;
  Setup(PrequantData d, int coeff_deg = 2)
      : data(std::move(d)),
        obs(build_observables(data.P, coeff_deg)),
        qu(build_dglie_qu(data.A, data.P, coeff_deg)),
        f(descent_morphism(data.A, data.P, obs, qu)) {}
};

} // namespace

TEST_CASE("zoo descent data is valid") {
  for (const auto& d : zoo_all_prequant()) {
    CAPTURE(d.name);
    CHECK(check_deligne(d.A, d.P.omega).pass);
  }
}

TEST_CASE("quantomorphism elements satisfy the defining equation") {
  SampleCfg cfg;
  cfg.poly_degree = 2;
  for (const auto& d : zoo_all_prequant()) {
    CAPTURE(d.name);
    auto qu = build_dglie_qu(d.A, d.P, 2);
    Rng rng(5);
    for (int i = 0; i < 15; ++i) {
      Elem e = qu->dom->sample(0, cfg, rng);
      if (!e.has_payload()) continue;
      const QuElt& q = qu_payload(e);
      CHECK(check_qu_element(d.A, q.v, q.th).pass);
      CHECK(check_qu_covers_hamiltonian(d.P, q.v).pass);
    }
  }
}

TEST_CASE("explicit degree-0 element on the trivial n=2 data") {
  PrequantData d = zoo_n2_trivial();
  const Patch& p = d.P.patch;
  // d/dx + (y dz + z dy): L_{d/dx} A = 0 and d(y dz + z dy) = 0.
  TotElem th(d.A.cover, 1);
  CechCochain c(d.A.cover, 0, 1);
  c.set({0}, PolyForm::parse("y dz + z dy", p));
  th.set_comp(c);
  CHECK(check_qu_element(d.A, MultiVec::parse("1 Dx", p), th).pass);
}

TEST_CASE("quantomorphism algebra satisfies graded Jacobi") {
  SampleCfg cfg;
  cfg.poly_degree = 2;
  for (const auto& d : zoo_all_prequant()) {
    CAPTURE(d.name);
    auto qu = build_dglie_qu(d.A, d.P, 2);
    for (int m = 1; m <= 3; ++m) {
      CAPTURE(m);
      CHECK(check_generalized_jacobi(*qu, m, cfg, 606 + m, 20).pass);
    }
  }
}

TEST_CASE("linear component values on the trivial n=2 data") {
  Setup s(zoo_n2_trivial());
  const Patch& p = s.data.P.patch;
  // f1(d/dx + (-y dz)) = d/dx + (y dz + z dy) as descent data.
  Elem x = obs_elem0(s.data.P,
                     HamPair{MultiVec::parse("1 Dx", p), PolyForm::parse("-1*y dz", p)});
  Elem fx = s.f.apply_f(1, {x});
  const QuElt& q = qu_payload(fx);
  CHECK(q.v == MultiVec::parse("1 Dx", p));
  CHECK(q.th.comp(0).get({0}) == PolyForm::parse("y dz + z dy", p));
  CHECK(q.th.comp(1).is_zero());

  // f2 of the two standard pairs = z (a function on the patch).
  Elem y1 = obs_elem0(s.data.P,
                      HamPair{MultiVec::parse("1 Dx", p), PolyForm::parse("-1*y dz", p)});
  Elem y2 = obs_elem0(s.data.P,
                      HamPair{MultiVec::parse("1 Dy", p), PolyForm::parse("x dz", p)});
  Elem f2 = s.f.apply_f(2, {y1, y2});
  CHECK(f2.degree() == 1);
  CHECK(qu_payload(f2).th.comp(0).get({0}) == PolyForm::parse("z", p));

  // Degree-1 elements map to minus their restriction.
  Elem eta = obs_elem(s.data.P, 1, PolyForm::parse("x*y", p));
  Elem feta = s.f.apply_f(1, {eta});
  CHECK(qu_payload(feta).th.comp(0).get({0}) == PolyForm::parse("-1*x*y", p));
}

TEST_CASE("master equation holds blockwise on all zoo data") {
  SampleCfg cfg;
  cfg.poly_degree = 2;
  for (const auto& d : zoo_all_prequant()) {
    Setup s(d);
    for (int m = 1; m <= d.P.n + 1; ++m) {
      CAPTURE(d.name);
      CAPTURE(m);
      auto rep = verify_master_equation(s.f, m, cfg, 707 + m, 12);
      if (!rep.pass) { MESSAGE(rep.witness); }
      CHECK(rep.pass);
    }
  }
}

TEST_CASE("arity-1 block reduces to the chain-map property") {
  Setup s(zoo_n1_trivial());
  SampleCfg cfg;
  Rng rng(9);
  for (int i = 0; i < 20; ++i) {
    std::vector<Elem> xs = sample_tuple(*s.obs->dom, 1, cfg, rng);
    MasterBlocks b = master_blocks(s.f, xs);
    CHECK(s.qu->dom->zero_e(b.i2));
    CHECK(s.qu->dom->zero_e(b.i3));
    CHECK(s.qu->dom->zero_e(b.j));
    CHECK(s.qu->dom->zero_e(b.total));
  }
}

TEST_CASE("supporting identities hold on sampled tuples") {
  SampleCfg cfg;
  cfg.poly_degree = 2;
  for (const auto& d : zoo_all_prequant()) {
    Setup s(d);
    Rng rng(21);
    const int top = d.P.n + 1;
    for (int m = 2; m <= top; ++m) {
      CAPTURE(d.name);
      CAPTURE(m);
      for (int i = 0; i < 10; ++i) {
        std::vector<Elem> xs = sample_tuple(*s.obs->dom, m, cfg, rng);
        CHECK(lemma_i1_closed_form(s.f, s.data.A, s.data.P, xs).pass);
        CHECK(lemma_i2_closed_form(s.f, s.data.A, s.data.P, xs).pass);
        CHECK(lemma_j_as_single_brackets(s.f, xs).pass);
        CHECK(lemma_l1f_closed_form(s.f, s.data.A, s.data.P, xs).pass);
        if (m >= 3) {
          CHECK(lemma_i3_closed_form(s.f, s.data.A, s.data.P, xs).pass);
          CHECK(lemma_j_closed_form(s.f, s.data.A, s.data.P, xs).pass);
        }
      }
    }
  }
}

TEST_CASE("corrupting the descent data breaks the master equation") {
  PrequantData d = zoo_n2_trivial();
  const Patch& p = d.P.patch;
  // Flip the sign of the top component; curvature no longer matches omega.
  CechCochain bad(d.A.cover, 0, 2);
  bad.set({0}, PolyForm::parse("-1*z dx^dy", p));
  d.A.A[0] = bad;
  CHECK_FALSE(check_deligne(d.A, d.P.omega).pass);
}
