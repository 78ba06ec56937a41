#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "plectic/cech.hpp"

using namespace plectic;

namespace {

Interval below(long b) { return Interval{std::nullopt, Rat(b)}; }
Interval above(long a) { return Interval{Rat(a), std::nullopt}; }
Interval between(long a, long b) { return Interval{Rat(a), Rat(b)}; }
Interval all() { return Interval{}; }

CoverPtr two_box(const Patch& p) {
  // Overlap in the first coordinate, full in the others.
  std::vector<Interval> b0{below(1)}, b1{above(-1)};
  for (int i = 1; i < p.dim(); ++i) {
    b0.push_back(all());
    b1.push_back(all());
  }
  return std::make_shared<Cover>(p, std::vector<OpenBox>{{"U0", b0}, {"U1", b1}});
}

CoverPtr three_box(const Patch& p) {
  std::vector<Interval> b0{below(1)}, b1{between(-1, 2)}, b2{above(0)};
  for (int i = 1; i < p.dim(); ++i) {
    b0.push_back(all());
    b1.push_back(all());
    b2.push_back(all());
  }
  return std::make_shared<Cover>(p, std::vector<OpenBox>{{"U0", b0}, {"U1", b1}, {"U2", b2}});
}

} // namespace

TEST_CASE("nerve computation") {
  Patch p({"x", "y"});
  auto c2 = two_box(p);
  CHECK(c2->nerve.size() == 3);
  CHECK(c2->full_nerve());
  auto c3 = three_box(p);
  CHECK(c3->nerve.size() == 7);
  CHECK(c3->full_nerve());

  // Disjoint boxes: no edge.
  std::vector<OpenBox> disj{{"A", {below(0), all()}}, {"B", {above(1), all()}}};
  Cover cd(p, disj);
  CHECK(cd.nerve.size() == 2);
  CHECK_FALSE(cd.full_nerve());
}

TEST_CASE("delta on a two-open cover and delta^2 = 0") {
  Patch p({"x", "y"});
  auto cov = two_box(p);
  CechCochain c(cov, 0, 0);
  c.set({0}, PolyForm::parse("x", p));
  c.set({1}, PolyForm::parse("y", p));
  CechCochain dc = cech_delta(c);
  CHECK(dc.get({0, 1}) == PolyForm::parse("y - x", p));
  CHECK(dc.get({1, 0}) == PolyForm::parse("x - y", p));

  auto cov3 = three_box(p);
  SampleCfg cfg;
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    CechCochain r(cov3, 0, 1);
    for (int i = 0; i < 3; ++i) r.set({i}, random_form(p, 1, cfg, rng));
    CHECK(cech_delta(cech_delta(r)).is_zero());
    // Trivial cover: delta = 0.
    auto triv = trivial_cover(p);
    CechCochain t(triv, 0, 1);
    t.set({0}, random_form(p, 1, cfg, rng));
    CHECK(cech_delta(t).is_zero());
  }
}

TEST_CASE("delta commutes with contraction") {
  Patch p({"x", "y", "z"});
  auto cov = three_box(p);
  SampleCfg cfg;
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    MultiVec v = random_multivec(p, 1, cfg, rng);
    CechCochain c(cov, 0, 2);
    for (int i = 0; i < 3; ++i) c.set({i}, random_form(p, 2, cfg, rng));
    CHECK(cech_delta(cech_interior(v, c)) == cech_interior(v, cech_delta(c)));
  }
}

TEST_CASE("total differential squares to zero") {
  Patch p({"x", "y"});
  auto cov = three_box(p);
  SampleCfg cfg;
  Rng rng(11);
  for (int total = 0; total <= 2; ++total)
    for (int trial = 0; trial < 25; ++trial) {
      TotElem t = random_tot(cov, total, cfg, rng);
      CHECK(d_tot(d_tot(t)).is_zero());
    }
  // Trivial cover: d_tot is the de Rham differential.
  auto triv = trivial_cover(p);
  for (int trial = 0; trial < 10; ++trial) {
    PolyForm a = random_form(p, 1, cfg, rng);
    TotElem t = res_form(triv, a);
    TotElem dt = d_tot(t);
    CHECK(dt == res_form(triv, exterior_d(a)));
  }
}

TEST_CASE("descent data for a trivial cover at n = 2") {
  Patch p({"x", "y", "z"});
  auto cov = trivial_cover(p);
  DeligneCocycle A;
  A.cover = cov;
  A.n = 2;
  CechCochain a2(cov, 0, 2), a1(cov, 1, 1), a0(cov, 2, 0);
  a2.set({0}, PolyForm::parse("z dx^dy", p));
  A.A = {a2, a1, a0};
  CHECK(check_deligne(A, PolyForm::parse("1 dx^dy^dz", p)).pass);
  CHECK_FALSE(check_deligne(A, PolyForm::parse("2 dx^dy^dz", p)).pass);

  // twisted aggregates: trivial cover has only the top component.
  for (int m = 1; m <= 3; ++m) CHECK(A.twisted(m) == A.as_tot());
}

TEST_CASE("descent data on the two-box cover at n = 1") {
  Patch p({"x", "y"});
  auto cov = two_box(p);
  DeligneCocycle A;
  A.cover = cov;
  A.n = 1;
  CechCochain a1(cov, 0, 1), a0(cov, 1, 0);
  a1.set({0}, PolyForm::parse("x dy", p));
  a1.set({1}, PolyForm::parse("x dy + y dx + x dy", p)); // x dy + d(xy)
  a0.set({0, 1}, PolyForm::parse("x*y", p));
  A.A = {a1, a0};
  CHECK(check_deligne(A, PolyForm::parse("1 dx^dy", p)).pass);

  // Corrupt the bottom component.
  DeligneCocycle bad = A;
  CechCochain b0(cov, 1, 0);
  b0.set({0, 1}, PolyForm::parse("x*y + x", p));
  bad.A[1] = b0;
  auto rep = check_deligne(bad, PolyForm::parse("1 dx^dy", p));
  CHECK_FALSE(rep.pass);
  CHECK(rep.violated.find("descent") != std::string::npos);

  // m odd vs even twists differ in the bottom component sign.
  CHECK(A.twisted(2) == A.as_tot());
  TotElem t1 = A.twisted(1);
  CHECK(t1.comp(1).get({0, 1}) == -A.A[1].get({0, 1}));
}

TEST_CASE("collation on the trivial cover") {
  Patch p({"x", "y"});
  auto cov = trivial_cover(p);
  Collation col(cov, {Poly::constant(p.coords, Rat(1))});
  SampleCfg cfg;
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    PolyForm a = random_form(p, 1, cfg, rng);
    TotElem t = res_form(cov, a);
    CHECK(col.collate(t) == a);
    CHECK(col.H(t).is_zero());
  }
}

TEST_CASE("collation identities with formal weights") {
  Patch p({"x"});
  auto cov = two_box(p);
  Poly x = Poly::var(p.coords, 0);
  Collation col(cov, {x, Poly::constant(p.coords, Rat(1)) - x});
  SampleCfg cfg;
  Rng rng(17);
  for (int total = 0; total <= 1; ++total)
    for (int trial = 0; trial < 40; ++trial) {
      TotElem t = random_tot(cov, total, cfg, rng);
      // j . res = id on global forms of the same degree.
      PolyForm a = random_form(p, total, cfg, rng);
      CHECK(col.collate(res_form(cov, a)) == a);
      // id - res.j = d_tot H + H d_tot.
      TotElem lhs = t - res_form(cov, col.collate(t));
      TotElem rhs = col.H(d_tot(t));
      if (total >= 1) rhs = rhs + d_tot(col.H(t));
      CHECK(lhs == rhs);
    }
}

TEST_CASE("collation identities on a three-box cover of the plane") {
  Patch p({"x", "y"});
  auto cov = three_box(p);
  Poly x = Poly::var(p.coords, 0);
  Poly one = Poly::constant(p.coords, Rat(1));
  std::vector<Poly> w{x, x * x, one - x - x * x};
  Collation col(cov, w);
  SampleCfg cfg;
  cfg.poly_degree = 2;
  Rng rng(19);
  for (int total = 0; total <= 2; ++total)
    for (int trial = 0; trial < 15; ++trial) {
      TotElem t = random_tot(cov, total, cfg, rng);
      PolyForm a = random_form(p, total, cfg, rng);
      CHECK(col.collate(res_form(cov, a)) == a);
      TotElem lhs = t - res_form(cov, col.collate(t));
      TotElem rhs = col.H(d_tot(t));
      if (total >= 1) rhs = rhs + d_tot(col.H(t));
      CHECK(lhs == rhs);
    }
}

TEST_CASE("H kills cech-degree-zero elements") {
  Patch p({"x", "y"});
  auto cov = two_box(p);
  Poly x = Poly::var(p.coords, 0);
  Collation col(cov, {x, Poly::constant(p.coords, Rat(1)) - x});
  SampleCfg cfg;
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    PolyForm a = random_form(p, rng.uniform(0, 2), cfg, rng);
    CHECK(col.H(res_form(cov, a)).is_zero());
  }
}

TEST_CASE("weights must sum to one") {
  Patch p({"x"});
  auto cov = two_box(p);
  Poly x = Poly::var(p.coords, 0);
  CHECK_THROWS(Collation(cov, {x, x}));
}

TEST_CASE("truncated total cohomology matches the global truncation") {
  Patch p({"x", "y"});
  auto triv = trivial_cover(p);
  auto c = truncated_tot_cohomology(triv, 2, 2);
  for (const auto& [deg, h] : c.tot_dims) {
    int dr = c.de_rham_dims.count(deg) ? c.de_rham_dims[deg] : 0;
    CHECK(h == dr);
  }
  CHECK(c.de_rham_dims[0] == 1);
  CHECK(c.de_rham_dims[1] == 0);
  CHECK(c.de_rham_dims[2] == 0);

  auto cov = two_box(p);
  auto c2 = truncated_tot_cohomology(cov, 3, 2);
  for (const auto& [deg, h] : c2.tot_dims) {
    int dr = c2.de_rham_dims.count(deg) ? c2.de_rham_dims[deg] : 0;
    CHECK(h == dr);
  }
}

TEST_CASE("budget zero reduces to the nerve cohomology") {
  Patch p({"x", "y"});
  auto cov = three_box(p);
  auto c = truncated_tot_cohomology(cov, 2, 0);
  // Contractible nerve: one class in degree 0, nothing above.
  CHECK(c.tot_dims[0] == 1);
  CHECK(c.tot_dims[1] == 0);
  CHECK(c.tot_dims[2] == 0);
}
