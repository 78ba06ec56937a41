#include "plectic/zoo.hpp"

namespace plectic {

namespace {

Interval iv_below(long b) { return Interval{std::nullopt, Rat(b)}; }
Interval iv_above(long a) { return Interval{Rat(a), std::nullopt}; }
Interval iv_between(long a, long b) { return Interval{Rat(a), Rat(b)}; }
Interval iv_all() { return Interval{}; }

} // namespace

PrePlecticPatch zoo_r2_symplectic() {
  Patch p({"x", "y"});
  return PrePlecticPatch(p, 1, PolyForm::parse("1 dx^dy", p));
}

PrePlecticPatch zoo_r3_2plectic() {
  Patch p({"x", "y", "z"});
  return PrePlecticPatch(p, 2, PolyForm::parse("1 dx^dy^dz", p));
}

PrePlecticPatch zoo_r4_2plectic() {
  Patch p({"x", "y", "z", "w"});
  return PrePlecticPatch(p, 2, PolyForm::parse("1 dx^dy^dz + 1 dx^dw^dz", p));
}

CoverPtr zoo_two_box(const Patch& p) {
  std::vector<Interval> b0{iv_below(1)}, b1{iv_above(-1)};
  for (int i = 1; i < p.dim(); ++i) {
    b0.push_back(iv_all());
    b1.push_back(iv_all());
  }
  return std::make_shared<Cover>(p, std::vector<OpenBox>{{"U0", b0}, {"U1", b1}});
}

CoverPtr zoo_three_box(const Patch& p) {
  std::vector<Interval> b0{iv_below(1)}, b1{iv_between(-1, 2)}, b2{iv_above(0)};
  for (int i = 1; i < p.dim(); ++i) {
    b0.push_back(iv_all());
    b1.push_back(iv_all());
    b2.push_back(iv_all());
  }
  return std::make_shared<Cover>(p, std::vector<OpenBox>{{"U0", b0}, {"U1", b1}, {"U2", b2}});
}

std::vector<Poly> zoo_weights(const Patch& p, int count) {
  Poly x = Poly::var(p.coords, 0);
  Poly one = Poly::constant(p.coords, Rat(1));
  if (count == 1) return {one};
  if (count == 2) return {x, one - x};
  if (count == 3) return {x, x * x, one - x - x * x};
  throw std::invalid_argument("zoo_weights: unsupported cover size");
}

PrequantData zoo_n1_trivial() {
  PrequantData d{"n1-trivial", zoo_r2_symplectic(), {}};
  const Patch& p = d.P.patch;
  CoverPtr cov = trivial_cover(p);
  d.A.cover = cov;
  d.A.n = 1;
  CechCochain a1(cov, 0, 1), a0(cov, 1, 0);
  a1.set({0}, PolyForm::parse("x dy", p));
  d.A.A = {a1, a0};
  return d;
}

PrequantData zoo_n1_twobox() {
  PrequantData d{"n1-twobox", zoo_r2_symplectic(), {}};
  const Patch& p = d.P.patch;
  CoverPtr cov = zoo_two_box(p);
  d.A.cover = cov;
  d.A.n = 1;
  CechCochain a1(cov, 0, 1), a0(cov, 1, 0);
  a1.set({0}, PolyForm::parse("x dy", p));
  a1.set({1}, PolyForm::parse("x dy + y dx + x dy", p)); // x dy + d(xy)
  a0.set({0, 1}, PolyForm::parse("x*y", p));
  d.A.A = {a1, a0};
  return d;
}

PrequantData zoo_n2_trivial() {
  PrequantData d{"n2-trivial", zoo_r3_2plectic(), {}};
  const Patch& p = d.P.patch;
  CoverPtr cov = trivial_cover(p);
  d.A.cover = cov;
  d.A.n = 2;
  CechCochain a2(cov, 0, 2), a1(cov, 1, 1), a0(cov, 2, 0);
  a2.set({0}, PolyForm::parse("z dx^dy", p));
  d.A.A = {a2, a1, a0};
  return d;
}

PrequantData zoo_n2_twobox() {
  PrequantData d{"n2-twobox", zoo_r3_2plectic(), {}};
  const Patch& p = d.P.patch;
  CoverPtr cov = zoo_two_box(p);
  d.A.cover = cov;
  d.A.n = 2;
  CechCochain a2(cov, 0, 2), a1(cov, 1, 1), a0(cov, 2, 0);
  a2.set({0}, PolyForm::parse("z dx^dy", p));
  // Same curvature, shifted by the exact form d(x*y dz) on the second open.
  a2.set({1}, PolyForm::parse("z dx^dy + y dx^dz + x dy^dz", p));
  a1.set({0, 1}, PolyForm::parse("x*y dz", p));
  d.A.A = {a2, a1, a0};
  return d;
}

std::vector<PrequantData> zoo_all_prequant() {
  return {zoo_n1_trivial(), zoo_n1_twobox(), zoo_n2_trivial(), zoo_n2_twobox()};
}

} // namespace plectic
