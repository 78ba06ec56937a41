#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "plectic/chain_fd.hpp"

using namespace plectic;

namespace {

ComplexPtr two_term_identity() {
  auto c = std::make_shared<ChainComplexFD>();
  c->resize(0, 1);
  c->dims = {1, 1};
  c->diff[1] = Mat::identity(1);
  return c;
}

} // namespace

TEST_CASE("is_complex") {
  ChainComplexFD zero;
  CHECK(is_complex(zero).pass);

  auto c = two_term_identity();
  CHECK(is_complex(*c).pass);

  // Three-term complex with a deliberate (1)*(1) composite.
  ChainComplexFD bad;
  bad.resize(0, 2);
  bad.dims = {1, 1, 1};
  bad.diff[1] = Mat::identity(1);
  bad.diff[2] = Mat::identity(1);
  auto rep = is_complex(bad);
  CHECK_FALSE(rep.pass);
  CHECK(rep.detail.find("nonzero") != std::string::npos);
}

TEST_CASE("cohomology dims") {
  auto c = two_term_identity();
  auto h = cohomology_dims(*c);
  CHECK(h[0] == 0);
  CHECK(h[1] == 0);

  ChainComplexFD v;
  v.resize(0, 0);
  v.dims = {3};
  auto hv = cohomology_dims(v);
  CHECK(hv[0] == 3);
}

TEST_CASE("cone of the identity is acyclic") {
  auto c0 = std::make_shared<ChainComplexFD>(ChainComplexFD::concentrated(0, 1));
  auto k0 = cone_identity(c0);
  CHECK(is_complex(k0).pass);
  for (const auto& [deg, h] : cohomology_dims(k0)) CHECK(h == 0);

  // Two-term with zero differential.
  auto c1 = std::make_shared<ChainComplexFD>();
  c1->resize(0, 1);
  c1->dims = {1, 1};
  c1->diff[1] = Mat(1, 1);
  auto k1 = cone_identity(c1);
  CHECK(is_complex(k1).pass);
  for (const auto& [deg, h] : cohomology_dims(k1)) CHECK(h == 0);

  // A longer complex with mixed ranks.
  auto c2 = std::make_shared<ChainComplexFD>();
  c2->resize(0, 2);
  c2->dims = {2, 3, 1};
  Mat d1(2, 3);
  d1.at(0, 0) = Rat(1);
  d1.at(1, 1) = Rat(2);
  Mat d2(3, 1);
  d2.at(2, 0) = Rat(5);
  c2->diff[1] = d1;
  c2->diff[2] = d2;
  REQUIRE(is_complex(*c2).pass);
  auto k2 = cone_identity(c2);
  CHECK(is_complex(k2).pass);
  for (const auto& [deg, h] : cohomology_dims(k2)) CHECK(h == 0);
}

TEST_CASE("fiber product along the identity is the source") {
  auto a = std::make_shared<ChainComplexFD>();
  a->resize(0, 1);
  a->dims = {2, 2};
  Mat d(2, 2);
  d.at(0, 0) = Rat(1);
  a->diff[1] = d;

  ChainMapFD f = identity_map(a);
  ChainMapFD g = identity_map(a);
  auto fp = fiber_product(f, g);
  CHECK(is_complex(*fp.total).pass);
  CHECK(fp.total->dim(0) == 2);
  CHECK(fp.total->dim(1) == 2);
  CHECK(is_chain_map(fp.to_a).pass);
  CHECK(is_chain_map(fp.to_b).pass);
  auto ha = cohomology_dims(*a);
  auto hp = cohomology_dims(*fp.total);
  CHECK(ha == hp);
}

TEST_CASE("fiber product of zero maps is the direct sum") {
  auto a = std::make_shared<ChainComplexFD>(ChainComplexFD::concentrated(0, 2));
  auto b = std::make_shared<ChainComplexFD>(ChainComplexFD::concentrated(0, 3));
  auto c = std::make_shared<ChainComplexFD>(ChainComplexFD::concentrated(0, 1));
  ChainMapFD f = make_chain_map(a, c);
  ChainMapFD g = make_chain_map(b, c);
  auto fp = fiber_product(f, g);
  CHECK(fp.total->dim(0) == 5);
}

TEST_CASE("fiber product projections commute with the differentials") {
  auto a = std::make_shared<ChainComplexFD>();
  a->resize(0, 1);
  a->dims = {2, 2};
  Mat da(2, 2);
  da.at(0, 1) = Rat(3);
  a->diff[1] = da;
  auto c = std::make_shared<ChainComplexFD>();
  c->resize(0, 1);
  c->dims = {1, 1};
  Mat dc(1, 1);
  dc.at(0, 0) = Rat(3);
  c->diff[1] = dc;
  ChainMapFD f = make_chain_map(a, c);
  Mat f0(1, 2), f1(1, 2);
  f0.at(0, 0) = Rat(1);
  f1.at(0, 1) = Rat(1);
  f.set(0, f0);
  f.set(1, f1);
  REQUIRE(is_chain_map(f).pass);

  // B = C + C with g the sum of the two copies.
  auto b = std::make_shared<ChainComplexFD>();
  b->resize(0, 1);
  b->dims = {2, 2};
  b->diff[1] = Mat::block_diag(dc, dc);
  ChainMapFD g = make_chain_map(b, c);
  Mat g0(1, 2), g1(1, 2);
  g0.at(0, 0) = g0.at(0, 1) = Rat(1);
  g1.at(0, 0) = g1.at(0, 1) = Rat(1);
  g.set(0, g0);
  g.set(1, g1);
  REQUIRE(is_chain_map(g).pass);

  auto fp = fiber_product(f, g);
  CHECK(is_complex(*fp.total).pass);
  CHECK(is_chain_map(fp.to_a).pass);
  CHECK(is_chain_map(fp.to_b).pass);
}
