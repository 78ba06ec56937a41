#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "plectic/poly.hpp"
#include "plectic/rng.hpp"
#include "plectic/signs.hpp"

using namespace plectic;

TEST_CASE("rational arithmetic is exact and reduced") {
  Rat a(2, 4);
  CHECK(a.str() == "1/2");
  CHECK((Rat(1, 3) + Rat(1, 6)).str() == "1/2");
  CHECK((Rat(-2, 3) * Rat(3, 4)).str() == "-1/2");
  CHECK((Rat(7, 2) / Rat(7, 2)).is_one());
  CHECK(Rat::parse("-6/4").str() == "-3/2");
  CHECK_THROWS(Rat(1, 0));
  CHECK_THROWS(Rat(1) / Rat(0));
}

TEST_CASE("rational field laws on random samples") {
  Rng rng(7);
  for (int i = 0; i < 300; ++i) {
    Rat a = rng.rat(20, 20), b = rng.rat(20, 20), c = rng.rat(20, 20);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
  }
}

TEST_CASE("perm sign") {
  CHECK(perm_sign({0, 1, 2}) == 1);
  CHECK(perm_sign({1, 0, 2}) == -1);
  // The 3-cycle sending (1,2,3) to positions (2,3,1).
  CHECK(perm_sign({1, 2, 0}) == 1);
}

TEST_CASE("koszul sign basics") {
  CHECK(koszul_sign({1, 0}, {0, 0}) == 1);
  CHECK(koszul_sign({1, 0}, {1, 1}) == -1);
  // Reversing three degree-1 elements.
  CHECK(koszul_sign({2, 1, 0}, {1, 1, 1}) == -1);
}

namespace {

// Multiplies the Koszul factors of an explicit adjacent-swap decomposition.
int koszul_by_swaps(const Perm& p, const std::vector<int>& degs, Rng& rng) {
  // Bring the identity to p by random adjacent swaps (bubble with random order).
  std::vector<int> cur(p.size());
  for (size_t i = 0; i < p.size(); ++i) cur[i] = static_cast<int>(i);
  int sign = 1;
  while (cur != p) {
    // Pick any adjacent pair that moves toward p.
    std::vector<int> cand;
    std::vector<int> target_pos(p.size());
    for (size_t i = 0; i < p.size(); ++i) target_pos[p[i]] = static_cast<int>(i);
    for (size_t i = 0; i + 1 < cur.size(); ++i)
      if (target_pos[cur[i]] > target_pos[cur[i + 1]]) cand.push_back(static_cast<int>(i));
    int i = cand[rng.uniform(0, static_cast<int>(cand.size()) - 1)];
    if ((degs[cur[i]] * degs[cur[i + 1]]) % 2 != 0) sign = -sign;
    std::swap(cur[i], cur[i + 1]);
  }
  return sign;
}

} // namespace

TEST_CASE("koszul sign independent of swap decomposition, m <= 5") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    int m = rng.uniform(2, 5);
    Perm p(m);
    for (int i = 0; i < m; ++i) p[i] = i;
    for (int i = m - 1; i > 0; --i) std::swap(p[i], p[rng.uniform(0, i)]);
    std::vector<int> degs(m);
    for (auto& d : degs) d = rng.uniform(0, 3);
    int reference = koszul_sign(p, degs);
    for (int rep = 0; rep < 3; ++rep) CHECK(koszul_by_swaps(p, degs, rng) == reference);
  }
}

TEST_CASE("unshuffle counts and block monotonicity") {
  CHECK(unshuffles(1, 1).size() == 2);
  CHECK(unshuffles(2, 1).size() == 3);
  auto u32 = unshuffles(3, 2);
  CHECK(u32.size() == 10);
  for (const auto& p : u32) {
    for (int i = 0; i + 1 < 3; ++i) CHECK(p[i] < p[i + 1]);
    for (int i = 3; i + 1 < 5; ++i) CHECK(p[i] < p[i + 1]);
  }
  for (int k = 0; k <= 8; ++k)
    for (int l = 0; k + l <= 8; ++l)
      CHECK(static_cast<long>(unshuffles(k, l).size()) == binomial(k + l, k));
}

TEST_CASE("chi multiplicative on composable unshuffle pairs") {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    int m = rng.uniform(2, 5);
    Perm a(m), b(m);
    for (int i = 0; i < m; ++i) a[i] = b[i] = i;
    for (int i = m - 1; i > 0; --i) std::swap(a[i], a[rng.uniform(0, i)]);
    for (int i = m - 1; i > 0; --i) std::swap(b[i], b[rng.uniform(0, i)]);
    std::vector<int> degs(m);
    for (auto& d : degs) d = rng.uniform(0, 2);
    // chi of the composite equals the product when degrees are carried along:
    // chi(a.b) = chi(a; degs of permuted-by-b list) * chi(b; degs).
    Perm ab(m);
    for (int i = 0; i < m; ++i) ab[i] = b[a[i]];
    std::vector<int> degs_b(m);
    for (int i = 0; i < m; ++i) degs_b[i] = degs[b[i]];
    CHECK(chi_sign(ab, degs) == chi_sign(a, degs_b) * chi_sign(b, degs));
  }
}

TEST_CASE("poly arithmetic examples") {
  VarList vars = make_vars({"x", "y", "z"});
  Poly x = Poly::var(vars, 0), y = Poly::var(vars, 1), z = Poly::var(vars, 2);
  CHECK((x + y) * (x - y) == x * x - y * y);
  Poly x2y = x * x * y;
  CHECK(x2y.derivative(0) == Rat(2) * x * y);
  CHECK(x2y.eval({Rat(2), Rat(3), Rat(0)}) == Rat(12));
  CHECK((x * x - y * y).str() == "1*x^2 - 1*y^2");
  CHECK((Rat(3, 2) * x2y - z).str() == "3/2*x^2*y - 1*z");
}

TEST_CASE("poly printing round-trips exactly") {
  VarList vars = make_vars({"x", "y", "z"});
  Rng rng(21);
  SampleCfg cfg;
  cfg.poly_degree = 5;
  cfg.max_terms = 6;
  for (int i = 0; i < 300; ++i) {
    Poly p = random_poly(vars, cfg, rng);
    CHECK(Poly::parse(p.str(), vars) == p);
  }
  CHECK(Poly::parse("0", vars).is_zero());
}

TEST_CASE("poly variable mismatch is an error") {
  VarList a = make_vars({"x", "y"});
  VarList b = make_vars({"u", "v"});
  Poly pa = Poly::var(a, 0);
  Poly pb = Poly::var(b, 0);
  CHECK_THROWS(pa + pb);
}
