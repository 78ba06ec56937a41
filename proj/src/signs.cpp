#include "plectic/signs.hpp"

#include <algorithm>
#include <stdexcept>

namespace plectic {

int perm_sign(const Perm& p) {
  int inv = 0;
  const int m = static_cast<int>(p.size());
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (p[a] > p[b]) ++inv;
  return (inv % 2 == 0) ? 1 : -1;
}

int koszul_sign(const Perm& p, const std::vector<int>& degrees) {
  const int m = static_cast<int>(p.size());
  if (degrees.size() != p.size())
    throw std::invalid_argument("koszul_sign: degree list length mismatch");
  // A pair inverted by p contributes deg(x_i)*deg(x_j).
  long acc = 0;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (p[a] > p[b]) acc += static_cast<long>(degrees[p[a]]) * degrees[p[b]];
  return (acc % 2 == 0) ? 1 : -1;
}

int chi_sign(const Perm& p, const std::vector<int>& degrees) {
  return perm_sign(p) * koszul_sign(p, degrees);
}

std::vector<Perm> unshuffles(int k, int l) {
  if (k < 0 || l < 0) throw std::invalid_argument("unshuffles: negative arity");
  const int m = k + l;
  std::vector<Perm> out;
  // Choose which source positions land in the first block, in order.
  std::vector<int> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i;
  auto emit = [&](const std::vector<int>& first) {
    Perm p(m);
    std::vector<bool> used(m, false);
    for (int i = 0; i < k; ++i) { p[i] = first[i]; used[first[i]] = true; }
    int at = k;
    for (int i = 0; i < m; ++i)
      if (!used[i]) p[at++] = i;
    out.push_back(std::move(p));
  };
  if (k == 0 || l == 0) {
    Perm id(m);
    for (int i = 0; i < m; ++i) id[i] = i;
    out.push_back(id);
    return out;
  }
  while (true) {
    emit(pick);
    int i = k - 1;
    while (i >= 0 && pick[i] == m - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

} // namespace plectic
