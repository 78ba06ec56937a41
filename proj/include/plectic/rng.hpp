#pragma once

#include "plectic/forms.hpp"

#include <cstdint>
#include <string>

namespace plectic {

/// Deterministic splitmix64 stream.  Sub-streams forked by salt are
/// independent of evaluation order, so sampling is reproducible under
/// any parallel schedule.
class Rng {
public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [lo, hi] inclusive.
  int uniform(int lo, int hi) {
    if (hi <= lo) return lo;
    return lo + static_cast<int>(next() % static_cast<uint64_t>(hi - lo + 1));
  }

  bool coin() { return (next() & 1u) != 0; }

  /// Small rational with numerator in [-maxn, maxn] and denominator in [1, maxd].
  Rat rat(int maxn = 7, int maxd = 7) {
    int n = uniform(-maxn, maxn);
    int d = uniform(1, maxd);
    return Rat(n, d);
  }

  Rng fork(uint64_t salt) const {
    uint64_t mixed = state_ ^ (salt * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull);
    return Rng(mixed);
  }

  static uint64_t hash_str(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    return h;
  }

private:
  uint64_t state_;
};

/// Bounds for the property-test samplers.
struct SampleCfg {
  int poly_degree = 3;
  int max_terms = 3;
  int max_num = 7;
  int max_den = 7;
};

Poly random_poly(const VarList& vars, const SampleCfg& cfg, Rng& rng);
PolyForm random_form(const Patch& p, int degree, const SampleCfg& cfg, Rng& rng);
MultiVec random_multivec(const Patch& p, int degree, const SampleCfg& cfg, Rng& rng);

} // namespace plectic
