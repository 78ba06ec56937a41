#include "plectic/rng.hpp"

namespace plectic {

Poly random_poly(const VarList& vars, const SampleCfg& cfg, Rng& rng) {
  Poly p(vars);
  int terms = rng.uniform(0, cfg.max_terms);
  for (int t = 0; t < terms; ++t) {
    Exp e(vars->size(), 0);
    int budget = rng.uniform(0, cfg.poly_degree);
    for (int b = 0; b < budget; ++b) {
      if (vars->empty()) break;
      e[rng.uniform(0, static_cast<int>(vars->size()) - 1)] += 1;
    }
    p.add_term(e, rng.rat(cfg.max_num, cfg.max_den));
  }
  return p;
}

PolyForm random_form(const Patch& p, int degree, const SampleCfg& cfg, Rng& rng) {
  PolyForm a(p, degree);
  if (degree > p.dim()) return a;
  // A couple of random basis terms.
  int picks = rng.uniform(1, 2);
  for (int t = 0; t < picks; ++t) {
    std::vector<int> idx;
    Mask used = 0;
    while (static_cast<int>(idx.size()) < degree) {
      int i = rng.uniform(0, p.dim() - 1);
      if (used & (1u << i)) continue;
      used |= (1u << i);
      idx.push_back(i);
    }
    a += PolyForm::basis(p, idx, random_poly(p.coords, cfg, rng));
  }
  return a;
}

MultiVec random_multivec(const Patch& p, int degree, const SampleCfg& cfg, Rng& rng) {
  MultiVec a(p, degree);
  if (degree > p.dim()) return a;
  int picks = rng.uniform(1, 2);
  for (int t = 0; t < picks; ++t) {
    std::vector<int> idx;
    Mask used = 0;
    while (static_cast<int>(idx.size()) < degree) {
      int i = rng.uniform(0, p.dim() - 1);
      if (used & (1u << i)) continue;
      used |= (1u << i);
      idx.push_back(i);
    }
    a += MultiVec::basis(p, idx, random_poly(p.coords, cfg, rng));
  }
  return a;
}

} // namespace plectic
