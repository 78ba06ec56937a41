#include "plectic/quanto.hpp"

#include <sstream>
#include <stdexcept>

namespace plectic {

namespace {

// Adds a possibly-zero total element into an accumulator of fixed degree.
void acc_add(TotElem& acc, const TotElem& t, const Rat& scale = Rat(1)) {
  if (t.is_zero() || scale.is_zero()) return;
  if (t.total() != acc.total())
    throw std::logic_error("acc_add: total degree mismatch on a nonzero piece");
  for (const auto& [i, c] : t.comps()) acc.add_comp(c * scale);
}

void acc_add_form(TotElem& acc, const CoverPtr& cover, const PolyForm& a,
                  const Rat& scale = Rat(1)) {
  if (a.is_zero() || scale.is_zero()) return;
  acc_add(acc, res_form(cover, a), scale);
}

MultiVec field_of(const Elem& x, const Patch& p) {
  if (!x.has_payload() || x.degree() != 0) return MultiVec(p, 1);
  return obs_pair(x).v;
}

PolyForm form_of(const Elem& x, const Patch& p) {
  if (!x.has_payload()) return PolyForm(p, 0);
  if (x.degree() == 0) return obs_pair(x).H;
  return obs_form(x);
}

PolyForm l1_form_of(const Elem& x, const Patch& p) {
  if (!x.has_payload() || x.degree() == 0) return PolyForm(p, 0);
  return exterior_d(obs_form(x));
}

MultiVec wedge_except(const Patch& p, const std::vector<MultiVec>& vs,
                      std::initializer_list<int> skip) {
  std::vector<MultiVec> rest;
  for (int t = 0; t < static_cast<int>(vs.size()); ++t) {
    bool sk = false;
    for (int s : skip)
      if (s == t) sk = true;
    if (!sk) rest.push_back(vs[t]);
  }
  return wedge_all(p, rest);
}

} // namespace

Elem qu_elem(int degree, QuElt e) {
  if (e.v.is_zero() && e.th.is_zero()) return Elem::zero(degree);
  return Elem(degree, std::any(std::move(e)));
}

const QuElt& qu_payload(const Elem& e) { return e.as<QuElt>(); }

IdentityReport check_qu_element(const DeligneCocycle& A, const MultiVec& v, const TotElem& th) {
  IdentityReport rep;
  TotElem lhs = tot_lie(v, A.as_tot());
  TotElem rhs = d_tot(th);
  TotElem diff(A.cover, A.n);
  acc_add(diff, lhs);
  acc_add(diff, rhs, Rat(-1));
  if (!diff.is_zero()) {
    rep.pass = false;
    rep.residual = diff.str();
  }
  return rep;
}

IdentityReport check_qu_covers_hamiltonian(const PrePlecticPatch& P, const MultiVec& v) {
  IdentityReport rep;
  PolyForm dv = exterior_d(interior(v, P.omega));
  if (!dv.is_zero()) {
    rep.pass = false;
    rep.residual = dv.str();
    return rep;
  }
  // Closed polynomial forms of positive degree are exact via the homotopy.
  PolyForm iv = interior(v, P.omega);
  if (!iv.is_zero() && !(exterior_d(poincare_homotopy(iv)) == iv)) {
    rep.pass = false;
    rep.residual = "homotopy does not invert d on i_v omega";
  }
  return rep;
}

LInftyPtr build_dglie_qu(const DeligneCocycle& A, const PrePlecticPatch& P,
                         int sampler_coeff_deg) {
  const int n = P.n;
  CoverPtr cover = A.cover;
  auto dom = std::make_shared<Domain>();
  dom->name = "quantomorphisms(n=" + std::to_string(n) + ")";
  dom->min_deg = 0;
  dom->max_deg = n - 1;
  Patch patch = P.patch;
  dom->add = [patch](const Elem& a, const Elem& b) {
    const QuElt& x = qu_payload(a);
    const QuElt& y = qu_payload(b);
    QuElt out{x.v + y.v, x.th + y.th};
    return qu_elem(a.degree(), std::move(out));
  };
  dom->scale = [](const Rat& c, const Elem& a) {
    const QuElt& x = qu_payload(a);
    return qu_elem(a.degree(), QuElt{x.v * c, x.th * c});
  };
  dom->is_zero = [](const Elem& a) {
    const QuElt& x = qu_payload(a);
    return x.v.is_zero() && x.th.is_zero();
  };
  dom->show = [](const Elem& a) {
    const QuElt& x = qu_payload(a);
    return x.v.str() + "  +  [" + x.th.str() + "]";
  };
  auto hs = std::make_shared<HamFieldSpace>(hamiltonian_fields(P, sampler_coeff_deg));
  DeligneCocycle AA = A;
  PrePlecticPatch PP = P;
  dom->sample = [AA, PP, hs, cover, n](int deg, const SampleCfg& cfg, Rng& rng) -> Elem {
    if (deg == 0) {
      MultiVec v = hs->sample(cfg, rng);
      HamPair pair = solve_hamiltonian(PP, v);
      TotElem th(cover, n - 1);
      acc_add(th, tot_interior(v, AA.twisted(1)));
      acc_add(th, res_form(cover, pair.H), Rat(-1));
      if (n >= 2) {
        acc_add(th, d_tot(random_tot(cover, n - 2, cfg, rng)));
      } else {
        acc_add_form(th, cover,
                     PolyForm::from_poly(PP.patch, Poly::constant(PP.patch.coords,
                                                                  rng.rat(cfg.max_num, cfg.max_den))));
      }
      return qu_elem(0, QuElt{v, std::move(th)});
    }
    TotElem th = random_tot(cover, n - 1 - deg, cfg, rng);
    return qu_elem(deg, QuElt{MultiVec(PP.patch, 1), std::move(th)});
  };

  auto L = std::make_shared<LInfty>();
  L->dom = dom;
  L->max_arity = 2;
  Patch pt = P.patch;
  L->l1 = [pt](const Elem& x) -> Elem {
    const QuElt& e = qu_payload(x);
    return qu_elem(x.degree() - 1, QuElt{MultiVec(pt, 1), d_tot(e.th)});
  };
  L->lk = [pt](int k, const std::vector<Elem>& xs) -> Elem {
    int deg = k - 2;
    for (const auto& x : xs) deg += x.degree();
    if (k != 2) return Elem::zero(deg);
    const QuElt& a = qu_payload(xs[0]);
    const QuElt& b = qu_payload(xs[1]);
    const int da = xs[0].degree(), db = xs[1].degree();
    if (da == 0 && db == 0)
      return qu_elem(0, QuElt{schouten(a.v, b.v), tot_lie(a.v, b.th) - tot_lie(b.v, a.th)});
    if (da == 0 && db > 0)
      return qu_elem(db, QuElt{MultiVec(pt, 1), tot_lie(a.v, b.th)});
    if (da > 0 && db == 0)
      return qu_elem(da, QuElt{MultiVec(pt, 1), tot_lie(b.v, a.th) * Rat(-1)});
    return Elem::zero(deg);
  };
  return L;
}

PolyForm s_map(const PrePlecticPatch& P, const std::vector<Elem>& xs) {
  const int m = static_cast<int>(xs.size());
  const Patch& p = P.patch;
  std::vector<MultiVec> vs;
  vs.reserve(m);
  for (const auto& x : xs) vs.push_back(field_of(x, p));
  PolyForm acc(p, 0);
  for (int i = 0; i < m; ++i) {
    PolyForm th = form_of(xs[i], p);
    if (th.is_zero()) continue;
    PolyForm term = interior(wedge_except(p, vs, {i}), th);
    acc += (i % 2 == 0) ? -term : term; // (-1)^i with 1-based i
  }
  return acc;
}

LMorphism descent_morphism(const DeligneCocycle& A, const PrePlecticPatch& P,
                           LInftyPtr obs, LInftyPtr qu) {
  LMorphism f;
  f.src = std::move(obs);
  f.dst = std::move(qu);
  f.max_arity = std::max(1, P.n);
  DeligneCocycle AA = A;
  PrePlecticPatch PP = P;
  CoverPtr cover = A.cover;
  const int n = P.n;
  f.f1 = [AA, PP, cover, n](const Elem& x) -> Elem {
    if (x.degree() == 0) {
      const HamPair& pr = obs_pair(x);
      TotElem th(cover, n - 1);
      acc_add(th, tot_interior(pr.v, AA.twisted(1)));
      acc_add(th, res_form(cover, pr.H), Rat(-1));
      return qu_elem(0, QuElt{pr.v, std::move(th)});
    }
    TotElem th(cover, n - 1 - x.degree());
    acc_add(th, res_form(cover, obs_form(x)), Rat(-1));
    return qu_elem(x.degree(), QuElt{MultiVec(PP.patch, 1), std::move(th)});
  };
  f.fk = [AA, PP, cover, n](int m, const std::vector<Elem>& xs) -> Elem {
    int deg = m - 1;
    for (const auto& x : xs) deg += x.degree();
    if (m > n) return Elem::zero(deg);
    std::vector<MultiVec> vs;
    for (const auto& x : xs) vs.push_back(field_of(x, PP.patch));
    TotElem th(cover, n - 1 - deg);
    acc_add_form(th, cover, s_map(PP, xs));
    acc_add(th, tot_interior(wedge_all(PP.patch, vs), AA.twisted(m)));
    Rat z = bracket_sign(m);
    return qu_elem(deg, QuElt{MultiVec(PP.patch, 1), th * z});
  };
  return f;
}

MasterBlocks master_blocks(const LMorphism& F, const std::vector<Elem>& xs) {
  const int m = static_cast<int>(xs.size());
  const Domain& dom = *F.dst->dom;
  MasterBlocks out;
  out.l1f = morphism_block_l1f(F, xs);
  out.i1 = morphism_block_I(F, 1, xs);
  out.i2 = morphism_block_I(F, 2, xs);
  int deg = m - 2;
  for (const auto& x : xs) deg += x.degree();
  out.i3 = Elem::zero(deg);
  for (int k = 3; k <= m; ++k) out.i3 = dom.add_e(out.i3, morphism_block_I(F, k, xs));
  out.j = morphism_block_J(F, xs);
  out.total = dom.add_e(
      dom.add_e(dom.add_e(dom.add_e(out.l1f, out.i1), out.i2), out.i3), out.j);
  return out;
}

MasterReport verify_master_equation(const LMorphism& F, int m, const SampleCfg& cfg,
                                    uint64_t seed, int count) {
  MasterReport rep;
  rep.samples = count;
  const Domain& dom = *F.dst->dom;
  for (int i = 0; i < count; ++i) {
    Rng rng = Rng(seed).fork(0x6d617374ull).fork(static_cast<uint64_t>(m)).fork(i);
    std::vector<Elem> xs = sample_tuple(*F.src->dom, m, cfg, rng);
    MasterBlocks blocks = master_blocks(F, xs);
    if (!dom.zero_e(blocks.total)) {
      rep.pass = false;
      std::ostringstream os;
      os << "sample " << i << ": l1f=" << dom.show_e(blocks.l1f) << " I1=" << dom.show_e(blocks.i1)
         << " I2=" << dom.show_e(blocks.i2) << " I3=" << dom.show_e(blocks.i3)
         << " J=" << dom.show_e(blocks.j);
      rep.witness = os.str();
      return rep;
    }
  }
  return rep;
}

namespace {

IdentityReport compare_elems(const Domain& dom, const Elem& lhs, const Elem& rhs) {
  IdentityReport rep;
  Elem diff = dom.add_e(lhs, dom.scale_e(Rat(-1), rhs));
  if (!dom.zero_e(diff)) {
    rep.pass = false;
    rep.residual = dom.show_e(diff);
  }
  return rep;
}

int out_degree(const std::vector<Elem>& xs, int shift) {
  int deg = shift;
  for (const auto& x : xs) deg += x.degree();
  return deg;
}

} // namespace

IdentityReport lemma_i1_closed_form(const LMorphism& F, const DeligneCocycle& A,
                                    const PrePlecticPatch& P, const std::vector<Elem>& xs) {
  const int m = static_cast<int>(xs.size());
  const Patch& p = P.patch;
  Elem lhs = morphism_block_I(F, 1, xs);
  std::vector<MultiVec> vs;
  for (const auto& x : xs) vs.push_back(field_of(x, p));
  PolyForm acc(p, 0);
  for (int i = 0; i < m; ++i) {
    PolyForm li = l1_form_of(xs[i], p);
    if (li.is_zero()) continue;
    PolyForm term = interior(wedge_except(p, vs, {i}), li);
    acc += (i % 2 == 0) ? -term : term;
  }
  int deg = out_degree(xs, m - 2);
  TotElem th(A.cover, P.n - 1 - deg);
  acc_add_form(th, A.cover, acc, bracket_sign(m) * rat_pow_sign(m));
  Elem rhs = qu_elem(deg, QuElt{MultiVec(p, 1), std::move(th)});
  return compare_elems(*F.dst->dom, lhs, rhs);
}

IdentityReport lemma_i2_closed_form(const LMorphism& F, const DeligneCocycle& A,
                                    const PrePlecticPatch& P, const std::vector<Elem>& xs) {
  const int m = static_cast<int>(xs.size());
  const Patch& p = P.patch;
  Elem lhs = morphism_block_I(F, 2, xs);
  std::vector<MultiVec> vs;
  for (const auto& x : xs) vs.push_back(field_of(x, p));
  int deg = out_degree(xs, m - 2);

  if (m == 2) {
    // -[v1,v2] + i_{v1^v2} omega - i_{[v1,v2]} A(1), as one degree-0 element.
    MultiVec br = schouten(vs[0], vs[1]);
    TotElem th(A.cover, P.n - 1 - deg);
    acc_add_form(th, A.cover, interior(wedge(vs[0], vs[1]), P.omega));
    acc_add(th, tot_interior(br, A.twisted(1)), Rat(-1));
    Elem rhs = qu_elem(deg, QuElt{br * Rat(-1), std::move(th)});
    return compare_elems(*F.dst->dom, lhs, rhs);
  }

  Rat z = bracket_sign(m - 1); // = -(-1)^{binom(m,2)}
  TotElem th(A.cover, P.n - 1 - deg);
  acc_add_form(th, A.cover, interior(wedge_all(p, vs), P.omega),
               z * Rat(binomial(m, 2)));
  for (int i = 0; i < m; ++i)
    for (int k = i + 1; k < m; ++k) {
      MultiVec w = wedge(schouten(vs[i], vs[k]), wedge_except(p, vs, {i, k}));
      acc_add(th, tot_interior(w, A.twisted(m - 1)), z * rat_pow_sign(i + k + 2));
    }
  // Triple block: (sum_{i<k<j} - sum_{i<j<k} + sum_{j<i<k}) with 1-based signs.
  for (int i = 0; i < m; ++i)
    for (int k = i + 1; k < m; ++k)
      for (int j = 0; j < m; ++j) {
        if (j == i || j == k) continue;
        PolyForm thj = form_of(xs[j], p);
        if (thj.is_zero()) continue;
        int block = (j > k) ? 1 : ((j > i) ? -1 : 1); // i<k<j: +, i<j<k: -, j<i<k: +
        MultiVec w = wedge(schouten(vs[i], vs[k]), wedge_except(p, vs, {i, j, k}));
        Rat sgn = Rat(-block) * z * rat_pow_sign(i + k + j + 3);
        acc_add_form(th, A.cover, interior(w, thj), sgn);
      }
  Elem rhs = qu_elem(deg, QuElt{MultiVec(p, 1), std::move(th)});
  return compare_elems(*F.dst->dom, lhs, rhs);
}

IdentityReport lemma_i3_closed_form(const LMorphism& F, const DeligneCocycle& A,
                                    const PrePlecticPatch& P, const std::vector<Elem>& xs) {
  const int m = static_cast<int>(xs.size());
  const Patch& p = P.patch;
  int deg = out_degree(xs, m - 2);
  Elem lhs = Elem::zero(deg);
  for (int k = 3; k <= m; ++k)
    lhs = F.dst->dom->add_e(lhs, morphism_block_I(F, k, xs));
  std::vector<MultiVec> vs;
  for (const auto& x : xs) vs.push_back(field_of(x, p));
  long e = static_cast<long>(m + 1) * m / 2;
  Rat pref = ((e % 2 == 0) ? Rat(1) : Rat(-1)) * rat_pow_sign(m) *
             Rat(binomial(m, 2) - m + 1);
  TotElem th(A.cover, P.n - 1 - deg);
  acc_add_form(th, A.cover, interior(wedge_all(p, vs), P.omega), pref);
  Elem rhs = qu_elem(deg, QuElt{MultiVec(p, 1), std::move(th)});
  return compare_elems(*F.dst->dom, lhs, rhs);
}

IdentityReport lemma_j_as_single_brackets(const LMorphism& F, const std::vector<Elem>& xs) {
  const int m = static_cast<int>(xs.size());
  Elem lhs = morphism_block_J(F, xs);
  const Domain& dom = *F.dst->dom;
  int deg = out_degree(xs, m - 2);
  Elem rhs = Elem::zero(deg);
  if (m == 2) {
    // The two end blocks coincide here: J^2 is the single bracket.
    Elem a = F.apply_f(1, {xs[0]});
    Elem b = F.apply_f(1, {xs[1]});
    if (a.has_payload() && b.has_payload()) rhs = F.dst->apply_lk(2, {a, b});
    return compare_elems(dom, lhs, rhs);
  }
  for (int i = 0; i < m; ++i) {
    std::vector<Elem> rest;
    for (int t = 0; t < m; ++t)
      if (t != i) rest.push_back(xs[t]);
    Elem a = F.apply_f(1, {xs[i]});
    Elem b = F.apply_f(m - 1, rest);
    if (!a.has_payload() || !b.has_payload()) continue;
    Elem br = F.dst->apply_lk(2, {a, b});
    rhs = dom.add_e(rhs, dom.scale_e(rat_pow_sign(i), br)); // (-1)^{i-1}, 1-based
  }
  return compare_elems(dom, lhs, rhs);
}

IdentityReport lemma_j_closed_form(const LMorphism& F, const DeligneCocycle& A,
                                   const PrePlecticPatch& P, const std::vector<Elem>& xs) {
  const int m = static_cast<int>(xs.size());
  const Patch& p = P.patch;
  const Domain& dom = *F.dst->dom;
  int deg = out_degree(xs, m - 2);
  // lhs' = -(-1)^{binom(m,2)} J^m.
  Elem lhs = dom.scale_e(bracket_sign(m - 1), morphism_block_J(F, xs));
  std::vector<MultiVec> vs;
  for (const auto& x : xs) vs.push_back(field_of(x, p));
  TotElem th(A.cover, P.n - 1 - deg);
  // Triple bracket-and-theta block with weight 2.
  for (int i = 0; i < m; ++i)
    for (int k = i + 1; k < m; ++k)
      for (int j = 0; j < m; ++j) {
        if (j == i || j == k) continue;
        PolyForm thj = form_of(xs[j], p);
        if (thj.is_zero()) continue;
        int block = (j > k) ? 1 : ((j > i) ? -1 : 1);
        MultiVec w = wedge(schouten(vs[i], vs[k]), wedge_except(p, vs, {i, j, k}));
        Rat sgn = Rat(2 * block) * rat_pow_sign(i + k + j + 3);
        acc_add_form(th, A.cover, interior(w, thj), sgn);
      }
  // Ordered Lie-derivative block.
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      PolyForm thj = form_of(xs[j], p);
      if (thj.is_zero()) continue;
      int block = (i < j) ? 1 : -1;
      Rat sgn = Rat(block) * rat_pow_sign(i + j + 2);
      acc_add_form(th, A.cover, interior(wedge_except(p, vs, {i, j}), lie_derivative(vs[i], thj)),
                   sgn);
    }
  // Bracket contraction of the twisted aggregate.
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      MultiVec w = wedge(schouten(vs[i], vs[j]), wedge_except(p, vs, {i, j}));
      acc_add(th, tot_interior(w, A.twisted(m - 1)), Rat(-2) * rat_pow_sign(i + j + 2));
    }
  // Lie derivative of the twisted aggregate.
  for (int i = 0; i < m; ++i) {
    TotElem lie = tot_lie(vs[i], A.twisted(m - 1));
    TotElem contracted = tot_interior(wedge_except(p, vs, {i}), lie);
    acc_add(th, contracted, Rat(-1) * rat_pow_sign(i + 1));
  }
  Elem rhs = qu_elem(deg, QuElt{MultiVec(p, 1), std::move(th)});
  return compare_elems(dom, lhs, rhs);
}

IdentityReport lemma_l1f_closed_form(const LMorphism& F, const DeligneCocycle& A,
                                     const PrePlecticPatch& P, const std::vector<Elem>& xs) {
  const int m = static_cast<int>(xs.size());
  const Patch& p = P.patch;
  Elem fm = F.apply_f(m, xs);
  Elem lhs = F.dst->apply_l1(fm);
  std::vector<MultiVec> vs;
  for (const auto& x : xs) vs.push_back(field_of(x, p));
  MultiVec vbar = wedge_all(p, vs);
  int deg = out_degree(xs, m - 2);
  TotElem th(A.cover, P.n - 1 - deg);
  acc_add_form(th, A.cover, exterior_d(s_map(P, xs)));
  acc_add_form(th, A.cover, interior(vbar, P.omega), rat_pow_sign(m));
  acc_add(th, tot_lie(vbar, A.twisted(m - 1)));
  Elem rhs = qu_elem(deg, QuElt{MultiVec(p, 1), th * bracket_sign(m)});
  return compare_elems(*F.dst->dom, lhs, rhs);
}

} // namespace plectic
