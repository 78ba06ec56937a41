#include "plectic/linfty.hpp"

#include <sstream>
#include <stdexcept>

namespace plectic {

Elem Domain::add_e(const Elem& a, const Elem& b) const {
  if (!a.has_payload()) return b;
  if (!b.has_payload()) return a;
  if (a.degree() != b.degree()) throw std::invalid_argument("Domain::add: degree mismatch");
  return add(a, b);
}

Elem Domain::scale_e(const Rat& c, const Elem& a) const {
  if (!a.has_payload() || c.is_zero()) return Elem::zero(a.degree());
  if (c.is_one()) return a;
  return scale(c, a);
}

bool Domain::zero_e(const Elem& a) const {
  if (!a.has_payload()) return true;
  return is_zero(a);
}

std::string Domain::show_e(const Elem& a) const {
  if (!a.has_payload()) return "0";
  return show ? show(a) : std::string("<elem deg ") + std::to_string(a.degree()) + ">";
}

Elem LInfty::apply_l1(const Elem& x) const {
  if (!x.has_payload()) return Elem::zero(x.degree() - 1);
  if (x.degree() - 1 < dom->min_deg) return Elem::zero(x.degree() - 1);
  return l1(x);
}

Elem LInfty::apply_lk(int k, const std::vector<Elem>& xs) const {
  if (k == 1) return apply_l1(xs.at(0));
  int deg = k - 2;
  for (const auto& x : xs) deg += x.degree();
  if (k > max_arity) return Elem::zero(deg);
  for (const auto& x : xs)
    if (!x.has_payload()) return Elem::zero(deg);
  if (deg < dom->min_deg || deg > dom->max_deg) return Elem::zero(deg);
  return lk(k, xs);
}

Elem LMorphism::apply_f(int k, const std::vector<Elem>& xs) const {
  int deg = k - 1;
  for (const auto& x : xs) deg += x.degree();
  if (k > max_arity) return Elem::zero(deg);
  for (const auto& x : xs)
    if (!x.has_payload()) return Elem::zero(deg);
  if (deg < dst->dom->min_deg || deg > dst->dom->max_deg) return Elem::zero(deg);
  if (k == 1) return f1(xs.at(0));
  return fk(k, xs);
}

namespace {

std::vector<int> degrees_of(const std::vector<Elem>& xs) {
  std::vector<int> d(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) d[i] = xs[i].degree();
  return d;
}

std::vector<Elem> permute(const std::vector<Elem>& xs, const Perm& p) {
  std::vector<Elem> out;
  out.reserve(xs.size());
  for (int i : p) out.push_back(xs[i]);
  return out;
}

} // namespace

Elem jacobi_defect(const LInfty& L, const std::vector<Elem>& xs) {
  const int m = static_cast<int>(xs.size());
  int out_deg = m - 3;
  for (const auto& x : xs) out_deg += x.degree();
  Elem acc = Elem::zero(out_deg);
  std::vector<int> degs = degrees_of(xs);
  for (int k = 1; k <= m; ++k) {
    const int l = m + 1 - k;
    for (const auto& sigma : unshuffles(k, m - k)) {
      int sgn = chi_sign(sigma, degs);
      if ((k * (l - 1)) % 2 != 0) sgn = -sgn;
      std::vector<Elem> perm = permute(xs, sigma);
      std::vector<Elem> inner(perm.begin(), perm.begin() + k);
      Elem li = L.apply_lk(k, inner);
      std::vector<Elem> outer;
      outer.reserve(l);
      outer.push_back(li);
      for (int t = k; t < m; ++t) outer.push_back(perm[t]);
      Elem lo = L.apply_lk(l, outer);
      acc = L.dom->add_e(acc, L.dom->scale_e(Rat(sgn), lo));
    }
  }
  return acc;
}

Elem morphism_block_l1f(const LMorphism& F, const std::vector<Elem>& xs) {
  Elem fm = F.apply_f(static_cast<int>(xs.size()), xs);
  return F.dst->apply_l1(fm);
}

Elem morphism_block_I(const LMorphism& F, int k, const std::vector<Elem>& xs) {
  const int m = static_cast<int>(xs.size());
  const int j = m + 1 - k;
  int out_deg = m - 2;
  for (const auto& x : xs) out_deg += x.degree();
  Elem acc = Elem::zero(out_deg);
  if (k < 1 || k > m) return acc;
  std::vector<int> degs = degrees_of(xs);
  const Domain& dom = *F.dst->dom;
  for (const auto& sigma : unshuffles(k, m - k)) {
    int sgn = chi_sign(sigma, degs);
    if ((k * (j - 1) + 1) % 2 != 0) sgn = -sgn;
    std::vector<Elem> perm = permute(xs, sigma);
    std::vector<Elem> inner(perm.begin(), perm.begin() + k);
    Elem lk = F.src->apply_lk(k, inner);
    std::vector<Elem> args;
    args.reserve(j);
    args.push_back(lk);
    for (int t = k; t < m; ++t) args.push_back(perm[t]);
    Elem fj = F.apply_f(j, args);
    acc = dom.add_e(acc, dom.scale_e(Rat(sgn), fj));
  }
  return acc;
}

Elem morphism_block_J(const LMorphism& F, const std::vector<Elem>& xs) {
  const int m = static_cast<int>(xs.size());
  int out_deg = m - 2;
  for (const auto& x : xs) out_deg += x.degree();
  Elem acc = Elem::zero(out_deg);
  if (m < 2) return acc;
  std::vector<int> degs = degrees_of(xs);
  const Domain& dom = *F.dst->dom;
  for (int s = 1; s <= m - 1; ++s) {
    const int t = m - s;
    for (const auto& tau : unshuffles(s, m - s)) {
      if (tau[0] >= tau[s]) continue;
      int sgn = chi_sign(tau, degs);
      if ((s - 1) % 2 != 0) sgn = -sgn;
      long degsum = 0;
      for (int p = 0; p < s; ++p) degsum += degs[tau[p]];
      if (((t - 1) * degsum) % 2 != 0) sgn = -sgn;
      std::vector<Elem> perm = permute(xs, tau);
      std::vector<Elem> left(perm.begin(), perm.begin() + s);
      std::vector<Elem> right(perm.begin() + s, perm.end());
      Elem fs = F.apply_f(s, left);
      Elem ft = F.apply_f(t, right);
      if (!fs.has_payload() || !ft.has_payload()) continue;
      Elem br = F.dst->apply_lk(2, {fs, ft});
      acc = dom.add_e(acc, dom.scale_e(Rat(sgn), br));
    }
  }
  return acc;
}

Elem morphism_defect(const LMorphism& F, const std::vector<Elem>& xs) {
  const int m = static_cast<int>(xs.size());
  const Domain& dom = *F.dst->dom;
  Elem acc = morphism_block_l1f(F, xs);
  for (int k = 1; k <= m; ++k) acc = dom.add_e(acc, morphism_block_I(F, k, xs));
  acc = dom.add_e(acc, morphism_block_J(F, xs));
  return acc;
}

std::vector<Elem> sample_tuple(const Domain& dom, int arity, const SampleCfg& cfg, Rng& rng) {
  std::vector<Elem> xs;
  xs.reserve(arity);
  for (int i = 0; i < arity; ++i) {
    int deg = dom.min_deg;
    if (dom.max_deg > dom.min_deg) {
      // Bias toward the bottom degree, where the brackets live.
      deg = rng.coin() ? dom.min_deg : rng.uniform(dom.min_deg, dom.max_deg);
    }
    xs.push_back(dom.sample(deg, cfg, rng));
  }
  // Degenerate coverage: occasionally zero out or duplicate a slot.
  if (arity >= 1 && rng.uniform(0, 7) == 0)
    xs[rng.uniform(0, arity - 1)] = Elem::zero(xs[rng.uniform(0, arity - 1)].degree());
  if (arity >= 2 && rng.uniform(0, 7) == 0) xs[arity - 1] = xs[0];
  return xs;
}

namespace {

std::string tuple_str(const Domain& dom, const std::vector<Elem>& xs) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < xs.size(); ++i)
    os << (i ? "; " : "") << "deg " << xs[i].degree() << ": " << dom.show_e(xs[i]);
  os << ")";
  return os.str();
}

} // namespace

CheckReport check_generalized_jacobi(const LInfty& L, int m, const SampleCfg& cfg,
                                     uint64_t seed, int count) {
  CheckReport rep;
  rep.samples = count;
  for (int i = 0; i < count; ++i) {
    Rng rng = Rng(seed).fork(0x6a61636f62ull).fork(static_cast<uint64_t>(m)).fork(i);
    std::vector<Elem> xs = sample_tuple(*L.dom, m, cfg, rng);
    Elem defect = jacobi_defect(L, xs);
    if (!L.dom->zero_e(defect)) {
      rep.pass = false;
      rep.witness = "sample " + std::to_string(i) + " " + tuple_str(*L.dom, xs) +
                    " -> residual " + L.dom->show_e(defect);
      return rep;
    }
  }
  return rep;
}

CheckReport check_morphism(const LMorphism& F, int m, const SampleCfg& cfg,
                           uint64_t seed, int count) {
  CheckReport rep;
  rep.samples = count;
  for (int i = 0; i < count; ++i) {
    Rng rng = Rng(seed).fork(0x6d6f7270ull).fork(static_cast<uint64_t>(m)).fork(i);
    std::vector<Elem> xs = sample_tuple(*F.src->dom, m, cfg, rng);
    Elem defect = morphism_defect(F, xs);
    if (!F.dst->dom->zero_e(defect)) {
      rep.pass = false;
      rep.witness = "sample " + std::to_string(i) + " " + tuple_str(*F.src->dom, xs) +
                    " -> residual " + F.dst->dom->show_e(defect);
      return rep;
    }
  }
  return rep;
}

LMorphism compose_low(const LMorphism& F, const LMorphism& G) {
  if (F.max_arity > 2 || G.max_arity > 2)
    throw std::invalid_argument("compose_low: components beyond arity 2 present");
  if (F.src.get() != G.dst.get())
    throw std::invalid_argument("compose_low: middle structures differ");
  LMorphism h;
  h.src = G.src;
  h.dst = F.dst;
  h.max_arity = 2;
  LMorphism f = F, g = G;
  h.f1 = [f, g](const Elem& x) {
    Elem gx = g.apply_f(1, {x});
    return f.apply_f(1, {gx});
  };
  h.fk = [f, g](int k, const std::vector<Elem>& xs) -> Elem {
    int deg = k - 1;
    for (const auto& x : xs) deg += x.degree();
    if (k != 2) return Elem::zero(deg);
    Elem g2 = g.apply_f(2, xs);
    Elem t1 = f.apply_f(1, {g2});
    Elem g1a = g.apply_f(1, {xs[0]});
    Elem g1b = g.apply_f(1, {xs[1]});
    Elem t2 = f.apply_f(2, {g1a, g1b});
    return f.dst->dom->add_e(t1, t2);
  };
  return h;
}

LMorphism strict_morphism(LInftyPtr src, LInftyPtr dst, std::function<Elem(const Elem&)> f1) {
  LMorphism m;
  m.src = std::move(src);
  m.dst = std::move(dst);
  m.max_arity = 1;
  m.f1 = std::move(f1);
  m.fk = [](int k, const std::vector<Elem>& xs) -> Elem {
    int deg = k - 1;
    for (const auto& x : xs) deg += x.degree();
    return Elem::zero(deg);
  };
  return m;
}

FiberHypothesesReport check_fiber_hypotheses(const FiberSquare& sq, const SampleCfg& cfg,
                                             uint64_t seed, int count, int max_arity) {
  FiberHypothesesReport rep;

  // (i) fibration: pA degreewise surjective on the truncation.
  for (int k = sq.c_fd->lo; k <= sq.c_fd->hi; ++k) {
    Mat m = sq.pa_fd.mat(k);
    if (m.rank() != sq.c_fd->dim(k)) {
      rep.fibration.pass = false;
      rep.fibration.witness = "pA not surjective in degree " + std::to_string(k);
      break;
    }
  }

  // (ii) acyclicity of B.
  for (const auto& [k, h] : cohomology_dims(*sq.b_fd)) {
    if (h != 0) {
      rep.acyclic.pass = false;
      rep.acyclic.witness = "H_" + std::to_string(k) + "(B) = " + std::to_string(h);
      break;
    }
  }

  // (iii) the square of morphisms commutes on samples.
  if (sq.piL.max_arity != 1)
    throw std::invalid_argument("check_fiber_hypotheses: piL must be strict");
  const Domain& cdom = *sq.f.dst->dom;
  for (int m = 1; m <= max_arity && rep.square_commutes.pass; ++m) {
    for (int i = 0; i < count; ++i) {
      Rng rng = Rng(seed).fork(0x66696265ull).fork(static_cast<uint64_t>(m)).fork(i);
      std::vector<Elem> xs = sample_tuple(*sq.piL.src->dom, m, cfg, rng);
      // pA(piB_m(xs)) vs f_m(piL x1, .., piL xm).
      Elem left = sq.pA_morph.apply_f(1, {sq.piB.apply_f(m, xs)});
      std::vector<Elem> projected;
      projected.reserve(m);
      for (const auto& x : xs) projected.push_back(sq.piL.apply_f(1, {x}));
      Elem right = sq.f.apply_f(m, projected);
      Elem diff = cdom.add_e(left, cdom.scale_e(Rat(-1), right));
      rep.square_commutes.samples++;
      if (!cdom.zero_e(diff)) {
        rep.square_commutes.pass = false;
        rep.square_commutes.witness = "arity " + std::to_string(m) + " sample " +
                                      std::to_string(i) + " residual " + cdom.show_e(diff);
        break;
      }
    }
  }

  // (iv) chain-level square is a pullback on the truncation.
  for (int k = sq.fp_fd->lo; k <= sq.fp_fd->hi && rep.pullback.pass; ++k) {
    Mat pil = sq.pil_fd.mat(k);
    Mat pib = sq.pib_fd.mat(k);
    // Commutation of the linear square.
    Mat lhs = sq.f1_fd.mat(k) * pil;
    Mat rhs = sq.pa_fd.mat(k) * pib;
    if (!(lhs == rhs)) {
      rep.pullback.pass = false;
      rep.pullback.witness = "linear square does not commute in degree " + std::to_string(k);
      break;
    }
    // (piL, piB) injective with image of the expected dimension.
    Mat stacked(pil.rows() + pib.rows(), pil.cols());
    for (int j = 0; j < pil.cols(); ++j) {
      for (int i = 0; i < pil.rows(); ++i) stacked.at(i, j) = pil.at(i, j);
      for (int i = 0; i < pib.rows(); ++i) stacked.at(pil.rows() + i, j) = pib.at(i, j);
    }
    if (stacked.rank() != sq.fp_fd->dim(k)) {
      rep.pullback.pass = false;
      rep.pullback.witness = "(piL,piB) not injective in degree " + std::to_string(k);
      break;
    }
    // Expected pullback dimension: kernel of [f1 | -pA] on A_k + B_k.
    Mat gk = sq.pa_fd.mat(k);
    Mat fk = sq.f1_fd.mat(k);
    Mat m(sq.c_fd->dim(k), fk.cols() + gk.cols());
    for (int i = 0; i < sq.c_fd->dim(k); ++i) {
      for (int j = 0; j < fk.cols(); ++j) m.at(i, j) = fk.at(i, j);
      for (int j = 0; j < gk.cols(); ++j) m.at(i, fk.cols() + j) = -gk.at(i, j);
    }
    int expect = fk.cols() + gk.cols() - m.rank();
    if (expect != sq.fp_fd->dim(k)) {
      rep.pullback.pass = false;
      rep.pullback.witness = "pullback dimension mismatch in degree " + std::to_string(k) +
                             ": expected " + std::to_string(expect) + ", carrier has " +
                             std::to_string(sq.fp_fd->dim(k));
      break;
    }
  }

  return rep;
}

} // namespace plectic
