#include "plectic/observables.hpp"

#include <sstream>
#include <stdexcept>

namespace plectic {

PrePlecticPatch::PrePlecticPatch(Patch p, int n_deg, PolyForm om)
    : patch(std::move(p)), n(n_deg), omega(std::move(om)) {
  if (n < 1) throw std::invalid_argument("PrePlecticPatch: n must be >= 1");
  if (!omega.is_zero() && omega.degree() != n + 1)
    throw std::invalid_argument("PrePlecticPatch: omega degree must be n+1");
  if (!exterior_d(omega).is_zero())
    throw std::invalid_argument("PrePlecticPatch: omega not closed");
}

IdentityReport is_hamiltonian(const PrePlecticPatch& P, const MultiVec& v, const PolyForm& H) {
  if (!H.is_zero() && H.degree() != P.n - 1)
    throw std::invalid_argument("is_hamiltonian: H degree mismatch");
  IdentityReport rep;
  PolyForm res = interior(v, P.omega) + exterior_d(H);
  if (!res.is_zero()) {
    rep.pass = false;
    rep.residual = res.str();
  }
  return rep;
}

HamPair solve_hamiltonian(const PrePlecticPatch& P, const MultiVec& v) {
  PolyForm iv = interior(v, P.omega);
  if (!exterior_d(iv).is_zero())
    throw std::invalid_argument("solve_hamiltonian: i_v omega not closed");
  HamPair out;
  out.v = v;
  if (iv.is_zero())
    out.H = PolyForm(P.patch, P.n - 1);
  else
    out.H = -poincare_homotopy(iv);
  return out;
}

Rat bracket_sign(int k) {
  long e = static_cast<long>(k) * (k + 1) / 2;
  return (e % 2 == 0) ? Rat(-1) : Rat(1);
}

Rat cocycle_sign(int k) {
  long e = static_cast<long>(k) * (k - 1) / 2;
  return (e % 2 == 0) ? Rat(-1) : Rat(1);
}

HamFieldSpace hamiltonian_fields(const PrePlecticPatch& P, int coeff_deg) {
  HamFieldSpace out;
  out.ambient = MultiVecSpace(P.patch, 1, coeff_deg);
  if (P.n + 1 > P.patch.dim() || P.omega.is_zero()) {
    // d(i_v omega) vanishes identically: every field is Hamiltonian.
    out.fields.basis = Mat::identity(out.ambient.dim());
    return out;
  }
  int cw = 0;
  for (const auto& [m, c] : P.omega.terms()) cw = std::max(cw, c.total_degree());
  FormSpace target(P.patch, P.n + 1, coeff_deg + cw);
  Mat m = matrix_of_vec(
      [&](const MultiVec& v) { return exterior_d(interior(v, P.omega)); }, out.ambient, target);
  out.fields.basis = m.kernel_basis();
  return out;
}

MultiVec HamFieldSpace::sample(const SampleCfg& cfg, Rng& rng) const {
  std::vector<Rat> c(fields.dim());
  for (auto& r : c) r = rng.rat(cfg.max_num, cfg.max_den);
  return member(c);
}

MultiVec HamFieldSpace::member(const std::vector<Rat>& coords) const {
  return ambient.from_coords(fields.ambient(coords));
}

namespace {

struct ObsPayload {
  HamPair pair;   // degree 0
  PolyForm eta;   // positive degree
  bool is_pair = false;
};

int obs_form_degree(const PrePlecticPatch& P, int degree) { return P.n - 1 - degree; }

} // namespace

Elem obs_elem0(const PrePlecticPatch& P, HamPair pair) {
  if (pair.v.is_zero() && pair.H.is_zero()) return Elem::zero(0);
  ObsPayload pl;
  pl.pair = std::move(pair);
  pl.is_pair = true;
  (void)P;
  return Elem(0, std::any(std::move(pl)));
}

Elem obs_elem(const PrePlecticPatch& P, int degree, PolyForm eta) {
  if (degree <= 0 || degree > P.n - 1)
    throw std::invalid_argument("obs_elem: degree out of range");
  if (eta.is_zero()) return Elem::zero(degree);
  if (eta.degree() != obs_form_degree(P, degree))
    throw std::invalid_argument("obs_elem: form degree mismatch");
  ObsPayload pl;
  pl.eta = std::move(eta);
  return Elem(degree, std::any(std::move(pl)));
}

const HamPair& obs_pair(const Elem& e) { return e.as<ObsPayload>().pair; }
const PolyForm& obs_form(const Elem& e) { return e.as<ObsPayload>().eta; }

namespace {

DomainPtr obs_domain(const PrePlecticPatch& P, int coeff_deg) {
  auto dom = std::make_shared<Domain>();
  dom->name = "observables(n=" + std::to_string(P.n) + ")";
  dom->min_deg = 0;
  dom->max_deg = P.n - 1;
  PrePlecticPatch PP = P;
  dom->add = [PP](const Elem& a, const Elem& b) -> Elem {
    if (a.degree() == 0) {
      HamPair pa = obs_pair(a), pb = obs_pair(b);
      return obs_elem0(PP, HamPair{pa.v + pb.v, pa.H + pb.H});
    }
    return obs_elem(PP, a.degree(), obs_form(a) + obs_form(b));
  };
  dom->scale = [PP](const Rat& c, const Elem& a) -> Elem {
    if (a.degree() == 0) {
      const HamPair& p = obs_pair(a);
      return obs_elem0(PP, HamPair{p.v * c, p.H * c});
    }
    return obs_elem(PP, a.degree(), obs_form(a) * c);
  };
  dom->is_zero = [](const Elem& a) {
    const auto& pl = a.as<ObsPayload>();
    return pl.is_pair ? (pl.pair.v.is_zero() && pl.pair.H.is_zero()) : pl.eta.is_zero();
  };
  dom->show = [](const Elem& a) {
    const auto& pl = a.as<ObsPayload>();
    if (pl.is_pair) return pl.pair.v.str() + "  +  " + pl.pair.H.str();
    return pl.eta.str();
  };
  auto ham = std::make_shared<HamFieldSpace>(hamiltonian_fields(P, coeff_deg));
  dom->sample = [PP, ham](int deg, const SampleCfg& cfg, Rng& rng) -> Elem {
    if (deg == 0) {
      MultiVec v = ham->sample(cfg, rng);
      HamPair pair = solve_hamiltonian(PP, v);
      // Shift H by a closed form: an exact piece, plus a constant when n = 1.
      if (PP.n >= 2) {
        PolyForm extra = random_form(PP.patch, PP.n - 2, cfg, rng);
        pair.H += exterior_d(extra);
      } else {
        pair.H += PolyForm::from_poly(PP.patch, Poly::constant(PP.patch.coords, rng.rat(cfg.max_num, cfg.max_den)));
      }
      return obs_elem0(PP, std::move(pair));
    }
    PolyForm eta = random_form(PP.patch, PP.n - 1 - deg, cfg, rng);
    if (eta.is_zero()) return Elem::zero(deg);
    return obs_elem(PP, deg, std::move(eta));
  };
  return dom;
}

} // namespace

LInftyPtr build_observables(const PrePlecticPatch& P, int sampler_coeff_deg) {
  auto L = std::make_shared<LInfty>();
  L->dom = obs_domain(P, sampler_coeff_deg);
  L->max_arity = P.n + 1;
  PrePlecticPatch PP = P;
  L->l1 = [PP](const Elem& x) -> Elem {
    if (x.degree() == 1) {
      PolyForm deta = exterior_d(obs_form(x));
      return obs_elem0(PP, HamPair{MultiVec(PP.patch, 1), std::move(deta)});
    }
    return obs_elem(PP, x.degree() - 1, exterior_d(obs_form(x)));
  };
  L->lk = [PP](int k, const std::vector<Elem>& xs) -> Elem {
    int deg = k - 2;
    for (const auto& x : xs) deg += x.degree();
    for (const auto& x : xs)
      if (x.degree() != 0) return Elem::zero(deg);
    if (k == 2) {
      const HamPair& a = obs_pair(xs[0]);
      const HamPair& b = obs_pair(xs[1]);
      HamPair out{schouten(a.v, b.v), interior(wedge(a.v, b.v), PP.omega)};
      return obs_elem0(PP, std::move(out));
    }
    std::vector<MultiVec> vs;
    vs.reserve(k);
    for (const auto& x : xs) vs.push_back(obs_pair(x).v);
    PolyForm val = interior(wedge_all(PP.patch, vs), PP.omega) * bracket_sign(k);
    if (val.is_zero()) return Elem::zero(deg);
    return obs_elem(PP, k - 2, std::move(val));
  };
  return L;
}

Elem bh_elem(const PrePlecticPatch& P, int degree, PolyForm a) {
  if (degree < 0 || degree > P.n) throw std::invalid_argument("bh_elem: degree out of range");
  if (a.is_zero()) return Elem::zero(degree);
  if (a.degree() != P.n - degree) throw std::invalid_argument("bh_elem: form degree mismatch");
  return Elem(degree, std::any(std::move(a)));
}

const PolyForm& bh_form(const Elem& e) { return e.as<PolyForm>(); }

bool bh_degree0_member(const PrePlecticPatch& P, const PolyForm& a) {
  if (a.is_zero()) return true;
  if (a.degree() != P.n) return false;
  return exterior_d(poincare_homotopy(a)) == a;
}

LInftyPtr bh_complex(const PrePlecticPatch& P) {
  auto dom = std::make_shared<Domain>();
  dom->name = "shifted-de-rham(n=" + std::to_string(P.n) + ")";
  dom->min_deg = 0;
  dom->max_deg = P.n;
  PrePlecticPatch PP = P;
  dom->add = [PP](const Elem& a, const Elem& b) {
    return bh_elem(PP, a.degree(), bh_form(a) + bh_form(b));
  };
  dom->scale = [PP](const Rat& c, const Elem& a) {
    return bh_elem(PP, a.degree(), bh_form(a) * c);
  };
  dom->is_zero = [](const Elem& a) { return bh_form(a).is_zero(); };
  dom->show = [](const Elem& a) { return bh_form(a).str(); };
  dom->sample = [PP](int deg, const SampleCfg& cfg, Rng& rng) -> Elem {
    if (deg == 0) {
      PolyForm pre = random_form(PP.patch, PP.n - 1, cfg, rng);
      PolyForm a = exterior_d(pre);
      if (a.is_zero()) return Elem::zero(0);
      return bh_elem(PP, 0, std::move(a));
    }
    PolyForm a = random_form(PP.patch, PP.n - deg, cfg, rng);
    if (a.is_zero()) return Elem::zero(deg);
    return bh_elem(PP, deg, std::move(a));
  };

  auto L = std::make_shared<LInfty>();
  L->dom = dom;
  L->max_arity = 1;
  L->l1 = [PP](const Elem& x) -> Elem {
    PolyForm da = exterior_d(bh_form(x));
    if (da.is_zero()) return Elem::zero(x.degree() - 1);
    return bh_elem(PP, x.degree() - 1, std::move(da));
  };
  L->lk = [](int k, const std::vector<Elem>& xs) {
    int deg = k - 2;
    for (const auto& x : xs) deg += x.degree();
    return Elem::zero(deg);
  };
  return L;
}

Elem ham_elem(const MultiVec& v) {
  if (v.is_zero()) return Elem::zero(0);
  return Elem(0, std::any(v));
}

const MultiVec& ham_field(const Elem& e) { return e.as<MultiVec>(); }

LInftyPtr hamiltonian_lie(const PrePlecticPatch& P, int sampler_coeff_deg) {
  auto dom = std::make_shared<Domain>();
  dom->name = "hamiltonian-fields";
  dom->min_deg = 0;
  dom->max_deg = 0;
  dom->add = [](const Elem& a, const Elem& b) { return ham_elem(ham_field(a) + ham_field(b)); };
  dom->scale = [](const Rat& c, const Elem& a) { return ham_elem(ham_field(a) * c); };
  dom->is_zero = [](const Elem& a) { return ham_field(a).is_zero(); };
  dom->show = [](const Elem& a) { return ham_field(a).str(); };
  auto ham = std::make_shared<HamFieldSpace>(hamiltonian_fields(P, sampler_coeff_deg));
  dom->sample = [ham](int, const SampleCfg& cfg, Rng& rng) {
    return ham_elem(ham->sample(cfg, rng));
  };
  auto L = std::make_shared<LInfty>();
  L->dom = dom;
  L->max_arity = 2;
  L->l1 = [](const Elem& x) { return Elem::zero(x.degree() - 1); };
  L->lk = [](int k, const std::vector<Elem>& xs) -> Elem {
    if (k != 2) return Elem::zero(k - 2);
    return ham_elem(schouten(ham_field(xs[0]), ham_field(xs[1])));
  };
  return L;
}

LMorphism kks_cocycle(const PrePlecticPatch& P, LInftyPtr ham, LInftyPtr bh) {
  LMorphism f;
  f.src = std::move(ham);
  f.dst = std::move(bh);
  f.max_arity = P.n + 1;
  PrePlecticPatch PP = P;
  f.f1 = [PP](const Elem& x) -> Elem {
    PolyForm val = interior(ham_field(x), PP.omega) * cocycle_sign(1);
    if (val.is_zero()) return Elem::zero(0);
    return bh_elem(PP, 0, std::move(val));
  };
  f.fk = [PP](int k, const std::vector<Elem>& xs) -> Elem {
    std::vector<MultiVec> vs;
    vs.reserve(k);
    for (const auto& x : xs) vs.push_back(ham_field(x));
    PolyForm val = interior(wedge_all(PP.patch, vs), PP.omega) * cocycle_sign(k);
    if (val.is_zero()) return Elem::zero(k - 1);
    return bh_elem(PP, k - 1, std::move(val));
  };
  return f;
}

IdentityReport check_kks_proof_identity(const PrePlecticPatch& P,
                                        const std::vector<MultiVec>& vs) {
  const int k = static_cast<int>(vs.size());
  PolyForm lhs = exterior_d(interior(wedge_all(P.patch, vs), P.omega));
  PolyForm rhs(P.patch, lhs.degree());
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      std::vector<MultiVec> rest;
      rest.push_back(schouten(vs[i], vs[j]));
      for (int t = 0; t < k; ++t)
        if (t != i && t != j) rest.push_back(vs[t]);
      rhs += interior(wedge_all(P.patch, rest), P.omega) * rat_pow_sign(i + j + 2 + k);
    }
  IdentityReport rep;
  PolyForm res = lhs - rhs;
  if (!res.is_zero()) {
    rep.pass = false;
    rep.residual = res.str();
  }
  return rep;
}

namespace {

// Cone payload: (shifted, base) with shifted in Omega^{n-deg} and base in
// Omega^{n-1-deg}.
struct ConePayload {
  PolyForm shifted;
  PolyForm base;
};

Elem cone_elem(const PrePlecticPatch& P, int degree, PolyForm shifted, PolyForm base) {
  if (degree < 0 || degree > P.n) throw std::invalid_argument("cone_elem: degree");
  if (!shifted.is_zero() && (degree == 0 || shifted.degree() != P.n - degree))
    throw std::invalid_argument("cone_elem: shifted slot degree mismatch");
  if (!base.is_zero() && (degree == P.n || base.degree() != P.n - 1 - degree))
    throw std::invalid_argument("cone_elem: base slot degree mismatch");
  if (shifted.is_zero() && base.is_zero()) return Elem::zero(degree);
  ConePayload pl{std::move(shifted), std::move(base)};
  return Elem(degree, std::any(std::move(pl)));
}

const ConePayload& cone_payload(const Elem& e) { return e.as<ConePayload>(); }

LInftyPtr cone_structure(const PrePlecticPatch& P) {
  auto dom = std::make_shared<Domain>();
  dom->name = "cone";
  dom->min_deg = 0;
  dom->max_deg = P.n;
  PrePlecticPatch PP = P;
  dom->add = [PP](const Elem& a, const Elem& b) {
    const ConePayload& x = cone_payload(a);
    const ConePayload& y = cone_payload(b);
    return cone_elem(PP, a.degree(), x.shifted + y.shifted, x.base + y.base);
  };
  dom->scale = [PP](const Rat& c, const Elem& a) {
    const ConePayload& x = cone_payload(a);
    return cone_elem(PP, a.degree(), x.shifted * c, x.base * c);
  };
  dom->is_zero = [](const Elem& a) {
    const ConePayload& x = cone_payload(a);
    return x.shifted.is_zero() && x.base.is_zero();
  };
  dom->show = [](const Elem& a) {
    const ConePayload& x = cone_payload(a);
    return "(" + x.shifted.str() + " ; " + x.base.str() + ")";
  };
  dom->sample = [PP](int deg, const SampleCfg& cfg, Rng& rng) -> Elem {
    PolyForm sh(PP.patch, 0), ba(PP.patch, 0);
    if (deg > 0) sh = random_form(PP.patch, PP.n - deg, cfg, rng);
    if (deg < PP.n) ba = random_form(PP.patch, PP.n - 1 - deg, cfg, rng);
    return cone_elem(PP, deg, std::move(sh), std::move(ba));
  };
  auto L = std::make_shared<LInfty>();
  L->dom = dom;
  L->max_arity = 1;
  L->l1 = [PP](const Elem& x) -> Elem {
    // d(a, b) = (d a, a - d b).
    const ConePayload& pl = cone_payload(x);
    PolyForm sh = exterior_d(pl.shifted);
    PolyForm ba = pl.shifted - exterior_d(pl.base);
    if (x.degree() - 1 == 0) sh = PolyForm(PP.patch, 0);
    return cone_elem(PP, x.degree() - 1, std::move(sh), std::move(ba));
  };
  L->lk = [](int k, const std::vector<Elem>& xs) {
    int deg = k - 2;
    for (const auto& x : xs) deg += x.degree();
    return Elem::zero(deg);
  };
  return L;
}

} // namespace

FiberSquare kks_fiber_data(const PrePlecticPatch& P, int truncation, int sampler_coeff_deg) {
  FiberSquare sq;
  const int n = P.n;
  const Patch& pt = P.patch;

  LInftyPtr obs = build_observables(P, sampler_coeff_deg);
  LInftyPtr ham = hamiltonian_lie(P, sampler_coeff_deg);
  LInftyPtr bh = bh_complex(P);
  LInftyPtr cone = cone_structure(P);

  sq.f = kks_cocycle(P, ham, bh);
  PrePlecticPatch PP = P;

  sq.piL = strict_morphism(obs, ham, [](const Elem& x) -> Elem {
    if (x.degree() != 0) return Elem::zero(0);
    return ham_elem(obs_pair(x).v);
  });

  // The lift into the cone: degree-0 pairs land in the base slot, positive
  // degrees land with alternating sign, higher components in the shifted slot.
  LMorphism piB;
  piB.src = obs;
  piB.dst = cone;
  piB.max_arity = n + 1;
  piB.f1 = [PP](const Elem& x) -> Elem {
    if (x.degree() == 0)
      return cone_elem(PP, 0, PolyForm(PP.patch, 0), obs_pair(x).H);
    PolyForm eta = obs_form(x) * rat_pow_sign(x.degree());
    return cone_elem(PP, x.degree(), PolyForm(PP.patch, 0), std::move(eta));
  };
  piB.fk = [PP](int k, const std::vector<Elem>& xs) -> Elem {
    int deg = k - 1;
    for (const auto& x : xs) deg += x.degree();
    for (const auto& x : xs)
      if (x.degree() != 0) return Elem::zero(deg);
    std::vector<MultiVec> vs;
    for (const auto& x : xs) vs.push_back(obs_pair(x).v);
    PolyForm val = interior(wedge_all(PP.patch, vs), PP.omega) * cocycle_sign(k);
    return cone_elem(PP, k - 1, std::move(val), PolyForm(PP.patch, 0));
  };
  sq.piB = piB;

  sq.pA_morph = strict_morphism(cone, bh, [PP](const Elem& x) -> Elem {
    const ConePayload& pl = cone_payload(x);
    if (x.degree() == 0) {
      PolyForm db = exterior_d(pl.base);
      if (db.is_zero()) return Elem::zero(0);
      return bh_elem(PP, 0, std::move(db));
    }
    if (pl.shifted.is_zero()) return Elem::zero(x.degree());
    return bh_elem(PP, x.degree(), pl.shifted);
  });

  // Finite-dimensional truncation at the weighted budget.
  int comega = 0;
  for (const auto& [m, c] : P.omega.terms()) comega = std::max(comega, c.total_degree());
  const int D = truncation;
  const int Dw = D + comega + n;

  // C = Omega^0 .. Omega^{n-1} with Omega^{n-1-i} in degree i.
  auto cfd = std::make_shared<ChainComplexFD>();
  std::vector<FormSpace> cspace(n);
  for (int i = 0; i < n; ++i) cspace[i] = FormSpace(pt, n - 1 - i, Dw - (n - 1 - i));
  cfd->resize(0, n - 1);
  for (int i = 0; i < n; ++i) cfd->dims[i] = cspace[i].dim();
  for (int i = 1; i < n; ++i)
    cfd->set_d(i, matrix_of([](const PolyForm& a) { return exterior_d(a); }, cspace[i],
                            cspace[i - 1]));

  sq.b_fd = std::make_shared<ChainComplexFD>(cone_identity(cfd));

  // BH: degree 0 is the image of d on Omega^{n-1}, degree i >= 1 is Omega^{n-i}.
  FormSpace top(pt, n, Dw - n);
  Mat dmat = matrix_of([](const PolyForm& a) { return exterior_d(a); }, cspace[0], top);
  Subspace bh0;
  bh0.basis = dmat.column_space_basis();

  auto bhfd = std::make_shared<ChainComplexFD>();
  bhfd->resize(0, n);
  bhfd->dims[0] = bh0.dim();
  for (int i = 1; i <= n; ++i) bhfd->dims[i] = cspace[i - 1].dim();
  // d: BH_1 = Omega^{n-1} -> BH_0 in subspace coordinates.
  {
    Mat m(bh0.dim(), cspace[0].dim());
    for (int j = 0; j < cspace[0].dim(); ++j) {
      std::vector<Rat> col(top.dim());
      for (int i = 0; i < top.dim(); ++i) col[i] = dmat.at(i, j);
      auto sub = bh0.coords(col);
      if (!sub) throw std::logic_error("kks_fiber_data: image coordinates failed");
      for (int i = 0; i < bh0.dim(); ++i) m.at(i, j) = (*sub)[i];
    }
    bhfd->set_d(1, std::move(m));
  }
  for (int i = 2; i <= n; ++i)
    bhfd->set_d(i, matrix_of([](const PolyForm& a) { return exterior_d(a); }, cspace[i - 1],
                             cspace[i - 2]));
  sq.c_fd = bhfd;

  // A = Hamiltonian fields with coefficient degree <= D.
  HamFieldSpace hs = hamiltonian_fields(P, D);
  auto afd = std::make_shared<ChainComplexFD>(
      ChainComplexFD::concentrated(0, hs.fields.dim()));
  sq.a_fd = afd;

  // FP = the observables complex: degree 0 = Hamiltonian pairs.
  MultiVecSpace vec_amb = hs.ambient;
  FormSpace h_space = cspace[0];
  Mat pairmat(top.dim(), vec_amb.dim() + h_space.dim());
  {
    Mat mv = matrix_of_vec([&](const MultiVec& v) { return interior(v, P.omega); }, vec_amb, top);
    for (int i = 0; i < top.dim(); ++i) {
      for (int j = 0; j < vec_amb.dim(); ++j) pairmat.at(i, j) = mv.at(i, j);
      for (int j = 0; j < h_space.dim(); ++j) pairmat.at(i, vec_amb.dim() + j) = dmat.at(i, j);
    }
  }
  Subspace pairs;
  pairs.basis = pairmat.kernel_basis();

  auto fpfd = std::make_shared<ChainComplexFD>();
  fpfd->resize(0, n - 1);
  fpfd->dims[0] = pairs.dim();
  for (int i = 1; i < n; ++i) fpfd->dims[i] = cspace[i].dim();
  if (n >= 2) {
    // FP_1 -> FP_0: eta -> (0, d eta) in pair coordinates.
    Mat m(pairs.dim(), cspace[1].dim());
    Mat d10 = matrix_of([](const PolyForm& a) { return exterior_d(a); }, cspace[1], cspace[0]);
    for (int j = 0; j < cspace[1].dim(); ++j) {
      std::vector<Rat> amb(vec_amb.dim() + h_space.dim());
      for (int i = 0; i < h_space.dim(); ++i) amb[vec_amb.dim() + i] = d10.at(i, j);
      auto sub = pairs.coords(amb);
      if (!sub) throw std::logic_error("kks_fiber_data: pair coordinates failed");
      for (int i = 0; i < pairs.dim(); ++i) m.at(i, j) = (*sub)[i];
    }
    fpfd->set_d(1, std::move(m));
  }
  for (int i = 2; i < n; ++i)
    fpfd->set_d(i, matrix_of([](const PolyForm& a) { return exterior_d(a); }, cspace[i],
                             cspace[i - 1]));
  sq.fp_fd = fpfd;

  // Chain maps on the truncations.
  sq.pa_fd = make_chain_map(sq.b_fd, sq.c_fd);
  for (int k = 0; k <= n; ++k) {
    // cone_k = C_{k-1} + C_k (shifted block first).
    int shifted_dim = (k >= 1) ? cspace[k - 1].dim() : 0;
    int base_dim = (k <= n - 1) ? cspace[k].dim() : 0;
    Mat m(sq.c_fd->dim(k), shifted_dim + base_dim);
    if (k == 0) {
      // d on the base slot, in BH_0 coordinates.
      for (int j = 0; j < base_dim; ++j) {
        std::vector<Rat> col(top.dim());
        for (int i = 0; i < top.dim(); ++i) col[i] = dmat.at(i, j);
        auto sub = bh0.coords(col);
        for (int i = 0; i < bh0.dim(); ++i) m.at(i, j) = (*sub)[i];
      }
    } else {
      for (int i = 0; i < shifted_dim; ++i) m.at(i, i) = Rat(1);
    }
    sq.pa_fd.set(k, std::move(m));
  }

  sq.f1_fd = make_chain_map(sq.a_fd, sq.c_fd);
  {
    // f1(v) = -i_v omega in BH_0 coordinates, on the Hamiltonian basis.
    Mat m(sq.c_fd->dim(0), hs.fields.dim());
    for (int j = 0; j < hs.fields.dim(); ++j) {
      std::vector<Rat> e(hs.fields.dim());
      e[j] = Rat(1);
      MultiVec v = hs.member(e);
      PolyForm val = interior(v, P.omega) * Rat(-1);
      auto sub = bh0.coords(top.coords(val));
      if (!sub) throw std::logic_error("kks_fiber_data: f1 lands outside exact forms");
      for (int i = 0; i < bh0.dim(); ++i) m.at(i, j) = (*sub)[i];
    }
    sq.f1_fd.set(0, std::move(m));
  }

  sq.pil_fd = make_chain_map(sq.fp_fd, sq.a_fd);
  {
    // Project a pair onto its field, in Hamiltonian-basis coordinates.
    Mat m(hs.fields.dim(), pairs.dim());
    for (int j = 0; j < pairs.dim(); ++j) {
      std::vector<Rat> e(pairs.dim());
      e[j] = Rat(1);
      std::vector<Rat> amb = pairs.ambient(e);
      std::vector<Rat> vpart(amb.begin(), amb.begin() + vec_amb.dim());
      auto sub = hs.fields.coords(vpart);
      if (!sub) throw std::logic_error("kks_fiber_data: pair field not Hamiltonian");
      for (int i = 0; i < hs.fields.dim(); ++i) m.at(i, j) = (*sub)[i];
    }
    sq.pil_fd.set(0, std::move(m));
  }

  sq.pib_fd = make_chain_map(sq.fp_fd, sq.b_fd);
  for (int k = 0; k < n; ++k) {
    int shifted_dim = (k >= 1) ? cspace[k - 1].dim() : 0;
    Mat m(sq.b_fd->dim(k), sq.fp_fd->dim(k));
    if (k == 0) {
      // (v, H) -> base slot H.
      for (int j = 0; j < pairs.dim(); ++j) {
        std::vector<Rat> e(pairs.dim());
        e[j] = Rat(1);
        std::vector<Rat> amb = pairs.ambient(e);
        for (int i = 0; i < h_space.dim(); ++i) m.at(shifted_dim + i, j) = amb[vec_amb.dim() + i];
      }
    } else {
      // eta -> (-1)^k eta in the base slot.
      Rat s = rat_pow_sign(k);
      for (int i = 0; i < cspace[k].dim(); ++i) m.at(shifted_dim + i, i) = s;
    }
    sq.pib_fd.set(k, std::move(m));
  }

  return sq;
}

RestrictedCocycle restrict_cocycle(const FDLieAlgebra& g, const std::vector<MultiVec>& rho,
                                   const PrePlecticPatch& P, bool evaluate_at_zero) {
  RestrictedCocycle out;
  const int dim = g.dim();
  if (static_cast<int>(rho.size()) != dim)
    throw std::invalid_argument("restrict_cocycle: basis image count mismatch");

  // rho must be bracket-preserving into Hamiltonian fields.
  for (int i = 0; i < dim && out.action_ok.pass; ++i) {
    if (!exterior_d(interior(rho[i], P.omega)).is_zero()) {
      out.action_ok.pass = false;
      out.action_ok.residual = "image of basis " + std::to_string(i) + " not Hamiltonian";
      break;
    }
    for (int j = 0; j < dim; ++j) {
      MultiVec lhs = schouten(rho[i], rho[j]);
      MultiVec rhs(P.patch, 1);
      for (int k = 0; k < dim; ++k)
        if (!g.c[i][j][k].is_zero()) rhs += rho[k] * g.c[i][j][k];
      if (!(lhs == rhs)) {
        out.action_ok.pass = false;
        out.action_ok.residual = "rho does not preserve the bracket at (" + std::to_string(i) +
                                 "," + std::to_string(j) + ")";
        break;
      }
    }
  }
  if (!out.action_ok.pass) return out;

  PrePlecticPatch PP = P;
  std::vector<MultiVec> images = rho;
  for (int k = 1; k <= P.n + 1; ++k) {
    out.components.push_back([PP, images, k](const std::vector<int>& idx) {
      std::vector<MultiVec> vs;
      for (int i : idx) vs.push_back(images[i]);
      return interior(wedge_all(PP.patch, vs), PP.omega) * cocycle_sign(k);
    });
  }
  if (evaluate_at_zero) {
    auto comp = out.components.back();
    out.top_scalar = [comp](const std::vector<int>& idx) {
      PolyForm v = comp(idx);
      if (v.is_zero()) return Rat(0);
      PolyForm at0 = v.eval_coeffs_at_zero();
      if (at0.is_zero()) return Rat(0);
      return at0.terms().begin()->second.constant_value();
    };
  }
  return out;
}

} // namespace plectic
