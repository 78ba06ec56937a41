#include "plectic/fd_lie.hpp"

#include <sstream>
#include <stdexcept>

namespace plectic {

std::vector<Rat> FDLieAlgebra::bracket(const std::vector<Rat>& x, const std::vector<Rat>& y) const {
  const int n = dim();
  std::vector<Rat> out(n);
  for (int i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < n; ++j) {
      if (y[j].is_zero()) continue;
      Rat f = x[i] * y[j];
      for (int k = 0; k < n; ++k)
        if (!c[i][j][k].is_zero()) out[k] += f * c[i][j][k];
    }
  }
  return out;
}

Mat FDLieAlgebra::ad(int i) const {
  const int n = dim();
  Mat m(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) m.at(k, j) = c[i][j][k];
  return m;
}

Mat FDLieAlgebra::ad_vec(const std::vector<Rat>& x) const {
  const int n = dim();
  Mat m(n, n);
  for (int i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    Mat a = ad(i);
    for (int r = 0; r < n; ++r)
      for (int cidx = 0; cidx < n; ++cidx) m.at(r, cidx) += x[i] * a.at(r, cidx);
  }
  return m;
}

IdentityReport FDLieAlgebra::check_antisymmetry() const {
  IdentityReport rep;
  const int n = dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (c[i][j][k] != -c[j][i][k]) {
          rep.pass = false;
          rep.residual = "c[" + std::to_string(i) + "][" + std::to_string(j) + "] not antisymmetric";
          return rep;
        }
  return rep;
}

IdentityReport FDLieAlgebra::check_jacobi() const {
  IdentityReport rep;
  const int n = dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        std::vector<Rat> ei(n), ej(n), ek(n);
        ei[i] = Rat(1);
        ej[j] = Rat(1);
        ek[k] = Rat(1);
        std::vector<Rat> acc = bracket(bracket(ei, ej), ek);
        std::vector<Rat> t2 = bracket(bracket(ej, ek), ei);
        std::vector<Rat> t3 = bracket(bracket(ek, ei), ej);
        bool ok = true;
        for (int t = 0; t < n; ++t)
          if (!(acc[t] + t2[t] + t3[t]).is_zero()) ok = false;
        if (!ok) {
          rep.pass = false;
          rep.residual = "jacobi fails on basis triple (" + std::to_string(i) + "," +
                         std::to_string(j) + "," + std::to_string(k) + ")";
          return rep;
        }
      }
  return rep;
}

FDLieAlgebra FDLieAlgebra::su2() {
  FDLieAlgebra g;
  g.names = {"e1", "e2", "e3"};
  g.c.assign(3, std::vector<std::vector<Rat>>(3, std::vector<Rat>(3)));
  // [e_i, e_j] = eps_{ijk} e_k.
  auto set = [&](int i, int j, int k, int s) {
    g.c[i][j][k] = Rat(s);
    g.c[j][i][k] = Rat(-s);
  };
  set(0, 1, 2, 1);
  set(1, 2, 0, 1);
  set(2, 0, 1, 1);
  return g;
}

FDLieAlgebra FDLieAlgebra::abelian(int n) {
  FDLieAlgebra g;
  for (int i = 0; i < n; ++i) g.names.push_back("e" + std::to_string(i + 1));
  g.c.assign(n, std::vector<std::vector<Rat>>(n, std::vector<Rat>(n)));
  return g;
}

Mat killing_matrix(const FDLieAlgebra& g) {
  const int n = g.dim();
  Mat k(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Mat prod = g.ad(i) * g.ad(j);
      Rat tr(0);
      for (int t = 0; t < n; ++t) tr += prod.at(t, t);
      k.at(i, j) = tr;
    }
  return k;
}

namespace {

// Evaluates an alternating cochain on an arbitrary tuple by sorting.
Rat eval_alternating(const CECochain& c, std::vector<int> tuple) {
  int sign = 1;
  for (size_t i = 0; i < tuple.size(); ++i)
    for (size_t j = i + 1; j < tuple.size(); ++j) {
      if (tuple[i] == tuple[j]) return Rat(0);
      if (tuple[i] > tuple[j]) {
        std::swap(tuple[i], tuple[j]);
        sign = -sign;
      }
    }
  Rat v = c(tuple);
  return sign > 0 ? v : -v;
}

} // namespace

Rat ce_coboundary(const FDLieAlgebra& g, const CECochain& c, int k,
                  const std::vector<int>& tuple) {
  if (static_cast<int>(tuple.size()) != k + 1)
    throw std::invalid_argument("ce_coboundary: tuple size");
  const int n = g.dim();
  Rat acc(0);
  for (size_t i = 0; i < tuple.size(); ++i)
    for (size_t j = i + 1; j < tuple.size(); ++j) {
      // [e_i, e_j] expanded over the basis.
      std::vector<int> rest;
      for (size_t t = 0; t < tuple.size(); ++t)
        if (t != i && t != j) rest.push_back(tuple[t]);
      Rat sign = ((i + j) % 2 == 0) ? Rat(1) : Rat(-1); // (-1)^{i+j}, 0-based i<j
      for (int b = 0; b < n; ++b) {
        const Rat& coeff = g.c[tuple[i]][tuple[j]][b];
        if (coeff.is_zero()) continue;
        std::vector<int> args;
        args.push_back(b);
        for (int r : rest) args.push_back(r);
        acc += sign * coeff * eval_alternating(c, args);
      }
    }
  return acc;
}

IdentityReport check_ce_cocycle(const FDLieAlgebra& g, const CECochain& c, int k) {
  IdentityReport rep;
  const int n = g.dim();
  std::vector<int> tuple(k + 1);
  std::function<bool(int, int)> rec = [&](int pos, int start) -> bool {
    if (pos == k + 1) {
      Rat v = ce_coboundary(g, c, k, tuple);
      if (!v.is_zero()) {
        std::ostringstream os;
        os << "coboundary nonzero on (";
        for (int i = 0; i <= k; ++i) os << (i ? "," : "") << tuple[i];
        os << "): " << v.str();
        rep.pass = false;
        rep.residual = os.str();
        return false;
      }
      return true;
    }
    for (int i = start; i < n; ++i) {
      tuple[pos] = i;
      if (!rec(pos + 1, i + 1)) return false;
    }
    return true;
  };
  rec(0, 0);
  return rep;
}

Elem fd_elem(int degree, std::vector<Rat> coords) {
  bool zero = true;
  for (const auto& r : coords)
    if (!r.is_zero()) zero = false;
  if (zero) return Elem::zero(degree);
  return Elem(degree, std::any(std::move(coords)));
}

const std::vector<Rat>& fd_coords(const Elem& e) { return e.as<std::vector<Rat>>(); }

FDGraded fd_domain(const std::string& name, ComplexPtr complex) {
  auto dom = std::make_shared<Domain>();
  dom->name = name;
  dom->min_deg = complex->lo;
  dom->max_deg = complex->hi;
  ComplexPtr cc = complex;
  dom->add = [](const Elem& a, const Elem& b) {
    std::vector<Rat> out = fd_coords(a);
    const auto& bc = fd_coords(b);
    for (size_t i = 0; i < out.size(); ++i) out[i] += bc[i];
    return fd_elem(a.degree(), std::move(out));
  };
  dom->scale = [](const Rat& c, const Elem& a) {
    std::vector<Rat> out = fd_coords(a);
    for (auto& x : out) x *= c;
    return fd_elem(a.degree(), std::move(out));
  };
  dom->is_zero = [](const Elem& a) {
    for (const auto& x : fd_coords(a))
      if (!x.is_zero()) return false;
    return true;
  };
  dom->show = [](const Elem& a) {
    std::ostringstream os;
    os << "[";
    const auto& v = fd_coords(a);
    for (size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i].str();
    os << "]";
    return os.str();
  };
  dom->sample = [cc](int deg, const SampleCfg& cfg, Rng& rng) {
    std::vector<Rat> v(cc->dim(deg));
    for (auto& x : v) x = rng.rat(cfg.max_num, cfg.max_den);
    return fd_elem(deg, std::move(v));
  };
  FDGraded out;
  out.dom = dom;
  out.complex = std::move(complex);
  return out;
}

LInftyPtr fd_lie_structure(const FDLieAlgebra& g) {
  auto complex = std::make_shared<ChainComplexFD>(ChainComplexFD::concentrated(0, g.dim()));
  FDGraded fg = fd_domain("fd-lie", complex);
  auto L = std::make_shared<LInfty>();
  L->dom = fg.dom;
  L->max_arity = 2;
  L->l1 = [](const Elem& x) { return Elem::zero(x.degree() - 1); };
  FDLieAlgebra gg = g;
  L->lk = [gg](int k, const std::vector<Elem>& xs) -> Elem {
    if (k != 2) return Elem::zero(k - 2);
    return fd_elem(0, gg.bracket(fd_coords(xs[0]), fd_coords(xs[1])));
  };
  return L;
}

FDLieAlgebra central_extension(const FDLieAlgebra& g, const CECochain& two_cocycle) {
  const int n = g.dim();
  FDLieAlgebra e;
  e.names = g.names;
  e.names.push_back("z");
  e.c.assign(n + 1, std::vector<std::vector<Rat>>(n + 1, std::vector<Rat>(n + 1)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) e.c[i][j][k] = g.c[i][j][k];
      Rat v = (i < j) ? two_cocycle({i, j}) : ((i == j) ? Rat(0) : -two_cocycle({j, i}));
      e.c[i][j][n] = v;
    }
  return e;
}

StringData string_cocycle(const FDLieAlgebra& g, const SampleCfg& cfg) {
  StringData out;
  out.killing = killing_matrix(g);
  const int n = g.dim();
  if (out.killing.rank() != n)
    throw std::invalid_argument("string_cocycle: degenerate Killing form");

  // mu(x, y, z) = K(x, [y, z]).
  out.mu.assign(n, std::vector<std::vector<Rat>>(n, std::vector<Rat>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Rat acc(0);
        for (int b = 0; b < n; ++b)
          if (!g.c[j][k][b].is_zero()) acc += out.killing.at(i, b) * g.c[j][k][b];
        out.mu[i][j][k] = acc;
      }

  auto mu_eval = [mu = out.mu, n](const std::vector<Rat>& x, const std::vector<Rat>& y,
                                  const std::vector<Rat>& z) {
    Rat acc(0);
    for (int i = 0; i < n; ++i) {
      if (x[i].is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        if (y[j].is_zero()) continue;
        for (int k = 0; k < n; ++k)
          if (!z[k].is_zero() && !mu[i][j][k].is_zero()) acc += x[i] * y[j] * z[k] * mu[i][j][k];
      }
    }
    return acc;
  };

  // The Lie 2-algebra on g in degree 0 and R in degree 1.
  auto cx = std::make_shared<ChainComplexFD>();
  cx->resize(0, 1);
  cx->dims[0] = n;
  cx->dims[1] = 1;
  cx->diff[1] = Mat(n, 1);
  FDGraded fg = fd_domain("string-lie2", cx);
  auto L = std::make_shared<LInfty>();
  L->dom = fg.dom;
  L->max_arity = 3;
  L->l1 = [](const Elem& x) { return Elem::zero(x.degree() - 1); };
  FDLieAlgebra gg = g;
  L->lk = [gg, mu_eval](int k, const std::vector<Elem>& xs) -> Elem {
    int deg = k - 2;
    for (const auto& x : xs) deg += x.degree();
    if (k == 2) {
      if (xs[0].degree() == 0 && xs[1].degree() == 0)
        return fd_elem(0, gg.bracket(fd_coords(xs[0]), fd_coords(xs[1])));
      return Elem::zero(deg);
    }
    if (k == 3) {
      if (xs[0].degree() != 0 || xs[1].degree() != 0 || xs[2].degree() != 0)
        return Elem::zero(deg);
      Rat v = -mu_eval(fd_coords(xs[0]), fd_coords(xs[1]), fd_coords(xs[2]));
      return fd_elem(1, {v});
    }
    return Elem::zero(deg);
  };
  out.lie2 = L;

  // Chain-level fiber presentation: A = g, C = R[2], B = cone(id R[1]),
  // FP = the Lie 2-algebra above.
  auto a_fd = std::make_shared<ChainComplexFD>(ChainComplexFD::concentrated(0, n));
  auto c_fd = std::make_shared<ChainComplexFD>(ChainComplexFD::concentrated(2, 1));
  auto r1 = std::make_shared<ChainComplexFD>(ChainComplexFD::concentrated(1, 1));
  auto b_fd = std::make_shared<ChainComplexFD>(cone_identity(r1));

  FDGraded a_dom = fd_domain("g", a_fd);
  FDGraded c_dom = fd_domain("R[2]", c_fd);
  FDGraded b_dom = fd_domain("cone", b_fd);

  auto a_str = fd_lie_structure(g);
  auto abelian = [](const FDGraded& fg2) {
    auto s = std::make_shared<LInfty>();
    ComplexPtr cc = fg2.complex;
    s->dom = fg2.dom;
    s->max_arity = 1;
    s->l1 = [cc](const Elem& x) {
      Mat d = cc->d(x.degree());
      return fd_elem(x.degree() - 1, d.apply(fd_coords(x)));
    };
    s->lk = [](int k, const std::vector<Elem>& xs) {
      int deg = k - 2;
      for (const auto& x : xs) deg += x.degree();
      return Elem::zero(deg);
    };
    return s;
  };
  auto c_str = abelian(c_dom);
  auto b_str = abelian(b_dom);
  auto fp_str = out.lie2;

  FiberSquare& sq = out.square;
  sq.a_fd = a_fd;
  sq.b_fd = b_fd;
  sq.c_fd = c_fd;
  sq.fp_fd = cx;

  // mu as a morphism g -> R[2]: only the arity-3 component.
  LMorphism f;
  f.src = a_str;
  f.dst = c_str;
  f.max_arity = 3;
  f.f1 = [](const Elem& x) { return Elem::zero(x.degree()); };
  f.fk = [mu_eval](int k, const std::vector<Elem>& xs) -> Elem {
    int deg = k - 1;
    for (const auto& x : xs) deg += x.degree();
    if (k != 3) return Elem::zero(deg);
    Rat v = mu_eval(fd_coords(xs[0]), fd_coords(xs[1]), fd_coords(xs[2]));
    return fd_elem(2, {v});
  };
  sq.f = f;

  // piL: FP -> g, strict projection.
  sq.piL = strict_morphism(fp_str, a_str, [n](const Elem& x) -> Elem {
    if (x.degree() != 0) return Elem::zero(x.degree());
    return x;
  });

  // piB: FP -> cone: degree 1 sign -1 into the base slot; arity 3 carries mu
  // into the shifted slot (cone degree 2).
  LMorphism piB;
  piB.src = fp_str;
  piB.dst = b_str;
  piB.max_arity = 3;
  piB.f1 = [](const Elem& x) -> Elem {
    if (x.degree() != 1) return Elem::zero(x.degree());
    const auto& v = fd_coords(x);
    return fd_elem(1, {-v[0]});
  };
  piB.fk = [mu_eval](int k, const std::vector<Elem>& xs) -> Elem {
    int deg = k - 1;
    for (const auto& x : xs) deg += x.degree();
    if (k != 3 || deg != 2) return Elem::zero(deg);
    Rat v = mu_eval(fd_coords(xs[0]), fd_coords(xs[1]), fd_coords(xs[2]));
    return fd_elem(2, {v});
  };
  sq.piB = piB;

  // pA = pi_R: cone -> R[2]: identity on the shifted slot in degree 2.
  sq.pA_morph = strict_morphism(b_str, c_str, [](const Elem& x) -> Elem {
    if (x.degree() != 2) return Elem::zero(x.degree());
    return x;
  });

  sq.pa_fd = make_chain_map(b_fd, c_fd);
  {
    Mat m(1, 1);
    m.at(0, 0) = Rat(1);
    sq.pa_fd.set(2, m);
  }
  sq.f1_fd = make_chain_map(a_fd, c_fd);
  sq.pil_fd = make_chain_map(cx, a_fd);
  sq.pil_fd.set(0, Mat::identity(n));
  sq.pib_fd = make_chain_map(cx, b_fd);
  {
    Mat m(1, 1);
    m.at(0, 0) = Rat(-1);
    sq.pib_fd.set(1, m);
  }
  (void)cfg;
  return out;
}

} // namespace plectic
