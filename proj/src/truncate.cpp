#include "plectic/truncate.hpp"

#include <numeric>
#include <stdexcept>

namespace plectic {

MonomialBasis::MonomialBasis(VarList v, int d) : vars(std::move(v)), max_deg(d < 0 ? -1 : d) {
  if (max_deg < 0) return;
  const int n = static_cast<int>(vars->size());
  Exp cur(n, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == n) {
      exps.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[pos] = e;
      rec(pos + 1, left - e);
    }
    cur[pos] = 0;
  };
  rec(0, max_deg);
}

int MonomialBasis::index_of(const Exp& e) const {
  for (size_t i = 0; i < exps.size(); ++i)
    if (exps[i] == e) return static_cast<int>(i);
  return -1;
}

namespace {

std::vector<Mask> masks_of_degree(int dim, int deg) {
  std::vector<Mask> out;
  if (deg < 0 || deg > dim) return out;
  for (Mask m = 0; m < (1u << dim); ++m)
    if (mask_popcount(m) == deg) out.push_back(m);
  return out;
}

} // namespace

FormSpace::FormSpace(Patch p, int form_deg, int coeff_deg)
    : patch(std::move(p)), fdeg(form_deg), mono(patch.coords, coeff_deg),
      masks(masks_of_degree(patch.dim(), form_deg)) {}

std::vector<Rat> FormSpace::coords(const PolyForm& a) const {
  std::vector<Rat> x(dim());
  if (a.is_zero()) return x;
  if (a.degree() != fdeg) throw std::invalid_argument("FormSpace::coords: degree mismatch");
  for (const auto& [m, c] : a.terms()) {
    int mi = -1;
    for (size_t t = 0; t < masks.size(); ++t)
      if (masks[t] == m) { mi = static_cast<int>(t); break; }
    if (mi < 0) throw std::invalid_argument("FormSpace::coords: mask outside space");
    for (const auto& [e, r] : c.terms()) {
      int ei = mono.index_of(e);
      if (ei < 0) throw std::invalid_argument("FormSpace::coords: coefficient degree too high");
      x[static_cast<size_t>(mi) * mono.dim() + ei] = r;
    }
  }
  return x;
}

PolyForm FormSpace::from_coords(const std::vector<Rat>& x) const {
  PolyForm a(patch, fdeg);
  for (size_t mi = 0; mi < masks.size(); ++mi)
    for (int ei = 0; ei < mono.dim(); ++ei) {
      const Rat& r = x[mi * mono.dim() + ei];
      if (!r.is_zero()) a.add_term(masks[mi], Poly::monomial(patch.coords, mono.exps[ei], r));
    }
  return a;
}

MultiVecSpace::MultiVecSpace(Patch p, int vec_deg, int coeff_deg)
    : patch(std::move(p)), vdeg(vec_deg), mono(patch.coords, coeff_deg),
      masks(masks_of_degree(patch.dim(), vec_deg)) {}

std::vector<Rat> MultiVecSpace::coords(const MultiVec& a) const {
  std::vector<Rat> x(dim());
  if (a.is_zero()) return x;
  if (a.degree() != vdeg) throw std::invalid_argument("MultiVecSpace::coords: degree mismatch");
  for (const auto& [m, c] : a.terms()) {
    int mi = -1;
    for (size_t t = 0; t < masks.size(); ++t)
      if (masks[t] == m) { mi = static_cast<int>(t); break; }
    if (mi < 0) throw std::invalid_argument("MultiVecSpace::coords: mask outside space");
    for (const auto& [e, r] : c.terms()) {
      int ei = mono.index_of(e);
      if (ei < 0) throw std::invalid_argument("MultiVecSpace::coords: coefficient degree too high");
      x[static_cast<size_t>(mi) * mono.dim() + ei] = r;
    }
  }
  return x;
}

MultiVec MultiVecSpace::from_coords(const std::vector<Rat>& x) const {
  MultiVec a(patch, vdeg);
  for (size_t mi = 0; mi < masks.size(); ++mi)
    for (int ei = 0; ei < mono.dim(); ++ei) {
      const Rat& r = x[mi * mono.dim() + ei];
      if (!r.is_zero()) a.add_term(masks[mi], Poly::monomial(patch.coords, mono.exps[ei], r));
    }
  return a;
}

Mat matrix_of(const std::function<PolyForm(const PolyForm&)>& f, const FormSpace& src,
              const FormSpace& dst) {
  Mat m(dst.dim(), src.dim());
  for (int j = 0; j < src.dim(); ++j) {
    std::vector<Rat> e(src.dim());
    e[j] = Rat(1);
    std::vector<Rat> y = dst.coords(f(src.from_coords(e)));
    for (int i = 0; i < dst.dim(); ++i) m.at(i, j) = y[i];
  }
  return m;
}

Mat matrix_of_vec(const std::function<PolyForm(const MultiVec&)>& f, const MultiVecSpace& src,
                  const FormSpace& dst) {
  Mat m(dst.dim(), src.dim());
  for (int j = 0; j < src.dim(); ++j) {
    std::vector<Rat> e(src.dim());
    e[j] = Rat(1);
    std::vector<Rat> y = dst.coords(f(src.from_coords(e)));
    for (int i = 0; i < dst.dim(); ++i) m.at(i, j) = y[i];
  }
  return m;
}

DeRhamTruncation de_rham_truncated(const Patch& p, int budget) {
  DeRhamTruncation out;
  const int n = p.dim();
  out.spaces.reserve(n + 1);
  for (int j = 0; j <= n; ++j) out.spaces.emplace_back(p, j, budget - j);
  out.complex.resize(-n, 0);
  for (int j = 0; j <= n; ++j) out.complex.dims[-j - (-n)] = out.spaces[j].dim();
  for (int j = 0; j < n; ++j) {
    // d: Omega^j -> Omega^{j+1}, homologically C_{-j} -> C_{-j-1}.
    Mat m = matrix_of([](const PolyForm& a) { return exterior_d(a); }, out.spaces[j],
                      out.spaces[j + 1]);
    out.complex.set_d(-j, std::move(m));
  }
  return out;
}

std::vector<Rat> Subspace::ambient(const std::vector<Rat>& sub) const {
  return basis.apply(sub);
}

std::optional<std::vector<Rat>> Subspace::coords(const std::vector<Rat>& amb) const {
  return basis.solve(amb);
}

} // namespace plectic
