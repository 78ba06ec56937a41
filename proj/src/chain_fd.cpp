#include "plectic/chain_fd.hpp"

#include <sstream>
#include <stdexcept>

namespace plectic {

Mat ChainComplexFD::d(int k) const {
  if (k <= lo || k > hi) return Mat(dim(k - 1), dim(k));
  return diff[k - lo];
}

void ChainComplexFD::set_d(int k, Mat m) {
  if (k <= lo || k > hi) throw std::out_of_range("ChainComplexFD::set_d");
  if (m.rows() != dim(k - 1) || m.cols() != dim(k))
    throw std::invalid_argument("ChainComplexFD::set_d: shape mismatch");
  diff[k - lo] = std::move(m);
}

void ChainComplexFD::resize(int lo_deg, int hi_deg) {
  lo = lo_deg;
  hi = hi_deg;
  int n = hi - lo + 1;
  dims.assign(n, 0);
  diff.assign(n, Mat());
  labels.assign(n, {});
}

ChainComplexFD ChainComplexFD::concentrated(int degree, int dimension) {
  ChainComplexFD c;
  c.resize(degree, degree);
  c.dims[0] = dimension;
  return c;
}

ComplexReport is_complex(const ChainComplexFD& c) {
  ComplexReport rep;
  if (c.hi < c.lo) return rep;
  if (static_cast<int>(c.dims.size()) != c.hi - c.lo + 1) {
    rep.pass = false;
    rep.detail = "dimension table size mismatch";
    return rep;
  }
  for (int k = c.lo + 1; k <= c.hi; ++k) {
    if (c.diff[k - c.lo].rows() != c.dim(k - 1) || c.diff[k - c.lo].cols() != c.dim(k)) {
      rep.pass = false;
      rep.detail = "differential shape mismatch at degree " + std::to_string(k);
      return rep;
    }
  }
  for (int k = c.lo + 2; k <= c.hi; ++k) {
    Mat comp = c.d(k - 1) * c.d(k);
    if (!comp.is_zero()) {
      rep.pass = false;
      std::ostringstream os;
      os << "d.d nonzero from degree " << k << ":\n" << comp.str();
      rep.detail = os.str();
      return rep;
    }
  }
  return rep;
}

std::map<int, int> cohomology_dims(const ChainComplexFD& c) {
  std::map<int, int> out;
  for (int k = c.lo; k <= c.hi; ++k) {
    int n = c.dim(k);
    int rank_out = (k > c.lo) ? c.d(k).rank() : 0;
    int ker = n - rank_out;
    int rank_in = (k < c.hi) ? c.d(k + 1).rank() : 0;
    out[k] = ker - rank_in;
  }
  return out;
}

Mat ChainMapFD::mat(int k) const {
  if (k < lo || k > hi) return Mat(dst->dim(k), src->dim(k));
  return mats[k - lo];
}

void ChainMapFD::set(int k, Mat m) {
  if (k < lo || k > hi) throw std::out_of_range("ChainMapFD::set");
  if (m.rows() != dst->dim(k) || m.cols() != src->dim(k))
    throw std::invalid_argument("ChainMapFD::set: shape mismatch");
  mats[k - lo] = std::move(m);
}

ChainMapFD make_chain_map(ComplexPtr src, ComplexPtr dst) {
  ChainMapFD f;
  f.lo = std::min(src->lo, dst->lo);
  f.hi = std::max(src->hi, dst->hi);
  for (int k = f.lo; k <= f.hi; ++k) f.mats.push_back(Mat(dst->dim(k), src->dim(k)));
  f.src = std::move(src);
  f.dst = std::move(dst);
  return f;
}

ChainMapFD identity_map(ComplexPtr c) {
  ChainMapFD f = make_chain_map(c, c);
  for (int k = f.lo; k <= f.hi; ++k) f.set(k, Mat::identity(c->dim(k)));
  return f;
}

ComplexReport is_chain_map(const ChainMapFD& f) {
  ComplexReport rep;
  int lo = std::min(f.src->lo, f.dst->lo);
  int hi = std::max(f.src->hi, f.dst->hi);
  for (int k = lo + 1; k <= hi; ++k) {
    Mat lhs = f.dst->d(k) * f.mat(k);
    Mat rhs = f.mat(k - 1) * f.src->d(k);
    if (!(lhs == rhs)) {
      rep.pass = false;
      rep.detail = "chain-map square fails at degree " + std::to_string(k);
      return rep;
    }
  }
  return rep;
}

ChainComplexFD cone(const ChainMapFD& f) {
  const ChainComplexFD& A = *f.src;
  const ChainComplexFD& B = *f.dst;
  ChainComplexFD k;
  k.resize(std::min(A.lo + 1, B.lo), std::max(A.hi + 1, B.hi));
  for (int deg = k.lo; deg <= k.hi; ++deg) k.dims[deg - k.lo] = A.dim(deg - 1) + B.dim(deg);
  for (int deg = k.lo + 1; deg <= k.hi; ++deg) {
    int ra = A.dim(deg - 2), rb = B.dim(deg - 1);
    int ca = A.dim(deg - 1), cb = B.dim(deg);
    Mat m(ra + rb, ca + cb);
    Mat da = A.d(deg - 1);
    for (int i = 0; i < ra; ++i)
      for (int j = 0; j < ca; ++j) m.at(i, j) = da.at(i, j);
    Mat fm = f.mat(deg - 1);
    for (int i = 0; i < rb; ++i)
      for (int j = 0; j < ca; ++j) m.at(ra + i, j) = fm.at(i, j);
    Mat db = B.d(deg);
    for (int i = 0; i < rb; ++i)
      for (int j = 0; j < cb; ++j) m.at(ra + i, ca + j) = -db.at(i, j);
    k.diff[deg - k.lo] = std::move(m);
  }
  return k;
}

ChainComplexFD cone_identity(ComplexPtr c) { return cone(identity_map(std::move(c))); }

FiberProductFD fiber_product(const ChainMapFD& f, const ChainMapFD& g) {
  if (f.dst.get() != g.dst.get() && !(f.dst && g.dst && f.dst->dims == g.dst->dims && f.dst->lo == g.dst->lo))
    throw std::invalid_argument("fiber_product: targets differ");
  const ChainComplexFD& A = *f.src;
  const ChainComplexFD& B = *g.src;
  const ChainComplexFD& C = *f.dst;

  auto P = std::make_shared<ChainComplexFD>();
  P->resize(std::min(A.lo, B.lo), std::max(A.hi, B.hi));

  std::vector<Mat> kers(P->hi - P->lo + 1);
  for (int k = P->lo; k <= P->hi; ++k) {
    Mat fk = f.mat(k);
    Mat gk = g.mat(k);
    Mat m(C.dim(k), A.dim(k) + B.dim(k));
    for (int i = 0; i < C.dim(k); ++i) {
      for (int j = 0; j < A.dim(k); ++j) m.at(i, j) = fk.at(i, j);
      for (int j = 0; j < B.dim(k); ++j) m.at(i, A.dim(k) + j) = -gk.at(i, j);
    }
    kers[k - P->lo] = m.kernel_basis();
    P->dims[k - P->lo] = kers[k - P->lo].cols();
  }

  for (int k = P->lo + 1; k <= P->hi; ++k) {
    Mat dsum = Mat::block_diag(A.d(k), B.d(k));
    Mat img = dsum * kers[k - P->lo];
    auto x = kers[k - 1 - P->lo].solve_many(img);
    if (!x)
      throw std::logic_error("fiber_product: differential does not preserve the pullback");
    P->diff[k - P->lo] = std::move(*x);
  }

  FiberProductFD out;
  out.total = P;
  out.to_a = make_chain_map(P, f.src);
  out.to_b = make_chain_map(P, g.src);
  for (int k = P->lo; k <= P->hi; ++k) {
    const Mat& ker = kers[k - P->lo];
    Mat pa(A.dim(k), ker.cols()), pb(B.dim(k), ker.cols());
    for (int j = 0; j < ker.cols(); ++j) {
      for (int i = 0; i < A.dim(k); ++i) pa.at(i, j) = ker.at(i, j);
      for (int i = 0; i < B.dim(k); ++i) pb.at(i, j) = ker.at(A.dim(k) + i, j);
    }
    out.to_a.set(k, std::move(pa));
    out.to_b.set(k, std::move(pb));
  }
  return out;
}

} // namespace plectic
