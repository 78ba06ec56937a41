#include "plectic/cech.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace plectic {

bool Interval::intersects(const Interval& o) const {
  Interval m = meet(o);
  if (!m.lo || !m.hi) return true;
  return *m.lo < *m.hi;
}

Interval Interval::meet(const Interval& o) const {
  Interval m;
  if (lo && o.lo) m.lo = std::max(*lo, *o.lo);
  else m.lo = lo ? lo : o.lo;
  if (hi && o.hi) m.hi = std::min(*hi, *o.hi);
  else m.hi = hi ? hi : o.hi;
  return m;
}

namespace {

bool tuple_intersects(const std::vector<OpenBox>& opens, const std::vector<int>& idx, int dim) {
  for (int c = 0; c < dim; ++c) {
    Interval cur = opens[idx[0]].box[c];
    for (size_t t = 1; t < idx.size(); ++t) {
      if (!cur.intersects(opens[idx[t]].box[c])) return false;
      cur = cur.meet(opens[idx[t]].box[c]);
      if (cur.lo && cur.hi && !(*cur.lo < *cur.hi)) return false;
    }
  }
  return true;
}

} // namespace

Cover::Cover(Patch p, std::vector<OpenBox> boxes) : patch(std::move(p)), opens(std::move(boxes)) {
  for (const auto& b : opens)
    if (static_cast<int>(b.box.size()) != patch.dim())
      throw std::invalid_argument("Cover: box dimension mismatch for " + b.name);
  const int n = size();
  for (Mask m = 1; m < (1u << n); ++m) {
    std::vector<int> idx = mask_indices(m);
    if (tuple_intersects(opens, idx, patch.dim())) nerve.push_back(idx);
  }
  std::sort(nerve.begin(), nerve.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
}

bool Cover::in_nerve(const std::vector<int>& s) const {
  return std::binary_search(nerve.begin(), nerve.end(), s, [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
}

std::vector<std::vector<int>> Cover::simplices(int cech_deg) const {
  std::vector<std::vector<int>> out;
  for (const auto& s : nerve)
    if (static_cast<int>(s.size()) == cech_deg + 1) out.push_back(s);
  return out;
}

bool Cover::full_nerve() const {
  size_t expect = (1u << size()) - 1;
  return nerve.size() == expect;
}

CoverPtr trivial_cover(const Patch& p) {
  std::vector<Interval> all(p.dim());
  return std::make_shared<Cover>(p, std::vector<OpenBox>{{"U", all}});
}

CechCochain::CechCochain(CoverPtr cover, int cech_deg, int form_deg)
    : cover_(std::move(cover)), cdeg_(cech_deg), fdeg_(form_deg) {
  if (cech_deg < 0) throw std::invalid_argument("CechCochain: negative cech degree");
}

bool CechCochain::is_zero() const {
  for (const auto& [s, a] : vals_)
    if (!a.is_zero()) return false;
  return true;
}

PolyForm CechCochain::get(const std::vector<int>& simplex) const {
  if (static_cast<int>(simplex.size()) != cdeg_ + 1)
    throw std::invalid_argument("CechCochain::get: wrong tuple size");
  std::vector<int> s(simplex);
  int sign = 1;
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j) {
      if (s[i] == s[j]) return PolyForm(cover_->patch, 0);
      if (s[i] > s[j]) {
        std::swap(s[i], s[j]);
        sign = -sign;
      }
    }
  auto it = vals_.find(s);
  if (it == vals_.end()) return PolyForm(cover_->patch, 0);
  return sign > 0 ? it->second : -it->second;
}

void CechCochain::set(const std::vector<int>& s, PolyForm a) {
  if (static_cast<int>(s.size()) != cdeg_ + 1)
    throw std::invalid_argument("CechCochain::set: wrong tuple size");
  if (!std::is_sorted(s.begin(), s.end()))
    throw std::invalid_argument("CechCochain::set: tuple must be sorted");
  if (!cover_->in_nerve(s)) throw std::invalid_argument("CechCochain::set: tuple not in nerve");
  if (!a.is_zero() && a.degree() != fdeg_)
    throw std::invalid_argument("CechCochain::set: form degree mismatch");
  if (a.is_zero()) vals_.erase(s);
  else vals_[s] = std::move(a);
}

void CechCochain::add(const std::vector<int>& s, const PolyForm& a) {
  if (a.is_zero()) return;
  PolyForm cur = get(s);
  cur += a;
  set(s, std::move(cur));
}

CechCochain CechCochain::operator+(const CechCochain& o) const {
  if (cdeg_ != o.cdeg_ || fdeg_ != o.fdeg_)
    throw std::invalid_argument("CechCochain::add: bidegree mismatch");
  CechCochain r(*this);
  for (const auto& [s, a] : o.vals_) r.add(s, a);
  return r;
}

CechCochain CechCochain::operator-(const CechCochain& o) const { return *this + o * Rat(-1); }

CechCochain CechCochain::operator*(const Rat& c) const {
  CechCochain r(cover_, cdeg_, fdeg_);
  if (c.is_zero()) return r;
  for (const auto& [s, a] : vals_) r.vals_[s] = a * c;
  return r;
}

bool operator==(const CechCochain& a, const CechCochain& b) {
  if (a.is_zero() && b.is_zero()) return true;
  if (a.cdeg_ != b.cdeg_ || a.fdeg_ != b.fdeg_) return false;
  for (const auto& s : a.cover_->simplices(a.cdeg_))
    if (!(a.get(s) == b.get(s))) return false;
  return true;
}

std::string CechCochain::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, a] : vals_) {
    if (a.is_zero()) continue;
    if (!first) os << ", ";
    first = false;
    os << "(";
    for (size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << cover_->opens[s[i]].name;
    os << "): " << a.str();
  }
  if (first) return "0";
  return os.str();
}

CechCochain cech_delta(const CechCochain& c) {
  CechCochain out(c.cover(), c.cech_deg() + 1, c.form_deg());
  for (const auto& s : c.cover()->simplices(c.cech_deg() + 1)) {
    PolyForm acc(c.cover()->patch, 0);
    for (size_t k = 0; k < s.size(); ++k) {
      std::vector<int> face;
      for (size_t t = 0; t < s.size(); ++t)
        if (t != k) face.push_back(s[t]);
      PolyForm v = c.get(face);
      if (v.is_zero()) continue;
      acc += (k % 2 == 0) ? v : -v;
    }
    if (!acc.is_zero()) out.set(s, std::move(acc));
  }
  return out;
}

CechCochain cech_d(const CechCochain& c) {
  CechCochain out(c.cover(), c.cech_deg(), c.form_deg() + 1);
  for (const auto& [s, a] : c.values()) {
    PolyForm da = exterior_d(a);
    if (!da.is_zero()) out.set(s, std::move(da));
  }
  return out;
}

CechCochain cech_interior(const MultiVec& u, const CechCochain& c) {
  int target = c.form_deg() - u.degree();
  CechCochain out(c.cover(), c.cech_deg(), target < 0 ? 0 : target);
  if (target < 0) return out;
  for (const auto& [s, a] : c.values()) {
    PolyForm v = interior(u, a);
    if (!v.is_zero()) out.set(s, std::move(v));
  }
  return out;
}

CechCochain cech_lie(const MultiVec& u, const CechCochain& c) {
  int target = c.form_deg() - u.degree() + 1;
  CechCochain out(c.cover(), c.cech_deg(), target < 0 ? 0 : target);
  if (target < 0) return out;
  for (const auto& [s, a] : c.values()) {
    PolyForm v = lie_derivative(u, a);
    if (!v.is_zero()) out.set(s, std::move(v));
  }
  return out;
}

TotElem::TotElem(CoverPtr cover, int total_deg, int max_fdeg)
    : cover_(std::move(cover)), total_(total_deg), max_fdeg_(max_fdeg) {}

bool TotElem::is_zero() const {
  for (const auto& [i, c] : comp_)
    if (!c.is_zero()) return false;
  return true;
}

const CechCochain& TotElem::comp(int cech_deg) const {
  static const CechCochain empty;
  auto it = comp_.find(cech_deg);
  if (it == comp_.end()) return empty;
  return it->second;
}

void TotElem::set_comp(CechCochain c) {
  if (c.cech_deg() + c.form_deg() != total_)
    throw std::invalid_argument("TotElem::set_comp: bidegree does not match total degree");
  if (c.form_deg() > max_fdeg_)
    throw std::invalid_argument("TotElem::set_comp: form degree above cutoff");
  comp_[c.cech_deg()] = std::move(c);
}

void TotElem::add_comp(const CechCochain& c) {
  if (c.is_zero()) return;
  if (c.form_deg() > max_fdeg_) return;
  auto it = comp_.find(c.cech_deg());
  if (it == comp_.end()) set_comp(c);
  else it->second = it->second + c;
}

TotElem TotElem::operator+(const TotElem& o) const {
  if (total_ != o.total_)
    throw std::invalid_argument("TotElem::add: total degree mismatch");
  TotElem r(*this);
  for (const auto& [i, c] : o.comp_) r.add_comp(c);
  return r;
}

TotElem TotElem::operator-(const TotElem& o) const { return *this + o * Rat(-1); }

TotElem TotElem::operator*(const Rat& c) const {
  TotElem r(cover_, total_, max_fdeg_);
  for (const auto& [i, ch] : comp_) r.comp_[i] = ch * c;
  return r;
}

bool operator==(const TotElem& a, const TotElem& b) {
  if (a.is_zero() && b.is_zero()) return true;
  if (a.total_ != b.total_) return false;
  int lo = 0, hi = a.total_;
  for (int i = std::max(lo, 0); i <= hi; ++i)
    if (!(a.comp(i) == b.comp(i))) return false;
  return true;
}

std::string TotElem::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, c] : comp_) {
    if (c.is_zero()) continue;
    if (!first) os << " | ";
    first = false;
    os << "C^" << i << ": " << c.str();
  }
  if (first) return "0";
  return os.str();
}

TotElem d_tot(const TotElem& t) {
  TotElem out(t.cover(), t.total() + 1, t.cutoff());
  for (const auto& [i, c] : t.comps()) {
    if (c.is_zero()) continue;
    out.add_comp(cech_delta(c));
    CechCochain dc = cech_d(c);
    if (dc.form_deg() <= t.cutoff()) out.add_comp(i % 2 == 0 ? dc : dc * Rat(-1));
  }
  return out;
}

TotElem tot_interior(const MultiVec& u, const TotElem& t) {
  TotElem out(t.cover(), t.total() - u.degree(), t.cutoff());
  for (const auto& [i, c] : t.comps()) {
    CechCochain v = cech_interior(u, c);
    if (!v.is_zero()) out.add_comp(v);
  }
  return out;
}

TotElem tot_lie(const MultiVec& u, const TotElem& t) {
  TotElem out(t.cover(), t.total() - u.degree() + 1, t.cutoff());
  for (const auto& [i, c] : t.comps()) {
    CechCochain v = cech_lie(u, c);
    if (!v.is_zero()) out.add_comp(v);
  }
  return out;
}

TotElem res_form(const CoverPtr& cover, const PolyForm& a, int max_fdeg) {
  TotElem out(cover, a.degree(), max_fdeg);
  if (a.is_zero() || a.degree() > max_fdeg) return out;
  CechCochain c(cover, 0, a.degree());
  for (int i = 0; i < cover->size(); ++i) c.set({i}, a);
  out.set_comp(std::move(c));
  return out;
}

TotElem tot_truncate(const TotElem& t, int max_fdeg) {
  TotElem out(t.cover(), t.total(), max_fdeg);
  for (const auto& [i, c] : t.comps())
    if (c.form_deg() <= max_fdeg && !c.is_zero()) out.set_comp(c);
  return out;
}

TotElem random_tot(const CoverPtr& cover, int total_deg, const SampleCfg& cfg, Rng& rng,
                   int max_fdeg) {
  TotElem out(cover, total_deg, max_fdeg);
  const int dim = cover->patch.dim();
  for (int i = 0; i <= total_deg; ++i) {
    int fdeg = total_deg - i;
    if (fdeg > dim || fdeg > max_fdeg) continue;
    CechCochain c(cover, i, fdeg);
    for (const auto& s : cover->simplices(i)) {
      PolyForm a = random_form(cover->patch, fdeg, cfg, rng);
      if (!a.is_zero()) c.set(s, std::move(a));
    }
    if (!c.is_zero()) out.set_comp(std::move(c));
  }
  return out;
}

TotElem DeligneCocycle::as_tot() const {
  TotElem out(cover, n);
  for (const auto& c : A)
    if (!c.is_zero()) out.add_comp(c);
  return out;
}

TotElem DeligneCocycle::twisted(int m) const {
  TotElem out(cover, n);
  for (int i = 0; i < static_cast<int>(A.size()); ++i) {
    if (A[i].is_zero()) continue;
    Rat s = ((static_cast<long>(m) * i) % 2 == 0) ? Rat(1) : Rat(-1);
    out.add_comp(A[i] * s);
  }
  return out;
}

DeligneReport check_deligne(const DeligneCocycle& A, const PolyForm& omega) {
  DeligneReport rep;
  const int n = A.n;
  if (static_cast<int>(A.A.size()) != n + 1) {
    rep.pass = false;
    rep.violated = "component count";
    return rep;
  }
  for (int i = 0; i <= n; ++i) {
    if (A.A[i].cech_deg() != i || A.A[i].form_deg() != n - i) {
      rep.pass = false;
      rep.violated = "bidegree of component " + std::to_string(i);
      return rep;
    }
  }
  // Curvature: d A^n = omega on every open.
  CechCochain curv = cech_d(A.A[0]);
  CechCochain expect(A.cover, 0, n + 1);
  for (int i = 0; i < A.cover->size(); ++i)
    if (!omega.is_zero()) expect.set({i}, omega);
  if (!(curv == expect)) {
    rep.pass = false;
    rep.violated = "curvature d A^n = omega";
    return rep;
  }
  // Descent: delta A^{n-i} = (-1)^i d A^{n-i-1}.
  for (int i = 0; i <= n - 1; ++i) {
    CechCochain lhs = cech_delta(A.A[i]);
    CechCochain rhs = cech_d(A.A[i + 1]) * rat_pow_sign(i);
    if (!(lhs == rhs)) {
      rep.pass = false;
      rep.violated = "descent relation at cech degree " + std::to_string(i);
      return rep;
    }
  }
  // delta A^0 locally constant on each (n+1)-simplex.
  CechCochain top = cech_delta(A.A[n]);
  for (const auto& [s, a] : top.values()) {
    for (const auto& [m, c] : a.terms()) {
      if (!c.is_constant()) {
        rep.pass = false;
        rep.violated = "delta A^0 not constant on a simplex";
        return rep;
      }
    }
  }
  return rep;
}

Collation::Collation(CoverPtr c, std::vector<Poly> w) : cover(std::move(c)), weights(std::move(w)) {
  if (static_cast<int>(weights.size()) != cover->size())
    throw std::invalid_argument("Collation: one weight per open required");
  Poly sum(cover->patch.coords);
  for (const auto& p : weights) sum += p;
  if (!(sum == Poly::constant(cover->patch.coords, Rat(1))))
    throw std::invalid_argument("Collation: weights must sum to 1");
  if (!cover->full_nerve())
    throw std::invalid_argument("Collation: formal weights require a full nerve");
}

CechCochain Collation::K(const CechCochain& c) const {
  if (c.cech_deg() == 0) throw std::invalid_argument("Collation::K: use K_augment at degree 0");
  CechCochain out(cover, c.cech_deg() - 1, c.form_deg());
  for (const auto& s : cover->simplices(c.cech_deg() - 1)) {
    PolyForm acc(cover->patch, 0);
    for (int a = 0; a < cover->size(); ++a) {
      std::vector<int> tup;
      tup.push_back(a);
      for (int t : s) tup.push_back(t);
      PolyForm v = c.get(tup);
      if (!v.is_zero()) acc += v.scaled_by(weights[a]);
    }
    if (!acc.is_zero()) out.set(s, std::move(acc));
  }
  return out;
}

PolyForm Collation::K_augment(const CechCochain& c) const {
  PolyForm acc(cover->patch, 0);
  for (int a = 0; a < cover->size(); ++a) {
    PolyForm v = c.get({a});
    if (!v.is_zero()) acc += v.scaled_by(weights[a]);
  }
  return acc;
}

CechCochain Collation::D2(const CechCochain& c) const {
  CechCochain dc = cech_d(c);
  return (c.cech_deg() % 2 == 0) ? dc : dc * Rat(-1);
}

TotElem Collation::H(const TotElem& t) const {
  const int m = t.total();
  TotElem out(cover, m - 1, t.cutoff());
  for (const auto& [j, cj] : t.comps()) {
    if (cj.is_zero() || j == 0) continue; // only cech degree >= 1 contributes
    for (int i = 0; i <= j - 1; ++i) {
      CechCochain cur = cj;
      for (int r = 0; r < j - i - 1; ++r) cur = D2(K(cur)) * Rat(-1);
      CechCochain res = K(cur);
      if (!res.is_zero()) out.add_comp(res);
    }
  }
  return out;
}

PolyForm Collation::collate(const TotElem& t) const {
  PolyForm acc(cover->patch, 0);
  for (const auto& [j, cj] : t.comps()) {
    if (cj.is_zero()) continue;
    CechCochain cur = cj;
    for (int r = 0; r < j; ++r) cur = D2(K(cur)) * Rat(-1);
    acc += K_augment(cur);
  }
  return acc;
}

TotSpace::TotSpace(CoverPtr c, int total_deg, int budget_deg, int cutoff)
    : cover(std::move(c)), total(total_deg), budget(budget_deg), max_fdeg(cutoff) {
  const int dim = cover->patch.dim();
  for (int i = 0; i <= total; ++i) {
    int fdeg = total - i;
    if (fdeg > dim || fdeg > max_fdeg || fdeg < 0) continue;
    auto simps = cover->simplices(i);
    if (simps.empty()) continue;
    parts.emplace_back(i, FormSpace(cover->patch, fdeg, budget - fdeg));
    simp.push_back(std::move(simps));
  }
}

int TotSpace::dim() const {
  int d = 0;
  for (size_t t = 0; t < parts.size(); ++t)
    d += static_cast<int>(simp[t].size()) * parts[t].second.dim();
  return d;
}

std::vector<Rat> TotSpace::coords(const TotElem& t) const {
  std::vector<Rat> x(dim());
  int off = 0;
  for (size_t p = 0; p < parts.size(); ++p) {
    const auto& [cdeg, space] = parts[p];
    const CechCochain& c = t.comp(cdeg);
    for (const auto& s : simp[p]) {
      PolyForm v = c.is_zero() ? PolyForm(cover->patch, 0) : c.get(s);
      std::vector<Rat> sub = space.coords(v);
      for (int i = 0; i < space.dim(); ++i) x[off + i] = sub[i];
      off += space.dim();
    }
  }
  return x;
}

TotElem TotSpace::from_coords(const std::vector<Rat>& x) const {
  TotElem out(cover, total, max_fdeg);
  int off = 0;
  for (size_t p = 0; p < parts.size(); ++p) {
    const auto& [cdeg, space] = parts[p];
    CechCochain c(cover, cdeg, total - cdeg);
    for (const auto& s : simp[p]) {
      std::vector<Rat> sub(x.begin() + off, x.begin() + off + space.dim());
      PolyForm v = space.from_coords(sub);
      if (!v.is_zero()) c.set(s, std::move(v));
      off += space.dim();
    }
    if (!c.is_zero()) out.set_comp(std::move(c));
  }
  return out;
}

TotCohomology truncated_tot_cohomology(const CoverPtr& cover, int n_top, int budget) {
  TotCohomology out;
  const Patch& p = cover->patch;
  // Global truncation.
  DeRhamTruncation dr = de_rham_truncated(p, budget);
  for (const auto& [k, h] : cohomology_dims(dr.complex)) out.de_rham_dims[-k] = h;

  // Total-complex truncation: chain degree -m holds Tot^m.
  const int top = std::min(n_top, p.dim() + cover->size() - 1);
  ChainComplexFD cx;
  cx.resize(-top, 0);
  std::vector<TotSpace> spaces(top + 1);
  for (int m = 0; m <= top; ++m) {
    spaces[m] = TotSpace(cover, m, budget);
    cx.dims[top - m] = spaces[m].dim();
  }
  for (int m = 0; m < top; ++m) {
    // d_tot: Tot^m -> Tot^{m+1} is homological C_{-m} -> C_{-m-1}.
    Mat mat(spaces[m + 1].dim(), spaces[m].dim());
    for (int j = 0; j < spaces[m].dim(); ++j) {
      std::vector<Rat> e(spaces[m].dim());
      e[j] = Rat(1);
      std::vector<Rat> y = spaces[m + 1].coords(d_tot(spaces[m].from_coords(e)));
      for (int i = 0; i < spaces[m + 1].dim(); ++i) mat.at(i, j) = y[i];
    }
    cx.set_d(-m, std::move(mat));
  }
  for (const auto& [k, h] : cohomology_dims(cx)) out.tot_dims[-k] = h;
  return out;
}

} // namespace plectic
