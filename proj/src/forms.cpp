#include "plectic/forms.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace plectic {

bool Patch::same_as(const Patch& o) const {
  if (coords == o.coords) return true;
  return coords && o.coords && *coords == *o.coords;
}

int mask_popcount(Mask m) { return std::popcount(m); }

std::vector<int> mask_indices(Mask m) {
  std::vector<int> out;
  for (int i = 0; m != 0; ++i, m >>= 1)
    if (m & 1u) out.push_back(i);
  return out;
}

namespace {

Mask mask_of(const std::vector<int>& idx, int dim) {
  Mask m = 0;
  for (int i : idx) {
    if (i < 0 || i >= dim) throw std::out_of_range("basis index out of range");
    if (m & (1u << i)) throw std::invalid_argument("repeated basis index");
    m |= (1u << i);
  }
  return m;
}

// Sign of dx_I ∧ dx_J -> dx_{I∪J}: (-1)^{#{(i,j) in IxJ : i > j}}.
int shuffle_sign(Mask a, Mask b) {
  int swaps = 0;
  for (int j = 0; (b >> j) != 0; ++j) {
    if (!(b & (1u << j))) continue;
    Mask above = a & ~((1u << (j + 1)) - 1u);
    swaps += std::popcount(above);
  }
  return (swaps % 2 == 0) ? 1 : -1;
}

// Position of index i within the sorted index set of mask m.
int pos_in_mask(Mask m, int i) {
  return std::popcount(m & ((1u << i) - 1u));
}

void require_same_patch(const Patch& a, const Patch& b, const char* op) {
  if (!a.same_as(b)) throw std::invalid_argument(std::string(op) + ": patch mismatch");
}

} // namespace

void GradedTerms::add_term(Mask m, const Poly& c) {
  if (c.is_zero()) return;
  if (mask_popcount(m) != deg_)
    throw std::invalid_argument("GradedTerms::add_term: wrong index count for degree");
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void GradedTerms::negate() {
  for (auto& [m, c] : terms_) c = -c;
}

void GradedTerms::add_in(const GradedTerms& o, const Rat& scale) {
  if (o.is_zero() || scale.is_zero()) return;
  require_same_patch(patch_, o.patch_, "add");
  if (deg_ != o.deg_) throw std::invalid_argument("add: degree mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, c * scale);
}

bool GradedTerms::equals(const GradedTerms& o) const {
  if (terms_.empty() && o.terms_.empty()) return true;
  if (deg_ != o.deg_) return false;
  return terms_ == o.terms_;
}

PolyForm::PolyForm(Patch p, int degree) : GradedTerms(std::move(p), degree) {
  if (degree < 0 || degree > patch_.dim())
    throw std::invalid_argument("PolyForm: degree out of range");
}

PolyForm PolyForm::from_poly(const Patch& p, const Poly& f) {
  PolyForm a(p, 0);
  a.add_term(0, f);
  return a;
}

PolyForm PolyForm::basis(const Patch& p, const std::vector<int>& idx, const Poly& coeff) {
  PolyForm a(p, static_cast<int>(idx.size()));
  // Sort indices, tracking the permutation sign.
  std::vector<int> s(idx);
  int sign = 1;
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j)
      if (s[i] > s[j]) { std::swap(s[i], s[j]); sign = -sign; }
  a.add_term(mask_of(s, p.dim()), sign == 1 ? coeff : -coeff);
  return a;
}

PolyForm PolyForm::operator-() const {
  PolyForm r(*this);
  r.negate();
  return r;
}

PolyForm& PolyForm::operator+=(const PolyForm& o) {
  if (o.is_zero()) return *this;
  if (terms_.empty()) *this = PolyForm(o.patch(), o.degree());
  add_in(o, Rat(1));
  return *this;
}

PolyForm& PolyForm::operator-=(const PolyForm& o) {
  if (o.is_zero()) return *this;
  if (terms_.empty()) *this = PolyForm(o.patch(), o.degree());
  add_in(o, Rat(-1));
  return *this;
}

PolyForm PolyForm::operator*(const Rat& c) const {
  PolyForm r(patch_, deg_);
  if (c.is_zero()) return r;
  for (const auto& [m, f] : terms_) r.add_term(m, f * c);
  return r;
}

PolyForm PolyForm::scaled_by(const Poly& f) const {
  PolyForm r(patch_, deg_);
  for (const auto& [m, c] : terms_) r.add_term(m, c * f);
  return r;
}

PolyForm PolyForm::eval_coeffs_at_zero() const {
  PolyForm r(patch_, deg_);
  for (const auto& [m, c] : terms_)
    r.add_term(m, Poly::constant(patch_.coords, c.eval_at_zero()));
  return r;
}

MultiVec::MultiVec(Patch p, int degree) : GradedTerms(std::move(p), degree) {
  if (degree < 0 || degree > patch_.dim())
    throw std::invalid_argument("MultiVec: degree out of range");
}

MultiVec MultiVec::coordinate_field(const Patch& p, int i) {
  MultiVec v(p, 1);
  v.add_term(mask_of({i}, p.dim()), Poly::constant(p.coords, Rat(1)));
  return v;
}

MultiVec MultiVec::basis(const Patch& p, const std::vector<int>& idx, const Poly& coeff) {
  MultiVec a(p, static_cast<int>(idx.size()));
  std::vector<int> s(idx);
  int sign = 1;
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j)
      if (s[i] > s[j]) { std::swap(s[i], s[j]); sign = -sign; }
  a.add_term(mask_of(s, p.dim()), sign == 1 ? coeff : -coeff);
  return a;
}

MultiVec MultiVec::operator-() const {
  MultiVec r(*this);
  r.negate();
  return r;
}

MultiVec& MultiVec::operator+=(const MultiVec& o) {
  if (o.is_zero()) return *this;
  if (terms_.empty()) *this = MultiVec(o.patch(), o.degree());
  add_in(o, Rat(1));
  return *this;
}

MultiVec& MultiVec::operator-=(const MultiVec& o) {
  if (o.is_zero()) return *this;
  if (terms_.empty()) *this = MultiVec(o.patch(), o.degree());
  add_in(o, Rat(-1));
  return *this;
}

MultiVec MultiVec::operator*(const Rat& c) const {
  MultiVec r(patch_, deg_);
  if (c.is_zero()) return r;
  for (const auto& [m, f] : terms_) r.add_term(m, f * c);
  return r;
}

MultiVec MultiVec::scaled_by(const Poly& f) const {
  MultiVec r(patch_, deg_);
  for (const auto& [m, c] : terms_) r.add_term(m, c * f);
  return r;
}

PolyForm operator*(const Rat& c, const PolyForm& a) { return a * c; }
MultiVec operator*(const Rat& c, const MultiVec& a) { return a * c; }

PolyForm wedge(const PolyForm& a, const PolyForm& b) {
  require_same_patch(a.patch(), b.patch(), "wedge");
  if (a.degree() + b.degree() > a.patch().dim()) return PolyForm(a.patch(), a.patch().dim());
  PolyForm r(a.patch(), a.degree() + b.degree());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      if (ma & mb) continue;
      r.add_term(ma | mb, shuffle_sign(ma, mb) == 1 ? ca * cb : -(ca * cb));
    }
  return r;
}

MultiVec wedge(const MultiVec& a, const MultiVec& b) {
  require_same_patch(a.patch(), b.patch(), "wedge");
  if (a.degree() + b.degree() > a.patch().dim()) return MultiVec(a.patch(), a.patch().dim());
  MultiVec r(a.patch(), a.degree() + b.degree());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      if (ma & mb) continue;
      r.add_term(ma | mb, shuffle_sign(ma, mb) == 1 ? ca * cb : -(ca * cb));
    }
  return r;
}

PolyForm exterior_d(const PolyForm& a) {
  if (a.degree() >= a.patch().dim()) return PolyForm(a.patch(), a.patch().dim());
  PolyForm r(a.patch(), a.degree() + 1);
  for (const auto& [m, c] : a.terms())
    for (int i = 0; i < a.patch().dim(); ++i) {
      if (m & (1u << i)) continue;
      Poly dc = c.derivative(i);
      if (dc.is_zero()) continue;
      int sign = pos_in_mask(m, i) % 2 == 0 ? 1 : -1;
      r.add_term(m | (1u << i), sign == 1 ? dc : -dc);
    }
  return r;
}

namespace {

// ι along a single coordinate field d/dx_i.
PolyForm interior_single(int i, const PolyForm& a) {
  PolyForm r(a.patch(), a.degree() - 1);
  for (const auto& [m, c] : a.terms()) {
    if (!(m & (1u << i))) continue;
    int sign = pos_in_mask(m, i) % 2 == 0 ? 1 : -1;
    r.add_term(m & ~(1u << i), sign == 1 ? c : -c);
  }
  return r;
}

} // namespace

PolyForm interior(const MultiVec& u, const PolyForm& a) {
  require_same_patch(u.patch(), a.patch(), "interior");
  if (u.degree() > a.degree()) return PolyForm(a.patch(), 0);
  if (u.degree() == 0) {
    // Contraction with a function is multiplication.
    PolyForm r(a.patch(), a.degree());
    for (const auto& [mu, cu] : u.terms())
      for (const auto& [ma, ca] : a.terms()) r.add_term(ma, cu * ca);
    return r;
  }
  PolyForm out(a.patch(), a.degree() - u.degree());
  for (const auto& [mu, cu] : u.terms()) {
    // ι_{v1∧..∧vq} = ι_{vq} .. ι_{v1} on the coordinate decomposable,
    // coefficients pulled out by linearity.
    std::vector<int> idx = mask_indices(mu);
    PolyForm acc = a;
    for (int i : idx) acc = interior_single(i, acc);
    for (const auto& [m, c] : acc.terms()) out.add_term(m, cu * c);
  }
  return out;
}

PolyForm lie_derivative(const MultiVec& u, const PolyForm& a) {
  PolyForm t1 = exterior_d(interior(u, a));
  PolyForm t2 = interior(u, exterior_d(a));
  int target = a.degree() - u.degree() + 1;
  if (target < 0 || target > a.patch().dim()) target = 0;
  PolyForm r(a.patch(), target);
  r += t1;
  if (u.degree() % 2 == 0) r -= t2; else r += t2;
  return r;
}

MultiVec schouten(const MultiVec& u, const MultiVec& v) {
  require_same_patch(u.patch(), v.patch(), "schouten");
  const Patch& p = u.patch();
  const int du = u.degree(), dv = v.degree();
  if (du + dv - 1 > p.dim()) return MultiVec(p, p.dim());
  MultiVec out(p, du + dv - 1 < 0 ? 0 : du + dv - 1);

  // Odd-coordinate realization: a term c·D_I is c·ξ_{i1}..ξ_{iq}.  The
  // bracket is Σ_k (∂F/∂ξ_k from the right)·(∂G/∂x_k)
  //          - (-1)^{(|F|-1)(|G|-1)} Σ_k (∂G/∂ξ_k from the right)·(∂F/∂x_k).
  auto accumulate = [&](const MultiVec& F, const MultiVec& G, const Rat& outer_sign) {
    for (const auto& [mf, cf] : F.terms()) {
      std::vector<int> idx = mask_indices(mf);
      const int q = static_cast<int>(idx.size());
      for (int t = 0; t < q; ++t) {
        int k = idx[t];
        // Right derivative: sign (-1)^{q-1-t}.
        Rat s = ((q - 1 - t) % 2 == 0) ? Rat(1) : Rat(-1);
        Mask rest = mf & ~(1u << k);
        for (const auto& [mg, cg] : G.terms()) {
          Poly dg = cg.derivative(k);
          if (dg.is_zero()) continue;
          if (rest & mg) continue;
          Rat sgn = outer_sign * s * Rat(shuffle_sign(rest, mg));
          out.add_term(rest | mg, (cf * dg) * sgn);
        }
      }
    }
  };

  accumulate(u, v, Rat(1));
  Rat swap_sign = (((du - 1) * (dv - 1)) % 2 == 0) ? Rat(-1) : Rat(1);
  accumulate(v, u, swap_sign);
  return out;
}

PolyForm poincare_homotopy(const PolyForm& a) {
  if (a.degree() == 0)
    throw std::invalid_argument("poincare_homotopy: degree-0 input");
  const Patch& p = a.patch();
  PolyForm out(p, a.degree() - 1);
  for (const auto& [m, c] : a.terms()) {
    std::vector<int> idx = mask_indices(m);
    for (const auto& [k, part] : c.homogeneous_parts()) {
      Rat w(1, k + a.degree());
      // ι_E(part · dx_I) with E = Σ x_i d/dx_i.
      for (size_t t = 0; t < idx.size(); ++t) {
        int i = idx[t];
        Rat sgn = (t % 2 == 0) ? w : -w;
        out.add_term(m & ~(1u << i), part * Poly::var(p.coords, i) * sgn);
      }
    }
  }
  return out;
}

IdentityReport check_cartan_commutator(const MultiVec& u, const MultiVec& v, const PolyForm& a) {
  PolyForm lhs = interior(schouten(u, v), a);
  PolyForm t1 = lie_derivative(u, interior(v, a));
  PolyForm t2 = interior(v, lie_derivative(u, a));
  Rat s = (((u.degree() - 1) * v.degree()) % 2 == 0) ? Rat(1) : Rat(-1);
  PolyForm rhs = t1 * s - t2;
  PolyForm res = lhs - rhs;
  IdentityReport rep;
  if (!res.is_zero()) { rep.pass = false; rep.residual = res.str(); }
  return rep;
}

MultiVec wedge_all(const Patch& p, const std::vector<MultiVec>& vs) {
  MultiVec acc(p, 0);
  acc.add_term(0, Poly::constant(p.coords, Rat(1)));
  for (const auto& v : vs) acc = wedge(acc, v);
  return acc;
}

IdentityReport check_extended_cartan(const PolyForm& beta, const std::vector<MultiVec>& vs) {
  const int k = static_cast<int>(vs.size());
  if (k < 1) throw std::invalid_argument("check_extended_cartan: needs k >= 1");
  const Patch& p = beta.patch();
  for (const auto& v : vs)
    if (v.degree() != 1) throw std::invalid_argument("check_extended_cartan: vector fields only");

  PolyForm lhs = exterior_d(interior(wedge_all(p, vs), beta)) * rat_pow_sign(k);

  PolyForm rhs(p, lhs.degree());
  // Σ_{i<j} (-1)^{i+j} ι_{[vi,vj]∧(rest)} beta, 1-based i,j.
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      std::vector<MultiVec> rest;
      rest.push_back(schouten(vs[i], vs[j]));
      for (int t = 0; t < k; ++t)
        if (t != i && t != j) rest.push_back(vs[t]);
      rhs += interior(wedge_all(p, rest), beta) * rat_pow_sign(i + j + 2);
    }
  // Σ_i (-1)^i ι_{(rest)} L_{vi} beta.
  for (int i = 0; i < k; ++i) {
    std::vector<MultiVec> rest;
    for (int t = 0; t < k; ++t)
      if (t != i) rest.push_back(vs[t]);
    rhs += interior(wedge_all(p, rest), lie_derivative(vs[i], beta)) * rat_pow_sign(i + 1);
  }
  rhs += interior(wedge_all(p, vs), exterior_d(beta));

  PolyForm res = lhs - rhs;
  IdentityReport rep;
  if (!res.is_zero()) { rep.pass = false; rep.residual = res.str(); }
  return rep;
}

namespace {

std::string graded_str(const GradedTerms& g, const char* marker, const Patch& p) {
  if (g.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : g.terms()) {
    if (!first) os << " + ";
    first = false;
    bool simple = c.term_count() == 1 && c.terms().begin()->second.sign() > 0;
    if (g.degree() == 0) {
      os << (simple ? c.str() : "(" + c.str() + ")");
      continue;
    }
    if (c.is_constant() && c.constant_value().is_one()) {
      os << "1";
    } else {
      os << (simple ? c.str() : "(" + c.str() + ")");
    }
    os << " ";
    bool firstb = true;
    for (int i : mask_indices(m)) {
      if (!firstb) os << "^";
      firstb = false;
      os << marker << p.name(i);
    }
  }
  return os.str();
}

// Parses "<coeff> dx^dy + ...": coefficient is either a parenthesized
// polynomial or a single monomial; the basis block uses the given marker.
template <typename T>
T parse_graded(const std::string& s, const Patch& p, const char* marker) {
  std::string trimmed;
  for (char c : s) trimmed.push_back(c);
  // Split into top-level terms on " + " and " - " outside parens.
  struct Piece { int sign; std::string body; };
  std::vector<Piece> pieces;
  int depth = 0;
  int sign = 1;
  std::string cur;
  size_t i = 0;
  auto flush = [&]() {
    if (!cur.empty()) pieces.push_back({sign, cur});
    cur.clear();
  };
  while (i < trimmed.size()) {
    char c = trimmed[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && (c == '+' || c == '-') && !cur.empty() &&
        std::isspace(static_cast<unsigned char>(trimmed[i - 1]))) {
      flush();
      sign = (c == '-') ? -1 : 1;
      ++i;
      continue;
    }
    cur.push_back(c);
    ++i;
  }
  flush();

  std::optional<T> out;
  const std::string mk = marker;
  for (auto& [sg, body] : pieces) {
    // Find the basis part: last run of marker-prefixed identifiers joined by '^'.
    size_t bpos = std::string::npos;
    for (size_t j = 0; j + mk.size() <= body.size(); ++j) {
      bool at_start = j == 0 || std::isspace(static_cast<unsigned char>(body[j - 1])) ||
                      body[j - 1] == '^';
      if (at_start && body.compare(j, mk.size(), mk) == 0) { bpos = j; break; }
    }
    std::string coeff_str, basis_str;
    if (bpos == std::string::npos) {
      coeff_str = body;
    } else {
      coeff_str = body.substr(0, bpos);
      basis_str = body.substr(bpos);
    }
    // Trim and unwrap parens on the coefficient.
    auto trim = [](std::string t) {
      size_t a = t.find_first_not_of(" \t");
      size_t b = t.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : t.substr(a, b - a + 1);
    };
    coeff_str = trim(coeff_str);
    if (!coeff_str.empty() && coeff_str.front() == '(' && coeff_str.back() == ')')
      coeff_str = coeff_str.substr(1, coeff_str.size() - 2);
    Poly coeff = coeff_str.empty() ? Poly::constant(p.coords, Rat(1))
                                   : Poly::parse(coeff_str, p.coords);
    if (sg < 0) coeff = -coeff;

    std::vector<int> idx;
    size_t j = 0;
    while (j < basis_str.size()) {
      if (std::isspace(static_cast<unsigned char>(basis_str[j])) || basis_str[j] == '^') { ++j; continue; }
      if (basis_str.compare(j, mk.size(), mk) != 0)
        throw std::invalid_argument("parse form: bad basis factor in: " + s);
      j += mk.size();
      size_t start = j;
      while (j < basis_str.size() && (std::isalnum(static_cast<unsigned char>(basis_str[j])) || basis_str[j] == '_')) ++j;
      std::string nm = basis_str.substr(start, j - start);
      int found = -1;
      for (int t = 0; t < p.dim(); ++t)
        if (p.name(t) == nm) { found = t; break; }
      if (found < 0) throw std::invalid_argument("parse form: unknown coordinate " + nm);
      idx.push_back(found);
    }
    T term = T::basis(p, idx, coeff);
    if (coeff.is_zero() && idx.empty()) term = T(p, 0);
    if (!out) {
      out = term;
    } else {
      if (out->degree() != term.degree())
        throw std::invalid_argument("parse form: mixed degrees in: " + s);
      *out += term;
    }
  }
  if (!out) return T(p, 0);
  return *out;
}

} // namespace

std::string PolyForm::str() const { return graded_str(*this, "d", patch_); }
std::string MultiVec::str() const { return graded_str(*this, "D", patch_); }

PolyForm PolyForm::parse(const std::string& s, const Patch& p) {
  std::string t;
  for (char c : s) t.push_back(c);
  if (t.find_first_not_of(" \t0") == std::string::npos && t.find('0') != std::string::npos)
    return PolyForm(p, 0);
  return parse_graded<PolyForm>(s, p, "d");
}

MultiVec MultiVec::parse(const std::string& s, const Patch& p) {
  std::string t;
  for (char c : s) t.push_back(c);
  if (t.find_first_not_of(" \t0") == std::string::npos && t.find('0') != std::string::npos)
    return MultiVec(p, 0);
  return parse_graded<MultiVec>(s, p, "D");
}

} // namespace plectic
