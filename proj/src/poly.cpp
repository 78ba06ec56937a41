#include "plectic/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace plectic {

VarList make_vars(std::vector<std::string> names) {
  for (size_t i = 0; i < names.size(); ++i)
    for (size_t j = i + 1; j < names.size(); ++j)
      if (names[i] == names[j])
        throw std::invalid_argument("make_vars: duplicate coordinate name " + names[i]);
  return std::make_shared<const std::vector<std::string>>(std::move(names));
}

Poly Poly::constant(VarList vars, const Rat& c) {
  Poly p(std::move(vars));
  if (!c.is_zero()) p.terms_[Exp(p.nvars(), 0)] = c;
  return p;
}

Poly Poly::var(VarList vars, int i) {
  Poly p(std::move(vars));
  if (i < 0 || i >= p.nvars()) throw std::out_of_range("Poly::var: index");
  Exp e(p.nvars(), 0);
  e[i] = 1;
  p.terms_[e] = Rat(1);
  return p;
}

Poly Poly::monomial(VarList vars, Exp e, const Rat& c) {
  Poly p(std::move(vars));
  if (static_cast<int>(e.size()) != p.nvars())
    throw std::invalid_argument("Poly::monomial: exponent length mismatch");
  if (!c.is_zero()) p.terms_[std::move(e)] = c;
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const Exp& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
}

Rat Poly::constant_value() const {
  if (terms_.empty()) return Rat(0);
  if (!is_constant()) throw std::logic_error("Poly::constant_value: not constant");
  return terms_.begin()->second;
}

int Poly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_)
    d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

void Poly::check_compat(const Poly& o) const {
  if (vars_ == o.vars_) return;
  if (vars_ && o.vars_ && *vars_ == *o.vars_) return;
  throw std::invalid_argument("Poly: variable lists cannot be aligned");
}

void Poly::add_term(const Exp& e, const Rat& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r(vars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (!vars_) vars_ = o.vars_;
  else if (!o.terms_.empty()) check_compat(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (!vars_) vars_ = o.vars_;
  else if (!o.terms_.empty()) check_compat(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (!a.vars_ || !b.vars_) return Poly(a.vars_ ? a.vars_ : b.vars_);
  a.check_compat(b);
  Poly r(a.vars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Exp e(ea);
      for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Poly Poly::operator*(const Rat& c) const {
  Poly r(vars_);
  if (c.is_zero()) return r;
  for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  return a.terms_ == b.terms_;
}

Poly Poly::derivative(int var) const {
  if (var < 0 || var >= nvars()) throw std::out_of_range("Poly::derivative: index");
  Poly r(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exp f(e);
    f[var] -= 1;
    r.add_term(f, c * Rat(e[var]));
  }
  return r;
}

Rat Poly::eval(const std::vector<Rat>& point) const {
  if (static_cast<int>(point.size()) != nvars())
    throw std::invalid_argument("Poly::eval: point dimension mismatch");
  Rat acc(0);
  for (const auto& [e, c] : terms_) {
    Rat t = c;
    for (size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) t *= point[i];
    acc += t;
  }
  return acc;
}

Rat Poly::eval_at_zero() const {
  auto it = terms_.find(Exp(nvars(), 0));
  return it == terms_.end() ? Rat(0) : it->second;
}

std::map<int, Poly> Poly::homogeneous_parts() const {
  std::map<int, Poly> out;
  for (const auto& [e, c] : terms_) {
    int d = std::accumulate(e.begin(), e.end(), 0);
    auto it = out.find(d);
    if (it == out.end()) it = out.emplace(d, Poly(vars_)).first;
    it->second.add_term(e, c);
  }
  return out;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Reverse lexicographic exponent order puts higher powers first.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rat mag = c;
    if (first) {
      if (c.sign() < 0) { os << "-"; mag = -c; }
      first = false;
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
      if (c.sign() < 0) mag = -c;
    }
    os << mag.str();
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << "*" << (*vars_)[i];
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

namespace {

struct PolyLexer {
  const std::string& s;
  size_t at = 0;
  void skip_ws() { while (at < s.size() && std::isspace(static_cast<unsigned char>(s[at]))) ++at; }
  bool eof() { skip_ws(); return at >= s.size(); }
  char peek() { skip_ws(); return at < s.size() ? s[at] : '\0'; }
  char take() { skip_ws(); return s[at++]; }
  std::string ident() {
    skip_ws();
    size_t start = at;
    while (at < s.size() && (std::isalnum(static_cast<unsigned char>(s[at])) || s[at] == '_')) ++at;
    return s.substr(start, at - start);
  }
  std::string number() {
    skip_ws();
    size_t start = at;
    while (at < s.size() && std::isdigit(static_cast<unsigned char>(s[at]))) ++at;
    if (at < s.size() && s[at] == '/') {
      ++at;
      while (at < s.size() && std::isdigit(static_cast<unsigned char>(s[at]))) ++at;
    }
    return s.substr(start, at - start);
  }
};

} // namespace

Poly Poly::parse(const std::string& s, const VarList& vars) {
  PolyLexer lx{s};
  Poly out(vars);
  auto var_index = [&](const std::string& name) {
    for (size_t i = 0; i < vars->size(); ++i)
      if ((*vars)[i] == name) return static_cast<int>(i);
    throw std::invalid_argument("Poly::parse: unknown variable '" + name + "' in: " + s);
  };
  bool first = true;
  while (!lx.eof()) {
    int sign = 1;
    char c = lx.peek();
    if (c == '+' || c == '-') {
      lx.take();
      sign = (c == '-') ? -1 : 1;
    } else if (!first) {
      throw std::invalid_argument("Poly::parse: expected +/- in: " + s);
    }
    first = false;
    Rat coef(sign);
    Exp e(vars->size(), 0);
    bool want_factor = true;
    bool got_any = false;
    while (want_factor) {
      char p = lx.peek();
      if (std::isdigit(static_cast<unsigned char>(p))) {
        coef *= Rat::parse(lx.number());
        got_any = true;
      } else if (std::isalpha(static_cast<unsigned char>(p)) || p == '_') {
        std::string name = lx.ident();
        int idx = var_index(name);
        int pw = 1;
        if (lx.peek() == '^') {
          lx.take();
          pw = std::stoi(lx.number());
        }
        e[idx] += pw;
        got_any = true;
      } else {
        throw std::invalid_argument("Poly::parse: expected factor in: " + s);
      }
      if (lx.peek() == '*') { lx.take(); continue; }
      want_factor = false;
    }
    if (!got_any) throw std::invalid_argument("Poly::parse: empty term in: " + s);
    out.add_term(e, coef);
  }
  return out;
}

} // namespace plectic
