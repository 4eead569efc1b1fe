#include "homcx/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace homcx {

Monomial::Monomial(std::vector<int> exps) : exps_(std::move(exps)) {
  for (int e : exps_) {
    if (e < 0) throw std::invalid_argument("negative exponent");
    degree_ += e;
  }
}

Monomial Monomial::variable(std::size_t nvars, std::size_t i) {
  std::vector<int> e(nvars, 0);
  e.at(i) = 1;
  return Monomial(std::move(e));
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += o.exps_[i];
  r.degree_ += o.degree_;
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > o.exps_[i]) return false;
  return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
  Monomial r(o);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= exps_[i];
  r.degree_ -= degree_;
  return r;
}

Monomial Monomial::lcm(const Monomial& o) const {
  std::vector<int> e(exps_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(exps_[i], o.exps_[i]);
  return Monomial(std::move(e));
}

bool Monomial::coprime(const Monomial& o) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] && o.exps_[i]) return false;
  return true;
}

bool degrevlex_greater(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  for (std::size_t i = a.num_vars(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

std::optional<int> Polynomial::homogeneous_degree() const {
  if (terms_.empty()) return std::nullopt;
  int d = terms_.front().mono.degree();
  for (const auto& t : terms_)
    if (t.mono.degree() != d) return std::nullopt;
  return d;
}

bool Polynomial::is_homogeneous() const { return is_zero() || homogeneous_degree().has_value(); }

bool Polynomial::operator==(const Polynomial& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (!(terms_[i].mono == o.terms_[i].mono) || terms_[i].coef != o.terms_[i].coef) return false;
  return true;
}

Polynomial Polynomial::from_terms(const PrimeField& F, std::vector<Term> terms) {
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Term& a, const Term& b) { return degrevlex_greater(a.mono, b.mono); });
  Polynomial p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coef = F.add(p.terms_.back().coef, t.coef);
      if (p.terms_.back().coef == 0) p.terms_.pop_back();
    } else if (t.coef != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

PolynomialRing::PolynomialRing(PrimeField field, std::vector<std::string> var_names)
    : field_(field), names_(std::move(var_names)) {
  if (names_.empty()) throw std::invalid_argument("polynomial ring needs at least one variable");
}

Polynomial PolynomialRing::constant(std::int64_t c) const {
  return monomial(Monomial(num_vars()), field_.from_int(c));
}

Polynomial PolynomialRing::variable(std::size_t i) const { return monomial(Monomial::variable(num_vars(), i)); }

Polynomial PolynomialRing::monomial(const Monomial& m, PrimeField::Element c) const {
  Polynomial p;
  if (c) p.terms_.push_back({m, c});
  return p;
}

Polynomial PolynomialRing::add(const Polynomial& a, const Polynomial& b) const {
  Polynomial r;
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    if (j == b.terms_.size() || (i < a.terms_.size() && degrevlex_greater(a.terms_[i].mono, b.terms_[j].mono))) {
      r.terms_.push_back(a.terms_[i++]);
    } else if (i == a.terms_.size() || degrevlex_greater(b.terms_[j].mono, a.terms_[i].mono)) {
      r.terms_.push_back(b.terms_[j++]);
    } else {
      auto c = field_.add(a.terms_[i].coef, b.terms_[j].coef);
      if (c) r.terms_.push_back({a.terms_[i].mono, c});
      ++i;
      ++j;
    }
  }
  return r;
}

Polynomial PolynomialRing::neg(const Polynomial& a) const {
  Polynomial r(a);
  for (auto& t : r.terms_) t.coef = field_.neg(t.coef);
  return r;
}

Polynomial PolynomialRing::sub(const Polynomial& a, const Polynomial& b) const { return add(a, neg(b)); }

Polynomial PolynomialRing::scale(const Polynomial& a, PrimeField::Element c) const {
  if (c == 0) return {};
  Polynomial r(a);
  for (auto& t : r.terms_) t.coef = field_.mul(t.coef, c);
  return r;
}

Polynomial PolynomialRing::mul_term(const Polynomial& a, const Monomial& m, PrimeField::Element c) const {
  if (c == 0) return {};
  Polynomial r;
  r.terms_.reserve(a.terms_.size());
  // multiplication by a monomial preserves the term order
  for (const auto& t : a.terms_) r.terms_.push_back({t.mono * m, field_.mul(t.coef, c)});
  return r;
}

Polynomial PolynomialRing::mul(const Polynomial& a, const Polynomial& b) const {
  std::vector<Term> terms;
  terms.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) terms.push_back({s.mono * t.mono, field_.mul(s.coef, t.coef)});
  return Polynomial::from_terms(field_, std::move(terms));
}

Polynomial PolynomialRing::pow(const Polynomial& a, unsigned e) const {
  Polynomial r = constant(1);
  for (unsigned i = 0; i < e; ++i) r = mul(r, a);
  return r;
}

Polynomial PolynomialRing::make_monic(const Polynomial& a) const {
  if (a.is_zero()) return a;
  return scale(a, field_.inv(a.leading().coef));
}

std::string PolynomialRing::to_string(const Monomial& m) const {
  std::string out;
  for (std::size_t i = 0; i < m.num_vars(); ++i) {
    if (!m[i]) continue;
    if (!out.empty()) out += "*";
    out += names_[i];
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

std::string PolynomialRing::to_string(const Polynomial& f) const {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : f.terms()) {
    auto c = field_.centered(t.coef);
    bool negative = c < 0;
    auto mag = negative ? -c : c;
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    bool is_const = t.mono.degree() == 0;
    if (is_const) {
      os << mag;
    } else {
      if (mag != 1) os << mag << "*";
      os << to_string(t.mono);
    }
  }
  return os.str();
}

namespace {
void enumerate(std::size_t nvars, std::size_t pos, int remaining, std::vector<int>& cur, std::vector<Monomial>& out) {
  if (pos + 1 == nvars) {
    cur[pos] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[pos] = e;
    enumerate(nvars, pos + 1, remaining - e, cur, out);
  }
}
}  // namespace

std::vector<Monomial> monomials_of_degree(std::size_t nvars, int degree) {
  std::vector<Monomial> out;
  if (degree < 0 || nvars == 0) return out;
  std::vector<int> cur(nvars, 0);
  enumerate(nvars, 0, degree, cur, out);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return degrevlex_greater(a, b); });
  return out;
}

}  // namespace homcx
