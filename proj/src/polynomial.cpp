#include "tilebound/polynomial.hpp"

#include <stdexcept>

namespace tilebound {

namespace {

// Dense polynomial over Q, ascending, trimmed.
using RatPoly = std::vector<Rational>;

void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RatPoly to_rat(const IntPolynomial& p) {
  RatPoly r;
  r.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) r.emplace_back(c);
  return r;
}

// Clears denominators and content; positive leading coefficient.
IntPolynomial to_primitive(const RatPoly& p) {
  if (p.empty()) return {};
  Int den = 1;
  for (const auto& c : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Int> out;
  out.reserve(p.size());
  for (const auto& c : p) {
    Rational s = c * den;
    out.push_back(s.get_num());
  }
  return primitive_part(IntPolynomial(std::move(out)));
}

void divmod(RatPoly a, const RatPoly& b, RatPoly& q, RatPoly& r) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  trim(a);
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  const Rational& lb = b.back();
  while (a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    Rational f = a.back() / lb;
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  r = std::move(a);
}

RatPoly rat_gcd(RatPoly a, RatPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    RatPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

RatPoly rat_quotient(const RatPoly& a, const RatPoly& b) {
  RatPoly q, r;
  divmod(a, b, q, r);
  if (!r.empty()) throw std::domain_error("inexact polynomial division");
  trim(q);
  return q;
}

RatPoly rat_derivative(const RatPoly& p) {
  RatPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

RatPoly rat_sub(RatPoly a, const RatPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

bool is_constant(const RatPoly& p) { return p.size() <= 1; }

}  // namespace

IntPolynomial::IntPolynomial(std::vector<Int> ascending) : c_(std::move(ascending)) { trim(); }

IntPolynomial::IntPolynomial(std::initializer_list<long> ascending) {
  for (long x : ascending) c_.emplace_back(x);
  trim();
}

IntPolynomial IntPolynomial::monomial(long degree, const Int& coeff) {
  std::vector<Int> c(static_cast<std::size_t>(degree) + 1);
  c.back() = coeff;
  return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::linear(const Int& root) { return IntPolynomial(std::vector<Int>{-root, 1}); }

void IntPolynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Int IntPolynomial::eval(const Int& x) const {
  Int acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rational IntPolynomial::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rational(*it);
  return acc;
}

std::complex<long double> IntPolynomial::eval(std::complex<long double> x) const {
  std::complex<long double> acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + static_cast<long double>(it->get_d());
  return acc;
}

long double IntPolynomial::eval(long double x) const {
  long double acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + static_cast<long double>(it->get_d());
  return acc;
}

IntPolynomial IntPolynomial::derivative() const {
  std::vector<Int> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<unsigned long>(i));
  return IntPolynomial(std::move(d));
}

IntPolynomial IntPolynomial::reversed() const {
  return IntPolynomial(std::vector<Int>(c_.rbegin(), c_.rend()));
}

IntPolynomial IntPolynomial::scaled_argument(const Int& s) const {
  std::vector<Int> c = c_;
  Int p = 1;
  for (auto& x : c) {
    x *= p;
    p *= s;
  }
  return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::operator-() const {
  IntPolynomial r(*this);
  for (auto& x : r.c_) x = -x;
  return r;
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<Int> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return IntPolynomial(std::move(c));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) { return a + (-b); }

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Int> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return IntPolynomial(std::move(c));
}

IntPolynomial operator*(const Int& s, const IntPolynomial& p) {
  std::vector<Int> c = p.c_;
  for (auto& x : c) x *= s;
  return IntPolynomial(std::move(c));
}

std::string IntPolynomial::str() const {
  if (c_.empty()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    const Int& c = c_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const Int a = abs(c);
    if (s.empty()) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    if (a != 1 || i == 0) s += a.get_str();
    if (i >= 1) s += "x";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s;
}

Int content(const IntPolynomial& p) {
  Int g = 0;
  for (const auto& c : p.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

IntPolynomial primitive_part(const IntPolynomial& p) {
  if (p.is_zero()) return p;
  Int g = content(p);
  if (p.leading() < 0) g = -g;
  std::vector<Int> c = p.coeffs();
  for (auto& x : c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return IntPolynomial(std::move(c));
}

IntPolynomial exact_quotient(const IntPolynomial& a, const IntPolynomial& b) {
  RatPoly q = rat_quotient(to_rat(a), to_rat(b));
  std::vector<Int> out;
  for (const auto& c : q) {
    if (c.get_den() != 1) throw std::domain_error("exact_quotient: quotient is not integral");
    out.push_back(c.get_num());
  }
  return IntPolynomial(std::move(out));
}

bool divides(const IntPolynomial& b, const IntPolynomial& a) {
  RatPoly q, r;
  divmod(to_rat(a), to_rat(b), q, r);
  return r.empty();
}

IntPolynomial positive_remainder(const IntPolynomial& a, const IntPolynomial& b) {
  RatPoly q, r;
  divmod(to_rat(a), to_rat(b), q, r);
  if (r.empty()) return {};
  Int den = 1;
  for (const auto& c : r) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Int> out;
  for (const auto& c : r) out.push_back(Rational(c * den).get_num());
  IntPolynomial p(std::move(out));
  const Int g = content(p);
  std::vector<Int> c = p.coeffs();
  for (auto& x : c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return IntPolynomial(std::move(c));
}

IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b) {
  return to_primitive(rat_gcd(to_rat(a), to_rat(b)));
}

IntPolynomial lcm(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const IntPolynomial g = gcd(a, b);
  return primitive_part(exact_quotient(primitive_part(a) * primitive_part(b), g));
}

std::vector<IntPolynomial> squarefree_decomposition(const IntPolynomial& p) {
  if (p.degree() < 1) throw std::invalid_argument("squarefree_decomposition: constant polynomial");
  const RatPoly f = to_rat(p);
  const RatPoly fp = rat_derivative(f);
  const RatPoly a0 = rat_gcd(f, fp);
  RatPoly b = rat_quotient(f, a0);
  RatPoly c = rat_quotient(fp, a0);
  RatPoly d = rat_sub(c, rat_derivative(b));
  std::vector<IntPolynomial> factors;
  while (!is_constant(b)) {
    RatPoly a = rat_gcd(b, d);
    factors.push_back(to_primitive(a));
    b = rat_quotient(b, a);
    c = rat_quotient(d, a);
    d = rat_sub(c, rat_derivative(b));
  }
  return factors;
}

int root_multiplicity(const IntPolynomial& p, const Int& r) {
  if (p.is_zero()) throw std::invalid_argument("root_multiplicity: zero polynomial");
  std::vector<Int> c = p.coeffs();
  int mult = 0;
  while (c.size() > 1) {
    // synthetic division by (x - r)
    std::vector<Int> q(c.size() - 1);
    Int acc = 0;
    for (std::size_t i = c.size(); i-- > 1;) {
      acc = acc * r + c[i];
      q[i - 1] = acc;
    }
    const Int rem = acc * r + c[0];
    if (rem != 0) break;
    c = std::move(q);
    ++mult;
  }
  return mult;
}

IntMatrix evaluate_at(const IntPolynomial& p, const IntMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("evaluate_at: matrix must be square");
  const std::size_t n = a.rows();
  IntMatrix acc(n, n);
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = acc * a;
    for (std::size_t i = 0; i < n; ++i) acc(i, i) += *it;
  }
  return acc;
}

}  // namespace tilebound
