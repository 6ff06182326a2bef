#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "tilebound/intmat.hpp"

namespace tilebound {

/// Integer polynomial, coefficients in ascending degree. The zero polynomial
/// has no coefficients and degree -1; otherwise the leading coefficient is
/// nonzero.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Int> ascending);
  IntPolynomial(std::initializer_list<long> ascending);

  static IntPolynomial monomial(long degree, const Int& coeff = 1);
  /// x - root
  static IntPolynomial linear(const Int& root);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Int>& coeffs() const { return c_; }
  Int coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Int(0); }
  const Int& leading() const { return c_.back(); }

  Int eval(const Int& x) const;
  Rational eval(const Rational& x) const;
  std::complex<long double> eval(std::complex<long double> x) const;
  long double eval(long double x) const;

  IntPolynomial derivative() const;
  /// Coefficients reversed: x^deg p(1/x).
  IntPolynomial reversed() const;
  /// p(s x)
  IntPolynomial scaled_argument(const Int& s) const;

  IntPolynomial operator-() const;
  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const Int& s, const IntPolynomial& p);
  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.c_ == b.c_; }

  /// Human-readable form, e.g. "x^2 - 4x + 4".
  std::string str() const;

 private:
  void trim();
  std::vector<Int> c_;
};

Int content(const IntPolynomial& p);
/// p / content(p), with positive leading coefficient.
IntPolynomial primitive_part(const IntPolynomial& p);

/// Quotient and remainder over Q, scaled back to integers is not possible in
/// general, so this throws unless b divides a exactly in Z[x].
IntPolynomial exact_quotient(const IntPolynomial& a, const IntPolynomial& b);
bool divides(const IntPolynomial& b, const IntPolynomial& a);

/// (a mod b) over Q, times the positive rational that makes it a primitive
/// integer polynomial. Signs are preserved, as Sturm sequences need.
IntPolynomial positive_remainder(const IntPolynomial& a, const IntPolynomial& b);

/// Primitive gcd with positive leading coefficient (gcd(0,0) = 0).
IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b);
/// Primitive lcm with positive leading coefficient.
IntPolynomial lcm(const IntPolynomial& a, const IntPolynomial& b);

/// Yun's square-free decomposition of a nonconstant p:
/// p = c * prod_i factors[i]^(i+1), factors pairwise coprime and square-free
/// (entries may be the constant 1).
std::vector<IntPolynomial> squarefree_decomposition(const IntPolynomial& p);

/// Number of times (x - r) divides p.
int root_multiplicity(const IntPolynomial& p, const Int& r);

/// p evaluated at a square integer matrix.
IntMatrix evaluate_at(const IntPolynomial& p, const IntMatrix& a);

}  // namespace tilebound
