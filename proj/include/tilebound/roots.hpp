#pragma once

// Root finding for integer polynomials: exact real-root isolation by Sturm
// sequences, exact detection of integer roots, Aberth iteration for the
// non-real ones.

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "tilebound/polynomial.hpp"

namespace tilebound {

struct PolyRoot {
  std::complex<long double> value;
  int multiplicity = 1;
  bool real = false;
  /// Set when the root is an integer, found by exact evaluation.
  std::optional<Int> exact;

  long double modulus() const { return std::abs(value); }
};

/// Isolating intervals (lo, hi] for the real roots of a square-free p, in
/// increasing order, each of width at most `width`.
std::vector<std::pair<Rational, Rational>> isolate_real_roots(const IntPolynomial& p,
                                                              const Rational& width);

/// All roots of a square-free p with multiplicity 1: real roots refined by
/// bisection to about 2^-60 relative width, non-real roots by Aberth.
std::vector<PolyRoot> squarefree_roots(const IntPolynomial& p);

/// All roots of p with algebraic multiplicities from Yun's decomposition,
/// sorted by decreasing modulus, then decreasing real part, then decreasing
/// imaginary part.
std::vector<PolyRoot> polynomial_roots(const IntPolynomial& p);

/// Simultaneous Aberth-Ehrlich iteration in extended precision.
std::vector<std::complex<long double>> aberth(const IntPolynomial& p);

}  // namespace tilebound
