#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tilebound/contact.hpp"
#include "tilebound/pair.hpp"
#include "tilebound/roots.hpp"

namespace tilebound {

struct SpectrumOptions {
  /// Slack on both ends of the special-eigenvalue interval.
  double interval_tol = 1e-9;
  /// Relative singular-value threshold for numeric ranks.
  double rank_tol = 1e-8;
  /// max/min eigenvalue modulus below 1 + this counts as equal modulus.
  double modulus_ratio_tol = 1e-9;
};

/// Eigenvalues with algebraic multiplicity, from the exact characteristic
/// polynomial.
std::vector<PolyRoot> eigenvalues(const IntMatrix& a);

/// Monic minimal polynomial, by exact Krylov iteration on each standard basis
/// vector and an LCM over Q.
IntPolynomial minimal_polynomial(const IntMatrix& a);

struct MinusModulus {
  long double value = 0;  // smallest eigenvalue modulus of M
  long double max_modulus = 0;
  bool equal_modulus = false;
};

/// When all moduli agree, value is m^(1/n) rather than the numeric minimum.
MinusModulus m_minus(const IntMatrix& m, double ratio_tol = 1e-9);

struct SpecialEigenvalue {
  PolyRoot root;
  bool boundary_case = false;

  long double value() const { return root.value.real(); }
};

struct SpecialSearch {
  long double lower_end = 0;  // m_-^(n-1)
  long double upper_end = 0;  // m
  /// Descending.
  std::vector<SpecialEigenvalue> special;
  /// Real eigenvalues within tolerance of an endpoint that were left out.
  std::vector<SpecialEigenvalue> boundary_excluded;
};

/// Real eigenvalues of T+ in [m_-^(n-1), m). Integers are compared exactly;
/// with equal modulus the lower test for an integer is lambda^n >= m^(n-1).
SpecialSearch special_eigenvalues(const std::vector<PolyRoot>& tplus_eigenvalues, const MinusModulus& mm,
                                  const Int& m, std::size_t n, double tol = 1e-9);

/// Size of the largest Jordan block of a at lambda. Integer eigenvalues use
/// the exact multiplicity in the minimal polynomial; others the first k where
/// rank((a - lambda I)^k) stops dropping. Throws std::invalid_argument if
/// lambda is not an eigenvalue.
int jordan_block_size(const IntMatrix& a, const PolyRoot& lambda, double rank_tol = 1e-8);

/// (x - m) divides char_poly(t) exactly once and every other eigenvalue has
/// modulus < m - tol.
bool m_simple(const IntMatrix& t, const Int& m, double tol = 1e-9);

struct SpectralReport {
  IntPolynomial tplus_char_poly;
  std::vector<PolyRoot> eigenvalues;         // of T+
  std::vector<PolyRoot> matrix_eigenvalues;  // of M
  MinusModulus minus;
  SpecialSearch search;
  std::optional<SpecialEigenvalue> lambda_p;
  int d_M = 1;
  std::optional<int> d_lambda_p;
  bool m_simple = false;

  bool has_special() const { return lambda_p.has_value(); }
  /// "ok" or "no_special_eigenvalue".
  std::string status() const { return has_special() ? "ok" : "no_special_eigenvalue"; }
};

SpectralReport analyze_spectrum(const StandardPair& pair, const ContactSystem& contact,
                                const SpectrumOptions& options = {});

}  // namespace tilebound
