#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tilebound/intmat.hpp"
#include "tilebound/spectrum.hpp"

namespace tilebound {

struct DimensionBounds {
  long double lower = 0;  // n + (ln lambda - ln m) / ln m_-
  long double upper = 0;  // ln lambda / ln m_-
  /// Raw values before clamping into [n-1, n].
  long double beta_lower = 0;
  long double beta_upper = 0;
  bool clamped = false;
};

/// Bounds for the boundary dimension from a special eigenvalue. Throws
/// std::domain_error unless 1 <= lambda < m and m_minus > 1.
DimensionBounds dimension_bounds(long double lambda, const Int& m, long double m_minus, std::size_t n);

/// n ln(lambda) / ln(m) when all eigenvalues of M share one modulus.
std::optional<long double> exact_dimension_if_equal_modulus(long double lambda, const Int& m, std::size_t n,
                                                            bool equal_modulus);

struct LocalDimension {
  long double lambda = 0;
  DimensionBounds bounds;
  std::optional<long double> exact;
};

/// Per special eigenvalue, in the order given (descending).
std::vector<LocalDimension> local_dimension_set(const std::vector<SpecialEigenvalue>& special, const Int& m,
                                                const MinusModulus& mm, std::size_t n);

enum class MeasureClass { finite, positive, infinite, positive_and_finite, inconclusive };

std::string to_string(MeasureClass c);

struct MeasureClassification {
  MeasureClass verdict = MeasureClass::inconclusive;
  int d_M = 1;
  int d_lambda = 1;
  std::size_t n = 0;
  long double beta = 0;
  long double lhs = 0;  // d_lambda - 1
  long double rhs = 0;  // (n - beta)(d_M - 1)
  bool cond_finite = false;    // d_M = d_lambda = 1
  bool cond_positive = false;  // lhs >= rhs
  bool cond_infinite = false;  // lhs > rhs
};

/// Hausdorff-measure verdict at the exact dimension beta. lhs and rhs within
/// tol count as equal. Throws std::domain_error without equal modulus.
MeasureClassification measure_classification(int d_M, int d_lambda, std::size_t n, long double beta,
                                             bool equal_modulus = true, double tol = 1e-9);

struct DimensionReport {
  bool available = false;  // false without a special eigenvalue
  long double lambda_p = 0;
  DimensionBounds bounds;
  std::optional<long double> exact;
  std::vector<LocalDimension> local_dimensions;
  std::optional<MeasureClassification> measure;
  bool tile_diagnostic = false;
};

DimensionReport analyze_dimension(const SpectralReport& spectrum, const Int& m, std::size_t n);

}  // namespace tilebound
