#include "tilebound/dimension.hpp"

#include <cmath>
#include <stdexcept>

namespace tilebound {

namespace {

long double log_int(const Int& m) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, m.get_mpz_t());
  return std::log(static_cast<long double>(mant)) + static_cast<long double>(exp) * std::log(2.0L);
}

}  // namespace

DimensionBounds dimension_bounds(long double lambda, const Int& m, long double m_minus, std::size_t n) {
  const long double md = static_cast<long double>(m.get_d());
  if (!(lambda >= 1.0L) || !(lambda < md))
    throw std::domain_error("dimension_bounds: lambda outside [1, m)");
  if (!(m_minus > 1.0L)) throw std::domain_error("dimension_bounds: m_minus must exceed 1");
  const long double ln_mm = std::log(m_minus);
  const long double ln_l = std::log(lambda);
  DimensionBounds b;
  b.beta_lower = static_cast<long double>(n) + (ln_l - log_int(m)) / ln_mm;
  b.beta_upper = ln_l / ln_mm;
  b.lower = b.beta_lower;
  b.upper = b.beta_upper;
  const long double lo = static_cast<long double>(n) - 1, hi = static_cast<long double>(n);
  for (long double* v : {&b.lower, &b.upper}) {
    if (*v < lo) {
      *v = lo;
      b.clamped = true;
    } else if (*v > hi) {
      *v = hi;
      b.clamped = true;
    }
  }
  return b;
}

std::optional<long double> exact_dimension_if_equal_modulus(long double lambda, const Int& m, std::size_t n,
                                                            bool equal_modulus) {
  if (!equal_modulus) return std::nullopt;
  return static_cast<long double>(n) * std::log(lambda) / log_int(m);
}

std::vector<LocalDimension> local_dimension_set(const std::vector<SpecialEigenvalue>& special, const Int& m,
                                                const MinusModulus& mm, std::size_t n) {
  std::vector<LocalDimension> out;
  for (const auto& s : special) {
    LocalDimension ld;
    ld.lambda = s.value();
    ld.bounds = dimension_bounds(ld.lambda, m, mm.value, n);
    ld.exact = exact_dimension_if_equal_modulus(ld.lambda, m, n, mm.equal_modulus);
    out.push_back(ld);
  }
  return out;
}

std::string to_string(MeasureClass c) {
  switch (c) {
    case MeasureClass::finite: return "finite";
    case MeasureClass::positive: return "positive";
    case MeasureClass::infinite: return "infinite";
    case MeasureClass::positive_and_finite: return "positive_and_finite";
    case MeasureClass::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

MeasureClassification measure_classification(int d_M, int d_lambda, std::size_t n, long double beta,
                                             bool equal_modulus, double tol) {
  if (!equal_modulus) throw std::domain_error("measure_classification: requires equal modulus");
  MeasureClassification c;
  c.d_M = d_M;
  c.d_lambda = d_lambda;
  c.n = n;
  c.beta = beta;
  c.lhs = d_lambda - 1;
  c.rhs = (static_cast<long double>(n) - beta) * (d_M - 1);
  c.cond_finite = d_M == 1 && d_lambda == 1;
  c.cond_infinite = c.lhs > c.rhs + tol;
  c.cond_positive = c.lhs >= c.rhs - tol;
  if (c.cond_finite && c.cond_positive)
    c.verdict = MeasureClass::positive_and_finite;
  else if (c.cond_finite)
    c.verdict = MeasureClass::finite;
  else if (c.cond_infinite)
    c.verdict = MeasureClass::infinite;
  else if (c.cond_positive)
    c.verdict = MeasureClass::positive;
  else
    c.verdict = MeasureClass::inconclusive;
  return c;
}

DimensionReport analyze_dimension(const SpectralReport& spectrum, const Int& m, std::size_t n) {
  DimensionReport rep;
  rep.tile_diagnostic = spectrum.m_simple;
  if (!spectrum.lambda_p) return rep;
  rep.available = true;
  rep.lambda_p = spectrum.lambda_p->value();
  rep.bounds = dimension_bounds(rep.lambda_p, m, spectrum.minus.value, n);
  rep.exact = exact_dimension_if_equal_modulus(rep.lambda_p, m, n, spectrum.minus.equal_modulus);
  rep.local_dimensions = local_dimension_set(spectrum.search.special, m, spectrum.minus, n);
  if (rep.exact && spectrum.d_lambda_p)
    rep.measure = measure_classification(spectrum.d_M, *spectrum.d_lambda_p, n, *rep.exact, true);
  return rep;
}

}  // namespace tilebound
