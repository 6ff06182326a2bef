#include "tilebound/spectrum.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tilebound {

std::vector<PolyRoot> eigenvalues(const IntMatrix& a) { return polynomial_roots(char_poly(a)); }

IntPolynomial minimal_polynomial(const IntMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("minimal_polynomial: matrix must be square");
  const std::size_t n = a.rows();
  IntPolynomial result{1};
  for (std::size_t e = 0; e < n; ++e) {
    struct Row {
      std::vector<Rational> vec, comb;
      std::size_t pivot;
    };
    std::vector<Row> rows;
    IntVector v(n);
    v[e] = 1;
    for (std::size_t k = 0; k <= n; ++k) {
      std::vector<Rational> w(n), comb(k + 1);
      for (std::size_t i = 0; i < n; ++i) w[i] = v[i];
      comb[k] = 1;
      for (const Row& r : rows) {
        if (w[r.pivot] == 0) continue;
        const Rational f = w[r.pivot] / r.vec[r.pivot];
        for (std::size_t i = 0; i < n; ++i) w[i] -= f * r.vec[i];
        for (std::size_t i = 0; i < r.comb.size(); ++i) comb[i] -= f * r.comb[i];
      }
      const auto nz = std::find_if(w.begin(), w.end(), [](const Rational& x) { return x != 0; });
      if (nz == w.end()) {
        // comb . (v_0 .. v_k) = 0 with comb[k] = 1
        std::vector<Int> coeffs;
        for (const auto& c : comb) {
          if (c.get_den() != 1) throw std::logic_error("minimal_polynomial: non-integral local polynomial");
          coeffs.push_back(c.get_num());
        }
        result = lcm(result, IntPolynomial(std::move(coeffs)));
        break;
      }
      const auto pivot = static_cast<std::size_t>(nz - w.begin());
      rows.push_back({std::move(w), std::move(comb), pivot});
      v = a * v;
    }
  }
  return result;
}

MinusModulus m_minus(const IntMatrix& m, double ratio_tol) {
  const auto eig = eigenvalues(m);
  MinusModulus out;
  out.value = eig.back().modulus();
  out.max_modulus = eig.front().modulus();
  for (const auto& r : eig) {
    out.value = std::min(out.value, r.modulus());
    out.max_modulus = std::max(out.max_modulus, r.modulus());
  }
  out.equal_modulus = out.max_modulus / out.value < 1.0L + ratio_tol;
  if (out.equal_modulus) {
    const long double det_abs = std::fabs(static_cast<long double>(det(m).get_d()));
    out.value = std::pow(det_abs, 1.0L / static_cast<long double>(m.rows()));
  }
  return out;
}

SpecialSearch special_eigenvalues(const std::vector<PolyRoot>& tplus_eigenvalues, const MinusModulus& mm,
                                  const Int& m, std::size_t n, double tol) {
  SpecialSearch out;
  out.lower_end = std::pow(mm.value, static_cast<long double>(n - 1));
  out.upper_end = static_cast<long double>(m.get_d());
  const long double eps = tol;
  for (const PolyRoot& r : tplus_eigenvalues) {
    if (!r.real) continue;
    SpecialEigenvalue s{r, false};
    const long double x = r.value.real();
    bool in_lower, in_upper;
    if (r.exact) {
      const Int& k = *r.exact;
      in_upper = k < m;
      if (mm.equal_modulus) {
        Int kn, mn;
        if (k < 0) {
          in_lower = false;
        } else {
          mpz_pow_ui(kn.get_mpz_t(), k.get_mpz_t(), n);
          mpz_pow_ui(mn.get_mpz_t(), m.get_mpz_t(), n - 1);
          in_lower = kn >= mn;
        }
      } else {
        in_lower = x >= out.lower_end - eps;
        s.boundary_case = std::fabs(x - out.lower_end) <= eps;
      }
    } else {
      in_lower = x >= out.lower_end - eps;
      in_upper = x < out.upper_end - eps;
      s.boundary_case = std::fabs(x - out.lower_end) <= eps || std::fabs(x - out.upper_end) <= eps;
    }
    if (in_lower && in_upper)
      out.special.push_back(s);
    else if (s.boundary_case)
      out.boundary_excluded.push_back(s);
  }
  std::sort(out.special.begin(), out.special.end(),
            [](const SpecialEigenvalue& a, const SpecialEigenvalue& b) { return a.value() > b.value(); });
  return out;
}

int jordan_block_size(const IntMatrix& a, const PolyRoot& lambda, double rank_tol) {
  if (!a.is_square()) throw std::invalid_argument("jordan_block_size: matrix must be square");
  if (lambda.exact) {
    const int d = root_multiplicity(minimal_polynomial(a), *lambda.exact);
    if (d == 0) throw std::invalid_argument("jordan_block_size: " + lambda.exact->get_str() + " is not an eigenvalue");
    return d;
  }
  const auto n = static_cast<Eigen::Index>(a.rows());
  using CMat = Eigen::MatrixXcd;
  CMat A(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      A(i, j) = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).get_d();
  const double norm_a = std::max(1.0, Eigen::JacobiSVD<CMat>(A).singularValues()(0));
  const std::complex<double> lam(static_cast<double>(lambda.value.real()), static_cast<double>(lambda.value.imag()));
  const CMat B = A - lam * CMat::Identity(n, n);

  auto rank = [&](const CMat& X, int power) {
    const Eigen::VectorXd sv = Eigen::JacobiSVD<CMat>(X).singularValues();
    const double threshold = rank_tol * std::pow(norm_a, power);
    return static_cast<int>((sv.array() > threshold).count());
  };

  CMat P = B;
  int prev = rank(P, 1);
  if (prev == n) throw std::invalid_argument("jordan_block_size: value is not an eigenvalue");
  for (int k = 1; k <= n; ++k) {
    P = P * B;
    const int r = rank(P, k + 1);
    if (r == prev) return k;
    prev = r;
  }
  return static_cast<int>(n);
}

bool m_simple(const IntMatrix& t, const Int& m, double tol) {
  const IntPolynomial p = char_poly(t);
  if (root_multiplicity(p, m) != 1) return false;
  const IntPolynomial q = exact_quotient(p, IntPolynomial::linear(m));
  const long double limit = static_cast<long double>(m.get_d()) - tol;
  for (const auto& r : polynomial_roots(q))
    if (r.modulus() >= limit) return false;
  return true;
}

SpectralReport analyze_spectrum(const StandardPair& pair, const ContactSystem& contact, const SpectrumOptions& options) {
  SpectralReport rep;
  rep.tplus_char_poly = char_poly(contact.Tplus);
  rep.eigenvalues = polynomial_roots(rep.tplus_char_poly);
  rep.matrix_eigenvalues = eigenvalues(pair.matrix());
  rep.minus = m_minus(pair.matrix(), options.modulus_ratio_tol);
  rep.search = special_eigenvalues(rep.eigenvalues, rep.minus, pair.modulus(), pair.dim(), options.interval_tol);
  if (!rep.search.special.empty()) rep.lambda_p = rep.search.special.front();

  rep.d_M = 1;
  for (const auto& r : rep.matrix_eigenvalues)
    if (std::fabs(r.modulus() - rep.minus.value) <= options.modulus_ratio_tol * rep.minus.value)
      rep.d_M = std::max(rep.d_M, jordan_block_size(pair.matrix(), r, options.rank_tol));
  if (rep.lambda_p) rep.d_lambda_p = jordan_block_size(contact.Tplus, rep.lambda_p->root, options.rank_tol);
  rep.m_simple = m_simple(contact.T, pair.modulus(), options.interval_tol);
  return rep;
}

}  // namespace tilebound
