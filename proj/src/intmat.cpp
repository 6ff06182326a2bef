#include "tilebound/intmat.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tilebound/polynomial.hpp"

namespace tilebound {

IntVector::IntVector(std::initializer_list<long> coords) {
  c_.reserve(coords.size());
  for (long x : coords) c_.emplace_back(x);
}

bool IntVector::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool IntVector::is_lex_positive() const {
  for (const auto& x : c_)
    if (x != 0) return x > 0;
  return false;
}

Int IntVector::norm_squared() const {
  Int s = 0;
  for (const auto& x : c_) s += x * x;
  return s;
}

IntVector IntVector::operator-() const {
  IntVector r(*this);
  for (auto& x : r.c_) x = -x;
  return r;
}

IntVector& IntVector::operator+=(const IntVector& o) {
  if (o.size() != size()) throw std::invalid_argument("IntVector: dimension mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

IntVector& IntVector::operator-=(const IntVector& o) {
  if (o.size() != size()) throw std::invalid_argument("IntVector: dimension mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

IntVector operator*(const Int& s, IntVector v) {
  for (auto& x : v.c_) x *= s;
  return v;
}

bool operator<(const IntVector& a, const IntVector& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int c = cmp(a.c_[i], b.c_[i]);
    if (c != 0) return c < 0;
  }
  return a.size() < b.size();
}

std::string IntVector::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ",";
    s += c_[i].get_str();
  }
  return s + ")";
}

std::size_t IntVectorHash::operator()(const IntVector& v) const {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (const auto& x : v) {
    const std::size_t limb = mpz_size(x.get_mpz_t()) ? mpz_getlimbn(x.get_mpz_t(), 0) : 0;
    const std::size_t k = limb ^ (static_cast<std::size_t>(mpz_sgn(x.get_mpz_t()) + 1) << 61);
    h ^= k + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  a_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("IntMatrix: ragged rows");
    for (long x : r) a_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& columns) {
  if (columns.empty()) return {};
  IntMatrix m(columns.front().size(), columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != m.rows()) throw std::invalid_argument("IntMatrix: ragged columns");
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = columns[j][i];
  }
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw std::invalid_argument("IntMatrix: ragged rows");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  IntVector v(cols_);
  for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
  return v;
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

IntMatrix& IntMatrix::operator+=(const IntMatrix& o) {
  if (o.rows_ != rows_ || o.cols_ != cols_) throw std::invalid_argument("IntMatrix: shape mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

IntMatrix& IntMatrix::operator-=(const IntMatrix& o) {
  if (o.rows_ != rows_ || o.cols_ != cols_) throw std::invalid_argument("IntMatrix: shape mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("IntMatrix: shape mismatch in product");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Int& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

IntVector operator*(const IntMatrix& a, const IntVector& v) {
  if (a.cols_ != v.size()) throw std::invalid_argument("IntMatrix: shape mismatch in product");
  IntVector r(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) r[i] += a(i, j) * v[j];
  return r;
}

IntMatrix operator*(const Int& s, IntMatrix a) {
  for (auto& x : a.a_) x *= s;
  return a;
}

bool IntMatrix::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

Int IntMatrix::trace() const {
  Int t = 0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ",";
    os << "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ",";
      os << (*this)(i, j).get_str();
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

IntMatrix power(const IntMatrix& a, unsigned k) {
  if (!a.is_square()) throw std::invalid_argument("power: matrix must be square");
  IntMatrix result = IntMatrix::identity(a.rows());
  IntMatrix base = a;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Int det(const IntMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("det: matrix must be square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && a(r, k) == 0) ++r;
      if (r == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(r, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = std::move(t);
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

IntMatrix adjugate(const IntMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("adjugate: matrix must be square");
  const std::size_t n = m.rows();
  if (n == 1) return IntMatrix::identity(1);
  IntMatrix adj(n, n);
  IntMatrix minor(n - 1, n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // cofactor C_ij goes to adj(j, i)
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      Int d = det(minor);
      adj(j, i) = ((i + j) % 2 == 0) ? d : Int(-d);
    }
  }
  return adj;
}

IntPolynomial char_poly(const IntMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("char_poly: matrix must be square");
  const std::size_t n = m.rows();
  std::vector<Int> c(n + 1);
  c[n] = 1;
  IntMatrix mk(n, n);   // M_k
  IntMatrix amk(n, n);  // A M_k
  for (std::size_t k = 1; k <= n; ++k) {
    mk = amk;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[n - k + 1];
    amk = m * mk;
    Int t = amk.trace();
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), k);
    c[n - k] = -t;
  }
  return IntPolynomial(std::move(c));
}

IntMatrix Lattice::basis_matrix() const { return IntMatrix::from_columns(basis_); }

Int Lattice::index() const {
  if (!full_rank()) throw std::domain_error("Lattice::index: lattice is not full rank");
  return abs(det(basis_matrix()));
}

namespace {

void axpy(IntVector& row, const Int& q, const IntVector& pivot_row) {
  for (std::size_t j = 0; j < row.size(); ++j) row[j] -= q * pivot_row[j];
}

}  // namespace

Lattice hnf(const std::vector<IntVector>& generators) {
  if (generators.empty()) throw std::invalid_argument("hnf: no generators");
  const std::size_t n = generators.front().size();
  std::vector<IntVector> rows;
  for (const auto& g : generators) {
    if (g.size() != n) throw std::invalid_argument("hnf: generators of different dimension");
    if (!g.is_zero()) rows.push_back(g);
  }
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        if (best == rows.size() || mpz_cmpabs(rows[i][col].get_mpz_t(), rows[best][col].get_mpz_t()) < 0) best = i;
      }
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool cleared = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[r][col].get_mpz_t());
        axpy(rows[i], q, rows[r]);
        if (rows[i][col] != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (rows[r][col] == 0) continue;
    if (rows[r][col] < 0) rows[r] = -rows[r];
    for (std::size_t i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[r][col].get_mpz_t());
      if (q != 0) axpy(rows[i], q, rows[r]);
    }
    ++r;
  }
  rows.resize(r);
  return Lattice(n, std::move(rows));
}

bool in_image(const IntVector& v, const IntMatrix& m) {
  const Int d = det(m);
  if (d == 0) throw std::domain_error("in_image: singular matrix");
  const IntVector w = adjugate(m) * v;
  for (const auto& x : w)
    if (!mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t())) return false;
  return true;
}

bool schur_stable(const IntPolynomial& p) {
  if (p.is_zero()) return false;
  std::vector<Int> a = p.coeffs();
  while (a.size() > 1) {
    const std::size_t n = a.size() - 1;
    const Int a0 = a.front();
    const Int an = a.back();
    if (mpz_cmpabs(an.get_mpz_t(), a0.get_mpz_t()) <= 0) return false;
    std::vector<Int> q(n);
    for (std::size_t k = 0; k < n; ++k) q[k] = an * a[k + 1] - a0 * a[n - k - 1];
    Int g = 0;
    for (const auto& x : q) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
      for (auto& x : q) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    a = std::move(q);
  }
  return true;
}

bool is_expanding(const IntMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("is_expanding: matrix must be square");
  if (det(m) == 0) throw std::domain_error("is_expanding: singular matrix");
  return schur_stable(char_poly(m).reversed());
}

namespace {

// sqrt(x) / d^i as long double without overflow, for positive integers.
long double sqrt_ratio(const Int& x, const Int& d_pow) {
  long ex = 0, ed = 0;
  const long double mx = mpz_get_d_2exp(&ex, x.get_mpz_t());
  const long double md = mpz_get_d_2exp(&ed, d_pow.get_mpz_t());
  return std::sqrt(mx) / md * std::exp2(static_cast<long double>(ex) / 2 - static_cast<long double>(ed));
}

}  // namespace

double attractor_radius(const IntMatrix& m, const std::vector<IntVector>& digits) {
  if (!is_expanding(m)) throw std::domain_error("attractor_radius: matrix is not expanding");
  long double max_digit = 0;
  for (const auto& r : digits) {
    const Int n2 = r.norm_squared();
    if (n2 != 0) max_digit = std::max(max_digit, sqrt_ratio(n2, Int(1)));
  }
  const Int d = abs(det(m));
  const IntMatrix adj = adjugate(m);
  IntMatrix adj_pow = IntMatrix::identity(m.rows());
  Int d_pow = 1;
  long double head = 0;
  long double last = 1;
  constexpr int kMaxTerms = 100000;
  for (int i = 1; i <= kMaxTerms; ++i) {
    adj_pow = adj_pow * adj;
    d_pow *= d;
    Int frob2 = 0;
    for (std::size_t r = 0; r < adj_pow.rows(); ++r)
      for (std::size_t c = 0; c < adj_pow.cols(); ++c) frob2 += adj_pow(r, c) * adj_pow(r, c);
    // Frobenius norm of M^-i, nudged upward against rounding.
    last = sqrt_ratio(frob2, d_pow) * (1 + 1e-15L);
    head += last;
    if (last <= 0.5L) break;
  }
  if (last > 0.5L) throw std::domain_error("attractor_radius: inverse powers do not contract");
  // Terms past K are bounded by the head times powers of ||M^-K|| <= 1/2.
  const long double total = head * max_digit / (1 - last);
  return std::nextafter(static_cast<double>(total * (1 + 1e-12L)), HUGE_VAL);
}

}  // namespace tilebound
