#pragma once

// Exact integer linear algebra over GMP integers.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace tilebound {

using Int = mpz_class;
using Rational = mpq_class;

class IntPolynomial;

class IntVector {
 public:
  IntVector() = default;
  explicit IntVector(std::size_t n) : c_(n) {}
  explicit IntVector(std::vector<Int> coords) : c_(std::move(coords)) {}
  IntVector(std::initializer_list<long> coords);

  std::size_t size() const { return c_.size(); }
  Int& operator[](std::size_t i) { return c_[i]; }
  const Int& operator[](std::size_t i) const { return c_[i]; }
  auto begin() const { return c_.begin(); }
  auto end() const { return c_.end(); }
  const std::vector<Int>& coords() const { return c_; }

  bool is_zero() const;
  /// First nonzero coordinate is positive.
  bool is_lex_positive() const;
  Int norm_squared() const;

  IntVector operator-() const;
  IntVector& operator+=(const IntVector& o);
  IntVector& operator-=(const IntVector& o);
  friend IntVector operator+(IntVector a, const IntVector& b) { return a += b; }
  friend IntVector operator-(IntVector a, const IntVector& b) { return a -= b; }
  friend IntVector operator*(const Int& s, IntVector v);

  friend bool operator==(const IntVector& a, const IntVector& b) { return a.c_ == b.c_; }
  /// Lexicographic order on coordinates.
  friend bool operator<(const IntVector& a, const IntVector& b);

  std::string str() const;

 private:
  std::vector<Int> c_;
};

struct IntVectorHash {
  std::size_t operator()(const IntVector& v) const;
};

/// Dense row-major integer matrix. Most operations expect a square matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_columns(const std::vector<IntVector>& columns);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  IntVector column(std::size_t j) const;

  IntMatrix& operator+=(const IntMatrix& o);
  IntMatrix& operator-=(const IntMatrix& o);
  friend IntMatrix operator+(IntMatrix a, const IntMatrix& b) { return a += b; }
  friend IntMatrix operator-(IntMatrix a, const IntMatrix& b) { return a -= b; }
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntVector operator*(const IntMatrix& a, const IntVector& v);
  friend IntMatrix operator*(const Int& s, IntMatrix a);

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  bool is_zero() const;
  Int trace() const;
  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> a_;
};

IntMatrix power(const IntMatrix& a, unsigned k);

/// Exact determinant by Bareiss fraction-free elimination.
Int det(const IntMatrix& m);

/// Classical adjoint: m * adjugate(m) == det(m) * I.
IntMatrix adjugate(const IntMatrix& m);

/// Monic det(xI - m), by Faddeev-LeVerrier in exact integer arithmetic.
IntPolynomial char_poly(const IntMatrix& m);

/// Integer span of a set of vectors in Hermite normal form.
///
/// The basis is in row echelon form: each basis vector has a positive pivot
/// strictly right of the previous one, and every entry of an earlier vector in
/// a later pivot column is reduced into [0, pivot). Two generator sets span the
/// same lattice iff their Lattice values compare equal.
class Lattice {
 public:
  Lattice() = default;
  Lattice(std::size_t ambient_dim, std::vector<IntVector> basis)
      : dim_(ambient_dim), basis_(std::move(basis)) {}

  std::size_t ambient_dim() const { return dim_; }
  std::size_t rank() const { return basis_.size(); }
  bool full_rank() const { return rank() == dim_; }
  const std::vector<IntVector>& basis() const { return basis_; }
  /// Basis vectors as columns of an ambient_dim x rank matrix.
  IntMatrix basis_matrix() const;
  /// |det| of the basis for a full-rank lattice, i.e. the index in Z^n.
  Int index() const;

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.dim_ == b.dim_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<IntVector> basis_;
};

Lattice hnf(const std::vector<IntVector>& generators);

/// v in m Z^n, decided as adj(m) v == 0 (mod det m). Throws on singular m.
bool in_image(const IntVector& v, const IntMatrix& m);

/// Exact test that every eigenvalue has modulus > 1 (Schur-Cohn on the
/// reversed characteristic polynomial). Throws on singular m.
bool is_expanding(const IntMatrix& m);

/// All roots of p strictly inside the unit circle, decided exactly.
bool schur_stable(const IntPolynomial& p);

/// Upper bound on sup |x| over the attractor of (m, digits), computed from
/// Frobenius norms of the exact inverse powers. Throws on non-expanding m.
double attractor_radius(const IntMatrix& m, const std::vector<IntVector>& digits);

}  // namespace tilebound
