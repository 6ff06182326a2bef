#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tilebound/intmat.hpp"

namespace tilebound {

/// Checks of an (M, R) candidate against the standard-pair definition.
struct ValidationReport {
  bool square = false;
  bool integer_matrix = true;
  bool nonsingular = false;
  bool expanding = false;
  bool cardinality = false;       // |R| == |det M|
  bool coset_complete = false;    // digits pairwise incongruent mod M Z^n
  bool digits_shape = false;      // every digit has dimension n
  bool contains_zero = false;     // 0 in R before normalization
  /// Informational: Z[M,R] == Z^n. Not part of pass(); non-primitive pairs are
  /// reduced by primitivize().
  bool primitive = false;

  Int m;                  // |det M|
  std::size_t digit_count = 0;
  std::optional<std::pair<IntVector, IntVector>> congruent_pair;
  /// Set when the digits were shifted so that 0 is a digit.
  std::optional<IntVector> translation;
  std::vector<std::string> messages;

  bool pass() const {
    return square && integer_matrix && nonsingular && expanding && cardinality && coset_complete &&
           digits_shape;
  }
};

/// Validates (M, R). With normalize, a digit set without 0 is judged after
/// translating by minus its lexicographically smallest digit.
ValidationReport validate(const IntMatrix& matrix, const std::vector<IntVector>& digits,
                          bool normalize = true);

/// A validated standard pair (M, R). Digits are sorted lexicographically and
/// contain 0.
class StandardPair {
 public:
  /// Validates and normalizes; throws ValidationError with the first failing
  /// check otherwise.
  static StandardPair create(IntMatrix matrix, std::vector<IntVector> digits);

  const IntMatrix& matrix() const { return m_; }
  const std::vector<IntVector>& digits() const { return digits_; }
  /// |det M|
  const Int& modulus() const { return modulus_; }
  std::size_t dim() const { return m_.rows(); }
  /// Translation subtracted from the input digits, zero vector if none.
  const IntVector& translation() const { return translation_; }

  friend bool operator==(const StandardPair& a, const StandardPair& b) {
    return a.m_ == b.m_ && a.digits_ == b.digits_;
  }

 private:
  StandardPair() = default;
  IntMatrix m_;
  std::vector<IntVector> digits_;
  Int modulus_;
  IntVector translation_;
};

/// d -> mu(d) = #{(r1, r2) in R^2 : r1 - r2 = d}.
class DifferenceMultiset {
 public:
  explicit DifferenceMultiset(std::map<IntVector, long> entries) : entries_(std::move(entries)) {}

  long multiplicity(const IntVector& d) const;
  const std::map<IntVector, long>& entries() const { return entries_; }
  /// Distinct differences, in lexicographic order.
  std::vector<IntVector> support() const;
  long total() const;

 private:
  std::map<IntVector, long> entries_;
};

DifferenceMultiset difference_multiset(const StandardPair& pair);
DifferenceMultiset difference_multiset(const std::vector<IntVector>& digits);

/// Z[M,R]: smallest M-invariant lattice containing R - R, as the fixed point
/// of L -> hnf(L u M L) started from span(R - R).
Lattice invariant_sublattice(const StandardPair& pair);
Lattice invariant_sublattice(const IntMatrix& matrix, const std::vector<IntVector>& digits);

struct PrimitiveReduction {
  StandardPair pair;  // (B^-1 M B, B^-1 R)
  IntMatrix basis;    // B, with B Z^n = Z[M,R]
  bool changed = false;
};

/// Conjugates a standard pair to a standard primitive one.
PrimitiveReduction primitivize(const StandardPair& pair);

/// Same for raw (M, R) whose digits are complete residues of Z[M,R] modulo
/// M Z[M,R] but not necessarily of Z^n modulo M Z^n (e.g. (4, {0,8,16,24})).
/// Requires |R| == |det M| and expanding M; the conjugated pair must validate.
PrimitiveReduction primitivize(const IntMatrix& matrix, const std::vector<IntVector>& digits);

}  // namespace tilebound
