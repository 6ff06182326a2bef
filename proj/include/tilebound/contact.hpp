#pragma once

#include <cstddef>
#include <vector>

#include "tilebound/intmat.hpp"
#include "tilebound/pair.hpp"

namespace tilebound {

struct ContactSystem {
  std::vector<IntVector> S;      // lexicographic
  IntMatrix T;                   // indexed like S
  std::vector<IntVector> Splus;  // 0, then lex-positive representatives in lexicographic order
  IntMatrix Tplus;               // indexed like Splus

  /// Position of v in S; throws std::out_of_range if absent.
  std::size_t index_of(const IntVector& v) const;
  std::size_t index_in_splus(const IntVector& v) const;
};

/// Integer points of the difference set Lambda - Lambda.
std::vector<IntVector> compute_S(const StandardPair& pair);

/// T_ij = mu(i - M j), rows and columns ordered as S.
IntMatrix transition_matrix(const StandardPair& pair, const std::vector<IntVector>& S);

struct SymmetricQuotient {
  std::vector<IntVector> Splus;
  IntMatrix Tplus;
};

/// Restriction of T to negation-symmetric vectors. Throws InternalError if T
/// is not symmetric under (i, j) -> (-i, -j).
SymmetricQuotient symmetric_quotient(const IntMatrix& T, const std::vector<IntVector>& S);

ContactSystem contact_system(const StandardPair& pair);

}  // namespace tilebound
