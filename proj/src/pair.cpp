#include "tilebound/pair.hpp"

#include <algorithm>
#include <stdexcept>

#include "tilebound/error.hpp"

namespace tilebound {

namespace {

std::vector<IntVector> normalized_digits(const std::vector<IntVector>& digits, IntVector& shift) {
  std::vector<IntVector> r = digits;
  std::sort(r.begin(), r.end());
  shift = IntVector(r.empty() ? 0 : r.front().size());
  const bool has_zero = std::any_of(r.begin(), r.end(), [](const IntVector& d) { return d.is_zero(); });
  if (!has_zero && !r.empty()) {
    shift = r.front();
    for (auto& d : r) d -= shift;
  }
  return r;
}

std::vector<IntVector> nonzero_differences(const std::vector<IntVector>& digits) {
  std::vector<IntVector> out;
  for (const auto& a : digits)
    for (const auto& b : digits) {
      IntVector d = a - b;
      if (!d.is_zero()) out.push_back(std::move(d));
    }
  return out;
}

}  // namespace

ValidationReport validate(const IntMatrix& matrix, const std::vector<IntVector>& digits, bool normalize) {
  ValidationReport rep;
  rep.digit_count = digits.size();
  rep.square = matrix.is_square() && matrix.rows() >= 1;
  if (!rep.square) {
    rep.messages.push_back("matrix is not square");
    return rep;
  }
  const std::size_t n = matrix.rows();
  rep.digits_shape = std::all_of(digits.begin(), digits.end(), [n](const IntVector& d) { return d.size() == n; });
  if (!rep.digits_shape) rep.messages.push_back("digit dimension differs from matrix dimension");

  const Int d = det(matrix);
  rep.m = abs(d);
  rep.nonsingular = d != 0;
  if (!rep.nonsingular) {
    rep.messages.push_back("matrix is singular");
    return rep;
  }
  rep.expanding = is_expanding(matrix);
  if (!rep.expanding) rep.messages.push_back("matrix has an eigenvalue of modulus <= 1");

  rep.cardinality = rep.m == static_cast<unsigned long>(digits.size());
  if (!rep.cardinality)
    rep.messages.push_back("|R| = " + std::to_string(digits.size()) + " but |det M| = " + rep.m.get_str());
  if (!rep.digits_shape) return rep;

  rep.contains_zero = std::any_of(digits.begin(), digits.end(), [](const IntVector& v) { return v.is_zero(); });
  IntVector shift;
  const std::vector<IntVector> r = normalize ? normalized_digits(digits, shift) : digits;
  if (normalize && !rep.contains_zero && !digits.empty()) rep.translation = shift;

  rep.coset_complete = true;
  for (std::size_t i = 0; i < r.size() && rep.coset_complete; ++i)
    for (std::size_t j = i + 1; j < r.size(); ++j)
      if (in_image(r[i] - r[j], matrix)) {
        rep.coset_complete = false;
        rep.congruent_pair = std::make_pair(r[i] + shift, r[j] + shift);
        rep.messages.push_back("digits " + rep.congruent_pair->first.str() + " and " +
                               rep.congruent_pair->second.str() + " are congruent mod M Z^n");
        break;
      }
  rep.coset_complete = rep.coset_complete && rep.cardinality;

  if (rep.expanding && !r.empty()) {
    const Lattice lat = invariant_sublattice(matrix, r);
    rep.primitive = lat.full_rank() && lat.index() == 1;
  }
  return rep;
}

StandardPair StandardPair::create(IntMatrix matrix, std::vector<IntVector> digits) {
  const ValidationReport rep = validate(matrix, digits, true);
  if (!rep.pass()) {
    std::string why = rep.messages.empty() ? "invalid pair" : rep.messages.front();
    throw ValidationError("not a standard pair: " + why);
  }
  StandardPair p;
  p.digits_ = normalized_digits(digits, p.translation_);
  p.m_ = std::move(matrix);
  p.modulus_ = rep.m;
  return p;
}

long DifferenceMultiset::multiplicity(const IntVector& d) const {
  auto it = entries_.find(d);
  return it == entries_.end() ? 0 : it->second;
}

std::vector<IntVector> DifferenceMultiset::support() const {
  std::vector<IntVector> out;
  out.reserve(entries_.size());
  for (const auto& [d, mu] : entries_) out.push_back(d);
  return out;
}

long DifferenceMultiset::total() const {
  long t = 0;
  for (const auto& [d, mu] : entries_) t += mu;
  return t;
}

DifferenceMultiset difference_multiset(const std::vector<IntVector>& digits) {
  std::map<IntVector, long> mu;
  for (const auto& a : digits)
    for (const auto& b : digits) ++mu[a - b];
  return DifferenceMultiset(std::move(mu));
}

DifferenceMultiset difference_multiset(const StandardPair& pair) { return difference_multiset(pair.digits()); }

Lattice invariant_sublattice(const IntMatrix& matrix, const std::vector<IntVector>& digits) {
  const std::size_t n = matrix.rows();
  std::vector<IntVector> gens = nonzero_differences(digits);
  if (gens.empty()) return Lattice(n, {});
  Lattice current = hnf(gens);
  while (true) {
    std::vector<IntVector> next = current.basis();
    for (const auto& b : current.basis()) next.push_back(matrix * b);
    Lattice l = hnf(next);
    if (l == current) return current;
    current = std::move(l);
  }
}

Lattice invariant_sublattice(const StandardPair& pair) {
  return invariant_sublattice(pair.matrix(), pair.digits());
}

PrimitiveReduction primitivize(const IntMatrix& matrix, const std::vector<IntVector>& digits) {
  if (!matrix.is_square()) throw ValidationError("primitivize: matrix is not square");
  const std::size_t n = matrix.rows();
  const Int d = det(matrix);
  if (d == 0 || !is_expanding(matrix)) throw ValidationError("primitivize: matrix is not expanding");
  if (abs(d) != static_cast<unsigned long>(digits.size()))
    throw ValidationError("primitivize: |R| differs from |det M|");

  IntVector shift;
  const std::vector<IntVector> r = normalized_digits(digits, shift);
  const Lattice lat = invariant_sublattice(matrix, r);
  if (!lat.full_rank()) throw InternalError("primitivize: Z[M,R] is not of full rank");

  const IntMatrix b = lat.basis_matrix();
  const Int db = det(b);
  const IntMatrix adj_b = adjugate(b);
  auto divide_exact = [&](const Int& x) {
    if (!mpz_divisible_p(x.get_mpz_t(), db.get_mpz_t()))
      throw InternalError("primitivize: conjugated data is not integral");
    Int q;
    mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), db.get_mpz_t());
    return q;
  };

  const IntMatrix conj = adj_b * matrix * b;
  IntMatrix m2(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m2(i, j) = divide_exact(conj(i, j));

  std::vector<IntVector> r2;
  r2.reserve(r.size());
  for (const auto& digit : r) {
    IntVector v = adj_b * digit;
    for (std::size_t i = 0; i < n; ++i) v[i] = divide_exact(v[i]);
    r2.push_back(std::move(v));
  }

  StandardPair reduced = StandardPair::create(std::move(m2), std::move(r2));
  if (invariant_sublattice(reduced).index() != 1)
    throw InternalError("primitivize: reduced pair is not primitive");
  const bool changed = !(b == IntMatrix::identity(n));
  return {std::move(reduced), b, changed};
}

PrimitiveReduction primitivize(const StandardPair& pair) {
  return primitivize(pair.matrix(), pair.digits());
}

}  // namespace tilebound
