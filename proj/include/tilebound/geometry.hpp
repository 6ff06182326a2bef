#pragma once

// Level-k approximations of the attractor and of its boundary, stored in
// M^k-scaled integer coordinates, plus empirical dimension estimators.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tilebound/intmat.hpp"
#include "tilebound/pair.hpp"

namespace tilebound {

using Coord = std::int64_t;

struct GeometryOptions {
  /// Upper bound on m^k, the number of digit strings expanded.
  std::uint64_t budget = 100000000;
  /// Worker threads for the boundary test; 0 means hardware concurrency.
  unsigned threads = 0;
};

/// Points M^k x, flattened row by row and sorted lexicographically.
struct ScaledPointSet {
  unsigned k = 0;
  std::size_t n = 0;
  std::vector<Coord> coords;

  std::size_t size() const { return n == 0 ? 0 : coords.size() / n; }
  std::span<const Coord> point(std::size_t i) const { return {coords.data() + i * n, n}; }
  bool contains(std::span<const Coord> p) const;
};

struct BoundaryPointSet {
  unsigned k = 0;
  std::size_t n = 0;
  std::vector<Coord> coords;
  /// Indices into S of one witnessing pair (i, j) per point.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> witness;

  std::size_t size() const { return n == 0 ? 0 : coords.size() / n; }
  std::span<const Coord> point(std::size_t i) const { return {coords.data() + i * n, n}; }
};

struct Ball {
  std::vector<long double> center;
  long double radius = 1;
};

/// Open-addressing hash set over the rows of a flattened point array, which
/// must outlive it.
class FlatPointSet {
 public:
  FlatPointSet(const std::vector<Coord>& coords, std::size_t n);
  bool contains(const Coord* p) const;

 private:
  std::size_t slot_of(const Coord* p) const;
  const std::vector<Coord>* coords_;
  std::size_t n_;
  std::size_t mask_;
  std::vector<std::uint32_t> slots_;  // point index + 1, 0 = empty
};

/// The largest k with m^k <= budget.
unsigned max_feasible_level(const StandardPair& pair, std::uint64_t budget);

/// { sum_{i=1..k} M^(k-i) r_i }, by k-fold expansion v -> M v + r.
/// Throws BudgetExceeded when m^k exceeds the budget or coordinates overflow.
ScaledPointSet gamma_k(const StandardPair& pair, unsigned k, const GeometryOptions& options = {});

/// Points of Gamma_k inside the union of the balls (real coordinates). Digit
/// prefixes whose tails cannot reach the region are pruned, so the budget
/// applies to the points actually kept per level rather than to m^k.
ScaledPointSet gamma_k_near(const StandardPair& pair, unsigned k, const std::vector<Ball>& region,
                            const GeometryOptions& options = {});

/// Balls around c + i, i in S, grown by max |M^-k j|: every pair (x, y) with
/// y = x + i + M^-k j and x or y in the ball has both ends in this region.
std::vector<Ball> contact_region(const StandardPair& pair, const std::vector<IntVector>& S, unsigned k,
                                 const Ball& ball);

/// Points v of gamma with v + M^k i + j in gamma for some i, j in S \ {0}.
BoundaryPointSet delta_k(const StandardPair& pair, const std::vector<IntVector>& S, const ScaledPointSet& gamma,
                         const GeometryOptions& options = {});
BoundaryPointSet delta_k(const StandardPair& pair, const std::vector<IntVector>& S, unsigned k,
                         const GeometryOptions& options = {});

/// Converts M^k-scaled integer points to real coordinates.
class LevelScale {
 public:
  LevelScale(const IntMatrix& m, unsigned k);
  std::vector<long double> to_real(std::span<const Coord> p) const;

 private:
  std::size_t n_;
  std::vector<long double> adj_;  // adj(M^k), row-major
  long double det_;               // det(M)^k
};

/// Ball test with relative slack 1e-12 on the radius.
bool in_ball(const std::vector<long double>& x, const Ball& ball);

/// Entry (i, j), for i, j in S \ {0}, counts x in gamma with
/// y = x + i + M^-k j in gamma and x or y in the ball. Row and column 0 of S
/// stay zero. Indexed like S. gamma may be Gamma_k restricted to
/// contact_region(pair, S, k, ball).
std::vector<std::vector<std::uint64_t>> contact_matrix_empirical(const StandardPair& pair,
                                                                 const std::vector<IntVector>& S,
                                                                 const ScaledPointSet& gamma, const Ball& ball);

/// Number of points of a boundary set inside a ball.
std::size_t count_in_ball(const BoundaryPointSet& delta, const LevelScale& scale, const Ball& ball);

struct GrowthEstimate {
  long double rate = 0;      // exp(slope)
  long double residual = 0;  // RMS residual of the log fit
  std::vector<unsigned> levels;
  std::vector<std::uint64_t> counts;
  /// Set when the first level was dropped as a transient.
  bool dropped_first = false;
};

/// Least-squares growth rate of card(Delta_k), restricted to the ball when
/// given. Needs at least 3 levels; a zero count is an error.
GrowthEstimate growth_rate_estimate(const StandardPair& pair, const std::vector<IntVector>& S, unsigned k_min,
                                    unsigned k_max, const std::optional<Ball>& ball = std::nullopt,
                                    const GeometryOptions& options = {});

/// Least-squares line y = slope x + intercept, with per-point residuals.
struct LineFit {
  long double slope = 0;
  long double intercept = 0;
  std::vector<long double> residuals;
  long double rms() const;
};
LineFit fit_line(const std::vector<long double>& x, const std::vector<long double>& y);

struct BoxCountEstimate {
  long double dimension = 0;
  long double residual = 0;
  /// (j, N) for eps = L / 2^j over the fitted window.
  std::vector<std::pair<unsigned, std::uint64_t>> ladder;
};

/// Box-counting slope of a planar point set on a dyadic ladder over its
/// bounding square: eps = L / 2^j for j >= 2 while N(eps) <= |points| / 4,
/// fitted over the finest four octaves. Needs at least 1000 points.
BoxCountEstimate box_counting_estimate(const std::vector<std::vector<long double>>& points);
BoxCountEstimate box_counting_estimate(const BoundaryPointSet& delta, const StandardPair& pair);

/// Header `k=<k> n=<n> scaled=1`, then one point per line.
void write_point_cloud(std::ostream& out, unsigned k, std::size_t n, const std::vector<Coord>& coords);

}  // namespace tilebound
