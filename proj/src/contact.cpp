#include "tilebound/contact.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>

#include "tilebound/error.hpp"

namespace tilebound {

namespace {

using i64 = std::int64_t;
using i128 = __int128;

i64 to_i64(const Int& x, const char* what) {
  if (!x.fits_slong_p()) throw BudgetExceeded(std::string("contact: ") + what + " exceeds 64-bit range");
  return x.get_si();
}

// Integer points of a ball, with an index table over the enclosing box.
class CandidateBall {
 public:
  CandidateBall(std::size_t n, i64 bound, i64 radius_sq) : n_(n), bound_(bound), radius_sq_(radius_sq) {
    const i64 side = 2 * bound + 1;
    double cells = std::pow(static_cast<double>(side), static_cast<double>(n));
    if (cells > 5e7) throw BudgetExceeded("contact: candidate box has too many cells");
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= static_cast<std::size_t>(side);
    slot_.assign(total, -1);
    std::vector<i64> z(n, -bound);
    for (std::size_t cell = 0; cell < total; ++cell) {
      i64 nsq = 0;
      for (i64 c : z) nsq += c * c;
      if (nsq <= radius_sq) {
        slot_[cell] = static_cast<std::int32_t>(points_.size());
        points_.push_back(z);
      }
      for (std::size_t i = n; i-- > 0;) {
        if (++z[i] <= bound) break;
        z[i] = -bound;
      }
    }
  }

  std::size_t size() const { return points_.size(); }
  const std::vector<i64>& point(std::size_t v) const { return points_[v]; }

  // Vertex id of z, or -1 outside the ball.
  long find(const std::vector<i128>& z) const {
    std::size_t cell = 0;
    const i64 side = 2 * bound_ + 1;
    for (std::size_t i = 0; i < n_; ++i) {
      if (z[i] < -bound_ || z[i] > bound_) return -1;
      cell = cell * static_cast<std::size_t>(side) + static_cast<std::size_t>(static_cast<i64>(z[i]) + bound_);
    }
    return slot_[cell];
  }

 private:
  std::size_t n_;
  i64 bound_;
  i64 radius_sq_;
  std::vector<std::int32_t> slot_;
  std::vector<std::vector<i64>> points_;
};

// Vertices of a digraph from which some cycle is reachable.
std::vector<bool> reaches_cycle(const std::vector<std::vector<std::uint32_t>>& adj) {
  const std::size_t nv = adj.size();
  constexpr std::uint32_t unvisited = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> index(nv, unvisited), low(nv, 0), comp(nv, unvisited);
  std::vector<bool> on_stack(nv, false);
  std::vector<std::uint32_t> stack;
  std::vector<std::pair<std::uint32_t, std::size_t>> call;
  std::vector<bool> cyclic_comp;
  std::uint32_t counter = 0;

  for (std::uint32_t root = 0; root < nv; ++root) {
    if (index[root] != unvisited) continue;
    call.emplace_back(root, 0);
    while (!call.empty()) {
      auto& [v, next] = call.back();
      if (next == 0) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (next < adj[v].size()) {
        const std::uint32_t w = adj[v][next++];
        if (index[w] == unvisited) {
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        const auto id = static_cast<std::uint32_t>(cyclic_comp.size());
        std::size_t members = 0;
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = id;
          ++members;
        } while (w != v);
        bool self_loop = std::find(adj[v].begin(), adj[v].end(), v) != adj[v].end();
        cyclic_comp.push_back(members > 1 || self_loop);
      }
      const std::uint32_t finished = v;
      call.pop_back();
      if (!call.empty()) {
        const std::uint32_t parent = call.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }

  // Backward search from cyclic components.
  std::vector<std::vector<std::uint32_t>> radj(nv);
  for (std::uint32_t v = 0; v < nv; ++v)
    for (std::uint32_t w : adj[v]) radj[w].push_back(v);
  std::vector<bool> good(nv, false);
  std::vector<std::uint32_t> queue;
  for (std::uint32_t v = 0; v < nv; ++v)
    if (cyclic_comp[comp[v]]) {
      good[v] = true;
      queue.push_back(v);
    }
  while (!queue.empty()) {
    const std::uint32_t w = queue.back();
    queue.pop_back();
    for (std::uint32_t v : radj[w])
      if (!good[v]) {
        good[v] = true;
        queue.push_back(v);
      }
  }
  return good;
}

}  // namespace

std::size_t ContactSystem::index_of(const IntVector& v) const {
  auto it = std::lower_bound(S.begin(), S.end(), v);
  if (it == S.end() || !(*it == v)) throw std::out_of_range("vector " + v.str() + " not in S");
  return static_cast<std::size_t>(it - S.begin());
}

std::size_t ContactSystem::index_in_splus(const IntVector& v) const {
  auto it = std::find(Splus.begin(), Splus.end(), v);
  if (it == Splus.end()) throw std::out_of_range("vector " + v.str() + " not in S+");
  return static_cast<std::size_t>(it - Splus.begin());
}

std::vector<IntVector> compute_S(const StandardPair& pair) {
  const std::size_t n = pair.dim();
  const double rho = attractor_radius(pair.matrix(), pair.digits());
  const long double r2 = std::ceil(4.0L * static_cast<long double>(rho) * rho);
  if (r2 > 1e12L) throw BudgetExceeded("contact: candidate radius too large");
  const auto radius_sq = static_cast<i64>(r2);
  auto bound = static_cast<i64>(std::floor(std::sqrt(static_cast<long double>(radius_sq))));
  while ((bound + 1) * (bound + 1) <= radius_sq) ++bound;
  while (bound * bound > radius_sq) --bound;

  CandidateBall ball(n, bound, radius_sq);

  std::vector<i64> mat(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mat[i * n + j] = to_i64(pair.matrix()(i, j), "matrix entry");
  std::vector<std::vector<i64>> diffs;
  for (const auto& d : difference_multiset(pair).support()) {
    std::vector<i64> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = to_i64(d[i], "digit difference");
    diffs.push_back(std::move(v));
  }

  std::vector<std::vector<std::uint32_t>> adj(ball.size());
  std::vector<i128> y(n);
  for (std::size_t v = 0; v < ball.size(); ++v) {
    const auto& x = ball.point(v);
    std::vector<i128> mx(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) mx[i] += static_cast<i128>(mat[i * n + j]) * x[j];
    for (const auto& d : diffs) {
      for (std::size_t i = 0; i < n; ++i) y[i] = mx[i] - d[i];
      const long w = ball.find(y);
      if (w >= 0) adj[v].push_back(static_cast<std::uint32_t>(w));
    }
  }

  const std::vector<bool> good = reaches_cycle(adj);
  std::vector<IntVector> S;
  for (std::size_t v = 0; v < ball.size(); ++v) {
    if (!good[v]) continue;
    IntVector z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = Int(static_cast<long>(ball.point(v)[i]));
    S.push_back(std::move(z));
  }
  if (S.empty()) throw InternalError("contact: empty contact set");
  std::sort(S.begin(), S.end());
  return S;
}

IntMatrix transition_matrix(const StandardPair& pair, const std::vector<IntVector>& S) {
  const DifferenceMultiset mu = difference_multiset(pair);
  IntMatrix T(S.size(), S.size());
  for (std::size_t j = 0; j < S.size(); ++j) {
    const IntVector mj = pair.matrix() * S[j];
    for (std::size_t i = 0; i < S.size(); ++i) T(i, j) = mu.multiplicity(S[i] - mj);
  }
  return T;
}

SymmetricQuotient symmetric_quotient(const IntMatrix& T, const std::vector<IntVector>& S) {
  std::map<IntVector, std::size_t> pos;
  for (std::size_t i = 0; i < S.size(); ++i) pos.emplace(S[i], i);
  std::vector<std::size_t> neg(S.size());
  for (std::size_t i = 0; i < S.size(); ++i) {
    auto it = pos.find(-S[i]);
    if (it == pos.end()) throw InternalError("contact: S is not symmetric at " + S[i].str());
    neg[i] = it->second;
  }
  for (std::size_t i = 0; i < S.size(); ++i)
    for (std::size_t j = 0; j < S.size(); ++j)
      if (T(i, j) != T(neg[i], neg[j]))
        throw InternalError("contact: T(-i,-j) != T(i,j) at i=" + S[i].str() + ", j=" + S[j].str());

  std::vector<std::size_t> plus;
  std::size_t zero = S.size();
  for (std::size_t i = 0; i < S.size(); ++i) {
    if (S[i].is_zero())
      zero = i;
    else if (S[i].is_lex_positive())
      plus.push_back(i);
  }
  if (zero == S.size()) throw InternalError("contact: 0 is not in S");
  plus.insert(plus.begin(), zero);

  SymmetricQuotient q;
  q.Tplus = IntMatrix(plus.size(), plus.size());
  for (std::size_t a = 0; a < plus.size(); ++a) {
    q.Splus.push_back(S[plus[a]]);
    for (std::size_t b = 0; b < plus.size(); ++b) {
      const std::size_t i = plus[a], j = plus[b];
      q.Tplus(a, b) = j == zero ? T(i, j) : T(i, j) + T(i, neg[j]);
    }
  }
  return q;
}

ContactSystem contact_system(const StandardPair& pair) {
  ContactSystem cs;
  cs.S = compute_S(pair);
  cs.T = transition_matrix(pair, cs.S);
  SymmetricQuotient q = symmetric_quotient(cs.T, cs.S);
  cs.Splus = std::move(q.Splus);
  cs.Tplus = std::move(q.Tplus);
  return cs;
}

}  // namespace tilebound
