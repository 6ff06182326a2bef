#include "tilebound/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

#include "tilebound/error.hpp"

namespace tilebound {

namespace {

Coord to_coord(const Int& x, const char* what) {
  if (!x.fits_slong_p()) throw BudgetExceeded(std::string(what) + " exceeds 64-bit coordinates");
  return x.get_si();
}

std::vector<Coord> matrix_coords(const IntMatrix& m) {
  std::vector<Coord> out;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(to_coord(m(i, j), "matrix entry"));
  return out;
}

// Sorts the rows of a flattened array lexicographically and removes repeats.
std::vector<Coord> sort_unique_rows(const std::vector<Coord>& flat, std::size_t n) {
  const std::size_t count = flat.size() / n;
  std::vector<std::size_t> idx(count);
  std::iota(idx.begin(), idx.end(), 0);
  auto less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(flat.begin() + a * n, flat.begin() + (a + 1) * n, flat.begin() + b * n,
                                        flat.begin() + (b + 1) * n);
  };
  std::sort(idx.begin(), idx.end(), less);
  std::vector<Coord> out;
  out.reserve(flat.size());
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t i = idx[t];
    if (t > 0 && std::equal(flat.begin() + i * n, flat.begin() + (i + 1) * n, out.end() - n)) continue;
    out.insert(out.end(), flat.begin() + i * n, flat.begin() + (i + 1) * n);
  }
  return out;
}

inline std::uint64_t mix(std::uint64_t h) {
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ULL;
  h ^= h >> 33;
  return h;
}

unsigned worker_count(const GeometryOptions& options, std::size_t work) {
  unsigned t = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  if (work < 4096) t = 1;
  return t;
}

// Offsets M^k i + j over (S \ {0})^2, i-major in S order.
struct OffsetTable {
  std::vector<Coord> offsets;  // flattened
  std::vector<std::pair<std::uint32_t, std::uint32_t>> index;
};

OffsetTable make_offsets(const StandardPair& pair, const std::vector<IntVector>& S, unsigned k) {
  const IntMatrix mk = power(pair.matrix(), k);
  OffsetTable t;
  for (std::uint32_t a = 0; a < S.size(); ++a) {
    if (S[a].is_zero()) continue;
    const IntVector mi = mk * S[a];
    for (std::uint32_t b = 0; b < S.size(); ++b) {
      if (S[b].is_zero()) continue;
      const IntVector off = mi + S[b];
      for (std::size_t c = 0; c < off.size(); ++c) t.offsets.push_back(to_coord(off[c], "boundary offset"));
      t.index.emplace_back(a, b);
    }
  }
  return t;
}

// target = p + off, false on overflow.
inline bool shifted(const Coord* p, const Coord* off, std::size_t n, Coord* target) {
  for (std::size_t c = 0; c < n; ++c)
    if (__builtin_add_overflow(p[c], off[c], &target[c])) return false;
  return true;
}

}  // namespace

bool ScaledPointSet::contains(std::span<const Coord> p) const {
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    auto q = point(mid);
    if (std::lexicographical_compare(q.begin(), q.end(), p.begin(), p.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo < size() && std::equal(p.begin(), p.end(), point(lo).begin());
}

FlatPointSet::FlatPointSet(const std::vector<Coord>& coords, std::size_t n) : coords_(&coords), n_(n) {
  const std::size_t count = n == 0 ? 0 : coords.size() / n;
  if (count >= 0xffffffffULL) throw BudgetExceeded("point set too large for the membership index");
  std::size_t cap = 16;
  while (cap < 2 * count) cap <<= 1;
  mask_ = cap - 1;
  slots_.assign(cap, 0);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t s = slot_of(coords.data() + i * n);
    while (slots_[s] != 0) s = (s + 1) & mask_;
    slots_[s] = static_cast<std::uint32_t>(i + 1);
  }
}

std::size_t FlatPointSet::slot_of(const Coord* p) const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (std::size_t c = 0; c < n_; ++c) h = mix(h ^ static_cast<std::uint64_t>(p[c]));
  return static_cast<std::size_t>(h) & mask_;
}

bool FlatPointSet::contains(const Coord* p) const {
  std::size_t s = slot_of(p);
  while (slots_[s] != 0) {
    const Coord* q = coords_->data() + (slots_[s] - 1) * n_;
    if (std::equal(p, p + n_, q)) return true;
    s = (s + 1) & mask_;
  }
  return false;
}

unsigned max_feasible_level(const StandardPair& pair, std::uint64_t budget) {
  unsigned k = 0;
  Int total = 1;
  while (true) {
    total *= pair.modulus();
    if (total > Int(std::to_string(budget))) return k;
    ++k;
  }
}

ScaledPointSet gamma_k(const StandardPair& pair, unsigned k, const GeometryOptions& options) {
  if (k < 1) throw std::invalid_argument("gamma_k: k must be at least 1");
  const unsigned limit = max_feasible_level(pair, options.budget);
  if (k > limit)
    throw BudgetExceeded("point budget " + std::to_string(options.budget) + " exceeded at k=" + std::to_string(k) +
                         " (largest feasible k is " + std::to_string(limit) + ")");
  const std::size_t n = pair.dim();
  const std::vector<Coord> mat = matrix_coords(pair.matrix());
  std::vector<Coord> digits;
  for (const auto& r : pair.digits())
    for (std::size_t c = 0; c < n; ++c) digits.push_back(to_coord(r[c], "digit"));
  const std::size_t nd = pair.digits().size();

  std::vector<Coord> level(n, 0);
  std::vector<Coord> mv(n);
  for (unsigned step = 1; step <= k; ++step) {
    std::vector<Coord> next;
    next.reserve(level.size() * nd);
    for (std::size_t p = 0; p < level.size() / n; ++p) {
      const Coord* v = level.data() + p * n;
      for (std::size_t i = 0; i < n; ++i) {
        Coord acc = 0;
        for (std::size_t j = 0; j < n; ++j) {
          Coord t;
          if (__builtin_mul_overflow(mat[i * n + j], v[j], &t) || __builtin_add_overflow(acc, t, &acc))
            throw BudgetExceeded("coordinates overflow 64 bits at k=" + std::to_string(step));
        }
        mv[i] = acc;
      }
      for (std::size_t d = 0; d < nd; ++d)
        for (std::size_t i = 0; i < n; ++i) {
          Coord t;
          if (__builtin_add_overflow(mv[i], digits[d * n + i], &t))
            throw BudgetExceeded("coordinates overflow 64 bits at k=" + std::to_string(step));
          next.push_back(t);
        }
    }
    level = sort_unique_rows(next, n);
  }
  return {k, n, std::move(level)};
}

namespace {

long double frobenius(const std::vector<long double>& a) {
  long double s = 0;
  for (long double x : a) s += x * x;
  return std::sqrt(s);
}

// Distance from x to the union of the balls (negative inside).
long double region_distance(const std::vector<long double>& x, const std::vector<Ball>& region) {
  long double best = INFINITY;
  for (const Ball& b : region) {
    long double d2 = 0;
    for (std::size_t i = 0; i < x.size(); ++i) d2 += (x[i] - b.center[i]) * (x[i] - b.center[i]);
    best = std::min(best, std::sqrt(d2) - b.radius);
  }
  return best;
}

}  // namespace

ScaledPointSet gamma_k_near(const StandardPair& pair, unsigned k, const std::vector<Ball>& region,
                            const GeometryOptions& options) {
  if (k < 1) throw std::invalid_argument("gamma_k_near: k must be at least 1");
  const std::size_t n = pair.dim();
  for (const Ball& b : region)
    if (b.center.size() != n) throw std::invalid_argument("gamma_k_near: ball dimension differs from pair");
  const std::vector<Coord> mat = matrix_coords(pair.matrix());
  std::vector<Coord> digits;
  for (const auto& r : pair.digits())
    for (std::size_t c = 0; c < n; ++c) digits.push_back(to_coord(r[c], "digit"));
  const std::size_t nd = pair.digits().size();
  const long double rho = attractor_radius(pair.matrix(), pair.digits());

  std::vector<Coord> level(n, 0);
  std::vector<Coord> mv(n), child(n);
  for (unsigned step = 1; step <= k; ++step) {
    // keep prefixes whose completion can still land in the region
    const IntMatrix mj = power(pair.matrix(), step);
    const LevelScale scale(pair.matrix(), step);
    const IntMatrix adj = adjugate(mj);
    std::vector<long double> adj_ld;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) adj_ld.push_back(static_cast<long double>(adj(i, j).get_d()));
    const long double tail =
        step == k ? 0.0L : frobenius(adj_ld) / std::fabs(static_cast<long double>(det(mj).get_d())) * rho;

    std::vector<Coord> kept;
    for (std::size_t p = 0; p < level.size() / n; ++p) {
      const Coord* v = level.data() + p * n;
      for (std::size_t i = 0; i < n; ++i) {
        Coord acc = 0;
        for (std::size_t j = 0; j < n; ++j) {
          Coord t;
          if (__builtin_mul_overflow(mat[i * n + j], v[j], &t) || __builtin_add_overflow(acc, t, &acc))
            throw BudgetExceeded("coordinates overflow 64 bits at k=" + std::to_string(step));
        }
        mv[i] = acc;
      }
      for (std::size_t d = 0; d < nd; ++d) {
        for (std::size_t i = 0; i < n; ++i)
          if (__builtin_add_overflow(mv[i], digits[d * n + i], &child[i]))
            throw BudgetExceeded("coordinates overflow 64 bits at k=" + std::to_string(step));
        const std::vector<long double> x = scale.to_real(child);
        const bool keep = step == k ? std::any_of(region.begin(), region.end(),
                                                  [&](const Ball& b) { return in_ball(x, b); })
                                    : region_distance(x, region) <= tail * (1.0L + 1e-9L) + 1e-12L;
        if (!keep) continue;
        kept.insert(kept.end(), child.begin(), child.end());
        if (kept.size() / n > options.budget)
          throw BudgetExceeded("point budget " + std::to_string(options.budget) + " exceeded at k=" +
                               std::to_string(step));
      }
    }
    level = sort_unique_rows(kept, n);
  }
  return {k, n, std::move(level)};
}

std::vector<Ball> contact_region(const StandardPair& pair, const std::vector<IntVector>& S, unsigned k,
                                 const Ball& ball) {
  const LevelScale scale(pair.matrix(), k);
  long double reach = 0;
  for (const auto& j : S) {
    std::vector<Coord> c;
    for (const auto& x : j) c.push_back(to_coord(x, "contact vector"));
    long double s = 0;
    for (long double x : scale.to_real(c)) s += x * x;
    reach = std::max(reach, std::sqrt(s));
  }
  std::vector<Ball> region;
  for (const auto& i : S) {
    Ball b;
    b.radius = (ball.radius + reach) * (1.0L + 1e-9L);
    for (std::size_t c = 0; c < i.size(); ++c) b.center.push_back(ball.center.at(c) + static_cast<long double>(i[c].get_d()));
    region.push_back(std::move(b));
  }
  return region;
}

BoundaryPointSet delta_k(const StandardPair& pair, const std::vector<IntVector>& S, const ScaledPointSet& gamma,
                         const GeometryOptions& options) {
  const std::size_t n = gamma.n;
  const OffsetTable table = make_offsets(pair, S, gamma.k);
  const FlatPointSet set(gamma.coords, n);
  const std::size_t count = gamma.size();
  std::vector<std::int32_t> hit(count, -1);

  auto work = [&](std::size_t begin, std::size_t end) {
    std::vector<Coord> target(n);
    for (std::size_t p = begin; p < end; ++p) {
      const Coord* v = gamma.coords.data() + p * n;
      for (std::size_t o = 0; o < table.index.size(); ++o) {
        if (!shifted(v, table.offsets.data() + o * n, n, target.data())) continue;
        if (set.contains(target.data())) {
          hit[p] = static_cast<std::int32_t>(o);
          break;
        }
      }
    }
  };
  const unsigned threads = worker_count(options, count);
  if (threads <= 1) {
    work(0, count);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t b = std::min(count, t * chunk), e = std::min(count, b + chunk);
      pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
  }

  BoundaryPointSet out;
  out.k = gamma.k;
  out.n = n;
  for (std::size_t p = 0; p < count; ++p) {
    if (hit[p] < 0) continue;
    out.coords.insert(out.coords.end(), gamma.coords.begin() + p * n, gamma.coords.begin() + (p + 1) * n);
    out.witness.push_back(table.index[static_cast<std::size_t>(hit[p])]);
  }
  return out;
}

BoundaryPointSet delta_k(const StandardPair& pair, const std::vector<IntVector>& S, unsigned k,
                         const GeometryOptions& options) {
  return delta_k(pair, S, gamma_k(pair, k, options), options);
}

LevelScale::LevelScale(const IntMatrix& m, unsigned k) : n_(m.rows()) {
  const IntMatrix mk = power(m, k);
  const IntMatrix adj = adjugate(mk);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) adj_.push_back(static_cast<long double>(adj(i, j).get_d()));
  det_ = static_cast<long double>(det(mk).get_d());
}

std::vector<long double> LevelScale::to_real(std::span<const Coord> p) const {
  std::vector<long double> x(n_, 0.0L);
  for (std::size_t i = 0; i < n_; ++i) {
    long double acc = 0;
    for (std::size_t j = 0; j < n_; ++j) acc += adj_[i * n_ + j] * static_cast<long double>(p[j]);
    x[i] = acc / det_;
  }
  return x;
}

bool in_ball(const std::vector<long double>& x, const Ball& ball) {
  if (x.size() != ball.center.size()) throw std::invalid_argument("ball dimension differs from point dimension");
  long double d2 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const long double t = x[i] - ball.center[i];
    d2 += t * t;
  }
  const long double r = ball.radius * (1.0L + 1e-12L);
  return d2 <= r * r;
}

std::vector<std::vector<std::uint64_t>> contact_matrix_empirical(const StandardPair& pair,
                                                                 const std::vector<IntVector>& S,
                                                                 const ScaledPointSet& gamma, const Ball& ball) {
  const std::size_t n = gamma.n;
  const OffsetTable table = make_offsets(pair, S, gamma.k);
  const FlatPointSet set(gamma.coords, n);
  const LevelScale scale(pair.matrix(), gamma.k);
  std::vector<std::vector<std::uint64_t>> T(S.size(), std::vector<std::uint64_t>(S.size(), 0));
  std::vector<Coord> target(n);
  for (std::size_t p = 0; p < gamma.size(); ++p) {
    const auto v = gamma.point(p);
    const bool v_in = in_ball(scale.to_real(v), ball);
    for (std::size_t o = 0; o < table.index.size(); ++o) {
      if (!shifted(v.data(), table.offsets.data() + o * n, n, target.data())) continue;
      if (!set.contains(target.data())) continue;
      if (v_in || in_ball(scale.to_real(target), ball)) ++T[table.index[o].first][table.index[o].second];
    }
  }
  return T;
}

std::size_t count_in_ball(const BoundaryPointSet& delta, const LevelScale& scale, const Ball& ball) {
  std::size_t c = 0;
  for (std::size_t p = 0; p < delta.size(); ++p)
    if (in_ball(scale.to_real(delta.point(p)), ball)) ++c;
  return c;
}

long double LineFit::rms() const {
  if (residuals.empty()) return 0;
  long double s = 0;
  for (long double r : residuals) s += r * r;
  return std::sqrt(s / static_cast<long double>(residuals.size()));
}

LineFit fit_line(const std::vector<long double>& x, const std::vector<long double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw std::invalid_argument("fit_line: need at least two points");
  long double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  long double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  for (std::size_t i = 0; i < n; ++i) f.residuals.push_back(y[i] - (f.intercept + f.slope * x[i]));
  return f;
}

GrowthEstimate growth_rate_estimate(const StandardPair& pair, const std::vector<IntVector>& S, unsigned k_min,
                                    unsigned k_max, const std::optional<Ball>& ball, const GeometryOptions& options) {
  if (k_min < 1 || k_max < k_min + 2) throw std::invalid_argument("growth_rate_estimate: need at least 3 levels");
  GrowthEstimate est;
  std::vector<long double> xs, ys;
  for (unsigned k = k_min; k <= k_max; ++k) {
    const BoundaryPointSet delta = delta_k(pair, S, k, options);
    std::uint64_t c = ball ? count_in_ball(delta, LevelScale(pair.matrix(), k), *ball) : delta.size();
    if (c == 0) throw std::domain_error("growth_rate_estimate: no boundary points at k=" + std::to_string(k));
    est.levels.push_back(k);
    est.counts.push_back(c);
    xs.push_back(k);
    ys.push_back(std::log(static_cast<long double>(c)));
  }
  LineFit fit = fit_line(xs, ys);
  if (xs.size() >= 4) {
    std::size_t worst = 0;
    for (std::size_t i = 1; i < fit.residuals.size(); ++i)
      if (std::fabs(fit.residuals[i]) > std::fabs(fit.residuals[worst])) worst = i;
    if (worst == 0) {
      fit = fit_line({xs.begin() + 1, xs.end()}, {ys.begin() + 1, ys.end()});
      est.dropped_first = true;
    }
  }
  est.rate = std::exp(fit.slope);
  est.residual = fit.rms();
  return est;
}

BoxCountEstimate box_counting_estimate(const std::vector<std::vector<long double>>& points) {
  if (points.size() < 1000) throw std::domain_error("box_counting_estimate: fewer than 1000 points");
  long double lo[2] = {points[0].at(0), points[0].at(1)}, hi[2] = {lo[0], lo[1]};
  for (const auto& p : points) {
    if (p.size() != 2) throw std::invalid_argument("box_counting_estimate: points must be planar");
    for (int c = 0; c < 2; ++c) {
      lo[c] = std::min(lo[c], p[c]);
      hi[c] = std::max(hi[c], p[c]);
    }
  }
  const long double side = std::max(hi[0] - lo[0], hi[1] - lo[1]);
  if (!(side > 0)) throw std::domain_error("box_counting_estimate: degenerate point set");

  const std::uint64_t cap = points.size() / 4;
  std::vector<std::pair<unsigned, std::uint64_t>> ladder;
  std::vector<std::uint64_t> keys(points.size());
  for (unsigned j = 2; j <= 30; ++j) {
    const std::uint64_t cells = 1ULL << j;
    const long double eps = side / static_cast<long double>(cells);
    for (std::size_t i = 0; i < points.size(); ++i) {
      std::uint64_t c[2];
      for (int a = 0; a < 2; ++a) {
        auto t = static_cast<long long>(std::floor((points[i][a] - lo[a]) / eps));
        c[a] = static_cast<std::uint64_t>(std::clamp<long long>(t, 0, static_cast<long long>(cells) - 1));
      }
      keys[i] = (c[0] << 31) | c[1];
    }
    std::sort(keys.begin(), keys.end());
    const auto boxes = static_cast<std::uint64_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
    if (boxes > cap) break;
    ladder.emplace_back(j, boxes);
  }
  if (ladder.size() < 5) throw std::domain_error("box_counting_estimate: fewer than 4 octaves available");
  // the finest four octaves; coarse boxes carry a constant-offset bias
  ladder.erase(ladder.begin(), ladder.end() - 5);

  std::vector<long double> xs, ys;
  for (auto [j, boxes] : ladder) {
    xs.push_back(j * std::log(2.0L));
    ys.push_back(std::log(static_cast<long double>(boxes)));
  }
  const LineFit fit = fit_line(xs, ys);
  return {fit.slope, fit.rms(), ladder};
}

BoxCountEstimate box_counting_estimate(const BoundaryPointSet& delta, const StandardPair& pair) {
  if (pair.dim() != 2) throw std::invalid_argument("box_counting_estimate: only planar pairs");
  const LevelScale scale(pair.matrix(), delta.k);
  std::vector<std::vector<long double>> pts;
  pts.reserve(delta.size());
  for (std::size_t p = 0; p < delta.size(); ++p) pts.push_back(scale.to_real(delta.point(p)));
  return box_counting_estimate(pts);
}

void write_point_cloud(std::ostream& out, unsigned k, std::size_t n, const std::vector<Coord>& coords) {
  out << "k=" << k << " n=" << n << " scaled=1\n";
  for (std::size_t p = 0; n > 0 && p < coords.size() / n; ++p) {
    for (std::size_t c = 0; c < n; ++c) out << (c ? " " : "") << coords[p * n + c];
    out << '\n';
  }
}

}  // namespace tilebound
