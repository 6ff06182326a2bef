// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance        run all
//   acceptance <id>   run one (1..10)

#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "oracles.hpp"
#include "test_support.hpp"
#include "tilebound/dimension.hpp"
#include "tilebound/geometry.hpp"
#include "tilebound/spectrum.hpp"

using namespace tilebound;
using tbtest::load;

namespace {

// Collects failed conditions of one criterion.
struct Verdict {
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void note(const std::string& s) { notes.push_back(s); }
};

std::string fmt(long double x, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lg", digits, x);
  return buf;
}

IntMatrix rows(std::initializer_list<std::initializer_list<long>> r) {
  std::vector<std::vector<Int>> v;
  for (auto row : r) v.emplace_back(row.begin(), row.end());
  IntMatrix m(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i][j];
  return m;
}

std::vector<IntVector> ints(std::initializer_list<long> xs) {
  std::vector<IntVector> out;
  for (long x : xs) out.push_back(IntVector{x});
  return out;
}

// Real eigenvalues of an integer matrix via Eigen's QR iteration.
std::vector<double> real_eigenvalues(const IntMatrix& a) {
  Eigen::MatrixXd m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j).get_d();
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  std::vector<double> out;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (std::fabs(es.eigenvalues()[i].imag()) < 1e-9) out.push_back(es.eigenvalues()[i].real());
  std::sort(out.rbegin(), out.rend());
  return out;
}

// The unique real root of a monic cubic with one sign change on [lo, hi].
long double bisect(const std::function<long double(long double)>& f, long double lo, long double hi) {
  for (int i = 0; i < 200; ++i) {
    const long double mid = (lo + hi) / 2;
    ((f(lo) < 0) == (f(mid) < 0) ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

DimensionReport dimension_of(const StandardPair& p) { return analyze(p).dimension; }

Verdict c1() {
  Verdict v;
  const auto a = analyze(load("ex1"));
  v.require(a.contact.S == ints({-1, 0, 1}), "S");
  v.require(a.contact.T == rows({{1, 1, 0}, {0, 2, 0}, {0, 1, 1}}), "T");
  v.require(a.contact.Tplus == rows({{2, 0}, {1, 1}}), "T+");
  const auto& sp = a.spectrum.search.special;
  v.require(sp.size() == 1 && sp[0].root.exact && *sp[0].root.exact == 1, "special = {1}");
  v.require(a.dimension.exact && *a.dimension.exact == 0, "dimension = 0");
  v.note("T+ " + a.contact.Tplus.str());
  return v;
}

Verdict c2() {
  Verdict v;
  const auto p = load("ex2");
  const auto a = analyze(p);
  const IntMatrix reference = rows({{3, 0, 0, 0, 0, 0},
                                    {0, 1, 1, 0, 1, 0},
                                    {0, 0, 1, 2, 0, 0},
                                    {0, 3, 0, 0, 0, 0},
                                    {1, 1, 0, 0, 0, 1},
                                    {0, 0, 1, 1, 1, 0}});
  v.require(a.contact.Splus == ints({0, 1, 2, 3, 4, 5}), "S+ = {0..5}");
  v.require(a.contact.Tplus == reference, "T+ equals the reference matrix");
  // leading real eigenvalue below m = 3 of the reference matrix
  double oracle = 0;
  for (double x : real_eigenvalues(reference))
    if (x < 3 - 1e-9) {
      oracle = x;
      break;
    }
  const long double lam = a.dimension.lambda_p;
  v.require(std::fabs(lam - oracle) < 1e-9L, "lambda_p matches the reference matrix to 1e-9");
  const long double dim = std::log(lam) / std::log(3.0L);
  v.require(a.dimension.exact && std::fabs(*a.dimension.exact - dim) < 1e-12L, "dimension = ln lambda / ln 3");
  const auto g = growth_rate_estimate(p, a.contact.S, 4, 9);
  const long double rel = std::fabs(g.rate - lam) / lam;
  v.require(rel <= 0.05L, "growth rate over k = 4..9 within 5% of lambda_p");
  std::ostringstream counts;
  for (auto c : g.counts) counts << c << ' ';
  v.note("lambda_p " + fmt(lam) + ", dimension " + fmt(dim) + ", growth " + fmt(g.rate, 6) + " (rel err " +
         fmt(rel, 3) + "), counts " + counts.str());
  return v;
}

Verdict c3() {
  Verdict v;
  for (long m = 4; m <= 8; ++m) {
    const auto a = analyze(load("ex3_m" + std::to_string(m)));
    const std::string tag = "m=" + std::to_string(m) + ": ";
    v.require(a.contact.Tplus == rows({{m, 0}, {m - 3, 3}}), tag + "T+");
    const long double expect = std::log(3.0L) / std::log(static_cast<long double>(m));
    v.require(a.dimension.exact && std::fabs(*a.dimension.exact - expect) < 1e-12L, tag + "dimension");
  }
  return v;
}

Verdict c4() {
  Verdict v;
  for (long m : {4L, 6L, 8L}) {
    const auto a = analyze(load("ex4_m" + std::to_string(m)));
    const long double k = m - 1;
    const long double expect = (k + std::sqrt(k * k + 8)) / 2;
    v.require(a.dimension.available && std::fabs(a.dimension.lambda_p - expect) < 1e-9L,
              "m=" + std::to_string(m) + ": lambda_p");
    v.note("m=" + std::to_string(m) + " lambda_p " + fmt(a.dimension.lambda_p));
  }
  return v;
}

Verdict c5() {
  Verdict v;
  const auto i = dimension_of(load("ex6i"));
  v.require(i.exact && std::fabs(*i.exact - 1) < 1e-9L, "case i dimension = 1");

  const long double r_ii = bisect([](long double x) { return x * x * x - x - 2; }, 1, 2);
  const auto ii = dimension_of(load("ex6ii"));
  v.require(std::fabs(ii.lambda_p - r_ii) < 1e-9L, "case ii lambda_p");

  const long double r_iii = bisect([](long double x) { return x * x * x - x * x - 2; }, 1, 2);
  const auto p = load("ex6iii");
  const auto iii = dimension_of(p);
  v.require(std::fabs(iii.lambda_p - r_iii) < 1e-9L, "case iii lambda_p");

  const unsigned k = 18;
  const auto delta = delta_k(p, compute_S(p), k);
  const auto box = box_counting_estimate(delta, p);
  const long double target = 2 * std::log(r_iii) / std::log(2.0L);
  v.require(std::fabs(box.dimension - target) <= 0.05L, "case iii box count within 0.05");
  v.note("case ii " + fmt(ii.lambda_p) + ", case iii " + fmt(iii.lambda_p) + "; box count k=" + std::to_string(k) +
         " on " + std::to_string(delta.size()) + " points: " + fmt(box.dimension, 6) + " vs " + fmt(target, 6));
  return v;
}

Verdict c6() {
  Verdict v;
  const auto a = analyze(load("ex7"));
  const auto& d = a.dimension;
  v.require(d.exact && *d.exact == 1, "dimension = 1");
  v.require(a.spectrum.d_M == 2, "d_M = 2");
  v.require(a.spectrum.d_lambda_p && *a.spectrum.d_lambda_p == 2, "d_lambda_p = 2");
  v.require(d.measure && d.measure->verdict == MeasureClass::positive, "verdict positive");
  v.require(d.measure && !d.measure->cond_finite, "finiteness inconclusive");
  if (d.measure)
    v.note("lhs " + fmt(d.measure->lhs) + " rhs " + fmt(d.measure->rhs) + " verdict " +
           to_string(d.measure->verdict));
  return v;
}

Verdict c7() {
  Verdict v;
  const auto p = load("ex8");
  const auto a = analyze(p);
  const auto& sp = a.spectrum.search.special;
  v.require(sp.size() == 2 && sp[0].root.exact && *sp[0].root.exact == 5 && sp[1].root.exact &&
                *sp[1].root.exact == 3,
            "special = {3, 5}");
  const auto& ld = a.dimension.local_dimensions;
  v.require(ld.size() == 2 && ld[0].exact && std::fabs(*ld[0].exact - std::log(5.0L) / std::log(3.0L)) < 1e-12L &&
                ld[1].exact && std::fabs(*ld[1].exact - 1) < 1e-12L,
            "local dimensions = {1, ln 5 / ln 3}");
  const auto g = growth_rate_estimate(p, a.contact.S, 2, 6);
  v.require(std::fabs(g.rate - 5) <= 0.25L, "growth rate within 5% of 5");
  v.note("growth " + fmt(g.rate, 6) + (g.dropped_first ? " (first level dropped)" : ""));
  return v;
}

// card(Delta_k in B) between ||T(k,B)||/(2|S|) and ||T(k,B)||/2, on small balls
// around boundary points; Gamma_k is only generated near the ball.
void sandwich(Verdict& v, const std::string& name, const StandardPair& p, const ContactSystem& cs,
              std::size_t& balls, std::size_t& nonempty) {
  const long double m = p.modulus().get_d();
  const unsigned k_top = std::min<unsigned>(8, static_cast<unsigned>(std::floor(std::log(5e6L) / std::log(m))));
  for (unsigned k = 4; k <= k_top; ++k) {
    const LevelScale scale(p.matrix(), k);
    // diam B must stay below every |i + M^-k j|
    long double gap = INFINITY;
    for (const auto& i : cs.S)
      for (const auto& j : cs.S) {
        if (i.is_zero() || j.is_zero()) continue;
        std::vector<Coord> jc;
        for (std::size_t c = 0; c < p.dim(); ++c) jc.push_back(j[c].get_si());
        const auto mj = scale.to_real(jc);
        long double s = 0;
        for (std::size_t c = 0; c < p.dim(); ++c) s += std::pow(i[c].get_d() + mj[c], 2);
        gap = std::min(gap, std::sqrt(s));
      }
    const long double radius = std::min(0.1L, 0.45L * gap);

    const unsigned k0 = std::min(k, 3u);
    const auto seeds = delta_k(p, cs.S, k0);
    const LevelScale seed_scale(p.matrix(), k0);
    const std::size_t step = std::max<std::size_t>(1, seeds.size() / 3);
    for (std::size_t t = 0; t < seeds.size(); t += step) {
      Ball b;
      b.center = seed_scale.to_real(seeds.point(t));
      for (auto& c : b.center) c += 0.01L;
      b.radius = radius;
      const auto near = gamma_k_near(p, k, contact_region(p, cs.S, k, b));
      const auto T = contact_matrix_empirical(p, cs.S, near, b);
      const auto delta = delta_k(p, cs.S, near);
      long double norm = 0;
      for (const auto& r : T)
        for (auto x : r) norm += static_cast<long double>(x);
      const long double card = static_cast<long double>(count_in_ball(delta, scale, b));
      ++balls;
      nonempty += card > 0;
      const bool ok = norm / (2 * static_cast<long double>(cs.S.size())) <= card && card <= norm / 2;
      v.require(ok, name + " k=" + std::to_string(k) + ": sandwich (card " + fmt(card) + ", ||T|| " + fmt(norm) +
                        ")");
    }
  }
}

Verdict c8() {
  Verdict v;
  std::size_t balls = 0, nonempty = 0;
  for (const auto& name : tbtest::corpus()) {
    const StandardPair p = primitivize(load(name)).pair;
    const Int m = p.modulus();
    const ContactSystem cs = contact_system(p);
    const auto& S = cs.S;
    for (std::size_t i = 0; i < cs.T.rows(); ++i) v.require(tbtest::row_sum(cs.T, i) == m, name + ": T row sum");
    for (std::size_t i = 0; i < cs.Tplus.rows(); ++i)
      v.require(tbtest::row_sum(cs.Tplus, i) == m, name + ": T+ row sum");
    bool has_zero = false, symmetric = true, t_sym = true;
    for (std::size_t i = 0; i < S.size(); ++i) {
      has_zero = has_zero || S[i].is_zero();
      const IntVector neg = -S[i];
      if (!std::binary_search(S.begin(), S.end(), neg)) {
        symmetric = false;
        continue;
      }
      const std::size_t ni = cs.index_of(neg);
      for (std::size_t j = 0; j < S.size(); ++j) t_sym = t_sym && cs.T(ni, cs.index_of(-S[j])) == cs.T(i, j);
    }
    v.require(has_zero, name + ": 0 in S");
    v.require(symmetric, name + ": S = -S");
    v.require(t_sym, name + ": T_{-i,-j} = T_{ij}");
    v.require(divides(IntPolynomial::linear(m), char_poly(cs.Tplus)), name + ": (x - m) divides char_poly(T+)");
    v.require(m_simple(cs.T, m), name + ": m simple and dominant");
    sandwich(v, name, p, cs, balls, nonempty);
  }
  v.require(nonempty > 0, "at least one ball meets the boundary");
  v.note(std::to_string(tbtest::corpus().size()) + " pairs, " + std::to_string(balls) + " balls (" +
         std::to_string(nonempty) + " nonempty)");
  return v;
}

Verdict c9() {
  Verdict v;
  std::size_t pairs = 0;
  for (long m : {2L, 3L})
    for (long sign : {1L, -1L})
      for (const auto& digits : tboracle::residue_digit_sets(m, 0, 12)) {
        const long M = sign * m;
        const StandardPair p = tbtest::pair1(M, digits);
        std::vector<long> got;
        for (const auto& s : compute_S(p)) got.push_back(s[0].get_si());
        const auto expect = tboracle::brute_force_S_1d(M, digits, 20);
        ++pairs;
        if (got != expect) {
          std::string d;
          for (long x : digits) d += std::to_string(x) + " ";
          v.require(false, "M=" + std::to_string(M) + " digits " + d);
        }
      }
  v.note(std::to_string(pairs) + " pairs");
  return v;
}

Verdict c10() {
  Verdict v;
  const auto a = analyze(tbtest::pair1(2, {0, 3}));
  const auto b = analyze(tbtest::pair1(2, {0, 1}));
  v.require(dump(dimension_json(a.dimension)) == dump(dimension_json(b.dimension)),
            "(2,{0,3}) and (2,{0,1}) dimension reports agree");
  const auto red = primitivize(IntMatrix{{4}}, ints({0, 8, 16, 24}));
  v.require(red.pair.matrix() == IntMatrix{{4}}, "(4,{0,8,16,24}) keeps M = 4");
  v.require(red.pair.digits() == ints({0, 1, 2, 3}), "(4,{0,8,16,24}) reduces to digits {0,1,2,3}");
  return v;
}

const std::map<int, std::pair<std::string, std::function<Verdict()>>>& criteria() {
  static const std::map<int, std::pair<std::string, std::function<Verdict()>>> c{
      {1, {"Example 1 pipeline", c1}},
      {2, {"Example 2 matrix, lambda and growth oracle", c2}},
      {3, {"Example 3 family", c3}},
      {4, {"Example 4 lambda_p", c4}},
      {5, {"Example 6 roots and box count", c5}},
      {6, {"Example 7 dimension and measure", c6}},
      {7, {"Example 8 special set and growth", c7}},
      {8, {"corpus invariants and counting sandwich", c8}},
      {9, {"1-D contact sets vs brute force", c9}},
      {10, {"primitivization invariance", c10}},
  };
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> ids;
  if (argc > 1) {
    const int id = std::atoi(argv[1]);
    if (!criteria().count(id)) {
      std::cerr << "usage: acceptance [1-10]\n";
      return 2;
    }
    ids.push_back(id);
  } else {
    for (const auto& [id, c] : criteria()) ids.push_back(id);
  }
  int failed = 0;
  for (int id : ids) {
    const auto& [title, run] = criteria().at(id);
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = v.failures.empty();
    failed += !ok;
    std::printf("criterion %2d %s  %s (%.1fs)\n", id, ok ? "PASS" : "FAIL", title.c_str(), secs);
    for (const auto& n : v.notes) std::printf("    %s\n", n.c_str());
    for (std::size_t i = 0; i < v.failures.size() && i < 10; ++i) std::printf("    failed: %s\n", v.failures[i].c_str());
    if (v.failures.size() > 10) std::printf("    ... %zu more\n", v.failures.size() - 10);
  }
  return failed == 0 ? 0 : 1;
}
