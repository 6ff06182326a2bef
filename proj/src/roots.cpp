#include "tilebound/roots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tilebound {

namespace {

using cld = std::complex<long double>;

std::vector<IntPolynomial> sturm_sequence(const IntPolynomial& p) {
  std::vector<IntPolynomial> seq{p, p.derivative()};
  while (seq.back().degree() > 0) {
    IntPolynomial r = positive_remainder(seq[seq.size() - 2], seq.back());
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  return seq;
}

int sign_changes(const std::vector<IntPolynomial>& seq, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& q : seq) {
    const int s = sgn(q.eval(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Integer bound on the modulus of every root (Cauchy).
Int cauchy_bound(const IntPolynomial& p) {
  Int maxc = 0;
  for (int i = 0; i < p.degree(); ++i) maxc = std::max(maxc, Int(abs(p.coeff(static_cast<std::size_t>(i)))));
  Int lead = abs(p.leading());
  Int q = maxc / lead;
  return q + 2;
}

// Nearest long double to the midpoint, via a double and an exact correction.
long double midpoint_value(const Rational& lo, const Rational& hi) {
  const Rational mid = (lo + hi) / 2;
  const double head = mid.get_d();
  const Rational tail = mid - Rational(head);
  return static_cast<long double>(head) + static_cast<long double>(tail.get_d());
}

}  // namespace

std::vector<std::pair<Rational, Rational>> isolate_real_roots(const IntPolynomial& p, const Rational& width) {
  std::vector<std::pair<Rational, Rational>> out;
  if (p.degree() < 1) return out;
  const auto seq = sturm_sequence(p);
  const Int b = cauchy_bound(p);
  struct Job {
    Rational lo, hi;
    int vlo, vhi;
  };
  std::vector<Job> todo;
  Rational lo0(-b), hi0(b);
  todo.push_back({lo0, hi0, sign_changes(seq, lo0), sign_changes(seq, hi0)});
  while (!todo.empty()) {
    Job j = todo.back();
    todo.pop_back();
    const int count = j.vlo - j.vhi;
    if (count <= 0) continue;
    if (count == 1 && j.hi - j.lo <= width) {
      out.emplace_back(j.lo, j.hi);
      continue;
    }
    Rational mid = (j.lo + j.hi) / 2;
    const int vm = sign_changes(seq, mid);
    if (count == 1) {
      // keep only the half that holds the root
      if (j.vlo - vm == 1)
        todo.push_back({j.lo, mid, j.vlo, vm});
      else
        todo.push_back({mid, j.hi, vm, j.vhi});
      continue;
    }
    todo.push_back({mid, j.hi, vm, j.vhi});
    todo.push_back({j.lo, mid, j.vlo, vm});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::vector<cld> aberth(const IntPolynomial& p) {
  const int d = p.degree();
  if (d < 1) return {};
  const IntPolynomial dp = p.derivative();
  long double radius = 0;
  for (int i = 0; i < d; ++i)
    radius = std::max(radius, std::pow(std::fabs(static_cast<long double>(p.coeff(static_cast<std::size_t>(i)).get_d()) /
                                                 static_cast<long double>(p.leading().get_d())),
                                       1.0L / (d - i)));
  radius = std::max(radius, 1.0L);
  std::vector<cld> z(static_cast<std::size_t>(d));
  const long double pi = std::acos(-1.0L);
  for (int k = 0; k < d; ++k) z[static_cast<std::size_t>(k)] = std::polar(radius, 2 * pi * k / d + 0.4L);

  for (int iter = 0; iter < 1000; ++iter) {
    long double worst = 0;
    for (std::size_t k = 0; k < z.size(); ++k) {
      const cld pv = p.eval(z[k]);
      if (pv == cld(0)) continue;
      const cld w = pv / dp.eval(z[k]);
      cld s = 0;
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != k) s += 1.0L / (z[k] - z[j]);
      const cld step = w / (1.0L - w * s);
      z[k] -= step;
      worst = std::max(worst, std::abs(step) / std::max(1.0L, std::abs(z[k])));
    }
    if (worst < 1e-18L) break;
  }
  return z;
}

std::vector<PolyRoot> squarefree_roots(const IntPolynomial& p) {
  std::vector<PolyRoot> roots;
  const int d = p.degree();
  if (d < 1) return roots;

  IntPolynomial rest = p;
  const auto seq = sturm_sequence(p);
  for (auto [lo, hi] : isolate_real_roots(p, Rational(1, 4))) {
    PolyRoot r;
    r.real = true;
    // an integer root is the only integer candidate in (lo, hi]
    Rational c = hi;
    Int k = c.get_num() / c.get_den();
    if (Rational(k) > hi) k -= 1;
    if (Rational(k) > lo && Rational(k) <= hi && p.eval(k) == 0) {
      r.exact = k;
      r.value = cld(static_cast<long double>(k.get_d()), 0);
      rest = exact_quotient(rest, IntPolynomial::linear(k));
      roots.push_back(r);
      continue;
    }
    // bisection on Sturm counts down to ~2^-62 relative width
    const Rational scale = std::max(Rational(1), Rational(abs(hi)));
    Rational tol = scale;
    mpq_div_2exp(tol.get_mpq_t(), tol.get_mpq_t(), 62);
    int vlo = sign_changes(seq, lo);
    while (hi - lo > tol) {
      Rational mid = (lo + hi) / 2;
      const int vm = sign_changes(seq, mid);
      if (vlo - vm == 1) {
        hi = mid;
      } else {
        lo = mid;
        vlo = vm;
      }
    }
    r.value = cld(midpoint_value(lo, hi), 0);
    roots.push_back(r);
  }

  const std::size_t n_real = roots.size();
  const std::size_t n_complex = static_cast<std::size_t>(d) - n_real;
  if (n_complex > 0) {
    std::vector<cld> z = aberth(rest);
    std::sort(z.begin(), z.end(), [](const cld& a, const cld& b) { return std::fabs(a.imag()) > std::fabs(b.imag()); });
    z.resize(n_complex);
    for (const cld& v : z) {
      PolyRoot r;
      r.value = v;
      roots.push_back(r);
    }
  }
  return roots;
}

std::vector<PolyRoot> polynomial_roots(const IntPolynomial& p) {
  if (p.degree() < 1) return {};
  std::vector<PolyRoot> out;
  const auto factors = squarefree_decomposition(p);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].degree() < 1) continue;
    for (PolyRoot r : squarefree_roots(factors[i])) {
      r.multiplicity = static_cast<int>(i) + 1;
      out.push_back(r);
    }
  }
  std::sort(out.begin(), out.end(), [](const PolyRoot& a, const PolyRoot& b) {
    const long double ma = a.modulus(), mb = b.modulus();
    if (std::fabs(ma - mb) > 1e-15L * std::max(1.0L, ma)) return ma > mb;
    if (a.value.real() != b.value.real()) return a.value.real() > b.value.real();
    return a.value.imag() > b.value.imag();
  });
  return out;
}

}  // namespace tilebound
