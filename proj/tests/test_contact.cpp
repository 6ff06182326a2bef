#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "oracles.hpp"
#include "test_support.hpp"
#include "tilebound/contact.hpp"
#include "tilebound/error.hpp"
#include "tilebound/polynomial.hpp"

using namespace tilebound;
using tbtest::load;
using tbtest::vecs;

namespace {

IntMatrix rows(std::initializer_list<std::initializer_list<long>> r) { return IntMatrix(r); }

std::vector<IntVector> ints(std::initializer_list<long> xs) {
  std::vector<IntVector> out;
  for (long x : xs) out.push_back(IntVector{x});
  return out;
}

}  // namespace

TEST_CASE("example 1 contact system") {
  const ContactSystem cs = contact_system(load("ex1"));
  CHECK(cs.S == ints({-1, 0, 1}));
  CHECK(cs.T == rows({{1, 1, 0}, {0, 2, 0}, {0, 1, 1}}));
  CHECK(cs.Splus == ints({0, 1}));
  CHECK(cs.Tplus == rows({{2, 0}, {1, 1}}));
  CHECK(cs.index_of(IntVector{1}) == 2);
  CHECK(cs.index_in_splus(IntVector{1}) == 1);
  CHECK_THROWS_AS(cs.index_of(IntVector{2}), std::out_of_range);
}

TEST_CASE("example 2 contact system matches the reference matrix") {
  const ContactSystem cs = contact_system(load("ex2"));
  CHECK(cs.S == ints({-5, -4, -3, -2, -1, 0, 1, 2, 3, 4, 5}));
  CHECK(cs.Splus == ints({0, 1, 2, 3, 4, 5}));
  CHECK(cs.Tplus == rows({{3, 0, 0, 0, 0, 0},
                          {0, 1, 1, 0, 1, 0},
                          {0, 0, 1, 2, 0, 0},
                          {0, 3, 0, 0, 0, 0},
                          {1, 1, 0, 0, 0, 1},
                          {0, 0, 1, 1, 1, 0}}));
}

TEST_CASE("example 3 family") {
  for (long m = 4; m <= 8; ++m) {
    CAPTURE(m);
    const ContactSystem cs = contact_system(load("ex3_m" + std::to_string(m)));
    CHECK(cs.Splus == ints({0, 1}));
    CHECK(cs.Tplus == rows({{m, 0}, {m - 3, 3}}));
  }
}

TEST_CASE("example 6 ii and iii match the reference matrices") {
  const ContactSystem ii = contact_system(load("ex6ii"));
  const auto order_ii = vecs({{0, 0}, {1, 0}, {0, 1}, {1, -1}});
  CHECK(std::set<IntVector>(ii.Splus.begin(), ii.Splus.end()) ==
        std::set<IntVector>(order_ii.begin(), order_ii.end()));
  CHECK(tbtest::reorder(ii.Tplus, ii.Splus, order_ii) == rows({{2, 0, 0, 0}, {1, 0, 0, 1}, {0, 2, 0, 0}, {0, 1, 1, 0}}));

  // The reference labels for case iii use (1,-2) where the contact set has (2,-1).
  const ContactSystem iii = contact_system(load("ex6iii"));
  const auto order_iii = vecs({{0, 0}, {1, 0}, {1, -1}, {2, -1}});
  CHECK(std::set<IntVector>(iii.Splus.begin(), iii.Splus.end()) ==
        std::set<IntVector>(order_iii.begin(), order_iii.end()));
  CHECK_THROWS_AS(iii.index_of(IntVector{1, -2}), std::out_of_range);
  CHECK(tbtest::reorder(iii.Tplus, iii.Splus, order_iii) ==
        rows({{2, 0, 0, 0}, {1, 0, 0, 1}, {0, 1, 1, 0}, {0, 0, 2, 0}}));
  CHECK(char_poly(iii.Tplus) == IntPolynomial({-2, 0, -1, 1}) * IntPolynomial({-2, 1}));
}

TEST_CASE("example 6 i") {
  const ContactSystem cs = contact_system(load("ex6i"));
  CHECK(cs.Splus == vecs({{0, 0}, {0, 1}, {1, -1}, {1, 0}, {1, 1}}));
  for (std::size_t i = 0; i < cs.Tplus.rows(); ++i) CHECK(tbtest::row_sum(cs.Tplus, i) == 2);
}

TEST_CASE("example 7: the four reference states are a closed block of T+") {
  const StandardPair p = load("ex7");
  const ContactSystem cs = contact_system(p);
  const auto reference = vecs({{0, 0}, {1, 0}, {0, 1}, {1, -1}});
  for (const auto& v : reference) CHECK_NOTHROW(cs.index_in_splus(v));
  // (1,0) and (-1,1) are fixed points of x -> M^-1 (x + r) for r = (1,0), (0,1),
  // hence in the attractor, so their difference (2,-1) is a contact.
  const IntMatrix id = IntMatrix::identity(2);
  CHECK((p.matrix() - id) * IntVector{1, 0} == IntVector{1, 0});
  CHECK((p.matrix() - id) * IntVector{-1, 1} == IntVector{0, 1});
  CHECK(cs.Splus == vecs({{0, 0}, {0, 1}, {1, -1}, {1, 0}, {2, -1}}));

  const IntMatrix block = tbtest::reorder(cs.Tplus, cs.Splus, reference);
  CHECK(block == rows({{4, 0, 0, 0}, {2, 2, 0, 0}, {2, 0, 1, 1}, {1, 1, 0, 2}}));
  // closed: no reference state leads to (2,-1)
  const std::size_t extra = cs.index_in_splus(IntVector{2, -1});
  for (const auto& v : reference) CHECK(cs.Tplus(cs.index_in_splus(v), extra) == 0);
  CHECK(char_poly(cs.Tplus) == char_poly(block) * IntPolynomial({-1, 1}));
}

TEST_CASE("example 8 matches the reference matrix") {
  const ContactSystem cs = contact_system(load("ex8"));
  CHECK(cs.S.size() == 11);
  const auto order = vecs({{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {1, -1}});
  CHECK(std::set<IntVector>(cs.Splus.begin(), cs.Splus.end()) == std::set<IntVector>(order.begin(), order.end()));
  CHECK(tbtest::reorder(cs.Tplus, cs.Splus, order) == rows({{9, 0, 0, 0, 0, 0},
                                                             {4, 5, 0, 0, 0, 0},
                                                             {4, 4, 1, 0, 0, 0},
                                                             {2, 4, 0, 3, 0, 0},
                                                             {4, 2, 0, 2, 1, 0},
                                                             {4, 2, 0, 2, 0, 1}}));
}

TEST_CASE("transition matrix row for i = 0") {
  for (const auto& name : tbtest::corpus()) {
    CAPTURE(name);
    const StandardPair p = load(name);
    const ContactSystem cs = contact_system(p);
    const auto mu = difference_multiset(p);
    const std::size_t zero = cs.index_of(IntVector(p.dim()));
    CHECK(cs.T(zero, zero) == p.modulus());
    for (std::size_t j = 0; j < cs.S.size(); ++j) CHECK(cs.T(zero, j) == mu.multiplicity(-(p.matrix() * cs.S[j])));
  }
}

TEST_CASE("contact invariants over the corpus") {
  for (const auto& name : tbtest::corpus()) {
    CAPTURE(name);
    const StandardPair p = load(name);
    const ContactSystem cs = contact_system(p);
    const auto mu = difference_multiset(p);
    const std::set<IntVector> s(cs.S.begin(), cs.S.end());
    CHECK(s.size() == cs.S.size());
    CHECK(s.count(IntVector(p.dim())) == 1);
    for (const auto& x : cs.S) CHECK(s.count(-x) == 1);
    CHECK(std::is_sorted(cs.S.begin(), cs.S.end()));
    CHECK(cs.S.size() % 2 == 1);
    CHECK(cs.Splus.size() == (cs.S.size() + 1) / 2);
    CHECK(cs.Splus.front().is_zero());
    for (std::size_t i = 1; i < cs.Splus.size(); ++i) CHECK(cs.Splus[i].is_lex_positive());
    for (std::size_t i = 0; i < cs.S.size(); ++i) {
      CHECK(tbtest::row_sum(cs.T, i) == p.modulus());
      const std::size_t ni = cs.index_of(-cs.S[i]);
      for (std::size_t j = 0; j < cs.S.size(); ++j) {
        CHECK(cs.T(i, j) == mu.multiplicity(cs.S[i] - p.matrix() * cs.S[j]));
        CHECK(cs.T(ni, cs.index_of(-cs.S[j])) == cs.T(i, j));
      }
    }
    for (std::size_t i = 0; i < cs.Splus.size(); ++i) {
      CHECK(tbtest::row_sum(cs.Tplus, i) == p.modulus());
      const std::size_t ti = cs.index_of(cs.Splus[i]);
      for (std::size_t j = 0; j < cs.Splus.size(); ++j) {
        const std::size_t tj = cs.index_of(cs.Splus[j]);
        const Int expect = j == 0 ? cs.T(ti, tj) : cs.T(ti, tj) + cs.T(ti, cs.index_of(-cs.Splus[j]));
        CHECK(cs.Tplus(i, j) == expect);
      }
    }
    CHECK(divides(IntPolynomial::linear(p.modulus()), char_poly(cs.Tplus)));
  }
}

TEST_CASE("pruning fixed point over the corpus") {
  for (const auto& name : tbtest::corpus()) {
    CAPTURE(name);
    const StandardPair p = load(name);
    const std::vector<IntVector> S = compute_S(p);
    const std::set<IntVector> s(S.begin(), S.end());
    const auto diffs = difference_multiset(p).support();
    // every contact has a successor inside S
    for (const auto& x : S) {
      bool found = false;
      for (const auto& d : diffs) found = found || s.count(p.matrix() * x - d) > 0;
      CHECK(found);
    }
    // outside S, the graph on the candidate ball has no cycle, so every
    // forward orbit leaves the ball
    const double rho = attractor_radius(p.matrix(), p.digits());
    const long bound = static_cast<long>(std::ceil(4 * rho * rho));
    const long r = static_cast<long>(std::ceil(2 * rho));
    std::set<IntVector> cand;
    std::vector<long> z(p.dim(), -r);
    while (true) {
      long n2 = 0;
      for (long c : z) n2 += c * c;
      if (n2 <= bound) {
        IntVector v(p.dim());
        for (std::size_t i = 0; i < z.size(); ++i) v[i] = z[i];
        if (!s.count(v)) cand.insert(v);
      }
      std::size_t i = 0;
      while (i < z.size() && ++z[i] > r) z[i++] = -r;
      if (i == z.size()) break;
    }
    std::map<IntVector, int> state;  // 1 = on stack, 2 = done
    bool cycle = false;
    std::function<void(const IntVector&)> dfs = [&](const IntVector& x) {
      state[x] = 1;
      for (const auto& d : diffs) {
        const IntVector y = p.matrix() * x - d;
        if (!cand.count(y)) continue;
        if (state[y] == 1) cycle = true;
        if (state[y] == 0) dfs(y);
      }
      state[x] = 2;
    };
    for (const auto& x : cand)
      if (state[x] == 0) dfs(x);
    CHECK_FALSE(cycle);
  }
}

TEST_CASE("symmetric quotient rejects an asymmetric matrix") {
  const auto S = ints({-1, 0, 1});
  CHECK_THROWS_AS(symmetric_quotient(rows({{1, 1, 0}, {0, 2, 0}, {1, 0, 1}}), S), InternalError);
  const auto q = symmetric_quotient(rows({{1, 1, 0}, {0, 2, 0}, {0, 1, 1}}), S);
  CHECK(q.Tplus == rows({{2, 0}, {1, 1}}));
}

TEST_CASE("compute_S matches the brute-force expansion oracle in one dimension") {
  int pairs = 0;
  for (long m : {2L, 3L, 4L})
    for (long sign : {1L, -1L})
      for (const auto& digits : tboracle::residue_digit_sets(m, 0, 12)) {
        const long M = sign * m;
        std::vector<IntVector> r;
        for (long d : digits) r.push_back(IntVector{d});
        const StandardPair p = StandardPair::create(IntMatrix{{M}}, r);
        std::vector<long> got;
        for (const auto& x : compute_S(p)) got.push_back(x[0].get_si());
        CAPTURE(M);
        CAPTURE(digits);
        CHECK(got == tboracle::brute_force_S_1d(M, digits));
        ++pairs;
      }
  CHECK(pairs > 300);
}
