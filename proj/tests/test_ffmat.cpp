#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pcoh/ffmat.hpp"

#include <random>

using namespace pcoh;

namespace {

FpMatrix random_matrix(std::uint32_t p, std::size_t r, std::size_t c, std::mt19937 &rng,
                       double density = 0.5) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<std::uint32_t> val(1, p - 1);
  FpMatrix m(p, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (coin(rng) < density)
        m.set(i, j, val(rng));
  return m;
}

// Low-rank matrices exercise the kernel paths harder than random ones.
FpMatrix random_low_rank(std::uint32_t p, std::size_t r, std::size_t c, std::size_t k,
                         std::mt19937 &rng) {
  const FpMatrix a = random_matrix(p, r, k, rng), b = random_matrix(p, k, c, rng);
  FpMatrix m(p, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      std::uint32_t s = 0;
      for (std::size_t t = 0; t < k; ++t)
        s = (s + a.get(i, t) * b.get(t, j)) % p;
      m.set(i, j, s);
    }
  return m;
}

}  // namespace

TEST_CASE("rref examples") {
  CHECK(rref(FpMatrix::identity(2, 2)).rank == 2);
  CHECK(rref(FpMatrix(3, 3, 4)).rank == 0);
  const RrefResult r = rref(FpMatrix(5, {{1, 2}, {2, 4}}));
  CHECK(r.rank == 1);
  CHECK(r.pivots == std::vector<std::size_t>{0});
  CHECK(r.reduced == FpMatrix(5, {{1, 2}, {0, 0}}));
  CHECK(rref(FpMatrix(2, 0, 0)).rank == 0);
}

TEST_CASE("kernel examples") {
  CHECK(kernel(FpMatrix::identity(2, 2)).empty());
  CHECK(kernel(FpMatrix(2, 2, 3)).size() == 3);
  const auto k = kernel(FpMatrix(2, {{1, 1, 0}, {0, 1, 1}}));
  REQUIRE(k.size() == 1);
  CHECK(k[0] == FpVector(2, {1, 1, 1}));
}

TEST_CASE("kernel example agrees with enumeration over F_2^3") {
  const FpMatrix m(2, {{1, 1, 0}, {0, 1, 1}});
  int annihilated = 0;
  for (int x = 0; x < 8; ++x) {
    const FpVector v(2, {x & 1, (x >> 1) & 1, (x >> 2) & 1});
    if (m.apply(v).is_zero())
      ++annihilated;
  }
  CHECK(annihilated == 2);  // {0, (1,1,1)}
}

TEST_CASE("solve examples") {
  const auto x = solve(FpMatrix::identity(2, 2), FpVector(2, {1, 0}));
  REQUIRE(x);
  CHECK(*x == FpVector(2, {1, 0}));
  CHECK_FALSE(solve(FpMatrix(3, 2, 2), FpVector(3, {1, 0})));
  const FpMatrix m(3, {{1, 1}, {0, 1}});
  const auto y = solve(m, FpVector(3, {0, 1}));
  REQUIRE(y);
  CHECK(*y == FpVector(3, {2, 1}));
  CHECK_THROWS_AS(solve(m, FpVector(3, {0, 1, 2})), FfError);
}

TEST_CASE("solve agrees with exhaustive search over F_3^2") {
  const FpMatrix m(3, {{1, 1}, {0, 1}});
  const FpVector b(3, {0, 1});
  std::vector<FpVector> sols;
  for (int a = 0; a < 3; ++a)
    for (int c = 0; c < 3; ++c) {
      FpVector v(3, {a, c});
      if (m.apply(v) == b)
        sols.push_back(v);
    }
  REQUIRE(sols.size() == 1);
  CHECK(sols[0] == FpVector(3, {2, 1}));
}

TEST_CASE("vector arithmetic") {
  FpVector v(5, {1, 2, 3, 4, 0});
  v.axpy(3, FpVector(5, {1, 1, 1, 1, 1}));
  CHECK(v == FpVector(5, {4, 0, 1, 2, 3}));
  v.scale(2);
  CHECK(v == FpVector(5, {3, 0, 2, 4, 1}));
  CHECK(v.first_nonzero(1) == 2);
  FpVector w(2, 130);
  w.set(129, 1);
  CHECK(w.first_nonzero() == 129);
  CHECK_FALSE(w.first_nonzero(130));
  for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u})
    for (std::uint32_t a = 1; a < p; ++a)
      CHECK(a * fp_inv(a, p) % p == 1);
}

TEST_CASE("axpy reduction is exact for every supported prime") {
  for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u})
    for (std::uint32_t a = 0; a < p; ++a)
      for (std::uint32_t b = 0; b < p; ++b)
        for (std::uint32_t c = 0; c < p; ++c) {
          FpVector x(p, 1), y(p, 1);
          x.set(0, a);
          y.set(0, b);
          x.axpy(c, y);
          CHECK(x.get(0) == (a + c * b) % p);
        }
}

TEST_CASE("property: rank + nullity = cols and kernel vectors are annihilated") {
  std::mt19937 rng(20240611);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 40; ++trial) {
      std::uniform_int_distribution<std::size_t> dim(0, 30);
      const std::size_t r = dim(rng), c = dim(rng);
      const FpMatrix m = trial % 2 ? random_matrix(p, r, c, rng)
                                   : random_low_rank(p, r, c, std::min<std::size_t>(3, c), rng);
      const RrefResult res = rref(m);
      const auto ker = kernel(m);
      CHECK(res.rank + ker.size() == c);
      for (const auto &x : ker)
        CHECK(m.apply(x).is_zero());
      // Independence of the kernel basis.
      CHECK(rank(FpMatrix::from_rows(p, c, ker)) == ker.size());
      // Row space preserved.
      EchelonAccumulator a(p, c);
      for (std::size_t i = 0; i < r; ++i)
        a.add(m.row(i));
      for (std::size_t i = 0; i < res.rank; ++i)
        CHECK(a.contains(res.reduced.row(i)));
    }
  }
}

TEST_CASE("property: rref matches the serial reference") {
  std::mt19937 rng(7);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (int trial = 0; trial < 20; ++trial) {
      const FpMatrix m = trial % 3 ? random_matrix(p, 25, 31, rng, 0.3)
                                   : random_low_rank(p, 40, 35, 6, rng);
      const RrefResult fast = rref(m), ref = rref_serial(m);
      CHECK(fast.rank == ref.rank);
      CHECK(fast.pivots == ref.pivots);
      CHECK(fast.reduced == ref.reduced);
    }
  }
  // Large enough to take the OpenMP path.
  const FpMatrix big = random_low_rank(2, 300, 400, 150, rng);
  CHECK(rref(big).reduced == rref_serial(big).reduced);
}

TEST_CASE("property: streaming and batched accumulation match batch rref") {
  std::mt19937 rng(99);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 10; ++trial) {
      const FpMatrix m = random_low_rank(p, 120, 50, 20 + static_cast<std::size_t>(trial), rng);
      EchelonAccumulator one(p, m.cols()), many(p, m.cols());
      std::vector<FpVector> batch;
      for (std::size_t i = 0; i < m.rows(); ++i) {
        one.add(m.row(i));
        batch.push_back(m.row(i));
      }
      many.add_batch(batch);
      CHECK(one.rank() == rref(m).rank);
      CHECK(many.rank() == one.rank());
      CHECK(many.basis() == one.basis());
      CHECK(one.null_space().size() == m.cols() - one.rank());
    }
  }
}

TEST_CASE("span coordinates") {
  const std::vector<FpVector> span = {FpVector(3, {1, 0, 1}), FpVector(3, {0, 1, 1}),
                                      FpVector(3, {1, 1, 2})};
  const SpanCoordinates sc(3, 3, span);
  CHECK(sc.rank() == 2);
  const FpVector target(3, {2, 1, 0});
  const auto c = sc.coordinates(target);
  REQUIRE(c);
  FpVector back(3, 3);
  for (std::size_t k = 0; k < span.size(); ++k)
    back.axpy(c->get(k), span[k]);
  CHECK(back == target);
  CHECK_FALSE(sc.coordinates(FpVector(3, {0, 0, 1})));
}

TEST_CASE("property: fully reduced accumulation reproduces the unique rref") {
  std::mt19937 rng(7);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 10; ++trial) {
      const FpMatrix m = random_low_rank(p, 90, 40, 10 + static_cast<std::size_t>(trial), rng);
      EchelonAccumulator acc(p, m.cols()), plain(p, m.cols());
      acc.set_fully_reduced();
      std::vector<FpVector> rows;
      for (std::size_t i = 0; i < m.rows(); ++i)
        rows.push_back(m.row(i));
      acc.add_batch(std::vector<FpVector>(rows.begin(), rows.begin() + 45));
      for (std::size_t i = 45; i < rows.size(); ++i)
        acc.add(rows[i]);
      for (const auto &r : rows)
        plain.add(r);
      const RrefResult ref = rref(m);
      REQUIRE(acc.rank() == ref.rank);
      for (std::size_t k = 0; k < ref.rank; ++k)
        CHECK(acc.basis()[k] == ref.reduced.row(k));
      CHECK(acc.pivot_columns() == plain.pivot_columns());
      for (const auto &r : rows) {
        FpVector a = r, b = r;
        acc.reduce(a);
        plain.reduce(b);
        CHECK(a == b);
      }
    }
  }
}
