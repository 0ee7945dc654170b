// Serial reference against the OpenMP kernels: rref and batched echelon
// accumulation over F_p, plus a whole-group resolution.

#include <chrono>
#include <cstdio>
#include <random>

#include <omp.h>

#include "CLI11.hpp"
#include "pcoh/cohomology.hpp"
#include "pcoh/corpus.hpp"
#include "pcoh/ffmat.hpp"

using namespace pcoh;

namespace {

template <class F>
double seconds(F &&f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

FpMatrix random_matrix(std::uint32_t p, std::size_t rows, std::size_t cols, std::size_t rank,
                       std::mt19937_64 &rng) {
  // product of random rows x rank and rank x cols factors
  std::uniform_int_distribution<std::uint32_t> d(0, p - 1);
  FpMatrix a(p, rows, rank), b(p, rank, cols), m(p, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < rank; ++k)
      a.set(i, k, d(rng));
  for (std::size_t k = 0; k < rank; ++k)
    for (std::size_t j = 0; j < cols; ++j)
      b.set(k, j, d(rng));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < rank; ++k)
      if (const std::uint32_t c = a.get(i, k))
        m.row(i).axpy(c, b.row(k));
  return m;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"pcoh kernels: serial reference versus OpenMP"};
  int threads = omp_get_max_threads();
  std::size_t n = 768;
  std::uint64_t seed = 1;
  app.add_option("--threads", threads)->capture_default_str();
  app.add_option("--size", n, "Matrix dimension")->capture_default_str();
  app.add_option("--seed", seed)->capture_default_str();
  CLI11_PARSE(app, argc, argv);
  omp_set_num_threads(threads);
  std::mt19937_64 rng(seed);

  std::printf("threads %d, size %zu\n", threads, n);
  std::printf("%-28s %10s %10s %8s %s\n", "kernel", "serial_s", "openmp_s", "speedup", "agree");
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const FpMatrix m = random_matrix(p, n, n, n - n / 8, rng);
    RrefResult a, b;
    const double ts = seconds([&] { a = rref_serial(m); });
    const double tp = seconds([&] { b = rref(m); });
    const bool agree = a.rank == b.rank && a.pivots == b.pivots && a.reduced == b.reduced;
    std::printf("rref p=%-21u %10.3f %10.3f %8.2f %s\n", p, ts, tp, ts / tp, agree ? "yes" : "NO");

    std::vector<FpVector> rows(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
      rows[i] = m.row(i);
    EchelonAccumulator one(p, n), batch(p, n);
    const double ta = seconds([&] {
      for (const auto &r : rows)
        one.add(r);
    });
    const double tb = seconds([&] {
      for (std::size_t k = 0; k < rows.size(); k += 256)
        batch.add_batch(std::vector<FpVector>(rows.begin() + k,
                                              rows.begin() + std::min(rows.size(), k + 256)));
    });
    const bool same = one.basis() == batch.basis();
    std::printf("accumulate p=%-15u %10.3f %10.3f %8.2f %s\n", p, ta, tb, ta / tb,
                same ? "yes" : "NO");
  }

  const PcGroup G = make("elem_ab", {{"p", 2}, {"r", 3}}).group;
  GradedDims d1, dk;
  omp_set_num_threads(1);
  const double r1 = seconds([&] { d1 = minres_dims(G, 12); });
  omp_set_num_threads(threads);
  const double rk = seconds([&] { dk = minres_dims(G, 12); });
  std::printf("%-28s %10.3f %10.3f %8.2f %s\n", "minres C2^3 deg 12", r1, rk, r1 / rk,
              d1.dims == dk.dims ? "yes" : "NO");
  return 0;
}
