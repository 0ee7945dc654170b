#ifndef PCOH_BOUNDS_HPP
#define PCOH_BOUNDS_HPP

// Closed-form dimension and degree bounds, truncated power series, and
// Dickson invariants.

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "pcoh/cohomology.hpp"

namespace pcoh {

/// Coefficients c_0 .. c_kmax of a power series.
struct TruncSeries {
  std::vector<std::uint64_t> coeffs;
  bool operator==(const TruncSeries &) const = default;
};

/// binom(n + i - 1, i)
std::uint64_t order_dim_bound(std::uint64_t n, std::uint64_t i);
/// binom(r (ceil(log2 r) + 3 + e) + i - 1, i), e = 1 for p = 2 and 0 otherwise.
std::uint64_t gt_bound(std::uint32_t p, std::uint64_t r, std::uint64_t i);
/// r (ceil(log2 r) + 2 + e)
std::uint64_t tower_index_bound_exp(std::uint32_t p, std::uint64_t r);

/// (1 - t)^{-r}
TruncSeries series_geom(std::uint64_t r, std::size_t kmax);
TruncSeries series_mul(const TruncSeries &a, const TruncSeries &b, std::size_t kmax);
/// Coefficientwise E_2-page bound sum_{s+t=i} V(s) U(t).
TruncSeries lhs_e2_bound(const TruncSeries &U, const TruncSeries &V, std::size_t kmax);

struct RegularityBounds {
  std::uint64_t gen_deg = 0;
  std::uint64_t rel_deg = 0;
  std::uint64_t L = 0;
};
/// Generator and relation degree bounds from N parameters of degree <= D.
RegularityBounds regularity_degree_bounds(std::uint64_t N, std::uint64_t D);

struct ChernBound {
  std::uint64_t count = 0;
  std::uint64_t max_deg = 0;
};
/// Throws std::invalid_argument unless q is a prime power.
ChernBound chern_param_bound(std::uint64_t q);

/// 2 (p^n - 1) index
std::uint64_t evens_degree_bound(std::uint32_t p, std::uint64_t n, std::uint64_t index);

struct GrowthCheck {
  std::uint64_t num = 0;  // max_ratio = num / den, reduced
  std::uint64_t den = 1;
  std::size_t argmax = 0;
  bool monotone_tail = false;  // ratios for i > 4 never exceed the maximum on 1..4
  double max_ratio() const { return static_cast<double>(num) / static_cast<double>(den); }
};
/// max over 1 <= i <= kmax of dims[i] / i^{a-1}.  Throws std::invalid_argument
/// when a = 0 or fewer than five degrees are available.
GrowthCheck quillen_growth_check(const GradedDims &dims, std::size_t a);

/// Polynomial over F_p: exponent vector -> nonzero coefficient.
using Monomial = std::vector<std::uint32_t>;
using Poly = std::map<Monomial, std::uint32_t>;

Poly poly_mul(const Poly &a, const Poly &b, std::uint32_t p);
Poly poly_add(const Poly &a, const Poly &b, std::uint32_t p);
/// x_j -> sum_k M[k][j] x_k for an n x n matrix M over F_p (row-major).
Poly poly_substitute(const Poly &f, const std::vector<std::uint32_t> &M, std::size_t n,
                     std::uint32_t p);
std::size_t poly_degree(const Poly &f);
bool poly_homogeneous(const Poly &f);

/// A generating set of GL_n(F_p): elementary transvections and diag(w, 1, ...).
std::vector<std::vector<std::uint32_t>> gl_generators(std::uint32_t p, std::size_t n);

struct DicksonSet {
  std::uint32_t p = 2;
  std::size_t n = 0;
  std::vector<Poly> c;  // c[i] = c_{n,i}
  std::vector<std::uint64_t> poly_degrees;
  std::vector<std::uint64_t> cohom_degrees;
};
/// Dickson invariants as the fixed space of GL_n(F_p) in degree p^n - p^i,
/// scaled so that the lexicographically largest monomial has coefficient 1.
/// p in {2, 3} and 1 <= n <= 3; throws std::invalid_argument otherwise.
DicksonSet dickson(std::uint32_t p, std::size_t n);
/// Every c_{n,i} is fixed by every generator in gl_generators(p, n).
bool dickson_invariant(const DicksonSet &d);

}  // namespace pcoh

#endif
