#include "pcoh/bounds.hpp"

#include <numeric>
#include <stdexcept>

#include "pcoh/ffmat.hpp"
#include "pcoh/tower.hpp"

namespace pcoh {

std::uint64_t order_dim_bound(std::uint64_t n, std::uint64_t i) {
  if (n == 0)
    return i == 0 ? 1 : 0;
  return binomial(n + i - 1, i);
}

std::uint64_t gt_bound(std::uint32_t p, std::uint64_t r, std::uint64_t i) {
  const std::uint64_t e = p == 2 ? 1 : 0;
  return binomial(r * (ceil_log2(r) + 3 + e) + i - 1, i);
}

std::uint64_t tower_index_bound_exp(std::uint32_t p, std::uint64_t r) {
  return r * (ceil_log2(r) + 2 + (p == 2 ? 1 : 0));
}

TruncSeries series_geom(std::uint64_t r, std::size_t kmax) {
  TruncSeries s;
  s.coeffs.resize(kmax + 1);
  for (std::size_t i = 0; i <= kmax; ++i)
    s.coeffs[i] = r == 0 ? (i == 0 ? 1 : 0) : binomial(r + i - 1, i);
  return s;
}

TruncSeries series_mul(const TruncSeries &a, const TruncSeries &b, std::size_t kmax) {
  TruncSeries s;
  s.coeffs.assign(kmax + 1, 0);
  for (std::size_t i = 0; i < a.coeffs.size() && i <= kmax; ++i)
    for (std::size_t j = 0; j < b.coeffs.size() && i + j <= kmax; ++j)
      s.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  return s;
}

TruncSeries lhs_e2_bound(const TruncSeries &U, const TruncSeries &V, std::size_t kmax) {
  return series_mul(V, U, kmax);
}

RegularityBounds regularity_degree_bounds(std::uint64_t N, std::uint64_t D) {
  if (N == 0 || D == 0)
    throw std::invalid_argument("regularity bounds need N >= 1 and D >= 1");
  const std::uint64_t s = N * (D - 1);
  return {std::max(s, D), std::max({2 * s, s + 1, D}), std::max<std::uint64_t>(2 * s, 1)};
}

ChernBound chern_param_bound(std::uint64_t q) {
  if (q == 0)
    throw std::invalid_argument("quotient order must be a prime power");
  if (q > 1) {
    std::uint64_t p = 2;
    while (q % p)
      ++p;
    std::uint64_t x = q;
    while (x % p == 0)
      x /= p;
    if (x != 1)
      throw std::invalid_argument("quotient order must be a prime power");
  }
  return {q, 2 * q};
}

std::uint64_t evens_degree_bound(std::uint32_t p, std::uint64_t n, std::uint64_t index) {
  std::uint64_t pn = 1;
  for (std::uint64_t k = 0; k < n; ++k)
    pn *= p;
  return 2 * (pn - 1) * index;
}

GrowthCheck quillen_growth_check(const GradedDims &dims, std::size_t a) {
  if (a == 0)
    throw std::invalid_argument("growth check needs a >= 1");
  const std::size_t kmax = dims.dims.empty() ? 0 : dims.dims.size() - 1;
  if (kmax < 4)
    throw std::invalid_argument("growth check needs dims through degree 4");
  auto denom = [&](std::size_t i) {
    std::uint64_t d = 1;
    for (std::size_t k = 1; k < a; ++k)
      d *= i;
    return d;
  };
  // x / y > u / v
  auto greater = [](std::uint64_t x, std::uint64_t y, std::uint64_t u, std::uint64_t v) {
    return static_cast<unsigned __int128>(x) * v > static_cast<unsigned __int128>(u) * y;
  };
  GrowthCheck g;
  g.num = 0;
  g.den = 1;
  std::uint64_t head_num = 0, head_den = 1;
  bool tail_ok = true;
  for (std::size_t i = 1; i <= kmax; ++i) {
    const std::uint64_t x = dims.dims[i], y = denom(i);
    if (greater(x, y, g.num, g.den)) {
      g.num = x;
      g.den = y;
      g.argmax = i;
    }
    if (i <= 4) {
      if (greater(x, y, head_num, head_den)) {
        head_num = x;
        head_den = y;
      }
    } else if (greater(x, y, head_num, head_den)) {
      tail_ok = false;
    }
  }
  const std::uint64_t gcd = std::gcd(g.num, g.den);
  if (gcd > 1) {
    g.num /= gcd;
    g.den /= gcd;
  }
  g.monotone_tail = tail_ok;
  return g;
}

Poly poly_add(const Poly &a, const Poly &b, std::uint32_t p) {
  Poly r = a;
  for (const auto &[m, c] : b) {
    const std::uint32_t v = (r[m] + c) % p;
    if (v)
      r[m] = v;
    else
      r.erase(m);
  }
  return r;
}

Poly poly_mul(const Poly &a, const Poly &b, std::uint32_t p) {
  Poly r;
  for (const auto &[ma, ca] : a)
    for (const auto &[mb, cb] : b) {
      Monomial m(ma.size());
      for (std::size_t k = 0; k < m.size(); ++k)
        m[k] = ma[k] + mb[k];
      r[m] = (r[m] + ca * cb) % p;
    }
  std::erase_if(r, [](const auto &kv) { return kv.second == 0; });
  return r;
}

Poly poly_substitute(const Poly &f, const std::vector<std::uint32_t> &M, std::size_t n,
                     std::uint32_t p) {
  std::vector<Poly> forms(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      if (M[k * n + j] % p) {
        Monomial m(n, 0);
        m[k] = 1;
        forms[j][m] = M[k * n + j] % p;
      }
  std::vector<std::vector<Poly>> powers(n);  // powers[j][e] = forms[j]^e
  auto power = [&](std::size_t j, std::uint32_t e) -> const Poly & {
    auto &pw = powers[j];
    if (pw.empty())
      pw.push_back(Poly{{Monomial(n, 0), 1}});
    while (pw.size() <= e)
      pw.push_back(poly_mul(pw.back(), forms[j], p));
    return pw[e];
  };
  Poly out;
  for (const auto &[m, c] : f) {
    Poly term{{Monomial(n, 0), c}};
    for (std::size_t j = 0; j < n; ++j)
      if (m[j])
        term = poly_mul(term, power(j, m[j]), p);
    out = poly_add(out, term, p);
  }
  return out;
}

std::size_t poly_degree(const Poly &f) {
  std::size_t d = 0;
  for (const auto &[m, c] : f)
    d = std::max<std::size_t>(d, std::accumulate(m.begin(), m.end(), std::size_t{0}));
  return d;
}

bool poly_homogeneous(const Poly &f) {
  const std::size_t d = poly_degree(f);
  for (const auto &[m, c] : f)
    if (std::accumulate(m.begin(), m.end(), std::size_t{0}) != d)
      return false;
  return true;
}

std::vector<std::vector<std::uint32_t>> gl_generators(std::uint32_t p, std::size_t n) {
  std::vector<std::vector<std::uint32_t>> gens;
  auto identity = [&] {
    std::vector<std::uint32_t> M(n * n, 0);
    for (std::size_t k = 0; k < n; ++k)
      M[k * n + k] = 1;
    return M;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) {
        auto M = identity();
        M[i * n + j] = 1;
        gens.push_back(M);
      }
  if (p > 2) {
    std::uint32_t w = 2;
    for (; w < p; ++w) {
      std::uint32_t x = w, ord = 1;
      while (x != 1) {
        x = x * w % p;
        ++ord;
      }
      if (ord == p - 1)
        break;
    }
    auto M = identity();
    M[0] = w;
    gens.push_back(M);
  }
  return gens;
}

namespace {

void monomials_rec(std::size_t n, std::size_t k, std::size_t left, Monomial &cur,
                   std::vector<Monomial> &out) {
  if (k + 1 == n) {
    cur[k] = static_cast<std::uint32_t>(left);
    out.push_back(cur);
    return;
  }
  for (std::size_t e = left + 1; e-- > 0;) {
    cur[k] = static_cast<std::uint32_t>(e);
    monomials_rec(n, k + 1, left - e, cur, out);
  }
}

// Monomials of degree d, lexicographically decreasing.
std::vector<Monomial> monomials(std::size_t n, std::size_t d) {
  std::vector<Monomial> out;
  Monomial cur(n, 0);
  monomials_rec(n, 0, d, cur, out);
  return out;
}

Poly fixed_polynomial(std::uint32_t p, std::size_t n, std::size_t d) {
  const auto mons = monomials(n, d);
  std::map<Monomial, std::size_t> index;
  for (std::size_t k = 0; k < mons.size(); ++k)
    index[mons[k]] = k;
  const auto gens = gl_generators(p, n);
  std::vector<FpVector> rows;
  for (const auto &M : gens) {
    std::vector<FpVector> block(mons.size(), FpVector(p, mons.size()));
    for (std::size_t a = 0; a < mons.size(); ++a) {
      const Poly image = poly_substitute(Poly{{mons[a], 1}}, M, n, p);
      for (const auto &[m, c] : image)
        block[index.at(m)].add_at(a, c);
      block[a].add_at(a, p - 1);
    }
    for (auto &r : block)
      if (!r.is_zero())
        rows.push_back(std::move(r));
  }
  std::vector<FpVector> fixed;
  if (rows.empty()) {
    for (std::size_t a = 0; a < mons.size(); ++a) {
      FpVector v(p, mons.size());
      v.set(a, 1);
      fixed.push_back(v);
    }
  } else {
    fixed = kernel(FpMatrix::from_rows(p, mons.size(), std::move(rows)));
  }
  if (fixed.size() != 1)
    throw std::logic_error("Dickson degree " + std::to_string(d) + ": invariant space of dim " +
                           std::to_string(fixed.size()));
  FpVector v = fixed[0];
  const std::size_t lead = *v.first_nonzero();
  v.scale(fp_inv(v.get(lead), p));
  Poly f;
  for (std::size_t a = 0; a < mons.size(); ++a)
    if (v.get(a))
      f[mons[a]] = v.get(a);
  return f;
}

}  // namespace

DicksonSet dickson(std::uint32_t p, std::size_t n) {
  if ((p != 2 && p != 3) || n < 1 || n > 3)
    throw std::invalid_argument("dickson: supported range is p in {2,3}, 1 <= n <= 3");
  DicksonSet d;
  d.p = p;
  d.n = n;
  std::uint64_t pn = 1;
  for (std::size_t k = 0; k < n; ++k)
    pn *= p;
  std::uint64_t pi = 1;
  for (std::size_t i = 0; i < n; ++i, pi *= p) {
    const std::uint64_t deg = pn - pi;
    d.c.push_back(fixed_polynomial(p, n, deg));
    d.poly_degrees.push_back(deg);
    d.cohom_degrees.push_back(2 * deg);
  }
  return d;
}

bool dickson_invariant(const DicksonSet &d) {
  for (const auto &M : gl_generators(d.p, d.n))
    for (const Poly &f : d.c)
      if (poly_substitute(f, M, d.n, d.p) != f)
        return false;
  return true;
}

}  // namespace pcoh
