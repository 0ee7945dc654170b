#include <algorithm>
#include <cmath>

#include "pcoh/pcgroup.hpp"

namespace pcoh {

namespace {

UtMatrix ut_identity(std::size_t r) {
  UtMatrix m{r, std::vector<std::uint8_t>(r * r, 0)};
  for (std::size_t i = 0; i < r; ++i)
    m.a[i * r + i] = 1;
  return m;
}

UtMatrix ut_mul(const UtMatrix &x, const UtMatrix &y, std::uint32_t p) {
  const std::size_t r = x.r;
  UtMatrix z{r, std::vector<std::uint8_t>(r * r, 0)};
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j) {
      std::uint32_t s = 0;
      for (std::size_t k = i; k <= j; ++k)
        s += std::uint32_t{x.a[i * r + k]} * y.a[k * r + j];
      z.a[i * r + j] = static_cast<std::uint8_t>(s % p);
    }
  return z;
}

// Inverse by back substitution; the diagonal is 1.
UtMatrix ut_inv(const UtMatrix &x, std::uint32_t p) {
  const std::size_t r = x.r;
  UtMatrix y = ut_identity(r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = j; i-- > 0;) {
      std::uint32_t s = 0;
      for (std::size_t k = i + 1; k <= j; ++k)
        s += std::uint32_t{x.a[i * r + k]} * y.a[k * r + j];
      y.a[i * r + j] = static_cast<std::uint8_t>((p - s % p) % p);
    }
  return y;
}

UtMatrix ut_pow(UtMatrix x, std::uint64_t k, std::uint32_t p) {
  UtMatrix r = ut_identity(x.r);
  for (; k; k >>= 1, x = ut_mul(x, x, p))
    if (k & 1)
      r = ut_mul(r, x, p);
  return r;
}

UtMatrix ut_comm(const UtMatrix &x, const UtMatrix &y, std::uint32_t p) {
  return ut_mul(ut_mul(ut_inv(x, p), ut_inv(y, p), p), ut_mul(x, y, p), p);
}

std::vector<UtMatrix> all_unitriangular(std::size_t r, std::uint32_t p) {
  std::vector<std::size_t> slots;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      slots.push_back(i * r + j);
  std::uint64_t total = 1;
  for (std::size_t s = 0; s < slots.size(); ++s)
    total *= p;
  std::vector<UtMatrix> out;
  out.reserve(total);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    UtMatrix m = ut_identity(r);
    std::uint64_t x = idx;
    for (std::size_t s = slots.size(); s-- > 0; x /= p)
      m.a[slots[s]] = static_cast<std::uint8_t>(x % p);
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

UtMatrix ut_image(const PcGroup &G, const UtHom &hom, Elem x) {
  const std::size_t r = hom.images.empty() ? 1 : hom.images[0].r;
  const Exponents e = G.exponents(x);
  UtMatrix m = ut_identity(r);
  for (std::size_t l = 0; l < e.size(); ++l)
    if (e[l])
      m = ut_mul(m, ut_pow(hom.images[l], e[l], G.p()), G.p());
  return m;
}

std::vector<UtHom> homs_to_unitriangular(const PcGroup &G, std::size_t r,
                                         const HomSearchOptions &opts) {
  if (r == 0)
    throw GroupError("unitriangular degree must be positive");
  const std::uint32_t p = G.p();
  const std::size_t n = G.ngens();
  const std::size_t d = min_generators(G, whole_group(G));
  const std::size_t slots = r * (r - 1) / 2;
  // |UT_r|^d = p^(slots * d)
  double log2_candidates = static_cast<double>(slots * d) * std::log2(static_cast<double>(p));
  if (log2_candidates > std::log2(static_cast<double>(opts.candidate_cap)))
    throw CapExceeded("homomorphism search: |UT_" + std::to_string(r) + "(F_" +
                      std::to_string(p) + ")|^" + std::to_string(d) + " exceeds the cap");

  const std::vector<UtMatrix> ut = all_unitriangular(r, p);
  const Presentation &pres = G.presentation();
  std::vector<std::vector<const Exponents *>> comm_at(n, std::vector<const Exponents *>(n));
  const Exponents zero(n, 0);
  for (auto &row : comm_at)
    std::fill(row.begin(), row.end(), &zero);
  for (const auto &c : pres.comm)
    comm_at[c.j][c.i] = &c.w;

  std::vector<UtMatrix> img(n, ut_identity(r));
  auto word = [&](const Exponents &w) {
    UtMatrix m = ut_identity(r);
    for (std::size_t l = 0; l < n; ++l)
      if (w[l])
        m = ut_mul(m, ut_pow(img[l], w[l], p), p);
    return m;
  };

  std::vector<UtHom> out;
  std::uint64_t nodes = 0;
  // Assign images from g_n down to g_1 so that every relation of g_k only
  // involves generators that already have images.
  auto search = [&](auto &&self, std::size_t k) -> void {
    if (k == 0) {
      out.push_back(UtHom{img});
      return;
    }
    const std::size_t i = k - 1;
    const UtMatrix target_pow = word(pres.power[i]);
    std::vector<UtMatrix> target_comm(n);
    for (std::size_t j = i + 1; j < n; ++j)
      target_comm[j] = word(*comm_at[j][i]);
    for (const UtMatrix &m : ut) {
      if (++nodes > opts.node_cap)
        throw CapExceeded("homomorphism search: node cap exceeded");
      if (!(ut_pow(m, p, p) == target_pow))
        continue;
      bool ok = true;
      for (std::size_t j = i + 1; j < n && ok; ++j)
        ok = ut_comm(img[j], m, p) == target_comm[j];
      if (!ok)
        continue;
      img[i] = m;
      self(self, i);
    }
    img[i] = ut_identity(r);
  };
  search(search, n);
  return out;
}

Subgroup hom_kernel(const PcGroup &G, const UtHom &hom) {
  const std::size_t r = hom.images.empty() ? 1 : hom.images[0].r;
  const UtMatrix one = ut_identity(r);
  std::vector<Elem> k;
  for (Elem x = 0; x < G.order(); ++x)
    if (ut_image(G, hom, x) == one)
      k.push_back(x);
  return subgroup_from_elements(G, std::move(k));
}

}  // namespace pcoh
