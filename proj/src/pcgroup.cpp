#include "pcoh/pcgroup.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <sstream>

#include "pcoh/ffmat.hpp"

namespace pcoh {

namespace {

std::string show(const Exponents &e) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < e.size(); ++i)
    os << (i ? "," : "") << int(e[i]);
  os << ']';
  return os.str();
}

// Breadth-first closure of a generating set, using a membership mask.
std::vector<Elem> closure(const PcGroup &G, std::span<const Elem> gens,
                          std::span<const Elem> seed = {}) {
  std::vector<char> in(G.order(), 0);
  std::vector<Elem> out{PcGroup::identity};
  in[PcGroup::identity] = 1;
  for (Elem s : seed)
    if (!in[s]) {
      in[s] = 1;
      out.push_back(s);
    }
  for (std::size_t head = 0; head < out.size(); ++head)
    for (Elem g : gens) {
      const Elem y = G.mul(out[head], g);
      if (!in[y]) {
        in[y] = 1;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<char> mask_of(const PcGroup &G, const Subgroup &H) {
  std::vector<char> m(G.order(), 0);
  for (Elem x : H.elements)
    m[x] = 1;
  return m;
}

}  // namespace

// ---------------------------------------------------------------- PcGroup

std::size_t log_p(std::uint64_t order, std::uint32_t p) {
  std::size_t k = 0;
  while (order > 1) {
    if (order % p)
      throw GroupError("order " + std::to_string(order) + " is not a power of " +
                       std::to_string(p));
    order /= p;
    ++k;
  }
  return k;
}

Exponents PcGroup::exponents(Elem a) const {
  const std::size_t n = ngens();
  Exponents e(n, 0);
  for (std::size_t i = n; i-- > 0;) {
    e[i] = static_cast<std::uint8_t>(a % p());
    a /= p();
  }
  return e;
}

Elem PcGroup::index(const Exponents &e) const {
  Elem a = 0;
  for (std::uint8_t x : e)
    a = a * p() + x;
  return a;
}

Elem PcGroup::generator(std::size_t i) const {
  Exponents e(ngens(), 0);
  e.at(i) = 1;
  return index(e);
}

Elem PcGroup::pow(Elem a, std::uint64_t k) const {
  Elem r = identity;
  for (; k; k >>= 1, a = mul(a, a))
    if (k & 1)
      r = mul(r, a);
  return r;
}

void PcGroup::collect_generator(Exponents &e, std::size_t k) const {
  const std::size_t n = ngens();
  const std::uint32_t p = pres_.p;
  bool trivial_tail = true;
  for (std::size_t j = k + 1; j < n && trivial_tail; ++j)
    trivial_tail = e[j] == 0;
  Exponents tail;
  if (!trivial_tail) {
    tail.assign(e.begin() + static_cast<std::ptrdiff_t>(k) + 1, e.end());
    std::fill(e.begin() + static_cast<std::ptrdiff_t>(k) + 1, e.end(), 0);
  }
  // The tail is now empty, so g_1^a_1..g_k^(a_k+1) is already collected
  // except for a possible power overflow, whose word is itself normal.
  if (++e[k] == p) {
    e[k] = 0;
    for (std::size_t j = k + 1; j < n; ++j)
      e[j] = pres_.power[k][j];
  }
  if (trivial_tail)
    return;
  // Move g_k across the old tail: g_j^{g_k} = g_j [g_j, g_k].
  for (std::size_t j = k + 1; j < n; ++j)
    for (std::uint8_t t = 0; t < tail[j - k - 1]; ++t) {
      collect_generator(e, j);
      collect_word(e, comm_words_[j * n + k]);
    }
}

void PcGroup::collect_word(Exponents &e, const Exponents &w) const {
  for (std::size_t j = 0; j < w.size(); ++j)
    for (std::uint8_t t = 0; t < w[j]; ++t)
      collect_generator(e, j);
}

Exponents PcGroup::collect(const Exponents &a, const Exponents &b) const {
  Exponents e = a;
  collect_word(e, b);
  return e;
}

PcGroup PcGroup::validate(Presentation pres, const ValidateOptions &opts) {
  const std::uint32_t p = pres.p;
  const std::size_t n = pres.ngens;
  if (!is_supported_prime(p))
    throw GroupError("unsupported prime " + std::to_string(p));
  std::uint64_t order = 1;
  for (std::size_t i = 0; i < n; ++i) {
    order *= p;
    if (order > opts.max_order)
      throw GroupError("unsupported size: " + std::to_string(p) + "^" + std::to_string(n) +
                       " exceeds the cap of " + std::to_string(opts.max_order));
  }
  if (pres.power.empty())
    pres.power.assign(n, Exponents(n, 0));
  if (pres.power.size() != n)
    throw GroupError("power relations: expected " + std::to_string(n) + " entries");
  auto check_word = [&](const Exponents &w, std::size_t above, const std::string &what) {
    if (w.size() != n)
      throw GroupError(what + ": exponent vector has wrong length");
    for (std::size_t l = 0; l < n; ++l) {
      if (w[l] >= p)
        throw GroupError(what + ": exponent out of range");
      if (w[l] && l <= above)
        throw GroupError(what + ": violates support (must involve only g_" +
                         std::to_string(above + 2) + " and later)");
    }
  };
  for (std::size_t i = 0; i < n; ++i)
    check_word(pres.power[i], i, "power of g_" + std::to_string(i + 1));

  PcGroup G;
  G.order_ = static_cast<std::uint32_t>(order);
  G.comm_words_.assign(n * n, Exponents(n, 0));
  std::vector<char> seen(n * n, 0);
  for (const auto &c : pres.comm) {
    if (c.j >= n || c.i >= c.j)
      throw GroupError("commutator [g_" + std::to_string(c.j + 1) + ",g_" +
                       std::to_string(c.i + 1) + "]: need j > i");
    const std::string what =
        "commutator [g_" + std::to_string(c.j + 1) + ",g_" + std::to_string(c.i + 1) + "]";
    check_word(c.w, c.j, what);
    if (seen[c.j * n + c.i]++)
      throw GroupError(what + " listed twice");
    G.comm_words_[c.j * n + c.i] = c.w;
  }
  G.pres_ = std::move(pres);

  const std::uint32_t N = G.order_;
  // Right multiplication by each pc generator, by collection.
  std::vector<Elem> by_gen(std::size_t{N} * n);
  const std::ptrdiff_t sN = N;
#pragma omp parallel for schedule(static) if (N > 64)
  for (std::ptrdiff_t a = 0; a < sN; ++a) {
    const Exponents ea = G.exponents(static_cast<Elem>(a));
    for (std::size_t k = 0; k < n; ++k) {
      Exponents e = ea;
      G.collect_generator(e, k);
      by_gen[static_cast<std::size_t>(a) * n + k] = G.index(e);
    }
  }
  G.table_.assign(std::size_t{N} * N, 0);
#pragma omp parallel for schedule(static) if (N > 64)
  for (std::ptrdiff_t a = 0; a < sN; ++a) {
    for (Elem b = 0; b < N; ++b) {
      const Exponents eb = G.exponents(b);
      Elem x = static_cast<Elem>(a);
      for (std::size_t k = 0; k < n; ++k)
        for (std::uint8_t t = 0; t < eb[k]; ++t)
          x = by_gen[std::size_t{x} * n + k];
      G.table_[static_cast<std::size_t>(a) * N + b] = x;
    }
  }

  auto inconsistent = [&](Elem a, Elem b, Elem c) {
    return GroupError("inconsistent presentation: associativity fails for (" +
                      show(G.exponents(a)) + ", " + show(G.exponents(b)) + ", " +
                      show(G.exponents(c)) + ")");
  };
  auto assoc = [&](Elem a, Elem b, Elem c) {
    return G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c));
  };

  if (N <= opts.exhaustive_limit) {
    for (Elem a = 0; a < N; ++a)
      for (Elem b = 0; b < N; ++b)
        for (Elem c = 0; c < N; ++c)
          if (!assoc(a, b, c))
            throw inconsistent(a, b, c);
  } else {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<Elem> pick(0, N - 1);
    std::vector<std::array<Elem, 3>> triples(opts.sampled_triples);
    for (auto &t : triples)
      t = {pick(rng), pick(rng), pick(rng)};
    // Associativity on generator triples is cheap and catches most defects.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          triples.push_back({G.generator(i), G.generator(j), G.generator(k)});
    for (const auto &t : triples)
      if (!assoc(t[0], t[1], t[2]))
        throw inconsistent(t[0], t[1], t[2]);
  }

  G.inverse_.assign(N, 0);
  for (Elem a = 0; a < N; ++a) {
    bool found = false;
    for (Elem b = 0; b < N && !found; ++b)
      if (G.mul(a, b) == identity) {
        if (G.mul(b, a) != identity)
          throw GroupError("inconsistent presentation: one-sided inverse for " +
                           show(G.exponents(a)));
        G.inverse_[a] = b;
        found = true;
      }
    if (!found)
      throw GroupError("inconsistent presentation: no inverse for " + show(G.exponents(a)));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (G.pow(G.generator(i), p) != G.index(G.pres_.power[i]))
      throw GroupError("inconsistent presentation: power relation of g_" +
                       std::to_string(i + 1) + " fails");
    for (std::size_t j = i + 1; j < n; ++j)
      if (G.comm(G.generator(j), G.generator(i)) != G.index(G.comm_words_[j * n + i]))
        throw GroupError("inconsistent presentation: commutator relation [g_" +
                         std::to_string(j + 1) + ",g_" + std::to_string(i + 1) + "] fails");
  }
  return G;
}

// ---------------------------------------------------------------- subgroups

bool Subgroup::contains(Elem x) const {
  return std::binary_search(elements.begin(), elements.end(), x);
}

Subgroup whole_group(const PcGroup &G) {
  Subgroup H;
  H.elements.resize(G.order());
  for (Elem x = 0; x < G.order(); ++x)
    H.elements[x] = x;
  for (std::size_t i = 0; i < G.ngens(); ++i)
    H.gens.push_back(G.generator(i));
  return H;
}

Subgroup trivial_subgroup() { return Subgroup{{PcGroup::identity}, {}}; }

Subgroup subgroup_generated(const PcGroup &G, std::span<const Elem> gens) {
  Subgroup H;
  H.elements = closure(G, gens);
  for (Elem g : gens)
    if (g != PcGroup::identity && std::find(H.gens.begin(), H.gens.end(), g) == H.gens.end())
      H.gens.push_back(g);
  return H;
}

Subgroup subgroup_from_elements(const PcGroup &G, std::vector<Elem> elements) {
  std::sort(elements.begin(), elements.end());
  Subgroup H;
  std::vector<char> in(G.order(), 0);
  std::vector<Elem> cur{PcGroup::identity};
  in[PcGroup::identity] = 1;
  for (Elem x : elements) {
    if (in[x])
      continue;
    H.gens.push_back(x);
    cur = closure(G, H.gens);
    for (Elem y : cur)
      in[y] = 1;
  }
  H.elements = std::move(cur);
  if (H.elements != elements)
    throw GroupError("element set is not a subgroup");
  return H;
}

Subgroup normal_closure(const PcGroup &G, const Subgroup &H, std::span<const Elem> gens) {
  std::vector<Elem> g;
  for (Elem x : gens)
    if (x != PcGroup::identity && std::find(g.begin(), g.end(), x) == g.end())
      g.push_back(x);
  std::vector<Elem> elems = closure(G, g);
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t k = 0; k < g.size(); ++k)
      for (Elem h : H.gens) {
        const Elem y = G.conj(g[k], h);
        if (!std::binary_search(elems.begin(), elems.end(), y)) {
          g.push_back(y);
          elems = closure(G, g);
          grew = true;
        }
      }
  }
  return Subgroup{std::move(elems), std::move(g)};
}

Subgroup intersection(const PcGroup &G, const Subgroup &A, const Subgroup &B) {
  std::vector<Elem> c;
  std::set_intersection(A.elements.begin(), A.elements.end(), B.elements.begin(),
                        B.elements.end(), std::back_inserter(c));
  return subgroup_from_elements(G, std::move(c));
}

Subgroup join(const PcGroup &G, const Subgroup &A, const Subgroup &B) {
  std::vector<Elem> gens = A.gens;
  gens.insert(gens.end(), B.gens.begin(), B.gens.end());
  return subgroup_generated(G, gens);
}

bool is_subgroup_of(const Subgroup &A, const Subgroup &B) {
  return std::includes(B.elements.begin(), B.elements.end(), A.elements.begin(),
                       A.elements.end());
}

bool is_normal(const PcGroup &G, const Subgroup &N, const Subgroup &H) {
  const auto in = mask_of(G, N);
  for (Elem h : H.gens)
    for (Elem x : N.gens)
      if (!in[G.conj(x, h)])
        return false;
  return true;
}

bool is_normal(const PcGroup &G, const Subgroup &N) { return is_normal(G, N, whole_group(G)); }

Subgroup normalizer(const PcGroup &G, const Subgroup &A, const Subgroup &H) {
  const auto in = mask_of(G, A);
  std::vector<Elem> out;
  for (Elem h : H.elements) {
    bool ok = true;
    for (Elem x : A.gens)
      if (!in[G.conj(x, h)]) {
        ok = false;
        break;
      }
    if (ok)
      out.push_back(h);
  }
  return subgroup_from_elements(G, std::move(out));
}

std::uint64_t element_order(const PcGroup &G, Elem x) {
  std::uint64_t k = 1;
  for (Elem y = x; y != PcGroup::identity; y = G.mul(y, x))
    ++k;
  return k;
}

std::vector<std::uint64_t> element_orders(const PcGroup &G) {
  std::vector<std::uint64_t> out(G.order());
  for (Elem x = 0; x < G.order(); ++x)
    out[x] = element_order(G, x);
  return out;
}

Subgroup omega(const PcGroup &G, std::size_t r, const Subgroup &H) {
  std::uint64_t q = 1;
  for (std::size_t i = 0; i < r; ++i)
    q *= G.p();
  std::vector<Elem> gens;
  for (Elem x : H.elements)
    if (x != PcGroup::identity && G.pow(x, q) == PcGroup::identity)
      gens.push_back(x);
  return subgroup_from_elements(G, closure(G, gens));
}

Subgroup omega(const PcGroup &G, std::size_t r) { return omega(G, r, whole_group(G)); }

Subgroup agemo(const PcGroup &G, std::size_t r, const Subgroup &H) {
  std::uint64_t q = 1;
  for (std::size_t i = 0; i < r; ++i)
    q *= G.p();
  std::vector<Elem> gens;
  for (Elem x : H.elements) {
    const Elem y = G.pow(x, q);
    if (y != PcGroup::identity)
      gens.push_back(y);
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return subgroup_from_elements(G, closure(G, gens));
}

Subgroup agemo(const PcGroup &G, std::size_t r) { return agemo(G, r, whole_group(G)); }

Subgroup commutator_subgroup(const PcGroup &G, const Subgroup &A, const Subgroup &B,
                             const Subgroup &H) {
  std::vector<Elem> gens;
  for (Elem a : A.gens)
    for (Elem b : B.gens) {
      const Elem c = G.comm(a, b);
      if (c != PcGroup::identity)
        gens.push_back(c);
    }
  return normal_closure(G, H, gens);
}

Subgroup center(const PcGroup &G, const Subgroup &H) {
  std::vector<Elem> out;
  for (Elem x : H.elements) {
    bool central = true;
    for (Elem h : H.gens)
      if (G.mul(x, h) != G.mul(h, x)) {
        central = false;
        break;
      }
    if (central)
      out.push_back(x);
  }
  return subgroup_from_elements(G, std::move(out));
}

StandardSeries standard_series(const PcGroup &G, const Subgroup &H) {
  StandardSeries s;
  s.derived = commutator_subgroup(G, H, H, H);
  s.frattini = join(G, s.derived, agemo(G, 1, H));
  s.center = center(G, H);
  s.lower_central.push_back(H);
  while (s.lower_central.back().order() > 1) {
    Subgroup next = commutator_subgroup(G, s.lower_central.back(), H, H);
    if (next == s.lower_central.back())
      break;  // cannot happen for p-groups
    s.lower_central.push_back(std::move(next));
  }
  return s;
}

StandardSeries standard_series(const PcGroup &G) { return standard_series(G, whole_group(G)); }

bool is_abelian(const PcGroup &G, const Subgroup &H) {
  for (Elem a : H.gens)
    for (Elem b : H.gens)
      if (G.mul(a, b) != G.mul(b, a))
        return false;
  return true;
}

bool is_elementary_abelian(const PcGroup &G, const Subgroup &H) {
  if (!is_abelian(G, H))
    return false;
  for (Elem a : H.gens)
    if (G.pow(a, G.p()) != PcGroup::identity)
      return false;
  return true;
}

std::size_t min_generators(const PcGroup &G, const Subgroup &H) {
  // Phi(H) is the normal closure in H of the commutators and p-th powers of
  // a generating set, since H/Phi(H) is the largest elementary abelian
  // quotient.
  std::vector<Elem> gens;
  for (Elem a : H.gens) {
    const Elem x = G.pow(a, G.p());
    if (x != PcGroup::identity)
      gens.push_back(x);
    for (Elem b : H.gens) {
      const Elem c = G.comm(a, b);
      if (c != PcGroup::identity)
        gens.push_back(c);
    }
  }
  const Subgroup phi = normal_closure(G, H, gens);
  return log_p(H.order() / phi.order(), G.p());
}

// ---------------------------------------------------------------- re-presentation

namespace {

// Builds a consistent pc presentation for a finite p-group given by an
// abstract multiplication table on 0..m-1 (0 the identity), choosing a
// central series with factors of order p from the bottom up.  local_to_pc
// maps table elements to elements of the returned group; the map is checked
// to be an isomorphism.
template <class Mul>
PcGroup build_from_table(std::uint32_t p, std::size_t m, Mul mul, const std::string &name,
                         std::vector<Elem> &local_to_pc) {
  auto power = [&](std::size_t x, std::uint64_t k) {
    std::size_t r = 0;
    for (std::uint64_t t = 0; t < k; ++t)
      r = mul(r, x);
    return r;
  };
  std::vector<std::size_t> inv(m, 0);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (mul(a, b) == 0) {
        inv[a] = b;
        break;
      }
  auto comm = [&](std::size_t a, std::size_t b) { return mul(mul(inv[a], inv[b]), mul(a, b)); };

  // Generating set of the whole table group.
  std::vector<std::size_t> gens;
  {
    std::vector<char> in(m, 0);
    in[0] = 1;
    std::vector<std::size_t> cur{0};
    for (std::size_t x = 0; x < m; ++x) {
      if (in[x])
        continue;
      gens.push_back(x);
      std::fill(in.begin(), in.end(), 0);
      cur.assign(1, 0);
      in[0] = 1;
      for (std::size_t h = 0; h < cur.size(); ++h)
        for (std::size_t g : gens) {
          const std::size_t y = mul(cur[h], g);
          if (!in[y]) {
            in[y] = 1;
            cur.push_back(y);
          }
        }
    }
  }

  std::vector<std::vector<char>> levels{std::vector<char>(m, 0)};
  levels[0][0] = 1;
  std::vector<std::size_t> chain;
  std::size_t have = 1;
  while (have < m) {
    const auto &M = levels.back();
    std::size_t pick = m;
    for (std::size_t y = 1; y < m && pick == m; ++y) {
      if (M[y] || !M[power(y, p)])
        continue;
      bool central = true;
      for (std::size_t g : gens)
        if (!M[comm(y, g)]) {
          central = false;
          break;
        }
      if (central)
        pick = y;
    }
    if (pick == m)
      throw GroupError("table is not a p-group");
    std::vector<char> next = M;
    std::size_t yt = 0;
    for (std::uint32_t t = 1; t < p; ++t) {
      yt = mul(yt, pick);
      for (std::size_t z = 0; z < m; ++z)
        if (M[z])
          next[mul(yt, z)] = 1;
    }
    have *= p;
    chain.push_back(pick);
    levels.push_back(std::move(next));
  }

  const std::size_t n = chain.size();
  std::vector<std::size_t> g(n);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = chain[n - 1 - i];
  // g_i generates levels[n - i] modulo levels[n - i - 1].
  auto decompose = [&](std::size_t x) {
    Exponents e(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto &below = levels[n - i - 1];
      std::size_t gi_a = 0;  // g_i^a
      for (std::uint32_t a = 0; a < p; ++a) {
        const std::size_t t = mul(inv[gi_a], x);
        if (below[t]) {
          e[i] = static_cast<std::uint8_t>(a);
          x = t;
          break;
        }
        gi_a = mul(gi_a, g[i]);
      }
    }
    return e;
  };

  Presentation pres;
  pres.name = name;
  pres.p = p;
  pres.ngens = n;
  for (std::size_t i = 0; i < n; ++i)
    pres.power.push_back(decompose(power(g[i], p)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Exponents w = decompose(comm(g[j], g[i]));
      if (std::any_of(w.begin(), w.end(), [](std::uint8_t x) { return x != 0; }))
        pres.comm.push_back({j, i, std::move(w)});
    }
  ValidateOptions opts;
  opts.max_order = std::max<std::uint64_t>(opts.max_order, m);
  PcGroup G = PcGroup::validate(std::move(pres), opts);
  local_to_pc.assign(m, 0);
  for (std::size_t x = 0; x < m; ++x)
    local_to_pc[x] = G.index(decompose(x));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (local_to_pc[mul(a, b)] != G.mul(local_to_pc[a], local_to_pc[b]))
        throw GroupError("re-presentation certificate failed");
  return G;
}

}  // namespace

SubgroupPresentation as_group(const PcGroup &G, const Subgroup &H, const std::string &name) {
  std::vector<std::size_t> pos(G.order(), 0);
  for (std::size_t k = 0; k < H.elements.size(); ++k)
    pos[H.elements[k]] = k;
  auto mul = [&](std::size_t a, std::size_t b) {
    return pos[G.mul(H.elements[a], H.elements[b])];
  };
  std::vector<Elem> local_to_pc;
  PcGroup sub = build_from_table(G.p(), H.order(), mul, name.empty() ? G.name() + "_sub" : name,
                                 local_to_pc);
  std::vector<Elem> to_parent(H.order());
  for (std::size_t k = 0; k < H.order(); ++k)
    to_parent[local_to_pc[k]] = H.elements[k];
  return {std::move(sub), std::move(to_parent)};
}

Quotient quotient(const PcGroup &G, const Subgroup &N, const std::string &name) {
  if (!is_normal(G, N))
    throw GroupError("not normal");
  const std::uint32_t m = G.order();
  std::vector<std::size_t> coset(m, m);
  std::vector<Elem> reps;
  for (Elem x = 0; x < m; ++x) {
    if (coset[x] != m)
      continue;
    for (Elem y : N.elements)
      coset[G.mul(x, y)] = reps.size();
    reps.push_back(x);
  }
  auto mul = [&](std::size_t a, std::size_t b) { return coset[G.mul(reps[a], reps[b])]; };
  std::vector<Elem> local_to_pc;
  Quotient q{build_from_table(G.p(), reps.size(), mul,
                              name.empty() ? G.name() + "_quot" : name, local_to_pc),
             {}, {}};
  q.projection.resize(m);
  for (Elem x = 0; x < m; ++x)
    q.projection[x] = local_to_pc[coset[x]];
  for (std::size_t i = 0; i < G.ngens(); ++i)
    q.generator_images.push_back(q.group.exponents(q.projection[G.generator(i)]));
  // Epimorphism property on generator pairs.
  for (std::size_t i = 0; i < G.ngens(); ++i)
    for (std::size_t j = 0; j < G.ngens(); ++j) {
      const Elem a = G.generator(i), b = G.generator(j);
      if (q.projection[G.mul(a, b)] != q.group.mul(q.projection[a], q.projection[b]))
        throw GroupError("quotient map is not a homomorphism");
    }
  return q;
}

// ---------------------------------------------------------------- enumeration

std::vector<Subgroup> subgroup_enumerate(const PcGroup &G, const Subgroup &H,
                                         std::uint64_t max_order) {
  if (H.order() > max_order)
    throw CapExceeded("subgroup enumeration: order " + std::to_string(H.order()) +
                      " exceeds the cap of " + std::to_string(max_order));
  const std::uint32_t p = G.p();
  std::vector<Subgroup> all{trivial_subgroup()};
  std::vector<Subgroup> layer{trivial_subgroup()};
  while (!layer.empty()) {
    std::map<std::vector<Elem>, Subgroup> next;
    for (const Subgroup &K : layer) {
      const Subgroup nk = normalizer(G, K, H);
      std::vector<char> covered = mask_of(G, K);
      for (Elem x : nk.elements) {
        if (covered[x] || !K.contains(G.pow(x, p)))
          continue;
        // x normalises K and x^p lies in K, so <K, x> is the union of the
        // cosets x^t K.
        std::vector<Elem> elems;
        elems.reserve(K.order() * p);
        Elem xt = PcGroup::identity;
        for (std::uint32_t t = 0; t < p; ++t) {
          for (Elem k : K.elements)
            elems.push_back(G.mul(xt, k));
          xt = G.mul(xt, x);
        }
        std::sort(elems.begin(), elems.end());
        for (Elem y : elems)
          covered[y] = 1;
        if (next.count(elems))
          continue;
        Subgroup L;
        L.gens = K.gens;
        L.gens.push_back(x);
        L.elements = elems;
        next.emplace(std::move(elems), std::move(L));
      }
    }
    layer.clear();
    for (auto &kv : next)
      layer.push_back(std::move(kv.second));
    all.insert(all.end(), layer.begin(), layer.end());
    if (all.size() > 1000000)
      throw CapExceeded("subgroup enumeration: more than 10^6 subgroups");
  }
  return all;
}

std::vector<Subgroup> subgroup_enumerate(const PcGroup &G, std::uint64_t max_order) {
  return subgroup_enumerate(G, whole_group(G), max_order);
}

std::size_t subgroup_rank(const PcGroup &G, const Subgroup &H, std::uint64_t max_order) {
  std::size_t r = 0;
  for (const Subgroup &K : subgroup_enumerate(G, H, max_order))
    r = std::max(r, min_generators(G, K));
  return r;
}

StructureInvariants structure_invariants(const PcGroup &G, std::uint64_t max_order) {
  StructureInvariants s;
  const Subgroup whole = whole_group(G);
  const StandardSeries series = standard_series(G, whole);
  s.d = log_p(G.order() / series.frattini.order(), G.p());
  s.nilpotency_class = series.lower_central.size() - 1;
  s.coclass = G.ngens() - s.nilpotency_class;
  for (Elem x = 0; x < G.order(); ++x)
    s.exponent = std::max(s.exponent, element_order(G, x));
  try {
    s.rank = subgroup_rank(G, whole, max_order);
  } catch (const CapExceeded &) {
    s.rank.reset();
  }
  return s;
}

ElementaryAbelianInfo maximal_elem_ab(const PcGroup &G, const Subgroup &H) {
  const std::uint32_t p = G.p();
  std::vector<Elem> order_p;
  for (Elem x : H.elements)
    if (x != PcGroup::identity && G.pow(x, p) == PcGroup::identity)
      order_p.push_back(x);
  ElementaryAbelianInfo info;
  std::vector<Subgroup> layer{trivial_subgroup()};
  std::size_t rank = 0;
  while (!layer.empty()) {
    std::map<std::vector<Elem>, Subgroup> next;
    for (const Subgroup &E : layer) {
      bool extended = false;
      std::vector<char> covered = mask_of(G, E);
      for (Elem x : order_p) {
        if (covered[x])
          continue;
        bool commutes = true;
        for (Elem e : E.gens)
          if (G.mul(x, e) != G.mul(e, x)) {
            commutes = false;
            break;
          }
        if (!commutes)
          continue;
        extended = true;
        std::vector<Elem> elems;
        Elem xt = PcGroup::identity;
        for (std::uint32_t t = 0; t < p; ++t) {
          for (Elem e : E.elements)
            elems.push_back(G.mul(xt, e));
          xt = G.mul(xt, x);
        }
        std::sort(elems.begin(), elems.end());
        for (Elem y : elems)
          covered[y] = 1;
        if (next.count(elems))
          continue;
        Subgroup L;
        L.gens = E.gens;
        L.gens.push_back(x);
        L.elements = elems;
        next.emplace(std::move(elems), std::move(L));
      }
      if (!extended)
        info.maximal.push_back(E);
    }
    if (!next.empty())
      ++rank;
    layer.clear();
    for (auto &kv : next)
      layer.push_back(std::move(kv.second));
    if (layer.size() > 200000)
      throw CapExceeded("elementary abelian enumeration: too many subgroups");
  }
  info.a = rank;
  std::sort(info.maximal.begin(), info.maximal.end(), [](const Subgroup &a, const Subgroup &b) {
    return a.order() != b.order() ? a.order() < b.order() : a.elements < b.elements;
  });
  return info;
}

ElementaryAbelianInfo maximal_elem_ab(const PcGroup &G) {
  return maximal_elem_ab(G, whole_group(G));
}

}  // namespace pcoh
