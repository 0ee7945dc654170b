#include "pcoh/cohomology.hpp"

#include <algorithm>
#include <random>

namespace pcoh {

namespace {

// ---------------------------------------------------------------- bar complex

using Sparse = std::vector<std::pair<std::uint32_t, std::uint32_t>>;  // (param, coeff)

// Dense scratch with a touched list, for summing sparse vectors.  An index
// can be listed twice if its value cancels and is hit again; take() skips
// the repeat because the first visit already zeroed it.
class Scratch {
public:
  Scratch(std::uint32_t p, std::size_t n) : p_(p), val_(n, 0) {}
  void add(const Sparse &v, std::uint32_t c) {
    for (auto [i, a] : v) {
      if (val_[i] == 0)
        touched_.push_back(i);
      val_[i] = (val_[i] + c * a) % p_;
    }
  }
  Sparse take() {
    std::sort(touched_.begin(), touched_.end());
    Sparse out;
    for (auto i : touched_) {
      if (val_[i])
        out.emplace_back(i, val_[i]);
      val_[i] = 0;
    }
    touched_.clear();
    return out;
  }

private:
  std::uint32_t p_;
  std::vector<std::uint32_t> val_;
  std::vector<std::uint32_t> touched_;
};

// Normalised n-cocycles parametrised by their values f(x_1..x_{n-1}, s) with
// s running over the pc generators.  Every other value is a linear
// combination of parameters obtained from the cocycle identity along a
// spanning tree of the right Cayley graph.  The cocycle condition then only
// needs to be imposed at (x_1..x_{n-1}, k, s) for s a generator: if
// phi = df vanishes whenever its last argument is a generator, then
// d(phi) = 0 forces phi(.., ls) = phi(.., l), hence phi = 0.
class BarSystem {
public:
  BarSystem(const PcGroup &G, std::size_t n, std::size_t max_params)
      : G_(G), n_(n), p_(G.p()), m_(G.order()) {
    for (std::size_t i = 0; i < G.ngens(); ++i)
      gens_.push_back(G.generator(i));
    tuples_ = 1;
    for (std::size_t i = 0; i + 1 < n; ++i)
      tuples_ *= (m_ - 1);
    params_ = tuples_ * gens_.size();
    if (params_ > max_params)
      throw CapExceeded("bar complex: " + std::to_string(params_) + " parameters in degree " +
                        std::to_string(n) + " exceeds the cap of " + std::to_string(max_params));
    build_tree();
    build_expressions();
  }

  std::size_t params() const { return params_; }
  std::size_t tuples() const { return tuples_; }
  const std::vector<Elem> &gens() const { return gens_; }

  /// Expression of f(z) for z of length n, or nullptr when some z_j = 1.
  const Sparse *value(const Elem *z) const {
    std::size_t idx = 0;
    for (std::size_t j = 0; j + 1 < n_; ++j) {
      if (z[j] == PcGroup::identity)
        return nullptr;
      idx = idx * (m_ - 1) + (z[j] - 1);
    }
    if (z[n_ - 1] == PcGroup::identity)
      return nullptr;
    return &expr_[idx * m_ + z[n_ - 1]];
  }

  /// Streams every non-tree cocycle condition into acc.
  void constraints(EchelonAccumulator &acc) const {
    Scratch scratch(p_, params_);
    std::vector<Elem> y(n_ + 1);
    std::vector<Elem> xbar(n_ - 1, 1);
    std::vector<FpVector> batch;
    for (std::size_t t = 0; t < tuples_; ++t) {
      tuple_of(t, xbar);
      std::copy(xbar.begin(), xbar.end(), y.begin());
      for (Elem k = 1; k < m_; ++k)
        for (std::size_t si = 0; si < gens_.size(); ++si) {
          if (tree_edge(k, si))
            continue;
          y[n_ - 1] = k;
          y[n_] = gens_[si];
          coboundary(y, scratch, std::size_t(-1));
          Sparse row = scratch.take();
          if (row.empty())
            continue;
          FpVector v(p_, params_);
          for (auto [i, c] : row)
            v.set(i, c);
          batch.push_back(std::move(v));
          if (batch.size() == 256) {
            acc.add_batch(std::move(batch));
            batch.clear();
            if (acc.full())
              return;
          }
        }
    }
    acc.add_batch(std::move(batch));
  }

  /// Full table of the cocycle with the given parameter values (n = 2).
  Cocycle2 table(const FpVector &params) const {
    Cocycle2 f(p_, m_);
    Elem z[2];
    for (Elem g = 1; g < m_; ++g)
      for (Elem h = 1; h < m_; ++h) {
        z[0] = g;
        z[1] = h;
        std::uint32_t s = 0;
        for (auto [i, c] : *value(z))
          s += c * params.get(i);
        f.set(g, h, s % p_);
      }
    return f;
  }

  /// Parameter index of (xbar-tuple t, generator si).
  std::size_t param(std::size_t t, std::size_t si) const { return t * gens_.size() + si; }

private:
  const PcGroup &G_;
  std::size_t n_;
  std::uint32_t p_;
  std::uint32_t m_;
  std::vector<Elem> gens_;
  std::size_t tuples_ = 1;
  std::size_t params_ = 0;
  std::vector<Elem> order_;        // BFS order of non-generator, non-identity elements
  std::vector<Elem> parent_;       // k = parent * gens_[via]
  std::vector<std::size_t> via_;
  std::vector<Sparse> expr_;

  void tuple_of(std::size_t t, std::vector<Elem> &xbar) const {
    for (std::size_t j = n_ - 1; j-- > 0;) {
      xbar[j] = static_cast<Elem>(t % (m_ - 1) + 1);
      t /= (m_ - 1);
    }
  }

  bool tree_edge(Elem k, std::size_t si) const {
    const Elem ks = G_.mul(k, gens_[si]);
    return parent_[ks] == k && via_[ks] == si;
  }

  void build_tree() {
    parent_.assign(m_, m_);
    via_.assign(m_, 0);
    std::vector<char> seen(m_, 0);
    seen[PcGroup::identity] = 1;
    std::vector<Elem> queue;
    for (Elem s : gens_)
      if (!seen[s]) {
        seen[s] = 1;
        queue.push_back(s);
      }
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (std::size_t si = 0; si < gens_.size(); ++si) {
        const Elem k = G_.mul(queue[head], gens_[si]);
        if (seen[k])
          continue;
        seen[k] = 1;
        parent_[k] = queue[head];
        via_[k] = si;
        order_.push_back(k);
        queue.push_back(k);
      }
  }

  // Adds sign * sum_i (-1)^i f(face_i(y)) to scratch, skipping face `skip`.
  void coboundary(const std::vector<Elem> &y, Scratch &scratch, std::size_t skip,
                  std::uint32_t sign = 1) const {
    std::vector<Elem> z(n_);
    for (std::size_t i = 0; i <= n_ + 1; ++i) {
      if (i == skip)
        continue;
      if (i == 0) {
        std::copy(y.begin() + 1, y.end(), z.begin());
      } else if (i == n_ + 1) {
        std::copy(y.begin(), y.end() - 1, z.begin());
      } else {
        std::size_t w = 0;
        for (std::size_t j = 0; j <= n_; ++j) {
          if (j == i - 1) {
            z[w++] = G_.mul(y[j], y[j + 1]);
            ++j;
          } else {
            z[w++] = y[j];
          }
        }
      }
      const Sparse *v = value(z.data());
      if (!v)
        continue;
      const std::uint32_t c = (i % 2 == 0) ? sign : (p_ - sign) % p_;
      scratch.add(*v, c);
    }
  }

  void build_expressions() {
    expr_.assign(tuples_ * m_, Sparse{});
    Scratch scratch(p_, params_);
    std::vector<Elem> xbar(n_ - 1, 1), y(n_ + 1);
    // Target face n has coefficient (-1)^n; moving it across gives
    // f(xbar, k's) = (-1)^{n+1} * sum_{i != n} (-1)^i f(face_i).
    const std::uint32_t sign = (n_ % 2 == 1) ? 1 : p_ - 1;
    for (std::size_t t = 0; t < tuples_; ++t)
      for (std::size_t si = 0; si < gens_.size(); ++si)
        expr_[t * m_ + gens_[si]] = Sparse{{static_cast<std::uint32_t>(param(t, si)), 1}};
    for (std::size_t t = 0; t < tuples_; ++t) {
      tuple_of(t, xbar);
      std::copy(xbar.begin(), xbar.end(), y.begin());
      for (Elem k : order_) {
        y[n_ - 1] = parent_[k];
        y[n_] = gens_[via_[k]];
        coboundary(y, scratch, n_, sign);
        expr_[t * m_ + k] = scratch.take();
      }
    }
  }
};

}  // namespace

std::vector<std::size_t> bar_dims(const PcGroup &G, std::size_t kmax, const BarOptions &opts) {
  if (kmax > 3)
    throw GroupError("bar complex dimensions are only computed through degree 3");
  std::vector<std::size_t> dims{1};
  std::size_t z_prev = 1;  // dim Z^0
  std::size_t c_prev = 1;  // dim C^0 (normalised)
  const std::size_t m = G.order();
  for (std::size_t n = 1; n <= kmax; ++n) {
    std::size_t z = 0;
    if (m > 1) {
      BarSystem sys(G, n, opts.max_params);
      EchelonAccumulator acc(G.p(), sys.params());
      acc.set_fully_reduced();
      sys.constraints(acc);
      z = sys.params() - acc.rank();
    }
    const std::size_t b = c_prev - z_prev;
    dims.push_back(z - b);
    z_prev = z;
    c_prev = m > 1 ? c_prev * (m - 1) : 0;
  }
  return dims;
}

// ---------------------------------------------------------------- cocycles

bool is_cocycle(const PcGroup &G, const Cocycle2 &f, std::uint32_t exhaustive_limit,
                std::size_t samples) {
  const std::uint32_t m = G.order(), p = G.p();
  if (f.m != m || f.p != p)
    return false;
  for (Elem g = 0; g < m; ++g)
    if (f(g, 0) || f(0, g))
      return false;
  auto ok = [&](Elem g, Elem h, Elem k) {
    return (f(g, h) + f(G.mul(g, h), k)) % p == (f(h, k) + f(g, G.mul(h, k))) % p;
  };
  if (m <= exhaustive_limit) {
    for (Elem g = 1; g < m; ++g)
      for (Elem h = 1; h < m; ++h)
        for (Elem k = 1; k < m; ++k)
          if (!ok(g, h, k))
            return false;
    return true;
  }
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Elem> pick(0, m - 1);
  for (std::size_t t = 0; t < samples; ++t)
    if (!ok(pick(rng), pick(rng), pick(rng)))
      return false;
  return true;
}

Cocycle2 cup11(const PcGroup &G, const Cochain1 &x, const Cochain1 &y) {
  Cocycle2 f(G.p(), G.order());
  for (Elem g = 1; g < G.order(); ++g)
    for (Elem h = 1; h < G.order(); ++h)
      f.set(g, h, std::uint32_t{x[g]} * y[h]);
  return f;
}

Cocycle2 bockstein1(const PcGroup &G, const Cochain1 &x) {
  const std::uint32_t p = G.p();
  Cocycle2 f(p, G.order());
  for (Elem g = 1; g < G.order(); ++g)
    for (Elem h = 1; h < G.order(); ++h) {
      const int lift = int{x[g]} + int{x[h]} - int{x[G.mul(g, h)]};
      f.set(g, h, static_cast<std::uint32_t>(lift / static_cast<int>(p)));
    }
  return f;
}

Cocycle2 restrict2(const Cocycle2 &f, const SubgroupPresentation &A) {
  const std::uint32_t m = A.group.order();
  Cocycle2 r(f.p, m);
  for (Elem a = 1; a < m; ++a)
    for (Elem b = 1; b < m; ++b)
      r.set(a, b, f(A.to_parent[a], A.to_parent[b]));
  return r;
}

Cochain1 restrict1(const Cochain1 &x, const SubgroupPresentation &A) {
  Cochain1 r(A.group.order(), 0);
  for (Elem a = 0; a < A.group.order(); ++a)
    r[a] = x[A.to_parent[a]];
  return r;
}

// ---------------------------------------------------------------- H^1, H^2

FpVector H2Presentation::params_of(const Cocycle2 &f) const {
  if (f.m != m_ || f.p != p_)
    throw GroupError("cochain belongs to a different group");
  FpVector v(p_, (m_ - 1) * gens_.size());
  for (Elem x = 1; x < m_; ++x)
    for (std::size_t si = 0; si < gens_.size(); ++si)
      v.set((x - 1) * gens_.size() + si, f(x, gens_[si]));
  return v;
}

FpVector H2Presentation::class_of(const Cocycle2 &f) const {
  FpVector out(p_, h2_.size());
  if (m_ == 1)
    return out;
  const auto c = coords_->coordinates(params_of(f));
  if (!c)
    throw GroupError("not a cocycle");
  for (std::size_t k = 0; k < h2_.size(); ++k)
    out.set(k, c->get(b2_span_ + k));
  return out;
}

H2Presentation h2_bar_basis(const PcGroup &G, std::uint32_t max_order) {
  if (G.order() > max_order)
    throw CapExceeded("H^2 from the bar complex: order " + std::to_string(G.order()) +
                      " exceeds the cap of " + std::to_string(max_order));
  const std::uint32_t p = G.p(), m = G.order();
  H2Presentation H;
  H.p_ = p;
  H.m_ = m;
  if (m == 1)
    return H;
  const BarOptions big{std::size_t{1} << 30};

  // Degree 1: homomorphisms, parametrised by their values on generators.
  {
    BarSystem sys(G, 1, big.max_params);
    EchelonAccumulator acc(p, sys.params());
    sys.constraints(acc);
    Elem z[1];
    for (const FpVector &v : acc.null_space()) {
      Cochain1 x(m, 0);
      for (Elem g = 1; g < m; ++g) {
        z[0] = g;
        std::uint32_t s = 0;
        for (auto [i, c] : *sys.value(z))
          s += c * v.get(i);
        x[g] = static_cast<std::uint8_t>(s % p);
      }
      H.h1_.push_back(std::move(x));
    }
  }

  BarSystem sys(G, 2, big.max_params);
  H.gens_ = sys.gens();
  EchelonAccumulator acc(p, sys.params());
  sys.constraints(acc);
  const std::vector<FpVector> z2 = acc.null_space();
  H.z2_dim_ = z2.size();

  // Coboundaries of the point cochains e_y, in parameter coordinates.
  EchelonAccumulator b2(p, sys.params());
  for (Elem y = 1; y < m; ++y) {
    Cochain1 e(m, 0);
    e[y] = 1;
    FpVector v(p, sys.params());
    for (Elem x = 1; x < m; ++x)
      for (std::size_t si = 0; si < H.gens_.size(); ++si) {
        const Elem s = H.gens_[si];
        const std::uint32_t val = (e[s] + p - e[G.mul(x, s)] + e[x]) % p;
        v.set(sys.param(x - 1, si), val);
      }
    if (b2.add(v))
      H.spanning_.push_back(v);
  }
  H.b2_dim_ = b2.rank();
  H.b2_span_ = H.spanning_.size();
  for (const FpVector &v : z2)
    if (b2.add(v)) {
      H.spanning_.push_back(v);
      H.h2_.push_back(sys.table(v));
    }
  H.coords_ = std::make_shared<SpanCoordinates>(p, sys.params(), H.spanning_);
  return H;
}

BocksteinSubspace bockstein_subspace(const PcGroup &A) {
  if (!is_elementary_abelian(A, whole_group(A)))
    throw GroupError("bockstein_subspace: group is not elementary abelian");
  BocksteinSubspace B{h2_bar_basis(A, 1u << 30), {}, 0};
  EchelonAccumulator acc(A.p(), B.h2.h2_dim());
  for (const Cochain1 &x : B.h2.h1()) {
    FpVector c = B.h2.class_of(bockstein1(A, x));
    acc.add(c);
    B.classes.push_back(std::move(c));
  }
  B.dim = acc.rank();
  return B;
}

OmegaReport omega_extendible(const PcGroup &G, std::uint32_t max_order) {
  OmegaReport R;
  if (G.order() == 1)
    return R;
  const H2Presentation HG = h2_bar_basis(G, max_order);
  const ElementaryAbelianInfo info = maximal_elem_ab(G);
  for (const Subgroup &A : info.maximal) {
    OmegaAReport r;
    r.A = A;
    r.rank = log_p(A.order(), G.p());
    const SubgroupPresentation SA = as_group(G, A, "A");
    const BocksteinSubspace B = bockstein_subspace(SA.group);
    r.b_dim = B.dim;
    EchelonAccumulator res(G.p(), B.h2.h2_dim());
    for (const Cocycle2 &z : HG.h2())
      res.add(B.h2.class_of(restrict2(z, SA)));
    r.res_dim = res.rank();
    r.contained = std::all_of(B.classes.begin(), B.classes.end(),
                              [&](const FpVector &c) { return res.contains(c); });
    R.per_A.push_back(std::move(r));
  }
  R.verdict = R.per_A.front().contained;
  for (const auto &r : R.per_A)
    R.all_agree = R.all_agree && r.contained == R.verdict;
  return R;
}

namespace {

struct Degree2Relations {
  std::size_t source_dim = 0;
  std::size_t kernel_dim = 0;
  std::size_t square_kernel_dim = 0;
};

Degree2Relations degree2_relations(const PcGroup &G, const H2Presentation &H) {
  const std::uint32_t p = G.p();
  const auto &x = H.h1();
  const std::size_t d = x.size();
  Degree2Relations out;
  // Images of the monomials; the kernel of the map is the relation space.
  std::vector<FpVector> images;
  std::vector<FpVector> squares;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = (p == 2 ? i : i + 1); j < d; ++j) {
      images.push_back(H.class_of(cup11(G, x[i], x[j])));
      if (i == j)
        squares.push_back(images.back());
    }
  out.source_dim = images.size();
  EchelonAccumulator acc(p, H.h2_dim());
  for (const auto &v : images)
    acc.add(v);
  out.kernel_dim = out.source_dim - acc.rank();
  if (p == 2) {
    // Frobenius is additive, so the squares that vanish form the kernel of
    // the map restricted to the span of x_i^2.
    EchelonAccumulator sq(p, H.h2_dim());
    for (const auto &v : squares)
      sq.add(v);
    out.square_kernel_dim = squares.size() - sq.rank();
  }
  return out;
}

}  // namespace

RelationReport powerful_cohom(const PcGroup &G, std::uint32_t max_order) {
  RelationReport R;
  const H2Presentation H = h2_bar_basis(G, max_order);
  const auto rel = degree2_relations(G, H);
  R.h1 = H.h1_dim();
  R.h2 = H.h2_dim();
  R.source_dim = rel.source_dim;
  R.kernel_dim = rel.kernel_dim;
  R.square_kernel_dim = rel.square_kernel_dim;
  R.verdict = G.p() == 2 ? rel.kernel_dim == rel.square_kernel_dim : rel.kernel_dim == 0;
  return R;
}

namespace {

// Degree-2 relation condition plus surjectivity of res H^2(G) onto H^2(A)
// modulo products of distinct degree-1 classes.
Param2Report param2_impl(const PcGroup &G, std::uint32_t max_order) {
  Param2Report R;
  if (G.order() == 1) {
    R.verdict = R.no_relations = true;
    return R;
  }
  const H2Presentation HG = h2_bar_basis(G, max_order);
  R.no_relations = G.p() == 2 ? powerful_cohom(G, max_order).verdict
                              : degree2_relations(G, HG).kernel_dim == 0;
  bool all = true;
  for (const Subgroup &A : maximal_elem_ab(G).maximal) {
    const SubgroupPresentation SA = as_group(G, A, "A");
    const H2Presentation HA = h2_bar_basis(SA.group, 1u << 30);
    EchelonAccumulator acc(G.p(), HA.h2_dim());
    for (const Cocycle2 &z : HG.h2())
      acc.add(HA.class_of(restrict2(z, SA)));
    const auto &y = HA.h1();
    for (std::size_t i = 0; i < y.size(); ++i)
      for (std::size_t j = i + 1; j < y.size(); ++j)
        acc.add(HA.class_of(cup11(SA.group, y[i], y[j])));
    const bool surj = acc.rank() == HA.h2_dim();
    R.surjective_per_A.push_back(surj);
    all = all && surj;
  }
  R.verdict = R.no_relations && all;
  return R;
}

}  // namespace

Param2Report param2_check(const PcGroup &G, std::uint32_t max_order) {
  if (G.p() == 2)
    throw GroupError("param2_check is defined for odd p only");
  return param2_impl(G, max_order);
}

Param2Report param2_analogue(const PcGroup &G, std::uint32_t max_order) {
  return param2_impl(G, max_order);
}

// ---------------------------------------------------------------- minres

GradedDims minres_dims(const PcGroup &G, std::size_t kmax, const MinresOptions &opts) {
  GradedDims out;
  out.dims.push_back(1);
  const std::uint32_t p = G.p(), m = G.order();
  if (m == 1) {
    out.dims.resize(kmax + 1, 0);
    return out;
  }
  std::vector<Elem> gens;
  for (std::size_t i = 0; i < G.ngens(); ++i)
    gens.push_back(G.generator(i));

  // g . v on F_p G^r, coordinates (t, h) at t * m + h.
  auto act = [&](Elem g, const FpVector &v, std::size_t r) {
    FpVector w(p, r * m);
    for (std::size_t t = 0; t < r; ++t)
      for (Elem h = 0; h < m; ++h)
        if (const auto c = v.get(t * m + h))
          w.set(t * m + G.mul(g, h), c);
    return w;
  };

  // Kernel of the augmentation: g - 1.
  std::size_t r_prev = 1;
  std::vector<FpVector> K;
  for (Elem g = 1; g < m; ++g) {
    FpVector v(p, m);
    v.set(g, 1);
    v.set(0, p - 1);
    K.push_back(std::move(v));
  }

  for (std::size_t i = 1; i <= kmax; ++i) {
    // Minimal generators of K as a module: a basis of K / JK, where the
    // augmentation ideal J is generated by s - 1 for the pc generators s.
    const std::size_t dim = r_prev * m;
    EchelonAccumulator acc(p, dim);
    std::vector<FpVector> jk;
    for (const FpVector &k : K)
      for (Elem s : gens) {
        FpVector w = act(s, k, r_prev);
        w.axpy(p - 1, k);
        jk.push_back(std::move(w));
      }
    acc.add_batch(std::move(jk));
    std::vector<FpVector> images;
    for (const FpVector &k : K)
      if (acc.add(k))
        images.push_back(k);
    const std::size_t r = images.size();
    out.dims.push_back(r);
    if (i == kmax)
      break;
    if (r == 0) {
      out.dims.resize(kmax + 1, 0);
      break;
    }
    // d_i : F_p G^r -> F_p G^{r_prev}, e_(t,g) -> g . images[t].  Its kernel
    // is the next module to cover; the matrix has the images as columns.
    const std::uint64_t entries = std::uint64_t{r} * m * dim;
    if (entries > opts.max_matrix_entries) {
      out.truncated = true;
      out.note = "resolution truncated after degree " + std::to_string(i) + ": differential of " +
                 std::to_string(entries) + " entries exceeds the cap";
      break;
    }
    FpMatrix d(p, dim, r * m);
    for (std::size_t t = 0; t < r; ++t)
      for (Elem g = 0; g < m; ++g) {
        const FpVector col = act(g, images[t], r_prev);
        for (auto c = col.first_nonzero(); c; c = col.first_nonzero(*c + 1))
          d.set(*c, t * m + g, col.get(*c));
      }
    K = kernel(d);
    r_prev = r;
  }
  return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n)
    return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i)
    r = r * (n - k + i) / i;
  return r;
}

bool abelian_shape(const GradedDims &dims, std::size_t d) {
  for (std::size_t i = 0; i < dims.dims.size(); ++i)
    if (dims.dims[i] != (i == 0 ? 1 : binomial(d + i - 1, i)))
      return false;
  return true;
}

bool abelian_shape_check(const PcGroup &G, std::size_t kmax, const MinresOptions &opts) {
  const GradedDims dims = minres_dims(G, kmax, opts);
  if (dims.truncated || dims.dims.size() < kmax + 1)
    return false;
  return abelian_shape(dims, min_generators(G, whole_group(G)));
}

}  // namespace pcoh
