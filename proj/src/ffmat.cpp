#include "pcoh/ffmat.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <utility>

namespace pcoh {

namespace {

constexpr std::size_t kParallelWork = std::size_t{1} << 15;

std::size_t storage_words(std::uint32_t p, std::size_t n) {
  return p == 2 ? (n + 63) / 64 : (n + 7) / 8;
}

// x mod p for x < p*p, via a 16-bit reciprocal.  Exact for p <= kMaxPrime.
struct Reducer {
  std::uint32_t p;
  std::uint32_t m;
  explicit Reducer(std::uint32_t prime) : p(prime), m((65536u + prime - 1) / prime) {}
  std::uint32_t operator()(std::uint32_t x) const { return x - p * ((x * m) >> 16); }
};

}  // namespace

bool is_supported_prime(std::uint32_t p) {
  switch (p) {
  case 2: case 3: case 5: case 7: case 11: case 13:
    return true;
  default:
    return false;
  }
}

std::uint32_t fp_inv(std::uint32_t a, std::uint32_t p) {
  a %= p;
  if (a == 0)
    throw FfError("inverse of zero");
  std::uint32_t r = 1;
  for (std::uint32_t e = p - 2, b = a; e; e >>= 1, b = b * b % p)
    if (e & 1)
      r = r * b % p;
  return r;
}

// ---------------------------------------------------------------- FpVector

FpVector::FpVector(std::uint32_t p, std::size_t n) : p_(p), n_(n), data_(storage_words(p, n), 0) {
  if (!is_supported_prime(p))
    throw FfError("unsupported prime " + std::to_string(p));
}

FpVector::FpVector(std::uint32_t p, std::initializer_list<int> values)
    : FpVector(from_values(p, std::span<const int>(values.begin(), values.size()))) {}

FpVector FpVector::from_values(std::uint32_t p, std::span<const int> values) {
  FpVector v(p, values.size());
  const int ip = static_cast<int>(p);
  for (std::size_t i = 0; i < values.size(); ++i)
    v.set(i, static_cast<std::uint32_t>(((values[i] % ip) + ip) % ip));
  return v;
}

void FpVector::set(std::size_t i, std::uint32_t v) {
  if (p_ == 2) {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (v & 1u)
      data_[i >> 6] |= bit;
    else
      data_[i >> 6] &= ~bit;
  } else {
    bytes()[i] = static_cast<std::uint8_t>(v % p_);
  }
}

bool FpVector::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](std::uint64_t w) { return w == 0; });
}

std::optional<std::size_t> FpVector::first_nonzero(std::size_t from) const {
  if (from >= n_)
    return std::nullopt;
  if (p_ == 2) {
    std::size_t w = from >> 6;
    std::uint64_t word = data_[w] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (word) {
        const std::size_t i = (w << 6) + static_cast<std::size_t>(std::countr_zero(word));
        return i < n_ ? std::optional<std::size_t>(i) : std::nullopt;
      }
      if (++w == data_.size())
        return std::nullopt;
      word = data_[w];
    }
  }
  const std::uint8_t *b = bytes();
  std::size_t i = from;
  for (; i < n_ && (i & 7); ++i)
    if (b[i])
      return i;
  for (std::size_t w = i >> 3; w < data_.size(); ++w) {
    if (data_[w] == 0)
      continue;
    for (std::size_t j = std::max(i, w << 3); j < std::min(n_, (w + 1) << 3); ++j)
      if (b[j])
        return j;
  }
  return std::nullopt;
}

void FpVector::axpy(std::uint32_t c, const FpVector &x, std::size_t from) {
  c %= p_;
  if (c == 0)
    return;
  if (p_ == 2) {
    std::uint64_t *dst = data_.data();
    const std::uint64_t *src = x.data_.data();
    for (std::size_t w = from >> 6, e = data_.size(); w < e; ++w)
      dst[w] ^= src[w];
    return;
  }
  const Reducer red(p_);
  std::uint8_t *dst = bytes();
  const std::uint8_t *src = x.bytes();
  for (std::size_t i = from; i < n_; ++i)
    dst[i] = static_cast<std::uint8_t>(red(dst[i] + c * src[i]));
}

void FpVector::scale(std::uint32_t c) {
  c %= p_;
  if (c == 1)
    return;
  if (p_ == 2) {
    if (c == 0)
      std::fill(data_.begin(), data_.end(), 0);
    return;
  }
  const Reducer red(p_);
  std::uint8_t *b = bytes();
  for (std::size_t i = 0; i < n_; ++i)
    b[i] = static_cast<std::uint8_t>(red(c * b[i]));
}

std::vector<int> FpVector::to_values() const {
  std::vector<int> out(n_);
  for (std::size_t i = 0; i < n_; ++i)
    out[i] = static_cast<int>(get(i));
  return out;
}

bool FpVector::operator==(const FpVector &o) const {
  return p_ == o.p_ && n_ == o.n_ && data_ == o.data_;
}

// ---------------------------------------------------------------- FpMatrix

FpMatrix::FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols)
    : p_(p), cols_(cols), rows_(rows, FpVector(p, cols)) {
  if (!is_supported_prime(p))
    throw FfError("unsupported prime " + std::to_string(p));
}

FpMatrix::FpMatrix(std::uint32_t p, std::initializer_list<std::initializer_list<int>> rows)
    : p_(p), cols_(rows.size() ? rows.begin()->size() : 0) {
  for (const auto &r : rows) {
    if (r.size() != cols_)
      throw FfError("ragged matrix literal");
    rows_.emplace_back(p, r);
  }
}

FpMatrix FpMatrix::from_rows(std::uint32_t p, std::size_t cols, std::vector<FpVector> rows) {
  FpMatrix m(p, 0, cols);
  for (const auto &r : rows)
    if (r.size() != cols || r.p() != p)
      throw FfError("row has wrong shape");
  m.rows_ = std::move(rows);
  return m;
}

FpMatrix FpMatrix::identity(std::uint32_t p, std::size_t n) {
  FpMatrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i)
    m.set(i, i, 1);
  return m;
}

FpVector FpMatrix::apply(const FpVector &x) const {
  if (x.size() != cols_)
    throw FfError("dimension mismatch in apply");
  FpVector out(p_, rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    std::uint32_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c)
      acc = (acc + rows_[r].get(c) * x.get(c)) % p_;
    out.set(r, acc);
  }
  return out;
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix t(p_, cols_, rows());
  for (std::size_t r = 0; r < rows(); ++r)
    for (auto c = rows_[r].first_nonzero(); c; c = rows_[r].first_nonzero(*c + 1))
      t.set(*c, r, rows_[r].get(*c));
  return t;
}

// ---------------------------------------------------------------- elimination

RrefResult rref(FpMatrix m) {
  const std::uint32_t p = m.p();
  const std::size_t nr = m.rows(), nc = m.cols();
  auto &rows = m.row_vectors();
  RrefResult res;
  const bool big = nr * nc > kParallelWork;
  for (std::size_t c = 0; c < nc && res.rank < nr; ++c) {
    std::size_t piv = res.rank;
    while (piv < nr && rows[piv].get(c) == 0)
      ++piv;
    if (piv == nr)
      continue;
    std::swap(rows[piv], rows[res.rank]);
    FpVector &prow = rows[res.rank];
    prow.scale(fp_inv(prow.get(c), p));
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(nr);
    const std::ptrdiff_t skip = static_cast<std::ptrdiff_t>(res.rank);
#pragma omp parallel for schedule(static) if (big)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      if (i == skip)
        continue;
      const std::uint32_t v = rows[i].get(c);
      if (v)
        rows[i].axpy(p - v, prow, c);
    }
    res.pivots.push_back(c);
    ++res.rank;
  }
  res.reduced = std::move(m);
  return res;
}

RrefResult rref_serial(FpMatrix m) {
  const std::uint32_t p = m.p();
  const std::size_t nr = m.rows(), nc = m.cols();
  RrefResult res;
  for (std::size_t c = 0; c < nc && res.rank < nr; ++c) {
    std::size_t piv = res.rank;
    while (piv < nr && m.get(piv, c) == 0)
      ++piv;
    if (piv == nr)
      continue;
    for (std::size_t j = 0; j < nc; ++j) {
      const std::uint32_t a = m.get(piv, j), b = m.get(res.rank, j);
      m.set(piv, j, b);
      m.set(res.rank, j, a);
    }
    const std::uint32_t inv = fp_inv(m.get(res.rank, c), p);
    for (std::size_t j = 0; j < nc; ++j)
      m.set(res.rank, j, m.get(res.rank, j) * inv % p);
    for (std::size_t i = 0; i < nr; ++i) {
      if (i == res.rank)
        continue;
      const std::uint32_t f = m.get(i, c);
      if (f == 0)
        continue;
      for (std::size_t j = 0; j < nc; ++j)
        m.set(i, j, (m.get(i, j) + (p - f) * m.get(res.rank, j)) % p);
    }
    res.pivots.push_back(c);
    ++res.rank;
  }
  res.reduced = std::move(m);
  return res;
}

std::size_t rank(const FpMatrix &m) {
  EchelonAccumulator acc(m.p(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    acc.add(m.row(r));
  return acc.rank();
}

std::vector<FpVector> kernel(const FpMatrix &m) {
  const std::uint32_t p = m.p();
  const std::size_t nc = m.cols();
  const RrefResult r = rref(m);
  std::vector<char> is_pivot(nc, 0);
  for (std::size_t c : r.pivots)
    is_pivot[c] = 1;
  std::vector<FpVector> basis;
  for (std::size_t f = 0; f < nc; ++f) {
    if (is_pivot[f])
      continue;
    FpVector x(p, nc);
    x.set(f, 1);
    for (std::size_t k = 0; k < r.rank; ++k) {
      const std::uint32_t v = r.reduced.get(k, f);
      if (v)
        x.set(r.pivots[k], p - v);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<FpVector> solve(const FpMatrix &m, const FpVector &b) {
  if (b.size() != m.rows())
    throw FfError("dimension mismatch in solve");
  const std::uint32_t p = m.p();
  const std::size_t nc = m.cols();
  FpMatrix aug(p, m.rows(), nc + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (auto c = m.row(r).first_nonzero(); c; c = m.row(r).first_nonzero(*c + 1))
      aug.set(r, *c, m.get(r, *c));
    aug.set(r, nc, b.get(r));
  }
  const RrefResult res = rref(std::move(aug));
  if (!res.pivots.empty() && res.pivots.back() == nc)
    return std::nullopt;
  FpVector x(p, nc);
  for (std::size_t k = 0; k < res.rank; ++k)
    x.set(res.pivots[k], res.reduced.get(k, nc));
  return x;
}

// ---------------------------------------------------------------- accumulator

EchelonAccumulator::EchelonAccumulator(std::uint32_t p, std::size_t cols)
    : p_(p), cols_(cols), col_to_row_(cols, -1) {
  if (!is_supported_prime(p))
    throw FfError("unsupported prime " + std::to_string(p));
}

void EchelonAccumulator::reduce(FpVector &v) const {
  for (auto c = v.first_nonzero(); c; c = v.first_nonzero(*c + 1)) {
    const std::int32_t r = col_to_row_[*c];
    if (r < 0)
      continue;
    v.axpy(p_ - v.get(*c), rows_[static_cast<std::size_t>(r)], *c);
  }
}

bool EchelonAccumulator::contains(FpVector v) const {
  reduce(v);
  return v.is_zero();
}

void EchelonAccumulator::insert(FpVector v, std::size_t col) {
  v.scale(fp_inv(v.get(col), p_));
  const auto pos = static_cast<std::size_t>(
      std::lower_bound(pivot_col_.begin(), pivot_col_.end(), col) - pivot_col_.begin());
  if (fully_reduced_)
    for (std::size_t k = 0; k < pos; ++k)
      if (const std::uint32_t c = rows_[k].get(col))
        rows_[k].axpy(p_ - c, v, col);
  rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
  pivot_col_.insert(pivot_col_.begin() + static_cast<std::ptrdiff_t>(pos), col);
  for (std::size_t k = pos; k < pivot_col_.size(); ++k)
    col_to_row_[pivot_col_[k]] = static_cast<std::int32_t>(k);
}

bool EchelonAccumulator::add(FpVector v) {
  if (v.size() != cols_ || v.p() != p_)
    throw FfError("row has wrong shape");
  if (full())
    return false;
  reduce(v);
  const auto lead = v.first_nonzero();
  if (!lead)
    return false;
  insert(std::move(v), *lead);
  return true;
}

std::size_t EchelonAccumulator::add_batch(std::vector<FpVector> batch) {
  for (const auto &v : batch)
    if (v.size() != cols_ || v.p() != p_)
      throw FfError("row has wrong shape");
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(batch.size());
  const bool big = batch.size() * cols_ > kParallelWork;
#pragma omp parallel for schedule(dynamic, 8) if (big)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    reduce(batch[static_cast<std::size_t>(i)]);
  std::size_t added = 0;
  for (auto &v : batch) {
    if (full())
      break;
    if (v.is_zero())
      continue;
    reduce(v);
    if (const auto lead = v.first_nonzero()) {
      insert(std::move(v), *lead);
      ++added;
    }
  }
  return added;
}

std::vector<std::size_t> EchelonAccumulator::pivot_columns() const { return pivot_col_; }

std::vector<FpVector> EchelonAccumulator::null_space() const {
  return kernel(FpMatrix::from_rows(p_, cols_, rows_));
}

// ---------------------------------------------------------------- coordinates

SpanCoordinates::SpanCoordinates(std::uint32_t p, std::size_t dim,
                                 std::span<const FpVector> spanning)
    : p_(p), dim_(dim), count_(spanning.size()) {
  std::vector<std::int32_t> col_to_row(dim, -1);
  for (std::size_t k = 0; k < spanning.size(); ++k) {
    FpVector v = spanning[k];
    if (v.size() != dim)
      throw FfError("spanning vector has wrong length");
    FpVector tag(p, count_);
    tag.set(k, 1);
    for (auto c = v.first_nonzero(); c; c = v.first_nonzero(*c + 1)) {
      const std::int32_t r = col_to_row[*c];
      if (r < 0)
        continue;
      const std::uint32_t f = p - v.get(*c);
      v.axpy(f, rows_[static_cast<std::size_t>(r)], *c);
      tag.axpy(f, tags_[static_cast<std::size_t>(r)]);
    }
    const auto lead = v.first_nonzero();
    if (!lead)
      continue;
    const std::uint32_t inv = fp_inv(v.get(*lead), p);
    v.scale(inv);
    tag.scale(inv);
    col_to_row[*lead] = static_cast<std::int32_t>(rows_.size());
    rows_.push_back(std::move(v));
    tags_.push_back(std::move(tag));
    pivot_col_.push_back(*lead);
  }
  // Sort by pivot column so that coordinates() can sweep left to right.
  std::vector<std::size_t> order(rows_.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pivot_col_[a] < pivot_col_[b]; });
  std::vector<FpVector> rows, tags;
  std::vector<std::size_t> piv;
  for (std::size_t i : order) {
    rows.push_back(std::move(rows_[i]));
    tags.push_back(std::move(tags_[i]));
    piv.push_back(pivot_col_[i]);
  }
  rows_ = std::move(rows);
  tags_ = std::move(tags);
  pivot_col_ = std::move(piv);
}

std::optional<FpVector> SpanCoordinates::coordinates(const FpVector &v) const {
  if (v.size() != dim_)
    throw FfError("vector has wrong length");
  FpVector rest = v;
  FpVector coords(p_, count_);
  // Stored rows are echelon (zero left of their pivot), so one left-to-right
  // sweep over pivots clears every pivot column.
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const std::uint32_t val = rest.get(pivot_col_[k]);
    if (!val)
      continue;
    rest.axpy(p_ - val, rows_[k], pivot_col_[k]);
    coords.axpy(val, tags_[k]);
  }
  if (!rest.is_zero())
    return std::nullopt;
  return coords;
}

}  // namespace pcoh
