#ifndef PCOH_FFMAT_HPP
#define PCOH_FFMAT_HPP

// Dense linear algebra over small prime fields F_p.
//
// Vectors over F_2 are stored one bit per entry in 64-bit words; vectors over
// odd primes one byte per entry.  All operations are value-semantic.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace pcoh {

class FfError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Largest prime accepted by the F_p kernels.
inline constexpr std::uint32_t kMaxPrime = 13;

bool is_supported_prime(std::uint32_t p);

/// Multiplicative inverse of a nonzero residue.
std::uint32_t fp_inv(std::uint32_t a, std::uint32_t p);

class FpVector {
public:
  FpVector() = default;
  FpVector(std::uint32_t p, std::size_t n);
  FpVector(std::uint32_t p, std::initializer_list<int> values);
  static FpVector from_values(std::uint32_t p, std::span<const int> values);

  std::uint32_t p() const { return p_; }
  std::size_t size() const { return n_; }

  std::uint32_t get(std::size_t i) const {
    if (p_ == 2)
      return static_cast<std::uint32_t>((data_[i >> 6] >> (i & 63)) & 1u);
    return bytes()[i];
  }
  void set(std::size_t i, std::uint32_t v);
  void add_at(std::size_t i, std::uint32_t v) { set(i, (get(i) + v) % p_); }

  bool is_zero() const;
  /// First index >= from holding a nonzero entry.
  std::optional<std::size_t> first_nonzero(std::size_t from = 0) const;

  /// this += c * x, touching only entries at positions >= from.
  void axpy(std::uint32_t c, const FpVector &x, std::size_t from = 0);
  void scale(std::uint32_t c);

  std::vector<int> to_values() const;

  bool operator==(const FpVector &o) const;

  // Raw storage for kernels.
  std::uint64_t *words() { return data_.data(); }
  const std::uint64_t *words() const { return data_.data(); }
  std::size_t word_count() const { return data_.size(); }
  std::uint8_t *bytes() { return reinterpret_cast<std::uint8_t *>(data_.data()); }
  const std::uint8_t *bytes() const {
    return reinterpret_cast<const std::uint8_t *>(data_.data());
  }

private:
  std::uint32_t p_ = 2;
  std::size_t n_ = 0;
  std::vector<std::uint64_t> data_;
};

class FpMatrix {
public:
  FpMatrix() = default;
  FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols);
  FpMatrix(std::uint32_t p, std::initializer_list<std::initializer_list<int>> rows);
  static FpMatrix from_rows(std::uint32_t p, std::size_t cols, std::vector<FpVector> rows);
  static FpMatrix identity(std::uint32_t p, std::size_t n);

  std::uint32_t p() const { return p_; }
  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  std::uint32_t get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
  void set(std::size_t r, std::size_t c, std::uint32_t v) { rows_[r].set(c, v); }

  const FpVector &row(std::size_t r) const { return rows_[r]; }
  FpVector &row(std::size_t r) { return rows_[r]; }
  std::vector<FpVector> &row_vectors() { return rows_; }

  /// m · x
  FpVector apply(const FpVector &x) const;
  FpMatrix transpose() const;

  bool operator==(const FpMatrix &o) const = default;

private:
  std::uint32_t p_ = 2;
  std::size_t cols_ = 0;
  std::vector<FpVector> rows_;
};

struct RrefResult {
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
  FpMatrix reduced;
};

/// Reduced row-echelon form.  Row elimination is parallelised with OpenMP
/// once the matrix is large enough.
RrefResult rref(FpMatrix m);

/// Entry-at-a-time Gauss-Jordan elimination.  Reference for rref().
RrefResult rref_serial(FpMatrix m);

std::size_t rank(const FpMatrix &m);

/// Basis of {x : m·x = 0}.
std::vector<FpVector> kernel(const FpMatrix &m);

/// Some x with m·x = b, or nullopt when b is outside the column space.
std::optional<FpVector> solve(const FpMatrix &m, const FpVector &b);

/// Row-echelon basis of a growing row space.
///
/// Rows are streamed in and reduced against the current pivots; at most
/// cols() rows are ever retained.  Every stored row has leading entry 1 and
/// is zero in every other stored row's pivot column before insertion, so the
/// reduced form of a vector is independent of the insertion schedule.
class EchelonAccumulator {
public:
  EchelonAccumulator(std::uint32_t p, std::size_t cols);

  std::uint32_t p() const { return p_; }
  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }
  bool full() const { return rows_.size() == cols_; }

  /// Keep the basis in reduced row-echelon form from now on.  Insertions get
  /// dearer and reductions of sparse rows much cheaper.  Call before adding.
  void set_fully_reduced() { fully_reduced_ = true; }

  /// Returns true when v enlarged the row space.
  bool add(FpVector v);

  /// Reduces a batch against the current basis in parallel, then inserts
  /// the survivors in order.  Equivalent to calling add() on each row.
  std::size_t add_batch(std::vector<FpVector> batch);

  /// Normal form of v modulo the accumulated row space.
  void reduce(FpVector &v) const;
  bool contains(FpVector v) const;

  const std::vector<FpVector> &basis() const { return rows_; }
  std::vector<std::size_t> pivot_columns() const;

  /// Basis of the null space of the accumulated rows.
  std::vector<FpVector> null_space() const;

private:
  std::uint32_t p_;
  std::size_t cols_;
  std::vector<FpVector> rows_;          // sorted by pivot column
  std::vector<std::size_t> pivot_col_;  // parallel to rows_
  std::vector<std::int32_t> col_to_row_;
  bool fully_reduced_ = false;
  void insert(FpVector v, std::size_t col);
};

/// Expresses vectors as linear combinations of a fixed spanning list.
class SpanCoordinates {
public:
  SpanCoordinates(std::uint32_t p, std::size_t dim, std::span<const FpVector> spanning);

  std::size_t generator_count() const { return count_; }
  std::size_t rank() const { return rows_.size(); }

  /// Coefficients c with Σ c_k · spanning[k] = v, or nullopt if v is not in
  /// the span.
  std::optional<FpVector> coordinates(const FpVector &v) const;

private:
  std::uint32_t p_;
  std::size_t dim_;
  std::size_t count_;
  std::vector<FpVector> rows_;
  std::vector<FpVector> tags_;
  std::vector<std::size_t> pivot_col_;
};

}  // namespace pcoh

#endif
