#pragma once

// GF(2) values shared by every other module: bit vectors, the N x N matrices
// of the Hadamard proof domain, repeated (t-tuple) queries, coordinate
// permutations and canonical query sets.
//
// Everything here is a small value type. Ordering is lexicographic on bits
// (index 0 first) so that query sets have one canonical form.

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nspcp {

class BitVector {
 public:
  static constexpr int kMaxSize = 64;

  BitVector() = default;
  explicit BitVector(int size);

  // Bit i of `word` becomes coordinate i.
  static BitVector from_word(std::uint64_t word, int size) {
    if (size < 0 || size > kMaxSize) bad_size(size);
    BitVector v;
    v.size_ = size;
    v.bits_ = size == kMaxSize ? word : word & ((std::uint64_t{1} << size) - 1U);
    return v;
  }
  // "0110" -> coordinates (0,1,1,0).
  static BitVector parse(std::string_view bits);

  int size() const { return size_; }
  bool operator[](int i) const { return (bits_ >> i) & 1U; }
  BitVector with(int i, bool value) const;
  std::uint64_t word() const { return bits_; }

  bool is_zero() const { return bits_ == 0; }
  int weight() const;
  // Inner product mod 2.
  bool dot(const BitVector& other) const;

  BitVector& operator+=(const BitVector& other);
  friend BitVector operator+(BitVector lhs, const BitVector& rhs) {
    lhs += rhs;
    return lhs;
  }

  friend bool operator==(const BitVector&, const BitVector&) = default;
  friend std::strong_ordering operator<=>(const BitVector& a, const BitVector& b);

  std::string to_string() const;

 private:
  [[noreturn]] static void bad_size(int size);

  std::uint64_t bits_ = 0;
  int size_ = 0;
};

// Square matrix over GF(2) with side n <= 8, stored as one 64-bit word with
// entry (i, j) at bit i * n + j.
class BitMatrix {
 public:
  static constexpr int kMaxDim = 8;

  BitMatrix() = default;
  explicit BitMatrix(int dim);
  // Row-major reinterpretation of an n*n bit vector.
  static BitMatrix from_vector(const BitVector& flat, int dim) {
    if (dim < 0 || dim > kMaxDim || flat.size() != dim * dim) bad_shape(flat.size(), dim);
    BitMatrix m;
    m.dim_ = dim;
    m.bits_ = flat.word();
    return m;
  }

  int dim() const { return dim_; }
  bool operator()(int i, int j) const { return (bits_ >> (i * dim_ + j)) & 1U; }
  BitMatrix with(int i, int j, bool value) const;
  BitMatrix toggled(int i, int j) const;

  BitVector as_vector() const { return BitVector::from_word(bits_, dim_ * dim_); }
  std::uint64_t word() const { return bits_; }
  bool is_zero() const { return bits_ == 0; }

  // Sparse view: (row, col) of every 1 entry in row-major order.
  std::vector<std::pair<int, int>> nonzeros() const;

  BitMatrix& operator+=(const BitMatrix& other);
  friend BitMatrix operator+(BitMatrix lhs, const BitMatrix& rhs) {
    lhs += rhs;
    return lhs;
  }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;
  friend std::strong_ordering operator<=>(const BitMatrix& a, const BitMatrix& b);

 private:
  [[noreturn]] static void bad_shape(int length, int dim);

  std::uint64_t bits_ = 0;
  int dim_ = 0;
};

// u (x) v, entry (i, j) = u_i * v_j.
BitMatrix tensor(const BitVector& u, const BitVector& v);
// Diagonal matrix with diagonal a.
BitMatrix diag(const BitVector& a);
// <A, B> = sum_ij A_ij B_ij mod 2.
bool inner(const BitMatrix& a, const BitMatrix& b);

// Answer of a t-repeated function: bit j is coordinate j.
using Answer = std::uint32_t;
constexpr int kMaxRepetition = 16;

inline Answer low_mask(int bits) {
  return bits >= 32 ? ~Answer{0} : ((Answer{1} << bits) - 1U);
}

// A point of D^t: an ordered t-tuple of domain points sharing one size.
// t = 1 is an ordinary (non-repeated) query.
class Query {
 public:
  Query() = default;
  explicit Query(std::vector<BitVector> coords);
  static Query single(BitVector point) { return Query({std::move(point)}); }
  static Query zero(int dim, int repetition);

  int repetition() const { return static_cast<int>(coords_.size()); }
  int dim() const { return coords_.empty() ? 0 : coords_.front().size(); }
  const BitVector& operator[](int j) const { return coords_[j]; }
  std::span<const BitVector> coords() const { return coords_; }
  // Replaces coordinate j with a point of the same size.
  void set(int j, const BitVector& point) {
    if (j < 0 || j >= repetition() || point.size() != coords_[j].size()) bad_set(j);
    coords_[j] = point;
  }

  // First / last `count` coordinates.
  Query head(int count) const;
  Query tail(int count) const;

  Query& operator+=(const Query& other);
  friend Query operator+(Query lhs, const Query& rhs) {
    lhs += rhs;
    return lhs;
  }

  friend bool operator==(const Query&, const Query&) = default;
  friend std::strong_ordering operator<=>(const Query& a, const Query& b);

  std::string to_string() const;

 private:
  [[noreturn]] void bad_set(int j) const;

  std::vector<BitVector> coords_;
};

// [A; B], the concatenation of two tuples over the same domain.
Query concat(const Query& a, const Query& b);

// Bijection on {0, ..., t-1}. Acting on a tuple, pi(Q)_i = Q_{pi(i)}; answers
// are permuted the same way.
class Permutation {
 public:
  static Permutation identity(int size);
  explicit Permutation(std::vector<int> image);

  int size() const { return static_cast<int>(image_.size()); }
  int operator()(int i) const { return image_[i]; }

  Permutation inverse() const;
  // (this o other)(i) = this(other(i)).
  Permutation compose(const Permutation& other) const;

  Query apply(const Query& q) const;
  Answer apply(Answer a) const;

  // All t! permutations in lexicographic order of their image vectors.
  static std::vector<Permutation> all(int size);

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> image_;
};

// Canonical (sorted, duplicate-free) set of queries of one shape.
class QuerySet {
 public:
  QuerySet() = default;
  explicit QuerySet(std::vector<Query> queries);
  QuerySet(std::initializer_list<Query> queries) : QuerySet(std::vector<Query>(queries)) {}

  int size() const { return static_cast<int>(items_.size()); }
  bool empty() const { return items_.empty(); }
  const Query& operator[](int i) const { return items_[i]; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  std::span<const Query> items() const { return items_; }

  // Position in canonical order, or nullopt.
  std::optional<int> index_of(const Query& q) const;
  bool contains(const Query& q) const { return index_of(q).has_value(); }
  bool is_subset_of(const QuerySet& other) const;
  QuerySet intersect(const QuerySet& other) const;
  QuerySet unite(const QuerySet& other) const;

  friend bool operator==(const QuerySet&, const QuerySet&) = default;
  friend std::strong_ordering operator<=>(const QuerySet& a, const QuerySet& b);

  std::string to_string() const;

 private:
  std::vector<Query> items_;
};

// All 2^(dim*t) points of ({0,1}^dim)^t in canonical order.
std::vector<Query> all_points(int dim, int repetition);
// Every subset of `points` with 1 <= size <= max_size, canonical form.
std::vector<QuerySet> all_sets(std::span<const Query> points, int max_size);

struct BitVectorHash {
  std::size_t operator()(const BitVector& v) const noexcept;
};
struct QueryHash {
  std::size_t operator()(const Query& q) const noexcept;
};
struct QuerySetHash {
  std::size_t operator()(const QuerySet& s) const noexcept;
};

}  // namespace nspcp
