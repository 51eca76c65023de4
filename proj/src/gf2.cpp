#include "nspcp/gf2.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

#include "nspcp/errors.hpp"

namespace nspcp {
namespace {

// Lexicographic comparison with coordinate 0 most significant.
std::strong_ordering lex_compare(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t diff = a ^ b;
  if (diff == 0) return std::strong_ordering::equal;
  const int first = std::countr_zero(diff);
  return ((a >> first) & 1U) ? std::strong_ordering::greater : std::strong_ordering::less;
}

void hash_mix(std::size_t& seed, std::size_t value) {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace

// ---------------------------------------------------------------- BitVector

BitVector::BitVector(int size) : size_(size) {
  if (size < 0 || size > kMaxSize) {
    throw InvalidInput("bit vector length " + std::to_string(size) + " outside [0, 64]");
  }
}

void BitVector::bad_size(int size) {
  throw InvalidInput("bit vector length " + std::to_string(size) + " outside [0, 64]");
}

BitVector BitVector::parse(std::string_view bits) {
  BitVector v(static_cast<int>(bits.size()));
  for (int i = 0; i < v.size_; ++i) {
    if (bits[i] == '1') {
      v.bits_ |= std::uint64_t{1} << i;
    } else if (bits[i] != '0') {
      throw InvalidInput("bit string contains '" + std::string(1, bits[i]) + "'");
    }
  }
  return v;
}

BitVector BitVector::with(int i, bool value) const {
  if (i < 0 || i >= size_) throw InvalidInput("bit index out of range");
  BitVector v = *this;
  if (value) {
    v.bits_ |= std::uint64_t{1} << i;
  } else {
    v.bits_ &= ~(std::uint64_t{1} << i);
  }
  return v;
}

int BitVector::weight() const { return std::popcount(bits_); }

bool BitVector::dot(const BitVector& other) const {
  if (size_ != other.size_) throw InvalidInput("inner product of vectors of different length");
  return std::popcount(bits_ & other.bits_) & 1;
}

BitVector& BitVector::operator+=(const BitVector& other) {
  if (size_ != other.size_) {
    throw InvalidInput("adding vectors of length " + std::to_string(size_) + " and " +
                       std::to_string(other.size_));
  }
  bits_ ^= other.bits_;
  return *this;
}

std::strong_ordering operator<=>(const BitVector& a, const BitVector& b) {
  if (auto c = a.size_ <=> b.size_; c != 0) return c;
  return lex_compare(a.bits_, b.bits_);
}

std::string BitVector::to_string() const {
  std::string s(size_, '0');
  for (int i = 0; i < size_; ++i) {
    if ((*this)[i]) s[i] = '1';
  }
  return s;
}

// ---------------------------------------------------------------- BitMatrix

BitMatrix::BitMatrix(int dim) : dim_(dim) {
  if (dim < 0 || dim > kMaxDim) {
    throw InvalidInput("matrix side " + std::to_string(dim) + " outside [0, 8]");
  }
}

void BitMatrix::bad_shape(int length, int dim) {
  if (dim < 0 || dim > kMaxDim) throw InvalidInput("matrix side " + std::to_string(dim) + " outside [0, 8]");
  throw InvalidInput("vector of length " + std::to_string(length) + " is not an " + std::to_string(dim) + "x" +
                     std::to_string(dim) + " matrix");
}

BitMatrix BitMatrix::with(int i, int j, bool value) const {
  if (i < 0 || j < 0 || i >= dim_ || j >= dim_) throw InvalidInput("matrix index out of range");
  BitMatrix m = *this;
  const std::uint64_t bit = std::uint64_t{1} << (i * dim_ + j);
  m.bits_ = value ? (m.bits_ | bit) : (m.bits_ & ~bit);
  return m;
}

BitMatrix BitMatrix::toggled(int i, int j) const { return with(i, j, !(*this)(i, j)); }

std::vector<std::pair<int, int>> BitMatrix::nonzeros() const {
  std::vector<std::pair<int, int>> out;
  for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1) {
    const int pos = std::countr_zero(rest);
    out.emplace_back(pos / dim_, pos % dim_);
  }
  return out;
}

BitMatrix& BitMatrix::operator+=(const BitMatrix& other) {
  if (dim_ != other.dim_) throw InvalidInput("adding matrices of different size");
  bits_ ^= other.bits_;
  return *this;
}

std::strong_ordering operator<=>(const BitMatrix& a, const BitMatrix& b) {
  if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
  return lex_compare(a.bits_, b.bits_);
}

BitMatrix tensor(const BitVector& u, const BitVector& v) {
  if (u.size() != v.size()) throw InvalidInput("tensor of vectors of different length");
  const int n = u.size();
  BitMatrix m(n);
  std::uint64_t word = 0;
  for (int i = 0; i < n; ++i) {
    if (u[i]) word |= v.word() << (i * n);
  }
  return BitMatrix::from_vector(BitVector::from_word(word, n * n), n);
}

BitMatrix diag(const BitVector& a) {
  const int n = a.size();
  std::uint64_t word = 0;
  for (int i = 0; i < n; ++i) {
    if (a[i]) word |= std::uint64_t{1} << (i * n + i);
  }
  return BitMatrix::from_vector(BitVector::from_word(word, n * n), n);
}

bool inner(const BitMatrix& a, const BitMatrix& b) {
  if (a.dim() != b.dim()) throw InvalidInput("inner product of matrices of different size");
  return std::popcount(a.word() & b.word()) & 1;
}

// -------------------------------------------------------------------- Query

Query::Query(std::vector<BitVector> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw InvalidInput("query with no coordinates");
  if (static_cast<int>(coords_.size()) > kMaxRepetition) {
    throw InvalidInput("repetition above " + std::to_string(kMaxRepetition));
  }
  for (const auto& c : coords_) {
    if (c.size() != coords_.front().size()) {
      throw InvalidInput("query coordinates of different length");
    }
  }
}

void Query::bad_set(int j) const {
  if (j < 0 || j >= repetition()) throw InvalidInput("query coordinate out of range");
  throw InvalidInput("query coordinates of different length");
}

Query Query::zero(int dim, int repetition) {
  return Query(std::vector<BitVector>(repetition, BitVector(dim)));
}

Query Query::head(int count) const {
  if (count < 1 || count > repetition()) throw InvalidInput("head length out of range");
  return Query(std::vector<BitVector>(coords_.begin(), coords_.begin() + count));
}

Query Query::tail(int count) const {
  if (count < 1 || count > repetition()) throw InvalidInput("tail length out of range");
  return Query(std::vector<BitVector>(coords_.end() - count, coords_.end()));
}

Query& Query::operator+=(const Query& other) {
  if (repetition() != other.repetition()) {
    throw InvalidInput("adding queries of different repetition");
  }
  for (std::size_t j = 0; j < coords_.size(); ++j) coords_[j] += other.coords_[j];
  return *this;
}

std::strong_ordering operator<=>(const Query& a, const Query& b) {
  if (auto c = a.coords_.size() <=> b.coords_.size(); c != 0) return c;
  for (std::size_t j = 0; j < a.coords_.size(); ++j) {
    if (auto c = a.coords_[j] <=> b.coords_[j]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string Query::to_string() const {
  std::string s = "(";
  for (std::size_t j = 0; j < coords_.size(); ++j) {
    if (j) s += ",";
    s += coords_[j].to_string();
  }
  return s + ")";
}

Query concat(const Query& a, const Query& b) {
  std::vector<BitVector> coords(a.coords().begin(), a.coords().end());
  coords.insert(coords.end(), b.coords().begin(), b.coords().end());
  return Query(std::move(coords));
}

// -------------------------------------------------------------- Permutation

Permutation Permutation::identity(int size) {
  std::vector<int> image(size);
  std::iota(image.begin(), image.end(), 0);
  return Permutation(std::move(image));
}

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (int v : image_) {
    if (v < 0 || v >= static_cast<int>(image_.size()) || seen[v]) {
      throw InvalidInput("not a permutation");
    }
    seen[v] = true;
  }
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) inv[image_[i]] = static_cast<int>(i);
  return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& other) const {
  if (size() != other.size()) throw InvalidInput("composing permutations of different size");
  std::vector<int> out(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) out[i] = image_[other.image_[i]];
  return Permutation(std::move(out));
}

Query Permutation::apply(const Query& q) const {
  if (q.repetition() != size()) throw InvalidInput("permutation size does not match repetition");
  std::vector<BitVector> coords(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) coords[i] = q[image_[i]];
  return Query(std::move(coords));
}

Answer Permutation::apply(Answer a) const {
  Answer out = 0;
  for (std::size_t i = 0; i < image_.size(); ++i) {
    out |= ((a >> image_[i]) & 1U) << i;
  }
  return out;
}

std::vector<Permutation> Permutation::all(int size) {
  std::vector<int> image(size);
  std::iota(image.begin(), image.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(image);
  } while (std::next_permutation(image.begin(), image.end()));
  return out;
}

// ----------------------------------------------------------------- QuerySet

QuerySet::QuerySet(std::vector<Query> queries) : items_(std::move(queries)) {
  std::sort(items_.begin(), items_.end());
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
  for (const auto& q : items_) {
    if (q.repetition() != items_.front().repetition() || q.dim() != items_.front().dim()) {
      throw InvalidInput("query set mixes shapes");
    }
  }
}

std::optional<int> QuerySet::index_of(const Query& q) const {
  auto it = std::lower_bound(items_.begin(), items_.end(), q);
  if (it == items_.end() || *it != q) return std::nullopt;
  return static_cast<int>(it - items_.begin());
}

bool QuerySet::is_subset_of(const QuerySet& other) const {
  return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
}

QuerySet QuerySet::intersect(const QuerySet& other) const {
  QuerySet out;
  std::set_intersection(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                        std::back_inserter(out.items_));
  return out;
}

QuerySet QuerySet::unite(const QuerySet& other) const {
  std::vector<Query> all = items_;
  all.insert(all.end(), other.items_.begin(), other.items_.end());
  return QuerySet(std::move(all));
}

std::strong_ordering operator<=>(const QuerySet& a, const QuerySet& b) {
  if (auto c = a.items_.size() <=> b.items_.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.items_.size(); ++i) {
    if (auto c = a.items_[i] <=> b.items_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string QuerySet::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (i) s += " ";
    s += items_[i].to_string();
  }
  return s + "}";
}

std::vector<Query> all_points(int dim, int repetition) {
  const int bits = dim * repetition;
  if (bits > 24) throw ScopeExceeded("domain of 2^" + std::to_string(bits) + " points exceeds 2^24");
  std::vector<Query> out;
  out.reserve(std::size_t{1} << bits);
  for (std::uint64_t w = 0; w < (std::uint64_t{1} << bits); ++w) {
    std::vector<BitVector> coords;
    for (int j = 0; j < repetition; ++j) {
      coords.push_back(BitVector::from_word(w >> (j * dim), dim));
    }
    out.emplace_back(std::move(coords));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<QuerySet> all_sets(std::span<const Query> points, int max_size) {
  std::vector<QuerySet> out;
  const int n = static_cast<int>(points.size());
  std::vector<int> pick;
  // Depth-first over increasing index tuples.
  std::function<void(int)> grow = [&](int start) {
    if (!pick.empty()) {
      std::vector<Query> qs;
      for (int i : pick) qs.push_back(points[i]);
      out.emplace_back(std::move(qs));
    }
    if (static_cast<int>(pick.size()) == max_size) return;
    for (int i = start; i < n; ++i) {
      pick.push_back(i);
      grow(i + 1);
      pick.pop_back();
    }
  };
  grow(0);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t BitVectorHash::operator()(const BitVector& v) const noexcept {
  std::size_t seed = static_cast<std::size_t>(v.size());
  hash_mix(seed, std::hash<std::uint64_t>{}(v.word()));
  return seed;
}

std::size_t QueryHash::operator()(const Query& q) const noexcept {
  std::size_t seed = static_cast<std::size_t>(q.repetition());
  for (const auto& c : q.coords()) hash_mix(seed, BitVectorHash{}(c));
  return seed;
}

std::size_t QuerySetHash::operator()(const QuerySet& s) const noexcept {
  std::size_t seed = static_cast<std::size_t>(s.size());
  for (const auto& q : s) hash_mix(seed, QueryHash{}(q));
  return seed;
}

}  // namespace nspcp
