#include "nspcp/verifier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <thread>
#include <unordered_map>

#include "nspcp/errors.hpp"
#include "nspcp/strategy.hpp"

namespace nspcp {
namespace {

Rational power_of_half(int bits) {
  Rational r(1);
  r /= Rational(mpz_class(1) << bits);
  return r;
}

Rational power(const Rational& base, int exponent) {
  Rational r(1);
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

std::vector<BitVector> take_points(BitSource& bits, int count, int dim) {
  std::vector<BitVector> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(BitVector::from_word(bits.take(dim), dim));
  return out;
}

Query take_query(BitSource& bits, int repetition, int dim) {
  return Query(take_points(bits, repetition, dim));
}

mpz_class to_mpz(unsigned __int128 v) {
  mpz_class out(static_cast<unsigned long>(v >> 64));
  out <<= 64;
  out += static_cast<unsigned long>(v & ~std::uint64_t{0});
  return out;
}

mpz_class to_mpz(__int128 v) {
  return v < 0 ? mpz_class(-to_mpz(static_cast<unsigned __int128>(-v))) : to_mpz(static_cast<unsigned __int128>(v));
}

std::vector<bool> base_table(const ProductStrategy& f) {
  const int d = f.dim();
  if (d > 24) throw ScopeExceeded("truth table of a 2^" + std::to_string(d) + "-point base");
  std::vector<bool> table(std::size_t{1} << d);
  for (std::uint64_t x = 0; x < table.size(); ++x) table[x] = f.base()(BitVector::from_word(x, d));
  return table;
}

void walsh_hadamard(std::vector<std::int64_t>& a) {
  for (std::size_t h = 1; h < a.size(); h <<= 1) {
    for (std::size_t i = 0; i < a.size(); i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const std::int64_t x = a[j];
        const std::int64_t y = a[j + h];
        a[j] = x + y;
        a[j + h] = x - y;
      }
    }
  }
}

std::vector<std::int64_t> signs(const std::vector<bool>& table) {
  std::vector<std::int64_t> s(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) s[i] = table[i] ? -1 : 1;
  return s;
}

// Pr_x,y[f(x) + f(y) = f(x + y)] from the Walsh spectrum of (-1)^f.
Rational blr_from_spectrum(const std::vector<std::int64_t>& s, int dim) {
  __int128 sum = 0;
  for (auto v : s) sum += static_cast<__int128>(v) * v * v;
  Rational p(to_mpz(sum), mpz_class(1) << (3 * dim + 1));
  p.canonicalize();
  return Rational(1, 2) + p;
}

std::vector<std::int64_t> autocorrelation_from_spectrum(std::vector<std::int64_t> s, int dim) {
  for (auto& v : s) v *= v;
  walsh_hadamard(s);
  for (auto& v : s) v >>= dim;
  return s;
}

struct RolesKey {
  std::vector<Query> roles;
  std::uint64_t aux;
  friend bool operator==(const RolesKey&, const RolesKey&) = default;
};

struct RolesKeyHash {
  std::size_t operator()(const RolesKey& k) const noexcept {
    std::size_t h = std::hash<std::uint64_t>{}(k.aux);
    for (const auto& q : k.roles) h = h * 1000003U ^ QueryHash{}(q);
    return h;
  }
};

// Pr[accept | roles, aux] and the per-sub-test conditional probabilities.
struct Conditional {
  Rational accept;
  std::vector<Rational> sub;
};

Conditional conditional(const VerifierSpec& spec, const std::vector<Query>& roles, std::uint64_t aux,
                        const LocalDistribution& d, const QuerySet& set, std::size_t sub_count) {
  std::vector<int> pos(roles.size());
  for (std::size_t j = 0; j < roles.size(); ++j) pos[j] = *set.index_of(roles[j]);
  Conditional out{Rational(0), std::vector<Rational>(sub_count, Rational(0))};
  std::vector<Answer> answers(roles.size());
  for (const auto& [a, m] : d.masses()) {
    for (std::size_t j = 0; j < roles.size(); ++j) answers[j] = unpack(a, pos[j], d.answer_bits());
    const Decision dec = spec.decide(aux, answers);
    if (dec.accept) out.accept += m;
    for (std::size_t i = 0; i < sub_count; ++i) {
      if ((dec.passed >> i) & 1U) out.sub[i] += m;
    }
  }
  return out;
}

}  // namespace

int VerifierSpec::required_locality() const {
  const int exponent = dim() * repetition();
  if (exponent >= 5) return roles();
  return std::min(roles(), 1 << exponent);
}

// ------------------------------------------------------------- ALMSS pieces

std::array<BitMatrix, 4> almss_queries(const ConstraintSystem& cs, const BitVector& u,
                                       const BitVector& v, const BitVector& s) {
  if (u.size() != cs.wires() || v.size() != cs.wires() || s.size() != cs.size()) {
    throw InvalidInput("ALMSS randomness does not match the constraint system");
  }
  return {diag(u), diag(v), tensor(u, v), cs.combine(s)};
}

std::pair<bool, bool> almss_decide(std::span<const bool> answers, bool combined_value) {
  if (answers.size() != 4) throw InvalidInput("ALMSS decision needs 4 answers");
  return {(answers[0] && answers[1]) == answers[2], answers[3] == combined_value};
}

RepeatedAlmss::RepeatedAlmss(ConstraintSystem cs, int t) : cs_(std::move(cs)), t_(t) {
  if (t < 1 || t > kMaxRepetition) throw InvalidInput("repetition t out of range");
  const int n = cs_.wires();
  const int m = cs_.size();
  if (2 * n + m > 16) return;
  // Walk the selectors in Gray-code order so each combined matrix is one XOR
  // away from the previous one.
  std::vector<std::pair<std::uint64_t, bool>> combined(std::size_t{1} << m);
  std::uint64_t word = 0;
  bool value = false;
  for (std::uint64_t g = 0; g < combined.size(); ++g) {
    if (g > 0) {
      const int j = std::countr_zero(g);
      word ^= cs_[j].matrix.word();
      value ^= cs_[j].value;
    }
    combined[g ^ (g >> 1)] = {word, value};
  }
  std::vector<std::uint64_t> diagonal(std::size_t{1} << n, 0);
  for (std::uint64_t u = 0; u < diagonal.size(); ++u) {
    for (int i = 0; i < n; ++i) {
      if ((u >> i) & 1U) diagonal[u] |= std::uint64_t{1} << (i * n + i);
    }
  }
  blocks_.reserve(std::size_t{1} << (2 * n + m));
  for (std::uint64_t s = 0; s < combined.size(); ++s) {
    for (std::uint64_t v = 0; v < diagonal.size(); ++v) {
      for (std::uint64_t u = 0; u < diagonal.size(); ++u) {
        std::uint64_t uv = 0;
        for (int i = 0; i < n; ++i) {
          if ((u >> i) & 1U) uv |= v << (i * n);
        }
        blocks_.push_back({{diagonal[u], diagonal[v], uv, combined[s].first}, combined[s].second});
      }
    }
  }
}

RepeatedAlmss::Block RepeatedAlmss::block(std::uint64_t r) const {
  if (r < blocks_.size()) return blocks_[r];
  const int n = cs_.wires();
  const BitVector u = BitVector::from_word(r, n);
  const BitVector v = BitVector::from_word(r >> n, n);
  const BitVector s = BitVector::from_word(r >> (2 * n), cs_.size());
  const auto q = almss_queries(cs_, u, v, s);
  return {{q[0].word(), q[1].word(), q[2].word(), q[3].word()}, cs_.combined_value(s)};
}

int RepeatedAlmss::randomness_bits() const { return t_ * (2 * cs_.wires() + cs_.size()); }

std::vector<std::string> RepeatedAlmss::sub_tests() const {
  return {"multiplication", "constraints", "coordinate_1"};
}

Draw RepeatedAlmss::draw(BitSource& bits) const {
  const int n = cs_.wires();
  std::array<std::vector<BitVector>, 4> coords;
  for (auto& c : coords) c.reserve(t_);
  Draw out;
  out.roles.reserve(4);
  for (int i = 0; i < t_; ++i) {
    const std::uint64_t u = bits.take(n);
    const std::uint64_t v = bits.take(n);
    const std::uint64_t s = bits.take(cs_.size());
    const Block b = block(u | v << n | s << (2 * n));
    for (int r = 0; r < 4; ++r) coords[r].push_back(BitVector::from_word(b.queries[r], n * n));
    if (b.value) out.aux |= std::uint64_t{1} << i;
  }
  for (auto& c : coords) out.roles.emplace_back(std::move(c));
  return out;
}

void RepeatedAlmss::redraw(BitSource& bits, Draw& out) const {
  if (out.roles.size() != 4 || out.roles[0].repetition() != t_ || out.roles[0].dim() != dim()) {
    out = draw(bits);
    return;
  }
  const int n = cs_.wires();
  out.aux = 0;
  for (int i = 0; i < t_; ++i) {
    const std::uint64_t u = bits.take(n);
    const std::uint64_t v = bits.take(n);
    const std::uint64_t s = bits.take(cs_.size());
    const Block b = block(u | v << n | s << (2 * n));
    for (int r = 0; r < 4; ++r) out.roles[r].set(i, BitVector::from_word(b.queries[r], n * n));
    if (b.value) out.aux |= std::uint64_t{1} << i;
  }
}

Decision RepeatedAlmss::decide(std::uint64_t aux, std::span<const Answer> answers) const {
  if (answers.size() != 4) throw InvalidInput("repeated ALMSS decision needs 4 answers");
  bool mult = true;
  bool cons = true;
  bool first = false;
  for (int i = 0; i < t_; ++i) {
    const bool a[4] = {((answers[0] >> i) & 1U) != 0, ((answers[1] >> i) & 1U) != 0,
                       ((answers[2] >> i) & 1U) != 0, ((answers[3] >> i) & 1U) != 0};
    const auto [m, c] = almss_decide(a, (aux >> i) & 1U);
    mult = mult && m;
    cons = cons && c;
    if (i == 0) first = m && c;
  }
  Decision d;
  d.accept = mult && cons;
  d.passed = (mult ? 1U : 0U) | (cons ? 2U : 0U) | (first ? 4U : 0U);
  return d;
}

std::optional<Acceptance> RepeatedAlmss::factored(const ProductStrategy& f) const {
  const std::vector<bool> table = base_table(f);
  const int n = cs_.wires();
  const int bits = 2 * n + cs_.size();
  std::uint64_t both = 0;
  std::uint64_t mult = 0;
  std::uint64_t cons = 0;
  for (std::uint64_t r = 0; r < (std::uint64_t{1} << bits); ++r) {
    const Block b = block(r);
    const bool a[4] = {table[b.queries[0]], table[b.queries[1]], table[b.queries[2]], table[b.queries[3]]};
    const auto [m, c] = almss_decide(a, b.value);
    mult += m;
    cons += c;
    both += m && c;
  }
  const std::uint64_t total = std::uint64_t{1} << bits;
  const Rational p = ratio(both, total);
  Acceptance out;
  out.value = power(p, t_);
  out.sub_tests = {power(ratio(mult, total), t_), power(ratio(cons, total), t_), p};
  out.method = "factored";
  out.outcomes = total;
  return out;
}

// ------------------------------------------------------- standalone tests

Draw LinearityTest::draw(BitSource& bits) const {
  Query x = take_query(bits, r_, dim_);
  Query y = take_query(bits, r_, dim_);
  Query sum = x + y;
  return Draw{{std::move(x), std::move(y), std::move(sum)}, 0};
}

Decision LinearityTest::decide(std::uint64_t, std::span<const Answer> answers) const {
  if (answers.size() != 3) throw InvalidInput("linearity decision needs 3 answers");
  const bool ok = (answers[0] ^ answers[1]) == answers[2];
  return {ok, ok ? 1U : 0U};
}

std::optional<Acceptance> LinearityTest::factored(const ProductStrategy& f) const {
  const Rational p = blr_pass_probability(base_table(f), dim_);
  Acceptance out;
  out.value = power(p, r_);
  out.sub_tests = {out.value};
  out.method = "factored";
  out.outcomes = 0;
  return out;
}

Draw ConsistencyTest::draw(BitSource& bits) const {
  const Query w = take_query(bits, t_, dim_);
  const Query z1 = take_query(bits, t_, dim_);
  const Query z2 = take_query(bits, t_, dim_);
  return Draw{{concat(w, z1), concat(w, z2)}, 0};
}

Decision ConsistencyTest::decide(std::uint64_t, std::span<const Answer> answers) const {
  if (answers.size() != 2) throw InvalidInput("consistency decision needs 2 answers");
  const bool ok = ((answers[0] ^ answers[1]) & low_mask(t_)) == 0;
  return {ok, ok ? 1U : 0U};
}

std::optional<Acceptance> ConsistencyTest::factored(const ProductStrategy&) const {
  return Acceptance{Rational(1), {Rational(1)}, "factored", 0};
}

// ------------------------------------------------------------ Algorithm 3

FullVerifier::FullVerifier(ConstraintSystem cs, int t) : cs_(cs), t_(t), inner_(std::move(cs), t) {
  if (2 * t > kMaxRepetition) throw InvalidInput("2t exceeds the largest supported repetition");
}

int FullVerifier::randomness_bits() const {
  return 15 * t_ * dim() + inner_.randomness_bits();
}

Draw FullVerifier::draw(BitSource& bits) const {
  const int d = dim();
  Draw out;
  out.roles.reserve(13);
  Query x = take_query(bits, 2 * t_, d);
  Query y = take_query(bits, 2 * t_, d);
  Query sum = x + y;
  out.roles.push_back(std::move(x));
  out.roles.push_back(std::move(y));
  out.roles.push_back(std::move(sum));
  const Query w = take_query(bits, t_, d);
  const Query z1 = take_query(bits, t_, d);
  const Query z2 = take_query(bits, t_, d);
  out.roles.push_back(concat(w, z1));
  out.roles.push_back(concat(w, z2));

  const Draw pcp = inner_.draw(bits);
  out.aux = pcp.aux;
  std::array<Query, 4> r;
  std::array<Query, 4> wc;
  for (int i = 0; i < 4; ++i) {
    r[i] = take_query(bits, t_, d);
    wc[i] = take_query(bits, t_, d);
  }
  for (int i = 0; i < 4; ++i) {
    int owner = i;
    for (int j = 0; j < i; ++j) {
      if (pcp.roles[j] == pcp.roles[i]) {
        owner = j;
        break;
      }
    }
    out.roles.push_back(concat(r[owner], wc[owner]));
    out.roles.push_back(concat(pcp.roles[i] + r[owner], wc[owner]));
  }
  return out;
}

Decision FullVerifier::decide(std::uint64_t aux, std::span<const Answer> answers) const {
  if (answers.size() != 13) throw InvalidInput("full verifier decision needs 13 answers");
  const Answer mask = low_mask(t_);
  const bool lin = (answers[0] ^ answers[1]) == answers[2];
  const bool cons = ((answers[3] ^ answers[4]) & mask) == 0;
  std::array<Answer, 4> corrected;
  for (int i = 0; i < 4; ++i) corrected[i] = (answers[5 + 2 * i] ^ answers[6 + 2 * i]) & mask;
  const bool pcp = inner_.decide(aux, corrected).accept;
  Decision d;
  d.accept = lin && cons && pcp;
  d.passed = (lin ? 1U : 0U) | (cons ? 2U : 0U) | (pcp ? 4U : 0U);
  return d;
}

std::optional<Acceptance> FullVerifier::factored(const ProductStrategy& f) const {
  if (t_ != 1) return std::nullopt;
  const int d = dim();
  const std::vector<bool> table = base_table(f);
  std::vector<std::int64_t> spectrum = signs(table);
  walsh_hadamard(spectrum);
  const Rational lin = power(blr_from_spectrum(spectrum, d), 2);
  const std::vector<std::int64_t> corr = autocorrelation_from_spectrum(std::move(spectrum), d);
  // Pr_R[f(R) != f(q + R)] = flips(q) / 2^(d+1).
  const std::int64_t one = std::int64_t{1} << (d + 1);
  auto flips = [&](std::uint64_t q) { return (std::int64_t{1} << d) - corr[q]; };

  // Each distinct query carries one corrected bit, 1 with probability
  // Pr_R[f(R) != f(q + R)], independently of the others. Numerators are
  // over 2^(4(d+1)) per outcome.
  const int bits = inner_.randomness_bits();
  unsigned __int128 total = 0;
  for (std::uint64_t r = 0; r < (std::uint64_t{1} << bits); ++r) {
    const RepeatedAlmss::Block block = inner_.block(r);
    std::array<std::uint64_t, 4> distinct;
    std::array<std::int64_t, 4> p;
    std::array<int, 4> cls;
    int count = 0;
    for (int i = 0; i < 4; ++i) {
      cls[i] = static_cast<int>(std::find(distinct.begin(), distinct.begin() + count, block.queries[i]) -
                                distinct.begin());
      if (cls[i] == count) {
        distinct[count] = block.queries[i];
        p[count++] = flips(block.queries[i]);
      }
    }
    for (std::uint32_t b = 0; b < (1U << count); ++b) {
      const bool a[4] = {((b >> cls[0]) & 1U) != 0, ((b >> cls[1]) & 1U) != 0,
                         ((b >> cls[2]) & 1U) != 0, ((b >> cls[3]) & 1U) != 0};
      const auto [m, ok] = almss_decide(a, block.value);
      if (!(m && ok)) continue;
      unsigned __int128 w = 1;
      for (int k = 0; k < count; ++k) w *= static_cast<std::uint64_t>(((b >> k) & 1U) ? p[k] : one - p[k]);
      for (int k = count; k < 4; ++k) w *= static_cast<std::uint64_t>(one);
      total += w;
    }
  }
  Rational pcp(to_mpz(total), mpz_class(1) << (bits + 4 * (d + 1)));
  pcp.canonicalize();

  Acceptance out;
  out.value = lin * pcp;
  out.sub_tests = {lin, Rational(1), pcp};
  out.method = "factored";
  out.outcomes = std::uint64_t{1} << bits;
  return out;
}

// ---------------------------------------------------------------- engines

void check_compatible(const Strategy& f, const VerifierSpec& spec) {
  if (f.dim() != spec.dim() || f.repetition() != spec.repetition()) {
    throw InvalidInput(spec.name() + " needs a " + std::to_string(spec.repetition()) +
                       "-repeated strategy over {0,1}^" + std::to_string(spec.dim()) + ", got " +
                       std::to_string(f.repetition()) + "-repeated over {0,1}^" + std::to_string(f.dim()));
  }
  if (f.locality() < spec.required_locality()) {
    throw InvalidInput(spec.name() + " needs locality >= " + std::to_string(spec.required_locality()) +
                       ", strategy has " + std::to_string(f.locality()));
  }
}

Acceptance acceptance_exact(const Strategy& f, const VerifierSpec& spec, const ExactOptions& options) {
  check_compatible(f, spec);
  const int bits = spec.randomness_bits();
  const bool enumerable = bits < 63 && (std::uint64_t{1} << bits) <= options.budget;
  if (const auto* product = dynamic_cast<const ProductStrategy*>(&f);
      product != nullptr && (options.prefer_factored || !enumerable)) {
    if (auto r = spec.factored(*product)) return *r;
  }
  if (!enumerable) {
    throw ScopeExceeded(spec.name() + " randomness of 2^" + std::to_string(bits) +
                        " outcomes exceeds the exact budget of " + std::to_string(options.budget) +
                        "; use Monte-Carlo");
  }

  const std::uint64_t total = std::uint64_t{1} << bits;
  const std::size_t sub_count = spec.sub_tests().size();
  if (const ProofMixture* mixture = f.proof_mixture()) {
    const Answer mask = low_mask(spec.repetition());
    Acceptance out{Rational(0), std::vector<Rational>(sub_count, Rational(0)), "enumerated", total};
    std::vector<Answer> answers;
    Draw d;
    for (const auto& part : *mixture) {
      std::uint64_t accepted = 0;
      std::vector<std::uint64_t> passed(sub_count, 0);
      for (std::uint64_t r = 0; r < total; ++r) {
        EnumeratedBits source(r);
        spec.redraw(source, d);
        answers.resize(d.roles.size());
        for (std::size_t j = 0; j < d.roles.size(); ++j) answers[j] = part.proof(d.roles[j]) & mask;
        const Decision dec = spec.decide(d.aux, answers);
        accepted += dec.accept ? 1 : 0;
        for (std::size_t i = 0; i < sub_count; ++i) passed[i] += (dec.passed >> i) & 1U;
      }
      out.value += part.weight * ratio(accepted, 1);
      for (std::size_t i = 0; i < sub_count; ++i) out.sub_tests[i] += part.weight * ratio(passed[i], 1);
    }
    const Rational scale = power_of_half(bits);
    out.value *= scale;
    for (auto& s : out.sub_tests) s *= scale;
    return out;
  }

  std::unordered_map<RolesKey, std::uint64_t, RolesKeyHash> groups;
  for (std::uint64_t r = 0; r < total; ++r) {
    EnumeratedBits source(r);
    Draw d = spec.draw(source);
    ++groups[RolesKey{std::move(d.roles), d.aux}];
  }

  std::unordered_map<QuerySet, LocalDistribution, QuerySetHash> answers;
  Acceptance out{Rational(0), std::vector<Rational>(sub_count, Rational(0)), "enumerated", total};
  for (const auto& [key, count] : groups) {
    const QuerySet set(key.roles);
    auto it = answers.find(set);
    if (it == answers.end()) it = answers.emplace(set, f.answer(set)).first;
    const Conditional c = conditional(spec, key.roles, key.aux, it->second, set, sub_count);
    const Rational w = ratio(count, 1);
    out.value += c.accept * w;
    for (std::size_t i = 0; i < sub_count; ++i) out.sub_tests[i] += c.sub[i] * w;
  }
  const Rational scale = power_of_half(bits);
  out.value *= scale;
  for (auto& s : out.sub_tests) s *= scale;
  return out;
}

double hoeffding_half_width(std::uint64_t samples) {
  return std::sqrt(std::log(2.0 / 0.01) / (2.0 * static_cast<double>(samples)));
}

McEstimate acceptance_mc(const Strategy& f, const VerifierSpec& spec, std::uint64_t samples,
                         std::uint64_t seed, int threads) {
  if (samples == 0) throw InvalidInput("Monte-Carlo estimate needs at least one sample");
  check_compatible(f, spec);
  constexpr std::uint64_t kChunk = 1024;
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  const std::size_t sub_count = spec.sub_tests().size();
  std::vector<std::vector<double>> sums(chunks, std::vector<double>(sub_count + 1, 0.0));

  auto worker = [&](std::uint64_t first, std::uint64_t stride) {
    std::unordered_map<QuerySet, LocalDistribution, QuerySetHash> cache;
    for (std::uint64_t c = first; c < chunks; c += stride) {
      Rng rng(derive_seed(seed, c));
      StreamBits source(rng);
      const std::uint64_t end = std::min(samples, (c + 1) * kChunk);
      for (std::uint64_t i = c * kChunk; i < end; ++i) {
        const Draw d = spec.draw(source);
        const QuerySet set(d.roles);
        auto it = cache.find(set);
        if (it == cache.end()) {
          if (cache.size() > (1U << 16)) cache.clear();
          it = cache.emplace(set, f.answer(set)).first;
        }
        const Conditional cond = conditional(spec, d.roles, d.aux, it->second, set, sub_count);
        sums[c][0] += to_double(cond.accept);
        for (std::size_t k = 0; k < sub_count; ++k) sums[c][k + 1] += to_double(cond.sub[k]);
      }
    }
  };

  unsigned workers = threads > 0 ? static_cast<unsigned>(threads) : std::thread::hardware_concurrency();
  workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(chunks)));
  if (workers == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker, w, workers);
    for (auto& th : pool) th.join();
  }

  McEstimate out;
  out.samples = samples;
  out.seed = seed;
  out.sub_tests.assign(sub_count, 0.0);
  double accept = 0;
  for (const auto& s : sums) {
    accept += s[0];
    for (std::size_t k = 0; k < sub_count; ++k) out.sub_tests[k] += s[k + 1];
  }
  const double n = static_cast<double>(samples);
  out.estimate = accept / n;
  for (auto& s : out.sub_tests) s /= n;
  out.half_width = hoeffding_half_width(samples);
  return out;
}

// ------------------------------------------------------- Fourier helpers

Rational blr_pass_probability(const std::vector<bool>& table, int dim) {
  if (table.size() != (std::size_t{1} << dim)) throw InvalidInput("truth table size is not 2^dim");
  std::vector<std::int64_t> s = signs(table);
  walsh_hadamard(s);
  return blr_from_spectrum(s, dim);
}

std::vector<std::int64_t> autocorrelation(const std::vector<bool>& table, int dim) {
  if (table.size() != (std::size_t{1} << dim)) throw InvalidInput("truth table size is not 2^dim");
  std::vector<std::int64_t> s = signs(table);
  walsh_hadamard(s);
  return autocorrelation_from_spectrum(std::move(s), dim);
}

}  // namespace nspcp
