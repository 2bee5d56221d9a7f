#include "ffhalasz/field_poly.hpp"

#include <algorithm>
#include <stdexcept>

#include "ffhalasz/arith.hpp"

namespace ffh {

std::string to_string(Count value) {
  if (value == 0) return "0";
  std::string out;
  while (value > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

bool checked_pow(std::uint64_t base, unsigned exponent, Count& out) {
  Count acc = 1;
  const Count max = ~Count{0};
  for (unsigned i = 0; i < exponent; ++i) {
    if (base != 0 && acc > max / base) return false;
    acc *= base;
  }
  out = acc;
  return true;
}

std::uint64_t census_size(std::uint32_t p, int n, std::uint64_t limit) {
  if (n < 0) throw std::invalid_argument("degree must be non-negative");
  Count size = 0;
  if (!checked_pow(p, static_cast<unsigned>(n), size) || size > limit) {
    throw CensusLimitExceeded("census of " + std::to_string(p) + "^" + std::to_string(n) +
                              " polynomials exceeds limit " + std::to_string(limit));
  }
  return static_cast<std::uint64_t>(size);
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p > 0x7fffffffu || !is_prime(p)) {
    throw std::invalid_argument("field modulus " + std::to_string(p) + " is not a prime below 2^31");
  }
}

PolyGF::PolyGF(PrimeField field, std::vector<std::uint32_t> coeffs)
    : field_(field), coeffs_(std::move(coeffs)) {
  for (auto c : coeffs_) {
    if (c >= field_.p()) throw std::invalid_argument("coefficient not reduced mod p");
  }
}

PolyGF PolyGF::from_index(PrimeField field, int degree, std::uint64_t index) {
  std::vector<std::uint32_t> coeffs(static_cast<std::size_t>(degree));
  for (auto& c : coeffs) {
    c = static_cast<std::uint32_t>(index % field.p());
    index /= field.p();
  }
  if (index != 0) throw std::out_of_range("index exceeds p^degree");
  return PolyGF(field, std::move(coeffs));
}

std::uint64_t PolyGF::index() const {
  Count acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * field_.p() + *it;
    if (acc > ~std::uint64_t{0}) throw std::overflow_error("polynomial index exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

std::string PolyGF::to_string() const {
  auto term = [](std::uint32_t c, int power) {
    std::string s;
    if (c != 1 || power == 0) s += std::to_string(c);
    if (power >= 1) s += "t";
    if (power >= 2) s += "^" + std::to_string(power);
    return s;
  };
  std::string out = term(1, degree());
  for (int i = degree() - 1; i >= 0; --i) {
    if (coeffs_[static_cast<std::size_t>(i)] != 0) out += "+" + term(coeffs_[static_cast<std::size_t>(i)], i);
  }
  return out;
}

PolyGF operator*(const PolyGF& a, const PolyGF& b) {
  if (!(a.field_ == b.field_)) throw std::invalid_argument("polynomials over different fields");
  const std::uint64_t p = a.field_.p();
  const auto da = static_cast<std::size_t>(a.degree());
  const auto db = static_cast<std::size_t>(b.degree());
  // Full coefficient vectors with the leading 1.
  std::vector<std::uint64_t> fa(a.coeffs_.begin(), a.coeffs_.end());
  fa.push_back(1);
  std::vector<std::uint64_t> fb(b.coeffs_.begin(), b.coeffs_.end());
  fb.push_back(1);
  std::vector<std::uint64_t> prod(da + db + 1, 0);
  for (std::size_t i = 0; i <= da; ++i) {
    for (std::size_t j = 0; j <= db; ++j) {
      prod[i + j] = (prod[i + j] + fa[i] * fb[j] % p) % p;
    }
  }
  return PolyGF(a.field_, std::vector<std::uint32_t>(prod.begin(), prod.end() - 1));
}

std::strong_ordering operator<=>(const PolyGF& a, const PolyGF& b) {
  if (auto c = a.field_.p() <=> b.field_.p(); c != 0) return c;
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.coeffs_.rbegin(), a.coeffs_.rend(),
                                                b.coeffs_.rbegin(), b.coeffs_.rend());
}

PolyGF Factorization::expand(PrimeField field) const {
  PolyGF acc = PolyGF::one(field);
  for (const auto& [poly, mult] : factors) {
    for (int k = 0; k < mult; ++k) acc = acc * poly;
  }
  return acc;
}

MonicRange::iterator& MonicRange::iterator::operator++() {
  ++position_;
  const auto p = current_.field().p();
  auto coeffs = std::vector<std::uint32_t>(current_.coeffs().begin(), current_.coeffs().end());
  for (auto& c : coeffs) {
    if (++c < p) break;
    c = 0;
  }
  current_ = PolyGF(current_.field(), std::move(coeffs));
  return *this;
}

MonicRange::iterator MonicRange::begin() const {
  return iterator(PolyGF(field_, std::vector<std::uint32_t>(static_cast<std::size_t>(degree_), 0)), 0);
}

MonicRange::iterator MonicRange::end() const {
  return iterator(PolyGF(field_, {}), size_);
}

MonicRange enumerate_monics(PrimeField field, int n, std::uint64_t census_limit) {
  return MonicRange(field, n, census_size(field.p(), n, census_limit));
}

Count irreducible_count(std::uint64_t q, int d) {
  if (q < 2 || d < 1) throw std::invalid_argument("irreducible_count needs q >= 2 and d >= 1");
  Count top = 0;
  if (!checked_pow(q, static_cast<unsigned>(d), top) || top > (~Count{0} >> 1)) {
    throw std::overflow_error("q^d overflows 127 bits");
  }
  using Signed = __int128;
  Signed sum = 0;
  for (int e = 1; e <= d; ++e) {
    if (d % e != 0) continue;
    const int mu = moebius(e);
    if (mu == 0) continue;
    Count term = 0;
    checked_pow(q, static_cast<unsigned>(d / e), term);
    sum += mu * static_cast<Signed>(term);
  }
  if (sum % d != 0) throw std::logic_error("necklace sum not divisible by d");
  return static_cast<Count>(sum / d);
}

namespace {

constexpr std::uint64_t kTabulatedPrimeLimit = 256;

}  // namespace

ModMul::ModMul(std::uint64_t p) : p_(p) {
  if (p > kTabulatedPrimeLimit) return;
  table_.resize(p * p);
  for (std::uint64_t a = 0; a < p; ++a) {
    for (std::uint64_t b = 0; b < p; ++b) table_[a * p + b] = static_cast<std::uint32_t>(a * b % p);
  }
}

namespace {

// Divides the monic `num` (full coefficients, leading 1 last) by the monic
// `den` in place. On exact division, `num` becomes the quotient.
bool divide_exact(std::vector<std::uint32_t>& num, std::span<const std::uint32_t> den,
                  std::vector<std::uint32_t>& work, const ModMul& mul) {
  const std::uint64_t p = mul.p();
  const std::size_t dn = num.size() - 1;
  const std::size_t dd = den.size() - 1;
  if (dd > dn) return false;
  work.assign(num.begin(), num.end());
  for (std::size_t i = dn + 1; i-- > dd;) {
    const std::uint64_t c = work[i];
    if (c == 0) continue;
    for (std::size_t k = 0; k <= dd; ++k) {
      const std::uint32_t t = mul(c, den[k]);
      auto& slot = work[i - dd + k];
      slot = slot >= t ? slot - t : static_cast<std::uint32_t>(slot + p - t);
    }
    work[i] = static_cast<std::uint32_t>(c);  // quotient digit, stored above the remainder
  }
  for (std::size_t k = 0; k < dd; ++k) {
    if (work[k] != 0) return false;
  }
  num.assign(work.begin() + static_cast<std::ptrdiff_t>(dd), work.end());
  return true;
}

}  // namespace

std::vector<PolyGF> irreducibles_up_to(PrimeField field, int max_degree, std::uint64_t census_limit) {
  if (max_degree < 0) throw std::invalid_argument("degree must be non-negative");
  census_size(field.p(), max_degree, census_limit);
  std::vector<PolyGF> found;
  std::vector<std::vector<std::uint32_t>> full;
  std::vector<std::uint32_t> num, work;
  const ModMul mul(field.p());
  for (int d = 1; d <= max_degree; ++d) {
    for (const auto& f : enumerate_monics(field, d, census_limit)) {
      bool irreducible = true;
      for (const auto& den : full) {
        if (2 * (den.size() - 1) > static_cast<std::size_t>(d)) break;
        num.assign(f.coeffs().begin(), f.coeffs().end());
        num.push_back(1);
        if (divide_exact(num, den, work, mul)) {
          irreducible = false;
          break;
        }
      }
      if (irreducible) {
        found.push_back(f);
        auto& back = full.emplace_back(f.coeffs().begin(), f.coeffs().end());
        back.push_back(1);
      }
    }
  }
  return found;
}

Factorizer::Factorizer(PrimeField field, int max_degree, std::uint64_t census_limit)
    : field_(field),
      max_degree_(max_degree),
      sieve_(irreducibles_up_to(field, max_degree / 2, census_limit)),
      mul_(field.p()) {
  full_.reserve(sieve_.size());
  for (const auto& s : sieve_) {
    auto& back = full_.emplace_back(s.coeffs().begin(), s.coeffs().end());
    back.push_back(1);
  }
}

Factorization Factorizer::factor(const PolyGF& f) const {
  if (f.degree() < 1) throw std::invalid_argument("factor requires degree >= 1");
  if (f.degree() > max_degree_) throw std::out_of_range("polynomial degree exceeds factorizer sieve");
  if (!(f.field() == field_)) throw std::invalid_argument("polynomial over a different field");
  Factorization out;
  std::vector<std::uint32_t> rem(f.coeffs().begin(), f.coeffs().end());
  rem.push_back(1);
  std::vector<std::uint32_t> work;
  for (std::size_t i = 0; i < full_.size(); ++i) {
    const auto& den = full_[i];
    if (2 * (den.size() - 1) > rem.size() - 1) break;
    int mult = 0;
    while (divide_exact(rem, den, work, mul_)) ++mult;
    if (mult > 0) out.factors.emplace_back(sieve_[i], mult);
  }
  if (rem.size() > 1) {
    out.factors.emplace_back(PolyGF(field_, std::vector<std::uint32_t>(rem.begin(), rem.end() - 1)), 1);
  }
  std::sort(out.factors.begin(), out.factors.end());
  return out;
}

bool Factorizer::is_irreducible(const PolyGF& f) const {
  if (f.degree() < 1) return false;
  const auto fac = factor(f);
  return fac.factors.size() == 1 && fac.factors.front().second == 1;
}

void Factorizer::factor_type(std::span<const std::uint32_t> coeffs, FactorType& out,
                             std::vector<std::uint32_t>& scratch) const {
  out.clear();
  if (static_cast<int>(coeffs.size()) > max_degree_) throw std::out_of_range("degree exceeds factorizer sieve");
  thread_local std::vector<std::uint32_t> work;
  scratch.assign(coeffs.begin(), coeffs.end());
  scratch.push_back(1);
  for (const auto& den : full_) {
    const std::size_t dd = den.size() - 1;
    if (2 * dd > scratch.size() - 1) break;
    int mult = 0;
    while (divide_exact(scratch, den, work, mul_)) ++mult;
    if (mult > 0) out.emplace_back(static_cast<int>(dd), mult);
  }
  if (scratch.size() > 1) out.emplace_back(static_cast<int>(scratch.size() - 1), 1);
  std::sort(out.begin(), out.end());
}

Factorization factor(const PolyGF& f) {
  return Factorizer(f.field(), f.degree()).factor(f);
}

}  // namespace ffh
