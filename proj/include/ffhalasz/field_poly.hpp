// Monic polynomials over prime fields: enumeration, trial-division
// factorization and irreducible counts.
#pragma once

#include <compare>
#include <cstdint>
#include <iterator>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ffh {

/// Exact unsigned count wide enough for q^d with q = 7, d = 24.
using Count = unsigned __int128;

std::string to_string(Count value);

inline constexpr std::uint64_t kDefaultCensusLimit = 100'000'000;

/// Raised when an enumeration would exceed the configured census limit.
class CensusLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool is_prime(std::uint64_t n);

/// p^n as an exact count, or nothing on overflow of 128 bits.
bool checked_pow(std::uint64_t base, unsigned exponent, Count& out);

/// Throws CensusLimitExceeded unless p^n <= limit; returns p^n.
std::uint64_t census_size(std::uint32_t p, int n, std::uint64_t limit);

class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p);

  std::uint32_t p() const noexcept { return p_; }

  friend bool operator==(PrimeField, PrimeField) = default;

 private:
  std::uint32_t p_;
};

/// Monic polynomial c_0 + c_1 t + ... + c_{n-1} t^{n-1} + t^n. The leading
/// coefficient is implicit and never stored.
class PolyGF {
 public:
  PolyGF(PrimeField field, std::vector<std::uint32_t> coeffs);

  static PolyGF one(PrimeField field) { return PolyGF(field, {}); }

  /// Inverse of index(): base-p digits of `index`, c_0 least significant.
  static PolyGF from_index(PrimeField field, int degree, std::uint64_t index);

  PrimeField field() const noexcept { return field_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()); }
  std::span<const std::uint32_t> coeffs() const noexcept { return coeffs_; }

  /// Position in the lexicographic enumeration of M_n.
  std::uint64_t index() const;

  std::string to_string() const;

  friend PolyGF operator*(const PolyGF& a, const PolyGF& b);
  friend bool operator==(const PolyGF& a, const PolyGF& b) = default;

  /// Canonical order: degree first, then coefficients compared from the top.
  friend std::strong_ordering operator<=>(const PolyGF& a, const PolyGF& b);

 private:
  PrimeField field_;
  std::vector<std::uint32_t> coeffs_;
};

struct Factorization {
  std::vector<std::pair<PolyGF, int>> factors;

  PolyGF expand(PrimeField field) const;
  bool operator==(const Factorization&) const = default;
};

/// Lazily produced M_n in lexicographic order.
class MonicRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = PolyGF;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    const PolyGF& operator*() const { return current_; }
    const PolyGF* operator->() const { return &current_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    bool operator==(const iterator& other) const { return position_ == other.position_; }

   private:
    friend class MonicRange;
    iterator(PolyGF start, std::uint64_t position) : current_(std::move(start)), position_(position) {}

    PolyGF current_{PrimeField(2), {}};
    std::uint64_t position_ = 0;
  };

  iterator begin() const;
  iterator end() const;
  std::uint64_t size() const noexcept { return size_; }

 private:
  friend MonicRange enumerate_monics(PrimeField, int, std::uint64_t);
  MonicRange(PrimeField field, int degree, std::uint64_t size)
      : field_(field), degree_(degree), size_(size) {}

  PrimeField field_;
  int degree_;
  std::uint64_t size_;
};

MonicRange enumerate_monics(PrimeField field, int n, std::uint64_t census_limit = kDefaultCensusLimit);

/// Gauss necklace count of monic irreducibles of degree d over a field of
/// order q. Throws std::overflow_error when q^d does not fit in 128 bits.
Count irreducible_count(std::uint64_t q, int d);

/// All monic irreducibles of degree <= max_degree, in canonical order.
std::vector<PolyGF> irreducibles_up_to(PrimeField field, int max_degree,
                                       std::uint64_t census_limit = kDefaultCensusLimit);

/// (degree, multiplicity) pairs of a factorization, sorted.
using FactorType = std::vector<std::pair<int, int>>;

/// a*b mod p, tabulated for small p.
class ModMul {
 public:
  explicit ModMul(std::uint64_t p);
  std::uint64_t p() const noexcept { return p_; }
  std::uint32_t operator()(std::uint64_t a, std::uint64_t b) const {
    return table_.empty() ? static_cast<std::uint32_t>(a * b % p_) : table_[a * p_ + b];
  }

 private:
  std::uint64_t p_;
  std::vector<std::uint32_t> table_;
};

/// Trial division against a sieve of irreducibles, built once and reused.
class Factorizer {
 public:
  /// Supports inputs of degree <= max_degree.
  Factorizer(PrimeField field, int max_degree, std::uint64_t census_limit = kDefaultCensusLimit);

  PrimeField field() const noexcept { return field_; }
  int max_degree() const noexcept { return max_degree_; }
  std::span<const PolyGF> sieve() const noexcept { return sieve_; }

  Factorization factor(const PolyGF& f) const;
  bool is_irreducible(const PolyGF& f) const;

  /// Factor type of the monic polynomial with low coefficients `coeffs`.
  /// `scratch` is reused across calls to avoid allocation.
  void factor_type(std::span<const std::uint32_t> coeffs, FactorType& out,
                   std::vector<std::uint32_t>& scratch) const;

 private:
  PrimeField field_;
  int max_degree_;
  std::vector<PolyGF> sieve_;
  // Sieve polynomials with the leading 1 included, for the division kernel.
  std::vector<std::vector<std::uint32_t>> full_;
  ModMul mul_;
};

/// Factor with a throwaway sieve. Requires deg f >= 1.
Factorization factor(const PolyGF& f);

}  // namespace ffh
