// Multiplicative functions on monic polynomials: local Euler-factor data,
// the associated von Mangoldt values, chi(n), and the census oracle for
// sigma(n).
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ffhalasz/field_poly.hpp"
#include "ffhalasz/series.hpp"

namespace ffh {

struct SpecEntry {
  int d;
  int k;
  Complex value;
};

/// f(P^k) = g(deg P, k). g(d, 0) = 1. With a support cutoff D_s, f(P^k) = 0
/// for k >= 1 whenever deg P > D_s.
class DegreeSymmetricSpec {
 public:
  using Generator = std::function<Complex(int d, int k)>;

  /// Tabulates g(d, k) for all d*k <= max_degree.
  DegreeSymmetricSpec(int max_degree, const Generator& g, std::optional<int> support_cutoff = {});

  /// Entries not listed are 0.
  static DegreeSymmetricSpec from_entries(int max_degree, const std::vector<SpecEntry>& entries,
                                          std::optional<int> support_cutoff = {});

  int max_degree() const noexcept { return max_degree_; }
  std::optional<int> support_cutoff() const noexcept { return cutoff_; }

  /// g(d, k); throws std::out_of_range when d*k exceeds max_degree.
  Complex value(int d, int k) const;

  /// Local factor coefficients (g(d,0), ..., g(d,K)), K = max_degree / d.
  std::vector<Complex> local_factor(int d) const;

  /// Every stored (d, k >= 1) value in (d, k) order, cutoff applied.
  std::vector<SpecEntry> entries() const;

  DegreeSymmetricSpec with_support_cutoff(std::optional<int> cutoff) const;

  /// g(d, k) -> xi^{dk} g(d, k).
  DegreeSymmetricSpec twisted(Complex xi) const;

 private:
  DegreeSymmetricSpec() = default;

  int max_degree_ = 0;
  std::optional<int> cutoff_;
  // table_[d][k], d >= 1, k = 0..max_degree/d
  std::vector<std::vector<Complex>> table_;
};

/// Lambda_f(P^m) for deg P = d, indexed [d][m] with m >= 1 (index 0 unused).
struct LambdaTable {
  std::vector<std::vector<Complex>> lam;
  /// Smallest kappa with |Lambda_f(P^m)| <= kappa * d on the stored range.
  double kappa_min = 0.0;

  Complex at(int d, int m) const { return lam.at(static_cast<std::size_t>(d)).at(static_cast<std::size_t>(m)); }
};

/// Lambda_f(P^m) = m d l_m with (l_m) = log of the local factor; entries
/// 0..K, entry 0 is 0.
std::vector<Complex> lambda_from_local_factor(const DegreeSymmetricSpec& spec, int d, int K);

LambdaTable lambda_table(const DegreeSymmetricSpec& spec, int N);

/// N_q(d) / q^n in floating point, exact through 128-bit counts when they fit.
double irreducible_density(std::uint64_t q, int d, int n);

struct DerivedChi {
  ChiSequence chi;
  /// First j with |chi(j)| above the declared kappa, when one was declared.
  std::optional<std::size_t> first_excess;
};

/// chi(n) = q^{-n} sum_{d | n} N_q(d) Lambda_f(P^{n/d}), n = 1..N.
/// kappa = max(1, observed) unless `declared_kappa` is given, in which case
/// kappa = max(declared, observed) and any excess is reported.
DerivedChi chi_from_degree_spec(const DegreeSymmetricSpec& spec, std::uint64_t q, int N,
                                std::optional<double> declared_kappa = {});

/// f values on specific irreducibles, falling back to a degree-symmetric spec
/// for irreducibles not listed. No closed-form chi is provided for this form.
class PerIrreducibleSpec {
 public:
  explicit PerIrreducibleSpec(DegreeSymmetricSpec fallback) : fallback_(std::move(fallback)) {}

  /// values[k-1] = f(P^k); powers past the end map to 0.
  void set(const PolyGF& irreducible, std::vector<Complex> values);

  Complex value(const PolyGF& irreducible, int k) const;

 private:
  DegreeSymmetricSpec fallback_;
  std::map<std::pair<int, std::uint64_t>, std::vector<Complex>> overrides_;
};

Complex evaluate_f(const Factorization& fac, const DegreeSymmetricSpec& spec);
Complex evaluate_f(const Factorization& fac, const PerIrreducibleSpec& spec);
Complex evaluate_f(const FactorType& type, const DegreeSymmetricSpec& spec);

/// Multiplicative evaluation through a throwaway factorizer. f(1) = 1.
Complex evaluate_f(const PolyGF& F, const DegreeSymmetricSpec& spec);

/// sigma(n) = q^{-n} sum over M_n of f(F), by direct census. Partial sums run
/// over a fixed set of index partitions and combine in partition order.
Complex oracle_sigma(PrimeField field, int n, const DegreeSymmetricSpec& spec,
                     std::uint64_t census_limit = kDefaultCensusLimit);
Complex oracle_sigma(PrimeField field, int n, const PerIrreducibleSpec& spec,
                     std::uint64_t census_limit = kDefaultCensusLimit);

/// Factor types of M_n with their multiplicities, from one full census.
struct FactorTypeCensus {
  std::uint32_t p = 0;
  int n = 0;
  std::uint64_t size = 0;
  std::map<FactorType, std::uint64_t> types;

  /// sigma(n) for any degree-symmetric f, summed in type order.
  Complex mean(const DegreeSymmetricSpec& spec) const;

  /// sum over M_n of Lambda(F) = sum over prime powers P^k of deg P.
  Count lambda_sum() const;
};

FactorTypeCensus census_factor_types(PrimeField field, int n,
                                     std::uint64_t census_limit = kDefaultCensusLimit);

enum class FunctionClass { C, CTilde };

struct ClassMembership {
  double kappa_min;
  FunctionClass cls;
  /// Membership in C(kappa) implies membership in C~(kappa).
  bool also_in_c_tilde;
};

ClassMembership class_membership(const ChiSequence& chi);
ClassMembership class_membership(const LambdaTable& lam);

}  // namespace ffh
