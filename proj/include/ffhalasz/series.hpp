// Truncated complex power series: the sigma/chi convolution recurrence,
// exp/log of truncated series and the degree-n truncation f^bot.
#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace ffh {

using Complex = std::complex<double>;

/// Relative slack allowed when checking |chi(j)| <= kappa.
inline constexpr double kKappaSlack = 1e-12;

/// Thrown when a value breaks the declared class bound kappa.
class KappaViolation : public std::domain_error {
 public:
  KappaViolation(std::size_t index, double modulus, double kappa);
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// chi(1..N) together with a declared bound kappa, |chi(j)| <= kappa.
class ChiSequence {
 public:
  /// `values[j-1]` is chi(j). Throws KappaViolation on the first |chi(j)| > kappa.
  ChiSequence(std::vector<Complex> values, double kappa);

  /// kappa := max(floor, max_j |chi(j)|).
  static ChiSequence with_observed_kappa(std::vector<Complex> values, double floor = 0.0);

  std::size_t size() const noexcept { return values_.size(); }
  double kappa() const noexcept { return kappa_; }

  /// chi(j) for 1 <= j <= size().
  Complex at(std::size_t j) const;
  std::span<const Complex> values() const noexcept { return values_; }
  double max_modulus() const;

 private:
  std::vector<Complex> values_;
  double kappa_;
};

/// sigma(0..N) with sigma(0) = 1.
class SigmaSequence {
 public:
  explicit SigmaSequence(std::vector<Complex> values);

  /// Largest stored index N.
  std::size_t degree() const noexcept { return values_.size() - 1; }
  Complex at(std::size_t j) const { return values_.at(j); }
  std::span<const Complex> values() const noexcept { return values_; }

  double modulus(std::size_t j) const { return std::abs(at(j)); }
  /// phi_j with sigma(j) = |sigma(j)| e^{i phi_j}; 0 when sigma(j) = 0.
  double phase(std::size_t j) const;

 private:
  std::vector<Complex> values_;
};

/// j sigma(j) = sum_{k=1}^{j} chi(k) sigma(j-k), sigma(0) = 1, for j <= N.
SigmaSequence sigma_from_chi(const ChiSequence& chi, std::size_t N);

struct ChiInversion {
  /// kappa is max(kappa_claim, observed max), so the sequence is always valid.
  ChiSequence chi;
  /// First index j with |chi(j)| > kappa_claim, if any.
  std::optional<std::size_t> first_violation;
};

/// Inverse of sigma_from_chi over the full stored range of `sigma`.
ChiInversion chi_from_sigma(const SigmaSequence& sigma, double kappa_claim);

/// b = exp(a) truncated at the length of `a`; a[0] must be 0.
std::vector<Complex> series_exp(std::span<const Complex> a);

/// a = log(b) truncated at the length of `b`; b[0] must be 1. a[0] = 0.
std::vector<Complex> series_log(std::span<const Complex> b);

struct BotTruncation {
  ChiSequence chi;
  SigmaSequence sigma;
};

/// chi^bot(j) = chi(j) for j < n and 0 otherwise; sigma^bot from the
/// recurrence on chi^bot over the same stored range.
BotTruncation truncate_to_bot(const ChiSequence& chi, std::size_t n);

}  // namespace ffh
