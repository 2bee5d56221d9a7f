#include "ffhalasz/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ffh {

KappaViolation::KappaViolation(std::size_t index, double modulus, double kappa)
    : std::domain_error("|chi(" + std::to_string(index) + ")| = " + std::to_string(modulus) +
                        " exceeds kappa = " + std::to_string(kappa)),
      index_(index) {}

ChiSequence::ChiSequence(std::vector<Complex> values, double kappa)
    : values_(std::move(values)), kappa_(kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("kappa must be positive and finite");
  for (std::size_t j = 0; j < values_.size(); ++j) {
    const double m = std::abs(values_[j]);
    if (!(m <= kappa_ * (1.0 + kKappaSlack))) throw KappaViolation(j + 1, m, kappa_);
  }
}

ChiSequence ChiSequence::with_observed_kappa(std::vector<Complex> values, double floor) {
  double kappa = floor;
  for (const auto& v : values) kappa = std::max(kappa, std::abs(v));
  if (kappa == 0.0) kappa = 1.0;
  return ChiSequence(std::move(values), kappa);
}

Complex ChiSequence::at(std::size_t j) const {
  if (j == 0 || j > values_.size()) throw std::out_of_range("chi index out of range");
  return values_[j - 1];
}

double ChiSequence::max_modulus() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

SigmaSequence::SigmaSequence(std::vector<Complex> values) : values_(std::move(values)) {
  if (values_.empty() || std::abs(values_.front() - Complex(1.0)) > 1e-12) {
    throw std::invalid_argument("sigma(0) must equal 1");
  }
}

double SigmaSequence::phase(std::size_t j) const {
  const Complex v = at(j);
  if (v == Complex(0.0)) return 0.0;
  return std::arg(v);
}

SigmaSequence sigma_from_chi(const ChiSequence& chi, std::size_t N) {
  if (N > chi.size()) throw std::out_of_range("sigma_from_chi: N exceeds stored chi length");
  const auto c = chi.values();
  std::vector<Complex> s(N + 1);
  s[0] = 1.0;
  for (std::size_t j = 1; j <= N; ++j) {
    Complex acc = 0.0;
    for (std::size_t k = 1; k <= j; ++k) acc += c[k - 1] * s[j - k];
    s[j] = acc / static_cast<double>(j);
  }
  return SigmaSequence(std::move(s));
}

ChiInversion chi_from_sigma(const SigmaSequence& sigma, double kappa_claim) {
  const auto s = sigma.values();
  const std::size_t N = sigma.degree();
  std::vector<Complex> c(N);
  std::optional<std::size_t> violation;
  double observed = 0.0;
  for (std::size_t j = 1; j <= N; ++j) {
    Complex acc = static_cast<double>(j) * s[j];
    for (std::size_t k = 1; k < j; ++k) acc -= c[k - 1] * s[j - k];
    c[j - 1] = acc;
    const double m = std::abs(acc);
    observed = std::max(observed, m);
    if (!violation && m > kappa_claim * (1.0 + kKappaSlack)) violation = j;
  }
  const double kappa = std::max(kappa_claim, observed);
  return {ChiSequence(std::move(c), kappa > 0.0 ? kappa : 1.0), violation};
}

std::vector<Complex> series_exp(std::span<const Complex> a) {
  if (a.empty()) return {};
  if (a[0] != Complex(0.0)) throw std::invalid_argument("series_exp: a[0] must be 0");
  const std::size_t N = a.size() - 1;
  std::vector<Complex> b(N + 1);
  b[0] = 1.0;
  for (std::size_t n = 1; n <= N; ++n) {
    Complex acc = 0.0;
    for (std::size_t k = 1; k <= n; ++k) acc += static_cast<double>(k) * a[k] * b[n - k];
    b[n] = acc / static_cast<double>(n);
  }
  return b;
}

std::vector<Complex> series_log(std::span<const Complex> b) {
  if (b.empty()) return {};
  if (b[0] != Complex(1.0)) throw std::invalid_argument("series_log: b[0] must be 1");
  const std::size_t N = b.size() - 1;
  std::vector<Complex> a(N + 1);
  a[0] = 0.0;
  // n b_n = sum_{k=1}^{n} k a_k b_{n-k}
  for (std::size_t n = 1; n <= N; ++n) {
    Complex acc = static_cast<double>(n) * b[n];
    for (std::size_t k = 1; k < n; ++k) acc -= static_cast<double>(k) * a[k] * b[n - k];
    a[n] = acc / static_cast<double>(n);
  }
  return a;
}

BotTruncation truncate_to_bot(const ChiSequence& chi, std::size_t n) {
  std::vector<Complex> c(chi.values().begin(), chi.values().end());
  for (std::size_t j = std::max<std::size_t>(n, 1); j <= c.size(); ++j) c[j - 1] = 0.0;
  ChiSequence bot(std::move(c), chi.kappa());
  auto sigma = sigma_from_chi(bot, bot.size());
  return {std::move(bot), std::move(sigma)};
}

}  // namespace ffh
