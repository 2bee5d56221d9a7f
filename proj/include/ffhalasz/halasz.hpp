// The Halasz quantity M(n), computed from a certified enclosure of
// max |F^bot| on the circle |z| = 1/q, and the mean-value bounds it feeds.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "ffhalasz/series.hpp"

namespace ffh {

/// Slack applied to every bound verdict: |lhs| <= bound * (1 + kVerdictSlack).
inline constexpr double kVerdictSlack = 1e-9;

class ToleranceUnreachable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CircleMaxOptions {
  /// Relative width of the enclosure: upper <= lower * (1 + tol).
  double tol = 1e-9;
  std::size_t min_grid = 256;
  std::size_t points_per_degree = 32;
  int refine_brackets = 8;
  double golden_width = 1e-12;
  /// Total budget of grid points plus direct evaluations.
  std::uint64_t evaluation_cap = std::uint64_t{1} << 26;
};

/// lower <= max_theta |F^bot(e^{i theta}/q)| <= upper.
struct CertifiedMax {
  double lower = 1.0;
  double upper = 1.0;
  double argmax_theta = 0.0;
  std::size_t grid_points = 0;
  std::uint64_t evaluations = 0;
};

/// Encloses max_theta exp(h(theta)), h(theta) = Re sum_{j<n} chi(j)/j e^{ij theta}.
///
/// h is sampled on a uniform grid (FFT), the best grid brackets are polished
/// by golden-section search, and the enclosure is closed by branch and bound
/// over grid cells using |h'| <= sum |chi(j)| and |h''| <= sum j |chi(j)|,
/// with floating-point evaluation error folded into every cell bound.
CertifiedMax max_abs_F_bot_on_circle(const ChiSequence& chi, std::size_t n, const CircleMaxOptions& opts = {});
CertifiedMax max_abs_F_bot_on_circle(const ChiSequence& chi, std::size_t n, double tol);

struct MInterval {
  /// From the upper end of the circle maximum.
  double lower;
  /// From the lower end of the circle maximum.
  double upper;
  CertifiedMax max;
};

/// M = kappa log(2n) - log max|F^bot|.
MInterval compute_M(const ChiSequence& chi, std::size_t n, double kappa, const CircleMaxOptions& opts = {});

/// 2 kappa (kappa + 1 + M) e^{-M} (2n)^{kappa-1}.
double halasz_bound(double M, std::size_t n, double kappa);

/// Bound for f supported on irreducibles of degree <= (1-delta)(n-1).
double smooth_bound(double M, std::size_t n, double kappa, double delta, double q);

/// Same as smooth_bound without the (1/kappa)(1 - e^{M/kappa}/2n)^{delta(n-1)}
/// term; always a lower bound for smooth_bound.
double smooth_bound_without_decay(double M, std::size_t n, double kappa, double delta, double q);

/// Bound on |sigma_m(n)| for 1 <= m < n - 1.
double sigma_m_bound(double M, std::size_t n, std::size_t m, double kappa);

/// Same display with the truncation point m <= (1-delta)(n-1).
double sigma_m_bound_delta(double M, std::size_t n, double kappa, double delta);

/// sigma_m(n) = (1/n) sum_{j=1}^{m} chi(j) sigma(n-j).
Complex sigma_m_from_sum(const ChiSequence& chi, const SigmaSequence& sigma, std::size_t n, std::size_t m);

struct ContourOptions {
  /// Trapezoid points on the circle; 0 means max(64, 8n).
  std::size_t circle_points = 0;
  /// Circle points are doubled until successive values agree to this.
  double circle_tol = 1e-10;
  std::size_t max_circle_points = 4096;
  double outer_tol = 1e-12;
};

struct ContourResult {
  Complex value;
  double error_estimate;
  std::size_t circle_points;
};

/// sigma_m(n) from its double-integral definition: the t-integral after the
/// substitution t = e^{-s}, and a trapezoid rule on the inner circle, moved
/// from |z| = 1/(q sqrt t) to |qz| = 1/2 by Cauchy's theorem.
/// The value does not depend on q. Requires n <= 12 and 1 <= m < n.
ContourResult sigma_m_contour(const ChiSequence& chi, std::size_t n, std::size_t m, const ContourOptions& opts = {});

struct CriterionReport {
  double delta;
  std::size_t m;
  /// sum_{(1-delta)(n-1) < j <= n} chi(j) sigma(n-j)
  Complex tail_sum;
  /// kappa M e^{-M} (2n)^kappa
  double threshold_scale;
  double ratio;
  /// (kappa + 1) / M
  double small_o_check;
  Complex sigma_m;
  /// |sigma(n) - sigma_m(n) - tail_sum/n|
  double decomposition_residual;
};

CriterionReport converse_criterion(const ChiSequence& chi, const SigmaSequence& sigma, std::size_t n, double delta,
                                   double kappa, double M);

struct ReportOptions {
  CircleMaxOptions circle{};
  /// Supplying delta and q asserts that f is supported on irreducibles of
  /// degree <= (1-delta)(n-1); the smooth bound is then evaluated.
  std::optional<double> delta;
  std::optional<double> q;
  std::optional<std::size_t> prop_m;
};

struct HalaszReport {
  std::size_t n = 0;
  double kappa = 0.0;
  double M_lower = 0.0;
  double M_upper = 0.0;
  CertifiedMax circle_max;
  Complex sigma_n;
  double bound_main = 0.0;
  bool verdict_main = false;
  std::optional<double> delta;
  std::optional<double> q;
  std::optional<double> bound_smooth;
  std::optional<bool> verdict_smooth;
  std::optional<std::size_t> prop_m;
  std::optional<Complex> sigma_m;
  std::optional<double> bound_prop;
  std::optional<bool> verdict_prop;

  bool all_pass() const {
    return verdict_main && verdict_smooth.value_or(true) && verdict_prop.value_or(true);
  }
};

/// Evaluates every applicable bound at degree n; chi must cover 1..n.
HalaszReport make_halasz_report(const ChiSequence& chi, std::size_t n, double kappa, const ReportOptions& opts = {});

}  // namespace ffh
