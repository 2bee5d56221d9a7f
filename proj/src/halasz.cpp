#include "ffhalasz/halasz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ffhalasz/numeric.hpp"

namespace ffh {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// In-place radix-2 transform, X_k = sum_j a_j e^{+2 pi i jk / G}.
void fft_forward(std::vector<Complex>& a) {
  const std::size_t G = a.size();
  for (std::size_t i = 1, j = 0; i < G; ++i) {
    std::size_t bit = G >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  std::vector<Complex> twiddle(G / 2);
  for (std::size_t k = 0; k < G / 2; ++k) twiddle[k] = std::polar(1.0, kTwoPi * static_cast<double>(k) / G);
  for (std::size_t len = 2; len <= G; len <<= 1) {
    const std::size_t stride = G / len;
    for (std::size_t i = 0; i < G; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const Complex u = a[i + k];
        const Complex v = a[i + k + len / 2] * twiddle[k * stride];
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
}

struct HValue {
  double h;
  double dh;
};

// h(theta) = Re sum c_j e^{ij theta} with c_j = chi(j)/j, and h'(theta).
class TrigSum {
 public:
  explicit TrigSum(std::span<const Complex> chi) : chi_(chi) {
    for (std::size_t j = 1; j <= chi_.size(); ++j) {
      const double a = std::abs(chi_[j - 1]);
      coeff_sum_ += a / static_cast<double>(j);
      lip1_ += a;
      lip2_ += a * static_cast<double>(j);
    }
    const double terms = static_cast<double>(chi_.size()) + 8.0;
    err_h_ = kEps * (terms * coeff_sum_ + 8.0 * lip1_);
    err_dh_ = kEps * (terms * lip1_ + 8.0 * lip2_);
  }

  HValue operator()(double theta) const {
    double h = 0.0;
    double dh = 0.0;
    for (std::size_t j = 1; j <= chi_.size(); ++j) {
      const Complex z = chi_[j - 1] * std::polar(1.0, static_cast<double>(j) * theta);
      h += z.real() / static_cast<double>(j);
      dh -= z.imag();
    }
    return {h, dh};
  }

  double coeff_sum() const { return coeff_sum_; }
  double lip1() const { return lip1_; }
  double lip2() const { return lip2_; }
  double err_h() const { return err_h_; }
  double err_dh() const { return err_dh_; }

 private:
  std::span<const Complex> chi_;
  double coeff_sum_ = 0.0;
  double lip1_ = 0.0;
  double lip2_ = 0.0;
  double err_h_ = 0.0;
  double err_dh_ = 0.0;
};

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

struct Cell {
  double center;
  double radius;
  double h;
  double dh;
  double err_h;
  double err_dh;
};

}  // namespace

CertifiedMax max_abs_F_bot_on_circle(const ChiSequence& chi, std::size_t n, const CircleMaxOptions& opts) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("circle max tolerance must be positive");
  const std::size_t terms = n >= 1 ? n - 1 : 0;
  if (terms > chi.size()) throw std::out_of_range("chi does not cover indices below n");
  const auto coeffs = chi.values().first(terms);
  const TrigSum h(coeffs);

  CertifiedMax out;
  if (terms == 0 || h.coeff_sum() == 0.0) return out;

  std::size_t G = 1;
  while (G < std::max(opts.min_grid, opts.points_per_degree * terms)) G <<= 1;
  if (G > opts.evaluation_cap) throw ToleranceUnreachable("initial grid exceeds the evaluation cap");
  out.grid_points = G;
  std::uint64_t evaluations = G;

  std::vector<Complex> values(G, 0.0), slopes(G, 0.0);
  for (std::size_t j = 1; j <= terms; ++j) {
    values[j] = coeffs[j - 1] / static_cast<double>(j);
    slopes[j] = Complex(0.0, 1.0) * coeffs[j - 1];
  }
  fft_forward(values);
  fft_forward(slopes);
  const double fft_scale = 5.0 * kEps * std::log2(static_cast<double>(G)) * std::sqrt(static_cast<double>(G));
  const double fft_err_h = fft_scale * h.coeff_sum() + h.err_h();
  const double fft_err_dh = fft_scale * h.lip1() + h.err_dh();
  const double step = kTwoPi / static_cast<double>(G);

  double best_h = -std::numeric_limits<double>::infinity();
  double best_theta = 0.0;
  auto consider = [&](double theta, double value) {
    const double t = wrap_angle(theta);
    if (value > best_h || (value == best_h && t < best_theta)) {
      best_h = value;
      best_theta = t;
    }
  };
  auto direct = [&](double theta) {
    ++evaluations;
    const auto v = h(theta);
    consider(theta, v.h);
    return v;
  };

  // Golden-section polish of the best grid brackets.
  std::vector<std::size_t> peaks;
  for (std::size_t k = 0; k < G; ++k) {
    const double v = values[k].real();
    if (v >= values[(k + G - 1) % G].real() && v >= values[(k + 1) % G].real()) peaks.push_back(k);
  }
  std::sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) {
    return values[a].real() > values[b].real() || (values[a].real() == values[b].real() && a < b);
  });
  if (peaks.size() > static_cast<std::size_t>(opts.refine_brackets)) peaks.resize(static_cast<std::size_t>(opts.refine_brackets));
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (std::size_t k : peaks) {
    double a = (static_cast<double>(k) - 1.0) * step;
    double b = (static_cast<double>(k) + 1.0) * step;
    direct(static_cast<double>(k) * step);
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = direct(x1).h;
    double f2 = direct(x2).h;
    while (b - a > opts.golden_width) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + inv_phi * (b - a);
        f2 = direct(x2).h;
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - inv_phi * (b - a);
        f1 = direct(x1).h;
      }
      if (evaluations > opts.evaluation_cap) throw ToleranceUnreachable("evaluation cap reached during refinement");
    }
  }

  // Branch and bound over grid cells.
  const double log_tol = std::log1p(opts.tol);
  auto target = [&] { return best_h - h.err_h() + 0.999 * log_tol; };
  auto cell_bound = [&](const Cell& c) {
    const double first = h.lip1() * c.radius;
    const double second = (std::abs(c.dh) + c.err_dh) * c.radius + 0.5 * h.lip2() * c.radius * c.radius;
    return c.h + c.err_h + std::min(first, second);
  };
  double upper_h = -std::numeric_limits<double>::infinity();
  std::vector<Cell> stack;
  stack.reserve(G);
  for (std::size_t k = G; k-- > 0;) {
    stack.push_back({static_cast<double>(k) * step, step / 2.0, values[k].real(), slopes[k].real(), fft_err_h, fft_err_dh});
  }
  while (!stack.empty()) {
    const Cell c = stack.back();
    stack.pop_back();
    const double b = cell_bound(c);
    if (b <= target()) {
      upper_h = std::max(upper_h, b);
      continue;
    }
    if (c.radius < 1e-15 || evaluations + 2 > opts.evaluation_cap) {
      throw ToleranceUnreachable("circle maximum tolerance unreachable within the evaluation cap");
    }
    const double r = c.radius / 2.0;
    for (double center : {c.center - r, c.center + r}) {
      const auto v = direct(center);
      stack.push_back({center, r, v.h, v.dh, h.err_h(), h.err_dh()});
    }
  }

  const double lower_h = best_h - h.err_h();
  out.lower = std::exp(lower_h);
  out.upper = std::exp(std::max(upper_h, lower_h));
  out.argmax_theta = best_theta;
  out.evaluations = evaluations;
  return out;
}

CertifiedMax max_abs_F_bot_on_circle(const ChiSequence& chi, std::size_t n, double tol) {
  CircleMaxOptions opts;
  opts.tol = tol;
  return max_abs_F_bot_on_circle(chi, n, opts);
}

MInterval compute_M(const ChiSequence& chi, std::size_t n, double kappa, const CircleMaxOptions& opts) {
  if (n < 1) throw std::invalid_argument("compute_M requires n >= 1");
  const auto cm = max_abs_F_bot_on_circle(chi, n, opts);
  const double top = kappa * std::log(2.0 * static_cast<double>(n));
  return {top - std::log(cm.upper), top - std::log(cm.lower), cm};
}

double halasz_bound(double M, std::size_t n, double kappa) {
  const double log2n = std::log(2.0 * static_cast<double>(n));
  return 2.0 * kappa * (kappa + 1.0 + M) * std::exp(-M + (kappa - 1.0) * log2n);
}

namespace {

// 2 kappa^2 e^{-M} (2n)^{kappa-1} (1 - log(1 - e^{-x}) + (1/kappa)(1 - e^{M/kappa}/2n)^{power})
double prop_display(double M, std::size_t n, double kappa, double x, double power, bool with_decay) {
  const double nn = static_cast<double>(n);
  const double prefactor = 2.0 * kappa * kappa * std::exp(-M + (kappa - 1.0) * std::log(2.0 * nn));
  const double log_term = -std::log(-std::expm1(-x));
  double decay = 0.0;
  if (with_decay) {
    const double ratio = std::min(1.0, std::exp(M / kappa) / (2.0 * nn));
    if (power == 0.0) {
      decay = 1.0 / kappa;
    } else if (ratio < 1.0) {
      decay = std::exp(power * std::log1p(-ratio)) / kappa;
    }
  }
  return prefactor * (1.0 + log_term + decay);
}

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
}

double smooth_tail(std::size_t n, double kappa, double delta, double q) {
  if (!(q >= 2.0)) throw std::invalid_argument("q must be at least 2");
  const double nn = static_cast<double>(n);
  const double ratio = q / (q - 1.0);
  return ratio * ratio * kappa * std::exp((kappa - 2.0) * std::log(nn) - (1.0 - delta) * (nn - 1.0) / 2.0 * std::log(q));
}

}  // namespace

double sigma_m_bound(double M, std::size_t n, std::size_t m, double kappa) {
  if (m < 1 || m + 1 >= n) throw std::invalid_argument("sigma_m_bound requires 1 <= m < n - 1");
  const double gap = static_cast<double>(n - 1 - m);
  const double x = gap / (2.0 * std::sqrt(static_cast<double>(m) * static_cast<double>(n - 1)));
  return prop_display(M, n, kappa, x, gap, true);
}

double sigma_m_bound_delta(double M, std::size_t n, double kappa, double delta) {
  check_delta(delta);
  const double x = delta / (2.0 * std::sqrt(1.0 - delta));
  return prop_display(M, n, kappa, x, delta * (static_cast<double>(n) - 1.0), true);
}

double smooth_bound(double M, std::size_t n, double kappa, double delta, double q) {
  check_delta(delta);
  return sigma_m_bound_delta(M, n, kappa, delta) + smooth_tail(n, kappa, delta, q);
}

double smooth_bound_without_decay(double M, std::size_t n, double kappa, double delta, double q) {
  check_delta(delta);
  const double x = delta / (2.0 * std::sqrt(1.0 - delta));
  return prop_display(M, n, kappa, x, 0.0, false) + smooth_tail(n, kappa, delta, q);
}

Complex sigma_m_from_sum(const ChiSequence& chi, const SigmaSequence& sigma, std::size_t n, std::size_t m) {
  if (m < 1 || m >= n) throw std::invalid_argument("sigma_m requires 1 <= m < n");
  Complex acc = 0.0;
  for (std::size_t j = 1; j <= m; ++j) acc += chi.at(j) * sigma.at(n - j);
  return acc / static_cast<double>(n);
}

constexpr double kContourRadius = 0.5;

ContourResult sigma_m_contour(const ChiSequence& chi, std::size_t n, std::size_t m, const ContourOptions& opts) {
  if (n > 12) throw std::invalid_argument("sigma_m_contour is limited to n <= 12");
  if (m < 1 || m >= n) throw std::invalid_argument("sigma_m_contour requires 1 <= m < n");
  if (n - 1 > chi.size()) throw std::out_of_range("chi does not cover indices below n");
  const auto c = chi.values();
  const int nn = static_cast<int>(n);

  // Inner circle integral at t = e^{-s}: (1/n) (1/2 pi) int A(w) w^{-n} B(tw) G(tw) d phi.
  // B G is entire and A(w) w^{-n} has its only pole at 0, so the circle
  // |w| = t^{-1/2} may be shrunk to |w| = kContourRadius, where trapezoid
  // aliasing decays like kContourRadius^P.
  auto inner = [&](double s, std::size_t P) {
    const double t = std::exp(-s);
    Complex acc = 0.0;
    for (std::size_t p = 0; p < P; ++p) {
      const double phi = kTwoPi * static_cast<double>(p) / static_cast<double>(P);
      const Complex w = std::polar(kContourRadius, phi);
      Complex a = 0.0;
      for (int j = static_cast<int>(m); j >= 1; --j) a = (a + c[static_cast<std::size_t>(j - 1)]) * w;
      const Complex u = t * w;
      Complex b = 0.0;
      Complex g = 0.0;
      Complex power = 1.0;
      for (int j = 1; j < nn; ++j) {
        power *= u;
        b += c[static_cast<std::size_t>(j - 1)] * power;
        g += c[static_cast<std::size_t>(j - 1)] * power / static_cast<double>(j);
      }
      acc += a * std::pow(w, -nn) * b * std::exp(g);
    }
    return acc / (static_cast<double>(P) * static_cast<double>(n));
  };

  // Both parts are integrated with scale * e^{-s} added, so the relative
  // tolerance refers to the size of the whole integrand even when one part
  // vanishes identically.
  auto outer = [&](std::size_t P, double& err) {
    using boost::math::quadrature::gauss_kronrod;
    const double inf = std::numeric_limits<double>::infinity();
    const double scale =
        gauss_kronrod<double, 15>::integrate([&](double s) { return std::abs(inner(s, P)); }, 0.0, inf, 5, 1e-3);
    if (scale == 0.0) {
      err = 0.0;
      return Complex(0.0);
    }
    auto part = [&](auto pick, double& e) {
      return gauss_kronrod<double, 61>::integrate(
                 [&](double s) { return pick(inner(s, P)) + scale * std::exp(-s); }, 0.0, inf, 15, opts.outer_tol,
                 &e) -
             scale;
    };
    double err_re = 0.0;
    double err_im = 0.0;
    const double re = part([](Complex z) { return z.real(); }, err_re);
    const double im = part([](Complex z) { return z.imag(); }, err_im);
    err = err_re + err_im;
    return Complex(re, im);
  };

  std::size_t P = opts.circle_points != 0 ? opts.circle_points : std::max<std::size_t>(64, 8 * n);
  double err_prev = 0.0;
  Complex prev = outer(P, err_prev);
  for (;;) {
    double err_next = 0.0;
    const Complex next = outer(2 * P, err_next);
    const double diff = std::abs(next - prev);
    if (diff <= opts.circle_tol || 2 * P >= opts.max_circle_points) {
      return {next, diff + err_next, 2 * P};
    }
    P *= 2;
    prev = next;
  }
}

CriterionReport converse_criterion(const ChiSequence& chi, const SigmaSequence& sigma, std::size_t n, double delta,
                                   double kappa, double M) {
  check_delta(delta);
  if (n < 1 || n > chi.size() || n > sigma.degree()) throw std::out_of_range("chi and sigma must cover index n");
  CriterionReport rep{};
  rep.delta = delta;
  rep.m = floor_index((1.0 - delta) * (static_cast<double>(n) - 1.0));
  Complex tail = 0.0;
  for (std::size_t j = rep.m + 1; j <= n; ++j) tail += chi.at(j) * sigma.at(n - j);
  rep.tail_sum = tail;
  rep.threshold_scale = kappa * M * std::exp(-M + kappa * std::log(2.0 * static_cast<double>(n)));
  const double abs_tail = std::abs(tail);
  rep.ratio = abs_tail == 0.0 ? 0.0
              : rep.threshold_scale > 0.0 ? abs_tail / rep.threshold_scale
                                          : std::numeric_limits<double>::infinity();
  rep.small_o_check = M > 0.0 ? (kappa + 1.0) / M : std::numeric_limits<double>::infinity();
  rep.sigma_m = rep.m >= 1 ? sigma_m_from_sum(chi, sigma, n, rep.m) : Complex(0.0);
  rep.decomposition_residual = std::abs(sigma.at(n) - rep.sigma_m - tail / static_cast<double>(n));
  return rep;
}

HalaszReport make_halasz_report(const ChiSequence& chi, std::size_t n, double kappa, const ReportOptions& opts) {
  if (n < 1 || n > chi.size()) throw std::out_of_range("chi must cover 1..n");
  for (std::size_t j = 1; j <= n; ++j) {
    const double v = std::abs(chi.at(j));
    if (v > kappa * (1.0 + kKappaSlack)) throw KappaViolation(j, v, kappa);
  }
  HalaszReport rep;
  rep.n = n;
  rep.kappa = kappa;
  const auto sigma = sigma_from_chi(chi, n);
  rep.sigma_n = sigma.at(n);
  const auto mi = compute_M(chi, n, kappa, opts.circle);
  rep.M_lower = mi.lower;
  rep.M_upper = mi.upper;
  rep.circle_max = mi.max;
  const double abs_sigma = std::abs(rep.sigma_n);
  rep.bound_main = halasz_bound(rep.M_lower, n, kappa);
  rep.verdict_main = abs_sigma <= rep.bound_main * (1.0 + kVerdictSlack);
  if (opts.delta && opts.q) {
    rep.delta = opts.delta;
    rep.q = opts.q;
    rep.bound_smooth = smooth_bound(rep.M_lower, n, kappa, *opts.delta, *opts.q);
    rep.verdict_smooth = abs_sigma <= *rep.bound_smooth * (1.0 + kVerdictSlack);
  }
  if (opts.prop_m) {
    const std::size_t m = *opts.prop_m;
    rep.prop_m = m;
    rep.sigma_m = sigma_m_from_sum(chi, sigma, n, m);
    rep.bound_prop = sigma_m_bound(rep.M_lower, n, m, kappa);
    rep.verdict_prop = std::abs(*rep.sigma_m) <= *rep.bound_prop * (1.0 + kVerdictSlack);
  }
  return rep;
}

}  // namespace ffh
