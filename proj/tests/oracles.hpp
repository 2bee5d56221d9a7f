// Reference implementations for the tests. Each one is deliberately naive and
// shares no code with the library.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
using Poly = std::vector<std::uint32_t>;  // full coefficients, low to high

inline Poly mul(const Poly& a, const Poly& b, std::uint32_t p) {
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  }
  return out;
}

/// Monic polynomial of the given degree with low digits of `index`.
inline Poly monic(std::uint32_t p, int degree, std::uint64_t index) {
  Poly out(static_cast<std::size_t>(degree) + 1, 0);
  for (int i = 0; i < degree; ++i) {
    out[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(index % p);
    index /= p;
  }
  out.back() = 1;
  return out;
}

inline std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

/// Irreducible iff no product of two monic polynomials of positive degree
/// equals f. Exhaustive; only for tiny p^deg.
inline bool irreducible(const Poly& f, std::uint32_t p) {
  const int n = static_cast<int>(f.size()) - 1;
  for (int a = 1; a <= n / 2; ++a) {
    for (std::uint64_t i = 0; i < ipow(p, a); ++i) {
      const Poly g = monic(p, a, i);
      for (std::uint64_t k = 0; k < ipow(p, n - a); ++k) {
        if (mul(g, monic(p, n - a, k), p) == f) return false;
      }
    }
  }
  return n >= 1;
}

inline std::uint64_t count_irreducible(std::uint32_t p, int d) {
  std::uint64_t c = 0;
  for (std::uint64_t i = 0; i < ipow(p, d); ++i) c += irreducible(monic(p, d, i), p) ? 1 : 0;
  return c;
}

/// Truncated product of power series.
inline std::vector<Complex> series_mul(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  std::vector<Complex> out(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; i + j < a.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

/// exp(a) as sum_k a^k / k!, exact in finitely many terms since a[0] = 0.
inline std::vector<Complex> series_exp(const std::vector<Complex>& a) {
  std::vector<Complex> out(a.size(), 0.0);
  std::vector<Complex> term(a.size(), 0.0);
  term[0] = 1.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += term[i];
    term = series_mul(term, a);
    for (auto& t : term) t /= static_cast<double>(k + 1);
  }
  return out;
}

/// sigma from the generating function exp(sum chi(j) z^j / j).
inline std::vector<Complex> sigma_from_chi(const std::vector<Complex>& chi, std::size_t N) {
  std::vector<Complex> a(N + 1, 0.0);
  for (std::size_t j = 1; j <= N && j <= chi.size(); ++j) a[j] = chi[j - 1] / static_cast<double>(j);
  return series_exp(a);
}

/// log Gamma(z) for complex z: shift to Re z >= 20, then Stirling's series.
inline Complex lgamma(Complex z) {
  Complex shift = 0.0;
  while (z.real() < 20.0) {
    shift += std::log(z);
    z += 1.0;
  }
  const Complex z2 = z * z;
  const Complex series = 1.0 / (12.0 * z) - 1.0 / (360.0 * z * z2) + 1.0 / (1260.0 * z * z2 * z2) -
                         1.0 / (1680.0 * z * z2 * z2 * z2);
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + series - shift;
}

/// max over a uniform grid of |exp(sum_{j<n} chi(j)/j w^j)| on |w| = 1,
/// by direct summation. A lower bound for the true maximum.
inline double circle_max_grid(const std::vector<Complex>& chi, std::size_t n, std::size_t points) {
  double best = -1e300;
  for (std::size_t g = 0; g < points; ++g) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(g) / static_cast<double>(points);
    double h = 0.0;
    for (std::size_t j = 1; j < n && j <= chi.size(); ++j) {
      h += std::real(chi[j - 1] * std::polar(1.0, theta * static_cast<double>(j))) / static_cast<double>(j);
    }
    best = std::max(best, h);
  }
  return std::exp(best);
}

}  // namespace oracle
