// Canonical and extremal inputs: f = 1, the Moebius analogue, seeded random
// class members, and the phase-aligned construction that attains the order
// of the general bound.
#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>

#include "ffhalasz/halasz.hpp"
#include "ffhalasz/mult_fn.hpp"
#include "ffhalasz/series.hpp"

namespace ffh {

/// Uniform doubles taken straight from mt19937_64 output bits; the standard
/// distributions are implementation-defined, this is not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform on the closed disk of the given radius.
  Complex disk(double radius);
  /// Uniform on the circle of the given radius.
  Complex circle(double radius);

 private:
  std::mt19937_64 engine_;
};

namespace canned {

/// g(d, k) = 1: chi = 1, sigma = 1.
DegreeSymmetricSpec one(int max_degree);

/// g(d, 1) = -1, g(d, k >= 2) = 0: chi = -1, sigma = (1, -1, 0, ...).
DegreeSymmetricSpec mobius(int max_degree);

/// g(d, 1) uniform on the disk of radius kappa, g(d, k) = g(d, 1)^k / k!.
/// The local factors are exp(g(d,1) x), so Lambda_f(P) = d g(d,1), higher
/// prime powers vanish, and kappa_min <= kappa.
DegreeSymmetricSpec random(double kappa, int max_degree, std::uint64_t seed);

/// Name-based lookup: "one", "mobius" or "random".
DegreeSymmetricSpec by_name(const std::string& name, int max_degree, double kappa = 1.0, std::uint64_t seed = 0);

}  // namespace canned

enum class ChiFamily { Disk, Circle, Twisted, Sparse };

/// Seeded chi in C~(kappa). Disk: uniform on |z| <= kappa. Circle: modulus
/// kappa, uniform phase. Twisted: kappa e^{ij alpha}. Sparse: circle values
/// on a random half of the indices, zero elsewhere.
ChiSequence random_chi(double kappa, std::size_t N, std::uint64_t seed, ChiFamily family = ChiFamily::Disk);

/// binom(i + j - 1, j) by b_0 = 1, b_j = b_{j-1} (i + j - 1) / j.
Complex complex_binomial(std::size_t j);

struct SharpExampleInstance {
  std::size_t n;
  double delta;
  double theta;
  /// Last index of the chi = i regime and of the chi = 0 regime.
  std::size_t first_end;
  std::size_t middle_end;
  ChiSequence chi;
  SigmaSequence sigma;
};

/// chi(j) = i for j < 1 + delta(n-1); 0 for 1 + delta(n-1) <= j <= (1-delta)(n-1);
/// e^{i(theta - phi_{n-j})} for j > (1-delta)(n-1), through j = n. When the
/// first and last ranges overlap the first applies. Requires n >= 2 and
/// 0 < delta < 1/2 - 1/(2n).
SharpExampleInstance sharp_example(std::size_t n, double delta, double theta = 0.0);

struct SharpExampleReport {
  std::size_t n;
  double delta;
  double theta;
  double M_lower;
  double M_upper;
  double M_over_log_n;
  /// sum_{1 <= j < 1 + delta(n-1)} |sigma(j)|
  double S;
  double S_over_log_n;
  double S_over_scale;
  CriterionReport criterion;
  Complex sigma_n;
  /// |sigma(n)| / ((1 + M) e^{-M})
  double bound_ratio;
  /// max_j |chi(j) sigma(n-j) - |sigma(n-j)| e^{i theta}| over the last range.
  double phase_alignment_residual;
};

SharpExampleReport verify_sharp_example(const SharpExampleInstance& inst, const CircleMaxOptions& circle = {});

}  // namespace ffh
