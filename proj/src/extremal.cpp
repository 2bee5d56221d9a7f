#include "ffhalasz/extremal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ffhalasz/numeric.hpp"

namespace ffh {

Complex Rng::disk(double radius) {
  const double r = radius * std::sqrt(uniform());
  return std::polar(r, 2.0 * std::numbers::pi * uniform());
}

Complex Rng::circle(double radius) {
  return std::polar(radius, 2.0 * std::numbers::pi * uniform());
}

namespace canned {

DegreeSymmetricSpec one(int max_degree) {
  return DegreeSymmetricSpec(max_degree, [](int, int) { return Complex(1.0); });
}

DegreeSymmetricSpec mobius(int max_degree) {
  return DegreeSymmetricSpec(max_degree, [](int, int k) { return k == 1 ? Complex(-1.0) : Complex(0.0); });
}

DegreeSymmetricSpec random(double kappa, int max_degree, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Complex> linear(static_cast<std::size_t>(max_degree) + 1);
  for (int d = 1; d <= max_degree; ++d) linear[static_cast<std::size_t>(d)] = rng.disk(kappa);
  return DegreeSymmetricSpec(max_degree, [&](int d, int k) {
    Complex v = 1.0;
    for (int i = 1; i <= k; ++i) v *= linear[static_cast<std::size_t>(d)] / static_cast<double>(i);
    return v;
  });
}

DegreeSymmetricSpec by_name(const std::string& name, int max_degree, double kappa, std::uint64_t seed) {
  if (name == "one") return one(max_degree);
  if (name == "mobius") return mobius(max_degree);
  if (name == "random") return random(kappa, max_degree, seed);
  throw std::invalid_argument("unknown spec '" + name + "' (expected one, mobius or random)");
}

}  // namespace canned

ChiSequence random_chi(double kappa, std::size_t N, std::uint64_t seed, ChiFamily family) {
  Rng rng(seed);
  std::vector<Complex> values(N);
  switch (family) {
    case ChiFamily::Disk:
      for (auto& v : values) v = rng.disk(kappa);
      break;
    case ChiFamily::Circle:
      for (auto& v : values) v = rng.circle(kappa);
      break;
    case ChiFamily::Twisted: {
      const double alpha = 2.0 * std::numbers::pi * rng.uniform();
      for (std::size_t j = 1; j <= N; ++j) values[j - 1] = std::polar(kappa, alpha * static_cast<double>(j));
      break;
    }
    case ChiFamily::Sparse:
      for (auto& v : values) {
        const Complex c = rng.circle(kappa);
        v = rng.uniform() < 0.5 ? c : Complex(0.0);
      }
      break;
  }
  return ChiSequence(std::move(values), kappa);
}

Complex complex_binomial(std::size_t j) {
  const Complex i(0.0, 1.0);
  Complex b = 1.0;
  for (std::size_t k = 1; k <= j; ++k) b *= (i + static_cast<double>(k) - 1.0) / static_cast<double>(k);
  return b;
}

SharpExampleInstance sharp_example(std::size_t n, double delta, double theta) {
  if (n < 2) throw std::invalid_argument("sharp_example requires n >= 2");
  const double nn = static_cast<double>(n);
  if (!(delta > 0.0 && delta < 0.5 - 0.5 / nn)) {
    throw std::invalid_argument("sharp_example requires 0 < delta < 1/2 - 1/(2n)");
  }
  const double first_limit = 1.0 + delta * (nn - 1.0);
  const double middle_limit = (1.0 - delta) * (nn - 1.0);

  std::vector<Complex> chi(n);
  std::vector<Complex> sigma(n + 1);
  sigma[0] = 1.0;
  std::size_t first_end = 0;
  std::size_t middle_end = 0;
  for (std::size_t j = 1; j <= n; ++j) {
    Complex c;
    if (index_below(j, first_limit)) {
      c = Complex(0.0, 1.0);
      first_end = j;
    } else if (j <= floor_index(middle_limit)) {
      c = 0.0;
      middle_end = j;
    } else {
      const std::size_t partner = n - j;
      if (partner >= j) throw std::logic_error("phase partner not yet determined");
      if (sigma[partner] == Complex(0.0)) throw std::logic_error("phase partner sigma vanished");
      c = std::polar(1.0, theta - std::arg(sigma[partner]));
    }
    chi[j - 1] = c;
    Complex acc = 0.0;
    for (std::size_t k = 1; k <= j; ++k) acc += chi[k - 1] * sigma[j - k];
    sigma[j] = acc / static_cast<double>(j);
  }
  if (middle_end == 0) middle_end = first_end;
  return {n, delta, theta, first_end, middle_end, ChiSequence(std::move(chi), 1.0), SigmaSequence(std::move(sigma))};
}

SharpExampleReport verify_sharp_example(const SharpExampleInstance& inst, const CircleMaxOptions& circle) {
  SharpExampleReport rep{};
  rep.n = inst.n;
  rep.delta = inst.delta;
  rep.theta = inst.theta;
  const auto mi = compute_M(inst.chi, inst.n, 1.0, circle);
  rep.M_lower = mi.lower;
  rep.M_upper = mi.upper;
  const double M = mi.lower;
  const double nn = static_cast<double>(inst.n);
  const double log_n = std::log(nn);
  rep.M_over_log_n = M / log_n;
  for (std::size_t j = 1; j <= inst.first_end; ++j) rep.S += inst.sigma.modulus(j);
  rep.S_over_log_n = rep.S / log_n;
  rep.S_over_scale = rep.S / (M * std::exp(-M) * nn);
  rep.criterion = converse_criterion(inst.chi, inst.sigma, inst.n, inst.delta, 1.0, M);
  rep.sigma_n = inst.sigma.at(inst.n);
  rep.bound_ratio = std::abs(rep.sigma_n) / ((1.0 + M) * std::exp(-M));
  const Complex aligned = std::polar(1.0, inst.theta);
  for (std::size_t j = std::max(inst.middle_end, inst.first_end) + 1; j <= inst.n; ++j) {
    const Complex term = inst.chi.at(j) * inst.sigma.at(inst.n - j);
    rep.phase_alignment_residual =
        std::max(rep.phase_alignment_residual, std::abs(term - inst.sigma.modulus(inst.n - j) * aligned));
  }
  return rep;
}

}  // namespace ffh
