#include <numbers>

#include "doctest.h"
#include "ffhalasz/extremal.hpp"
#include "oracles.hpp"

using namespace ffh;

TEST_CASE("complex binomial") {
  CHECK(complex_binomial(0) == Complex(1.0));
  CHECK(std::abs(complex_binomial(1) - Complex(0.0, 1.0)) < 1e-15);
  CHECK(std::abs(complex_binomial(2) - Complex(-0.5, 0.5)) < 1e-15);

  // 1/|Gamma(i)|, with Gamma from the test-side Stirling series
  const double target = std::exp(-oracle::lgamma(Complex(0.0, 1.0)).real());
  CHECK(target == doctest::Approx(std::sqrt(std::sinh(std::numbers::pi) / std::numbers::pi)).epsilon(1e-12));
  CHECK(target == doctest::Approx(1.917310071525985).epsilon(1e-13));
  const double jb = 1e4 * std::abs(complex_binomial(10000));
  CHECK(jb == doctest::Approx(1.9172142036259618).epsilon(1e-9));
  CHECK(std::abs(jb - target) / target < 1e-3);
}

TEST_CASE("sharp example construction") {
  const auto inst = sharp_example(100, 0.3, 0.0);
  // first regime j < 1 + 0.3 * 99 = 30.7, middle up to floor(0.7 * 99) = 69
  CHECK(inst.first_end == 30);
  CHECK(inst.middle_end == 69);
  for (std::size_t j = 1; j <= 30; ++j) {
    CHECK(inst.chi.at(j) == Complex(0.0, 1.0));
    CHECK(std::abs(inst.sigma.at(j) - complex_binomial(j)) < 1e-14);
  }
  for (std::size_t j = 31; j <= 69; ++j) CHECK(inst.chi.at(j) == Complex(0.0));
  for (std::size_t j = 70; j <= 100; ++j) {
    CHECK(std::abs(std::abs(inst.chi.at(j)) - 1.0) < 1e-15);
    const Complex term = inst.chi.at(j) * inst.sigma.at(100 - j);
    CHECK(std::abs(term.imag()) < 1e-15);
    CHECK(term.real() >= 0.0);
  }
  CHECK(inst.sigma.at(1) == Complex(0.0, 1.0));

  const auto turned = sharp_example(100, 0.3, 1.0);
  for (std::size_t j = 70; j <= 100; ++j) {
    const Complex term = turned.chi.at(j) * turned.sigma.at(100 - j);
    CHECK(std::abs(term - std::abs(term) * std::polar(1.0, 1.0)) < 1e-14);
  }

  CHECK_THROWS(sharp_example(1, 0.1));
  CHECK_THROWS(sharp_example(10, 0.0));
  CHECK_THROWS(sharp_example(10, 0.45));
  CHECK_NOTHROW(sharp_example(10, 0.44));
}

TEST_CASE("sharp example report") {
  const auto rep = verify_sharp_example(sharp_example(300, 0.3));
  CHECK(rep.phase_alignment_residual < 1e-12);
  CHECK(rep.criterion.decomposition_residual < 1e-12);
  CHECK(rep.M_lower <= rep.M_upper);
  CHECK(rep.criterion.ratio > 0.01);
  CHECK(rep.bound_ratio > 0.01);
  CHECK(rep.bound_ratio < 1.0);
  double S = 0.0;
  for (std::size_t j = 1; j <= 90; ++j) S += std::abs(complex_binomial(j));
  CHECK(rep.S == doctest::Approx(S).epsilon(1e-12));
}

TEST_CASE("canned specs and random inputs") {
  const auto one = chi_from_degree_spec(canned::one(20), 2, 20).chi;
  const auto s1 = sigma_from_chi(one, 20);
  for (std::size_t j = 0; j <= 20; ++j) CHECK(std::abs(s1.at(j) - 1.0) < 1e-12);
  const auto mob = sigma_from_chi(chi_from_degree_spec(canned::mobius(20), 3, 20).chi, 20);
  for (std::size_t j = 2; j <= 20; ++j) CHECK(std::abs(mob.at(j)) < 1e-12);

  const auto a = canned::random(1.0, 100, 42);
  const auto b = canned::random(1.0, 100, 42);
  for (int d = 1; d <= 100; ++d) {
    CHECK(a.value(d, 1) == b.value(d, 1));
    CHECK(std::abs(a.value(d, 1)) <= 1.0);
  }
  const auto chi = chi_from_degree_spec(a, 2, 100).chi;
  CHECK(chi.max_modulus() <= 1.0 + 1e-12);
  CHECK(canned::random(1.0, 10, 43).value(1, 1) != a.value(1, 1));
  CHECK_THROWS(canned::by_name("zeta", 5));

  for (int fam = 0; fam < 4; ++fam) {
    const auto c = random_chi(0.7, 50, 3, static_cast<ChiFamily>(fam));
    const auto d = random_chi(0.7, 50, 3, static_cast<ChiFamily>(fam));
    CHECK(c.max_modulus() <= 0.7 * (1 + 1e-15));
    for (std::size_t j = 1; j <= 50; ++j) CHECK(c.at(j) == d.at(j));
  }

  Rng rng(5489);
  std::mt19937_64 ref(5489);
  CHECK(rng.uniform() == static_cast<double>(ref() >> 11) / 9007199254740992.0);
}
