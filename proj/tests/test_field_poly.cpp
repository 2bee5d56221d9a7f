#include <set>

#include "doctest.h"
#include "ffhalasz/field_poly.hpp"
#include "oracles.hpp"

using namespace ffh;

namespace {

oracle::Poly full(const PolyGF& f) {
  oracle::Poly out(f.coeffs().begin(), f.coeffs().end());
  out.push_back(1);
  return out;
}

}  // namespace

TEST_CASE("enumerate_monics small cases") {
  const PrimeField f2(2);
  auto r0 = enumerate_monics(f2, 0);
  CHECK(r0.size() == 1);
  CHECK((*r0.begin()).degree() == 0);

  std::vector<std::string> names;
  for (const auto& f : enumerate_monics(f2, 2)) names.push_back(f.to_string());
  CHECK(names == std::vector<std::string>{"t^2", "t^2+1", "t^2+t", "t^2+t+1"});

  std::set<std::vector<std::uint32_t>> seen;
  std::uint64_t pos = 0;
  for (const auto& f : enumerate_monics(PrimeField(3), 3)) {
    CHECK(f.degree() == 3);
    CHECK(f.index() == pos);
    CHECK(PolyGF::from_index(PrimeField(3), 3, pos) == f);
    seen.insert({f.coeffs().begin(), f.coeffs().end()});
    ++pos;
  }
  CHECK(pos == 27);
  CHECK(seen.size() == 27);
}

TEST_CASE("census limit is enforced") {
  CHECK_THROWS_AS(enumerate_monics(PrimeField(2), 20, 1000), CensusLimitExceeded);
  CHECK(census_size(3, 4, 81) == 81);
  CHECK_THROWS_AS(census_size(3, 5, 81), CensusLimitExceeded);
}

TEST_CASE("prime field validation") {
  CHECK_THROWS(PrimeField(4));
  CHECK_THROWS(PrimeField(1));
  CHECK_NOTHROW(PrimeField(7));
  CHECK(is_prime(2147483647ULL));
  CHECK_FALSE(is_prime(1));
}

TEST_CASE("factor examples") {
  const PrimeField f2(2), f3(3), f5(5);
  const PolyGF t2p1_2(f2, {1, 0});
  const auto fac = factor(t2p1_2);
  REQUIRE(fac.factors.size() == 1);
  CHECK(fac.factors[0].first == PolyGF(f2, {1}));
  CHECK(fac.factors[0].second == 2);
  CHECK(fac.expand(f2) == t2p1_2);

  const PolyGF t2p1_3(f3, {1, 0});
  const auto fac3 = factor(t2p1_3);
  REQUIRE(fac3.factors.size() == 1);
  CHECK(fac3.factors[0].first == t2p1_3);
  CHECK(fac3.factors[0].second == 1);

  const PolyGF t(f5, {0});
  const auto fact = factor(t);
  REQUIRE(fact.factors.size() == 1);
  CHECK(fact.factors[0] == std::pair<PolyGF, int>(t, 1));

  CHECK_THROWS(factor(PolyGF::one(f2)));
}

TEST_CASE("factorization multiplies back into irreducible factors") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const PrimeField field(p);
    const int n = p == 2 ? 7 : (p == 3 ? 5 : 4);
    const Factorizer fz(field, n);
    for (const auto& f : enumerate_monics(field, n)) {
      const auto fac = fz.factor(f);
      CHECK(fac.expand(field) == f);
      oracle::Poly prod{1};
      for (const auto& [g, m] : fac.factors) {
        CHECK(oracle::irreducible(full(g), p));
        for (int i = 0; i < m; ++i) prod = oracle::mul(prod, full(g), p);
      }
      CHECK(prod == full(f));
      CHECK(std::is_sorted(fac.factors.begin(), fac.factors.end()));

      FactorType type, expect;
      std::vector<std::uint32_t> scratch;
      fz.factor_type(f.coeffs(), type, scratch);
      for (const auto& [g, m] : fac.factors) expect.emplace_back(g.degree(), m);
      std::sort(expect.begin(), expect.end());
      CHECK(type == expect);
    }
  }
}

TEST_CASE("polynomial product and ordering") {
  const PrimeField f3(3);
  const PolyGF a(f3, {1, 2}), b(f3, {2});
  const auto c = a * b;
  CHECK(full(c) == oracle::mul(full(a), full(b), 3));
  CHECK(PolyGF(f3, {2}) < PolyGF(f3, {0, 0}));
  CHECK(PolyGF(f3, {0, 1}) < PolyGF(f3, {2, 1}));
  CHECK(PolyGF(f3, {2, 0}) < PolyGF(f3, {0, 1}));
  CHECK(PolyGF(f3, {1, 2}).to_string() == "t^2+2t+1");
  CHECK_THROWS(PolyGF(f3, {3}));
}

TEST_CASE("irreducible_count") {
  for (std::uint64_t q : {2u, 3u, 4u, 9u, 10u}) CHECK(irreducible_count(q, 1) == q);
  CHECK(irreducible_count(2, 3) == 2);
  CHECK(irreducible_count(3, 2) == 3);
  CHECK(irreducible_count(4, 2) == 6);
  for (std::uint32_t p : {2u, 3u}) {
    for (int d = 1; d <= (p == 2 ? 6 : 4); ++d) CHECK(irreducible_count(p, d) == oracle::count_irreducible(p, d));
  }
  CHECK(to_string(irreducible_count(7, 24)) == "7982551306946640200");
  CHECK_THROWS_AS(irreducible_count(7, 100), std::overflow_error);
}

TEST_CASE("irreducibles_up_to") {
  const PrimeField f2(2);
  const auto two = irreducibles_up_to(f2, 2);
  REQUIRE(two.size() == 3);
  CHECK(two[0].to_string() == "t");
  CHECK(two[1].to_string() == "t+1");
  CHECK(two[2].to_string() == "t^2+t+1");
  CHECK(irreducibles_up_to(f2, 3).size() == 5);
  const auto lin = irreducibles_up_to(PrimeField(3), 1);
  REQUIRE(lin.size() == 3);
  CHECK(lin[2].to_string() == "t+2");
  for (int d = 1; d <= 6; ++d) {
    std::size_t expected = 0;
    for (int e = 1; e <= d; ++e) expected += static_cast<std::size_t>(irreducible_count(3, e));
    CHECK(irreducibles_up_to(PrimeField(3), d).size() == expected);
  }
}
