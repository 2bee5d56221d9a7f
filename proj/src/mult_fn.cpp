#include "ffhalasz/mult_fn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ffhalasz/arith.hpp"
#include "ffhalasz/parallel.hpp"

namespace ffh {

namespace {

constexpr std::uint64_t kPartitions = 64;

// Runs `visit(coeffs)` over the index range [begin, end) of M_n in order.
template <class Visit>
void walk_range(std::uint32_t p, int n, std::uint64_t begin, std::uint64_t end, Visit&& visit) {
  std::vector<std::uint32_t> coeffs(static_cast<std::size_t>(n));
  std::uint64_t rest = begin;
  for (auto& c : coeffs) {
    c = static_cast<std::uint32_t>(rest % p);
    rest /= p;
  }
  for (std::uint64_t i = begin; i < end; ++i) {
    visit(std::span<const std::uint32_t>(coeffs));
    for (auto& c : coeffs) {
      if (++c < p) break;
      c = 0;
    }
  }
}

std::pair<std::uint64_t, std::uint64_t> partition_bounds(std::uint64_t size, std::uint64_t parts, std::uint64_t i) {
  const auto lo = static_cast<std::uint64_t>(static_cast<Count>(size) * i / parts);
  const auto hi = static_cast<std::uint64_t>(static_cast<Count>(size) * (i + 1) / parts);
  return {lo, hi};
}

template <class PerPoly>
Complex census_mean(PrimeField field, int n, std::uint64_t census_limit, PerPoly&& per_poly) {
  const std::uint64_t size = census_size(field.p(), n, census_limit);
  const Factorizer fz(field, std::max(n, 1), census_limit);
  const std::uint64_t parts = std::min(size, kPartitions);
  auto partial = map_partitions<Complex>(parts, [&](std::size_t i) {
    auto [lo, hi] = partition_bounds(size, parts, i);
    Complex acc = 0.0;
    FactorType type;
    std::vector<std::uint32_t> scratch;
    walk_range(field.p(), n, lo, hi, [&](std::span<const std::uint32_t> coeffs) {
      acc += per_poly(fz, coeffs, type, scratch);
    });
    return acc;
  });
  Complex total = 0.0;
  for (const auto& v : partial) total += v;
  return total / static_cast<double>(size);
}

}  // namespace

DegreeSymmetricSpec::DegreeSymmetricSpec(int max_degree, const Generator& g, std::optional<int> support_cutoff)
    : max_degree_(max_degree), cutoff_(support_cutoff) {
  if (max_degree < 0) throw std::invalid_argument("max_degree must be non-negative");
  table_.resize(static_cast<std::size_t>(max_degree) + 1);
  for (int d = 1; d <= max_degree; ++d) {
    auto& row = table_[static_cast<std::size_t>(d)];
    row.resize(static_cast<std::size_t>(max_degree / d) + 1);
    row[0] = 1.0;
    for (int k = 1; k <= max_degree / d; ++k) row[static_cast<std::size_t>(k)] = g(d, k);
  }
}

DegreeSymmetricSpec DegreeSymmetricSpec::from_entries(int max_degree, const std::vector<SpecEntry>& entries,
                                                      std::optional<int> support_cutoff) {
  DegreeSymmetricSpec spec(max_degree, [](int, int) { return Complex(0.0); }, support_cutoff);
  for (const auto& e : entries) {
    if (e.d < 1 || e.k < 1) throw std::invalid_argument("spec entries need d >= 1 and k >= 1");
    if (e.d * e.k > max_degree) continue;
    spec.table_[static_cast<std::size_t>(e.d)][static_cast<std::size_t>(e.k)] = e.value;
  }
  return spec;
}

Complex DegreeSymmetricSpec::value(int d, int k) const {
  if (d < 1 || k < 0) throw std::invalid_argument("g(d, k) needs d >= 1, k >= 0");
  if (k == 0) return 1.0;
  if (static_cast<long long>(d) * k > max_degree_) {
    throw std::out_of_range("g(" + std::to_string(d) + ", " + std::to_string(k) + ") beyond spec degree");
  }
  if (cutoff_ && d > *cutoff_) return 0.0;
  return table_[static_cast<std::size_t>(d)][static_cast<std::size_t>(k)];
}

std::vector<Complex> DegreeSymmetricSpec::local_factor(int d) const {
  std::vector<Complex> a(static_cast<std::size_t>(max_degree_ / d) + 1);
  for (int k = 0; k <= max_degree_ / d; ++k) a[static_cast<std::size_t>(k)] = value(d, k);
  return a;
}

std::vector<SpecEntry> DegreeSymmetricSpec::entries() const {
  std::vector<SpecEntry> out;
  for (int d = 1; d <= max_degree_; ++d) {
    for (int k = 1; k <= max_degree_ / d; ++k) out.push_back({d, k, value(d, k)});
  }
  return out;
}

DegreeSymmetricSpec DegreeSymmetricSpec::with_support_cutoff(std::optional<int> cutoff) const {
  DegreeSymmetricSpec copy = *this;
  copy.cutoff_ = cutoff;
  return copy;
}

DegreeSymmetricSpec DegreeSymmetricSpec::twisted(Complex xi) const {
  DegreeSymmetricSpec copy = *this;
  for (int d = 1; d <= max_degree_; ++d) {
    auto& row = copy.table_[static_cast<std::size_t>(d)];
    for (int k = 1; k < static_cast<int>(row.size()); ++k) row[static_cast<std::size_t>(k)] *= std::pow(xi, d * k);
  }
  return copy;
}

std::vector<Complex> lambda_from_local_factor(const DegreeSymmetricSpec& spec, int d, int K) {
  std::vector<Complex> a(static_cast<std::size_t>(K) + 1);
  for (int k = 0; k <= K; ++k) a[static_cast<std::size_t>(k)] = spec.value(d, k);
  auto ell = series_log(a);
  for (int m = 1; m <= K; ++m) ell[static_cast<std::size_t>(m)] *= static_cast<double>(m) * d;
  return ell;
}

LambdaTable lambda_table(const DegreeSymmetricSpec& spec, int N) {
  if (N > spec.max_degree()) throw std::out_of_range("lambda_table: N exceeds spec degree");
  LambdaTable table;
  table.lam.resize(static_cast<std::size_t>(N) + 1);
  for (int d = 1; d <= N; ++d) {
    table.lam[static_cast<std::size_t>(d)] = lambda_from_local_factor(spec, d, N / d);
    for (int m = 1; m <= N / d; ++m) {
      table.kappa_min = std::max(table.kappa_min, std::abs(table.at(d, m)) / d);
    }
  }
  return table;
}

double irreducible_density(std::uint64_t q, int d, int n) {
  try {
    const Count count = irreducible_count(q, d);
    return static_cast<double>(static_cast<long double>(count) * std::pow(static_cast<long double>(q), -n));
  } catch (const std::overflow_error&) {
    long double sum = 0.0L;
    for (int e : divisors(d)) {
      const int mu = moebius(e);
      if (mu != 0) sum += mu * std::pow(static_cast<long double>(q), static_cast<long double>(d / e - n));
    }
    return static_cast<double>(sum / d);
  }
}

DerivedChi chi_from_degree_spec(const DegreeSymmetricSpec& spec, std::uint64_t q, int N,
                                std::optional<double> declared_kappa) {
  if (q < 2) throw std::invalid_argument("q must be at least 2");
  const auto table = lambda_table(spec, N);
  std::vector<Complex> chi(static_cast<std::size_t>(N));
  double observed = 0.0;
  std::optional<std::size_t> excess;
  for (int n = 1; n <= N; ++n) {
    Complex acc = 0.0;
    for (int d : divisors(n)) acc += irreducible_density(q, d, n) * table.at(d, n / d);
    chi[static_cast<std::size_t>(n - 1)] = acc;
    observed = std::max(observed, std::abs(acc));
    if (declared_kappa && !excess && std::abs(acc) > *declared_kappa * (1.0 + kKappaSlack)) {
      excess = static_cast<std::size_t>(n);
    }
  }
  const double kappa = std::max(declared_kappa.value_or(1.0), observed);
  return {ChiSequence(std::move(chi), kappa), excess};
}

void PerIrreducibleSpec::set(const PolyGF& irreducible, std::vector<Complex> values) {
  overrides_[{irreducible.degree(), irreducible.index()}] = std::move(values);
}

Complex PerIrreducibleSpec::value(const PolyGF& irreducible, int k) const {
  if (k == 0) return 1.0;
  auto it = overrides_.find({irreducible.degree(), irreducible.index()});
  if (it == overrides_.end()) return fallback_.value(irreducible.degree(), k);
  const auto& v = it->second;
  return static_cast<std::size_t>(k) <= v.size() ? v[static_cast<std::size_t>(k) - 1] : Complex(0.0);
}

Complex evaluate_f(const Factorization& fac, const DegreeSymmetricSpec& spec) {
  Complex acc = 1.0;
  for (const auto& [poly, mult] : fac.factors) acc *= spec.value(poly.degree(), mult);
  return acc;
}

Complex evaluate_f(const Factorization& fac, const PerIrreducibleSpec& spec) {
  Complex acc = 1.0;
  for (const auto& [poly, mult] : fac.factors) acc *= spec.value(poly, mult);
  return acc;
}

Complex evaluate_f(const FactorType& type, const DegreeSymmetricSpec& spec) {
  Complex acc = 1.0;
  for (const auto& [d, mult] : type) acc *= spec.value(d, mult);
  return acc;
}

Complex evaluate_f(const PolyGF& F, const DegreeSymmetricSpec& spec) {
  if (F.degree() == 0) return 1.0;
  return evaluate_f(factor(F), spec);
}

Complex oracle_sigma(PrimeField field, int n, const DegreeSymmetricSpec& spec, std::uint64_t census_limit) {
  return census_mean(field, n, census_limit,
                     [&](const Factorizer& fz, std::span<const std::uint32_t> coeffs, FactorType& type,
                         std::vector<std::uint32_t>& scratch) {
                       fz.factor_type(coeffs, type, scratch);
                       return evaluate_f(type, spec);
                     });
}

Complex oracle_sigma(PrimeField field, int n, const PerIrreducibleSpec& spec, std::uint64_t census_limit) {
  return census_mean(field, n, census_limit,
                     [&](const Factorizer& fz, std::span<const std::uint32_t> coeffs, FactorType&,
                         std::vector<std::uint32_t>&) {
                       if (coeffs.empty()) return Complex(1.0);
                       PolyGF F(field, std::vector<std::uint32_t>(coeffs.begin(), coeffs.end()));
                       return evaluate_f(fz.factor(F), spec);
                     });
}

Complex FactorTypeCensus::mean(const DegreeSymmetricSpec& spec) const {
  Complex acc = 0.0;
  for (const auto& [type, count] : types) acc += static_cast<double>(count) * evaluate_f(type, spec);
  return acc / static_cast<double>(size);
}

Count FactorTypeCensus::lambda_sum() const {
  Count acc = 0;
  for (const auto& [type, count] : types) {
    if (type.size() == 1) acc += static_cast<Count>(type.front().first) * count;
  }
  return acc;
}

FactorTypeCensus census_factor_types(PrimeField field, int n, std::uint64_t census_limit) {
  FactorTypeCensus census;
  census.p = field.p();
  census.n = n;
  census.size = census_size(field.p(), n, census_limit);
  const Factorizer fz(field, std::max(n, 1), census_limit);
  const std::uint64_t parts = std::min(census.size, kPartitions);
  using Local = std::map<FactorType, std::uint64_t>;
  auto partial = map_partitions<Local>(parts, [&](std::size_t i) {
    auto [lo, hi] = partition_bounds(census.size, parts, i);
    Local local;
    FactorType type;
    std::vector<std::uint32_t> scratch;
    walk_range(field.p(), n, lo, hi, [&](std::span<const std::uint32_t> coeffs) {
      fz.factor_type(coeffs, type, scratch);
      ++local[type];
    });
    return local;
  });
  for (const auto& local : partial) {
    for (const auto& [type, count] : local) census.types[type] += count;
  }
  return census;
}

ClassMembership class_membership(const ChiSequence& chi) {
  return {chi.max_modulus(), FunctionClass::CTilde, true};
}

ClassMembership class_membership(const LambdaTable& lam) {
  return {lam.kappa_min, FunctionClass::C, true};
}

}  // namespace ffh
