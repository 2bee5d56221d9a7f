#include "ffhalasz/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ffhalasz/extremal.hpp"
#include "ffhalasz/halasz.hpp"
#include "ffhalasz/io.hpp"
#include "ffhalasz/mult_fn.hpp"
#include "ffhalasz/numeric.hpp"
#include "ffhalasz/parallel.hpp"

namespace ffh::cli {

namespace {

using io::Json;

constexpr double kOracleTolerance = 1e-9;
constexpr double kIdentityTolerance = 1e-10;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string subcommand;
  std::optional<std::uint32_t> p;
  std::optional<std::uint64_t> q;
  std::vector<std::size_t> n;
  std::optional<std::size_t> n_max;
  std::optional<int> d;
  std::optional<std::size_t> m;
  std::optional<double> kappa;
  std::optional<double> delta;
  double theta = 0.0;
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  std::uint64_t census_limit = kDefaultCensusLimit;
  double tol = 1e-9;
  std::string spec;
  std::string chi_path;
  bool force_kappa = false;
  bool list = false;
  bool timing = false;
  std::string out;
  std::string format = "csv";

  Json echo() const {
    auto opt = [](const auto& v) { return v ? Json(*v) : Json(nullptr); };
    return Json{{"tool", "ffhalasz"},
                {"version", kToolVersion},
                {"subcommand", subcommand},
                {"p", opt(p)},
                {"q", opt(q)},
                {"n", n},
                {"n_max", opt(n_max)},
                {"d", opt(d)},
                {"m", opt(m)},
                {"kappa", opt(kappa)},
                {"delta", opt(delta)},
                {"theta", theta},
                {"seed", seed},
                {"trials", trials},
                {"census_limit", census_limit},
                {"tol", tol},
                {"spec", spec.empty() ? Json(nullptr) : Json(spec)},
                {"chi", chi_path.empty() ? Json(nullptr) : Json(chi_path)},
                {"force_kappa", force_kappa},
                {"format", format}};
  }

  std::size_t single_n() const {
    if (n.size() != 1) throw UsageError("--n takes exactly one value for " + subcommand);
    return n.front();
  }

  /// --n alone, or every degree from --n through --n-max.
  std::vector<std::size_t> n_range() const {
    const std::size_t lo = single_n();
    const std::size_t hi = n_max.value_or(lo);
    if (hi < lo) throw UsageError("--n-max must not be below --n");
    std::vector<std::size_t> out;
    for (std::size_t k = lo; k <= hi; ++k) out.push_back(k);
    return out;
  }
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = seed ^ (a * 0x9e3779b97f4a7c15ULL) ^ (b * 0xbf58476d1ce4e5b9ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct ResolvedSpec {
  DegreeSymmetricSpec spec;
  std::string id;
  std::optional<std::uint64_t> q;
};

ResolvedSpec resolve_spec(const RunConfig& cfg, int max_degree) {
  if (cfg.spec.empty()) throw UsageError("--spec is required");
  if (cfg.spec == "one" || cfg.spec == "mobius" || cfg.spec == "random") {
    return {canned::by_name(cfg.spec, max_degree, cfg.kappa.value_or(1.0), cfg.seed), cfg.spec, std::nullopt};
  }
  auto loaded = io::load_spec(cfg.spec, max_degree);
  return {std::move(loaded.spec), std::filesystem::path(cfg.spec).stem().string(), loaded.q};
}

std::uint64_t require_q(const RunConfig& cfg, std::optional<std::uint64_t> from_file) {
  if (cfg.q) return *cfg.q;
  if (cfg.p) return *cfg.p;
  if (from_file) return *from_file;
  throw UsageError("--q is required");
}

/// chi from --chi FILE or from --spec with --q, covering at least `length`.
ChiSequence input_chi(const RunConfig& cfg, std::size_t length, std::ostream& err,
                      std::optional<int> support_cutoff = {}) {
  if (!cfg.chi_path.empty()) {
    auto chi = io::load_chi(cfg.chi_path, cfg.force_kappa);
    if (chi.size() < length) throw UsageError("chi file holds fewer than " + std::to_string(length) + " values");
    return chi;
  }
  auto resolved = resolve_spec(cfg, static_cast<int>(length));
  if (support_cutoff) resolved.spec = resolved.spec.with_support_cutoff(support_cutoff);
  const auto q = require_q(cfg, resolved.q);
  auto derived = chi_from_degree_spec(resolved.spec, q, static_cast<int>(length), cfg.kappa);
  if (derived.first_excess) {
    err << "warning: |chi(" << *derived.first_excess << ")| exceeds the declared kappa; kappa raised to "
        << io::format_double(derived.chi.kappa()) << '\n';
  }
  return std::move(derived.chi);
}

struct Output {
  std::string text;
  int code = kExitOk;
};

std::string csv_with_echo(const RunConfig& cfg, const std::string& body) {
  return "# config: " + cfg.echo().dump() + "\n" + body;
}

Output run_sigma(const RunConfig& cfg, std::ostream& err) {
  std::size_t length = 0;
  if (!cfg.n.empty()) length = cfg.single_n();
  ChiSequence chi = cfg.chi_path.empty() ? input_chi(cfg, length, err) : io::load_chi(cfg.chi_path, cfg.force_kappa);
  if (cfg.n.empty()) length = chi.size();
  const auto sigma = sigma_from_chi(chi, length);
  if (cfg.format == "json") {
    Json values = Json::array();
    for (const auto& v : sigma.values()) values.push_back(Json::array({v.real(), v.imag()}));
    return {Json{{"config", cfg.echo()}, {"sigma", std::move(values)}}.dump(2) + "\n"};
  }
  return {csv_with_echo(cfg, io::sigma_csv(sigma))};
}

Output run_chi(const RunConfig& cfg, std::ostream& err) {
  const auto chi = input_chi(cfg, cfg.single_n(), err);
  if (cfg.format == "json") {
    Json out{{"config", cfg.echo()}};
    out.update(io::to_json(chi));
    return {out.dump(2) + "\n"};
  }
  std::ostringstream body;
  body << "j,re,im,abs\n";
  for (std::size_t j = 1; j <= chi.size(); ++j) {
    const Complex v = chi.at(j);
    body << j << ',' << io::format_double(v.real()) << ',' << io::format_double(v.imag()) << ','
         << io::format_double(std::abs(v)) << '\n';
  }
  return {csv_with_echo(cfg, body.str())};
}

ReportOptions report_options(const RunConfig& cfg, std::optional<std::uint64_t> q) {
  ReportOptions opts;
  opts.circle.tol = cfg.tol;
  if (cfg.delta) {
    if (!q) throw UsageError("--delta needs --q for the smooth bound");
    opts.delta = cfg.delta;
    opts.q = static_cast<double>(*q);
  }
  opts.prop_m = cfg.m;
  return opts;
}

std::optional<int> smooth_cutoff(const RunConfig& cfg, std::size_t n) {
  if (!cfg.delta) return std::nullopt;
  if (!(*cfg.delta > 0.0 && *cfg.delta < 1.0)) throw UsageError("--delta must lie in (0, 1)");
  return static_cast<int>(floor_index((1.0 - *cfg.delta) * (static_cast<double>(n) - 1.0)));
}

Output run_m(const RunConfig& cfg, std::ostream& err) {
  const std::size_t n = cfg.single_n();
  const bool from_spec = cfg.chi_path.empty();
  const auto chi = input_chi(cfg, n, err, from_spec ? smooth_cutoff(cfg, n) : std::nullopt);
  const double kappa = cfg.kappa.value_or(chi.kappa());
  std::optional<std::uint64_t> q = cfg.q;
  if (!q && cfg.p) q = *cfg.p;
  const auto rep = make_halasz_report(chi, n, kappa, report_options(cfg, q));
  const int code = rep.all_pass() ? kExitOk : kExitFinding;
  if (cfg.format == "json") {
    Json out{{"config", cfg.echo()}, {"report", io::to_json(rep)}};
    return {out.dump(2) + "\n", code};
  }
  return {csv_with_echo(cfg, io::halasz_csv_header() + "\n" + io::halasz_csv_row(rep) + "\n"), code};
}

Output run_verify_bound(const RunConfig& cfg, std::ostream&) {
  const double kappa = cfg.kappa.value_or(1.0);
  const auto degrees = cfg.n_range();
  const bool smooth = cfg.delta.has_value();
  std::optional<std::uint64_t> q = cfg.q;
  if (!q && cfg.p) q = *cfg.p;
  if (smooth && !q) throw UsageError("--delta needs --q");
  const ReportOptions opts = report_options(cfg, q);

  struct Job {
    std::size_t n;
    std::size_t trial;
  };
  std::vector<Job> jobs;
  for (std::size_t n : degrees) {
    for (std::size_t t = 0; t < cfg.trials; ++t) jobs.push_back({n, t});
  }
  auto reports = map_partitions<std::optional<HalaszReport>>(jobs.size(), [&](std::size_t i) {
    const auto [n, t] = jobs[i];
    const std::uint64_t s = mix_seed(cfg.seed, n, t);
    ReportOptions local = opts;
    if (local.prop_m && *local.prop_m + 1 >= n) local.prop_m.reset();
    if (smooth) {
      const auto spec = canned::random(kappa, static_cast<int>(n), s).with_support_cutoff(smooth_cutoff(cfg, n));
      const auto derived = chi_from_degree_spec(spec, *q, static_cast<int>(n), kappa);
      return std::optional(make_halasz_report(derived.chi, n, kappa, local));
    }
    const auto family = static_cast<ChiFamily>(t % 4);
    return std::optional(make_halasz_report(random_chi(kappa, n, s, family), n, kappa, local));
  });

  bool all_pass = true;
  for (const auto& r : reports) all_pass = all_pass && r->all_pass();
  const int code = all_pass ? kExitOk : kExitFinding;
  if (cfg.format == "json") {
    Json rows = Json::array();
    for (const auto& r : reports) rows.push_back(io::to_json(*r));
    return {Json{{"config", cfg.echo()}, {"reports", std::move(rows)}}.dump(2) + "\n", code};
  }
  std::string body = io::halasz_csv_header() + "\n";
  for (const auto& r : reports) body += io::halasz_csv_row(*r) + "\n";
  return {csv_with_echo(cfg, body), code};
}

Output run_oracle_compare(const RunConfig& cfg, std::ostream&) {
  if (!cfg.p) throw UsageError("--p is required");
  const PrimeField field(*cfg.p);
  const auto degrees = cfg.n_range();
  const int top = static_cast<int>(degrees.back());
  const auto resolved = resolve_spec(cfg, std::max(top, 1));
  const auto chi = chi_from_degree_spec(resolved.spec, field.p(), std::max(top, 1)).chi;
  const auto sigma = sigma_from_chi(chi, static_cast<std::size_t>(top));

  bool all_pass = true;
  Json rows = Json::array();
  std::string body = "p,n,spec_id,re,im,census_size,wall_ms,recurrence_re,recurrence_im,abs_diff\n";
  for (std::size_t n : degrees) {
    const auto start = std::chrono::steady_clock::now();
    const Complex oracle = oracle_sigma(field, static_cast<int>(n), resolved.spec, cfg.census_limit);
    const auto stop = std::chrono::steady_clock::now();
    const Complex rec = sigma.at(n);
    const double diff = std::abs(oracle - rec);
    all_pass = all_pass && diff <= kOracleTolerance;
    const std::uint64_t size = census_size(field.p(), static_cast<int>(n), cfg.census_limit);
    const std::string wall =
        cfg.timing ? io::format_double(std::chrono::duration<double, std::milli>(stop - start).count()) : "";
    body += std::to_string(field.p()) + "," + std::to_string(n) + "," + resolved.id + "," +
            io::format_double(oracle.real()) + "," + io::format_double(oracle.imag()) + "," + std::to_string(size) +
            "," + wall + "," + io::format_double(rec.real()) + "," + io::format_double(rec.imag()) + "," +
            io::format_double(diff) + "\n";
    rows.push_back(Json{{"p", field.p()},
                        {"n", n},
                        {"spec_id", resolved.id},
                        {"re", oracle.real()},
                        {"im", oracle.imag()},
                        {"census_size", size},
                        {"wall_ms", wall.empty() ? Json(nullptr) : Json(std::stod(wall))},
                        {"recurrence_re", rec.real()},
                        {"recurrence_im", rec.imag()},
                        {"abs_diff", diff}});
  }
  const int code = all_pass ? kExitOk : kExitFinding;
  if (cfg.format == "json") return {Json{{"config", cfg.echo()}, {"rows", std::move(rows)}}.dump(2) + "\n", code};
  return {csv_with_echo(cfg, body), code};
}

Output run_sharp_example(const RunConfig& cfg, std::ostream&) {
  if (!cfg.delta) throw UsageError("--delta is required");
  std::vector<std::size_t> degrees = cfg.n.empty() ? std::vector<std::size_t>{100, 300, 1000, 3000} : cfg.n;
  CircleMaxOptions circle;
  circle.tol = cfg.tol;
  bool identities_hold = true;
  Json rows = Json::array();
  std::string body = io::sharp_csv_header() + "\n";
  for (std::size_t n : degrees) {
    const auto inst = sharp_example(n, *cfg.delta, cfg.theta);
    const auto rep = verify_sharp_example(inst, circle);
    const double scale = std::max(1.0, std::abs(rep.criterion.tail_sum));
    identities_hold = identities_hold && rep.phase_alignment_residual <= kIdentityTolerance * scale &&
                      rep.criterion.decomposition_residual <= kIdentityTolerance * scale;
    body += io::sharp_csv_row(rep) + "\n";
    rows.push_back(io::to_json(rep));
  }
  const int code = identities_hold ? kExitOk : kExitFinding;
  if (cfg.format == "json") return {Json{{"config", cfg.echo()}, {"rows", std::move(rows)}}.dump(2) + "\n", code};
  return {csv_with_echo(cfg, body), code};
}

Output run_irreducibles(const RunConfig& cfg, std::ostream&) {
  if (!cfg.d) throw UsageError("--d is required");
  if (cfg.list) {
    if (!cfg.p) throw UsageError("--list needs a prime --p");
    const auto polys = irreducibles_up_to(PrimeField(*cfg.p), *cfg.d, cfg.census_limit);
    if (cfg.format == "json") {
      Json arr = Json::array();
      for (const auto& f : polys) arr.push_back(io::to_json(f));
      return {Json{{"config", cfg.echo()}, {"irreducibles", std::move(arr)}}.dump(2) + "\n"};
    }
    std::string body = "deg,coeffs,poly\n";
    for (const auto& f : polys) {
      std::string coeffs;
      for (auto c : f.coeffs()) coeffs += (coeffs.empty() ? "" : " ") + std::to_string(c);
      body += std::to_string(f.degree()) + "," + coeffs + "," + f.to_string() + "\n";
    }
    return {csv_with_echo(cfg, body)};
  }
  const auto q = require_q(cfg, std::nullopt);
  const std::string count = to_string(irreducible_count(q, *cfg.d));
  if (cfg.format == "json") {
    return {Json{{"config", cfg.echo()}, {"q", q}, {"d", *cfg.d}, {"count", count}}.dump(2) + "\n"};
  }
  return {csv_with_echo(cfg, "q,d,count\n" + std::to_string(q) + "," + std::to_string(*cfg.d) + "," + count + "\n")};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Mean values of multiplicative functions on F_q[t] and Halasz-type bounds", "ffhalasz"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out, "write output to this file instead of stdout");
    sub->add_option("--census-limit", cfg.census_limit, "largest census size p^n allowed");
    sub->add_option("--tol", cfg.tol, "relative tolerance of the certified circle maximum");
  };
  auto chi_input = [&](CLI::App* sub) {
    sub->add_option("--chi", cfg.chi_path, "chi JSON file");
    sub->add_flag("--force-kappa", cfg.force_kappa, "take kappa as the observed max |chi(j)|");
    sub->add_option("--spec", cfg.spec, "one, mobius, random, or a spec JSON file");
    sub->add_option("--q", cfg.q, "field order for --spec");
    sub->add_option("--seed", cfg.seed, "seed for --spec random");
  };

  auto* sigma = app.add_subcommand("sigma", "sigma(0..n) from chi");
  chi_input(sigma);
  sigma->add_option("--n", cfg.n, "length");
  sigma->add_option("--kappa", cfg.kappa, "declared class bound");
  common(sigma);

  auto* chi = app.add_subcommand("chi", "chi(1..n) of a degree-symmetric spec");
  chi_input(chi);
  chi->add_option("--n", cfg.n, "length")->required();
  chi->add_option("--kappa", cfg.kappa, "declared class bound");
  common(chi);

  auto* m = app.add_subcommand("m", "Halasz report at degree n");
  chi_input(m);
  m->add_option("--p", cfg.p, "prime field, alias of --q");
  m->add_option("--n", cfg.n, "degree")->required();
  m->add_option("--kappa", cfg.kappa, "class bound (default: kappa of the input)");
  m->add_option("--delta", cfg.delta, "smooth support parameter in (0, 1)");
  m->add_option("--m", cfg.m, "truncation point for the sigma_m bound");
  common(m);

  auto* verify = app.add_subcommand("verify-bound", "random sweep of the main, smooth and sigma_m bounds");
  verify->add_option("--kappa", cfg.kappa, "class bound");
  verify->add_option("--n", cfg.n, "degree")->required();
  verify->add_option("--n-max", cfg.n_max, "sweep degrees n..n-max");
  verify->add_option("--trials", cfg.trials, "trials per degree");
  verify->add_option("--seed", cfg.seed, "base seed");
  verify->add_option("--delta", cfg.delta, "use smooth degree-symmetric specs with this delta");
  verify->add_option("--q", cfg.q, "field order for smooth specs");
  verify->add_option("--m", cfg.m, "also check the sigma_m bound at this m");
  common(verify);

  auto* oracle = app.add_subcommand("oracle-compare", "census mean versus the chi recurrence");
  oracle->add_option("--p", cfg.p, "prime field")->required();
  oracle->add_option("--n", cfg.n, "degree")->required();
  oracle->add_option("--n-max", cfg.n_max, "sweep degrees n..n-max");
  oracle->add_option("--spec", cfg.spec, "one, mobius, random, or a spec JSON file")->required();
  oracle->add_option("--kappa", cfg.kappa, "disk radius for --spec random");
  oracle->add_option("--seed", cfg.seed, "seed for --spec random");
  oracle->add_flag("--timing", cfg.timing, "fill the wall_ms column");
  common(oracle);

  auto* sharp = app.add_subcommand("sharp-example", "phase-aligned extremal example");
  sharp->add_option("--n", cfg.n, "degrees (default 100 300 1000 3000)");
  sharp->add_option("--delta", cfg.delta, "delta in (0, 1/2 - 1/(2n))")->required();
  sharp->add_option("--theta", cfg.theta, "phase of the aligned tail");
  common(sharp);

  auto* irr = app.add_subcommand("irreducibles", "irreducible counts, or the sieve with --list");
  irr->add_option("--q", cfg.q, "field order");
  irr->add_option("--p", cfg.p, "prime field for --list");
  irr->add_option("--d", cfg.d, "degree")->required();
  irr->add_flag("--list", cfg.list, "list all monic irreducibles of degree <= d");
  common(irr);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitError;
  }

  try {
    Output result;
    if (sigma->parsed()) {
      cfg.subcommand = "sigma";
      result = run_sigma(cfg, err);
    } else if (chi->parsed()) {
      cfg.subcommand = "chi";
      result = run_chi(cfg, err);
    } else if (m->parsed()) {
      cfg.subcommand = "m";
      result = run_m(cfg, err);
    } else if (verify->parsed()) {
      cfg.subcommand = "verify-bound";
      result = run_verify_bound(cfg, err);
    } else if (oracle->parsed()) {
      cfg.subcommand = "oracle-compare";
      result = run_oracle_compare(cfg, err);
    } else if (sharp->parsed()) {
      cfg.subcommand = "sharp-example";
      result = run_sharp_example(cfg, err);
    } else {
      cfg.subcommand = "irreducibles";
      result = run_irreducibles(cfg, err);
    }
    if (cfg.out.empty()) {
      out << result.text;
    } else {
      std::ofstream file(cfg.out, std::ios::binary);
      if (!file || !(file << result.text)) throw std::runtime_error("cannot write " + cfg.out);
    }
    return result.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace ffh::cli
