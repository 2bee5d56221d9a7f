#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ffhalasz/cli.hpp"
#include "ffhalasz/extremal.hpp"
#include "ffhalasz/halasz.hpp"
#include "ffhalasz/io.hpp"
#include "ffhalasz/mult_fn.hpp"

namespace py = pybind11;
using namespace ffh;

namespace {

ChiSequence make_chi(std::vector<Complex> values, std::optional<double> kappa) {
  return kappa ? ChiSequence(std::move(values), *kappa) : ChiSequence::with_observed_kappa(std::move(values), 1.0);
}

std::vector<Complex> to_vector(std::span<const Complex> s) { return {s.begin(), s.end()}; }

CircleMaxOptions circle(double tol) {
  CircleMaxOptions opts;
  opts.tol = tol;
  return opts;
}

DegreeSymmetricSpec named_spec(const std::string& name, int max_degree, double kappa, std::uint64_t seed,
                               std::optional<int> cutoff) {
  return canned::by_name(name, max_degree, kappa, seed).with_support_cutoff(cutoff);
}

}  // namespace

PYBIND11_MODULE(_ffhalasz, m) {
  m.doc() = "Mean values of multiplicative functions on F_q[t] and Halasz-type bounds";
  m.attr("__version__") = cli::kToolVersion;

  py::register_exception<KappaViolation>(m, "KappaViolation", PyExc_ValueError);
  py::register_exception<CensusLimitExceeded>(m, "CensusLimitExceeded", PyExc_RuntimeError);
  py::register_exception<ToleranceUnreachable>(m, "ToleranceUnreachable", PyExc_RuntimeError);

  m.def(
      "irreducible_count", [](std::uint64_t q, int d) { return py::int_(py::str(to_string(irreducible_count(q, d)))); },
      py::arg("q"), py::arg("d"));
  m.def(
      "irreducibles",
      [](std::uint32_t p, int max_degree) {
        std::vector<std::string> out;
        for (const auto& f : irreducibles_up_to(PrimeField(p), max_degree)) out.push_back(f.to_string());
        return out;
      },
      py::arg("p"), py::arg("max_degree"));
  m.def(
      "factor",
      [](std::uint32_t p, std::vector<std::uint32_t> coeffs) {
        std::vector<std::pair<std::string, int>> out;
        for (const auto& [g, k] : factor(PolyGF(PrimeField(p), std::move(coeffs))).factors) {
          out.emplace_back(g.to_string(), k);
        }
        return out;
      },
      py::arg("p"), py::arg("coeffs"), "Factor the monic polynomial with low coefficients `coeffs`.");

  m.def(
      "sigma_from_chi",
      [](std::vector<Complex> chi, std::size_t N, std::optional<double> kappa) {
        return to_vector(sigma_from_chi(make_chi(std::move(chi), kappa), N).values());
      },
      py::arg("chi"), py::arg("N"), py::arg("kappa") = py::none());
  m.def(
      "chi_from_sigma",
      [](std::vector<Complex> sigma, double kappa) {
        return to_vector(chi_from_sigma(SigmaSequence(std::move(sigma)), kappa).chi.values());
      },
      py::arg("sigma"), py::arg("kappa") = 1.0);
  m.def(
      "chi_from_spec",
      [](const std::string& name, std::uint64_t q, int N, double kappa, std::uint64_t seed,
         std::optional<int> cutoff) {
        return to_vector(chi_from_degree_spec(named_spec(name, N, kappa, seed, cutoff), q, N).chi.values());
      },
      py::arg("spec"), py::arg("q"), py::arg("N"), py::arg("kappa") = 1.0, py::arg("seed") = 0,
      py::arg("support_cutoff") = py::none());
  m.def(
      "oracle_sigma",
      [](const std::string& name, std::uint32_t p, int n, double kappa, std::uint64_t seed, std::uint64_t limit) {
        py::gil_scoped_release release;
        return oracle_sigma(PrimeField(p), n, named_spec(name, std::max(n, 1), kappa, seed, std::nullopt), limit);
      },
      py::arg("spec"), py::arg("p"), py::arg("n"), py::arg("kappa") = 1.0, py::arg("seed") = 0,
      py::arg("census_limit") = kDefaultCensusLimit);

  m.def(
      "circle_max",
      [](std::vector<Complex> chi, std::size_t n, double tol) {
        const auto r = max_abs_F_bot_on_circle(make_chi(std::move(chi), std::nullopt), n, circle(tol));
        return py::dict(py::arg("lower") = r.lower, py::arg("upper") = r.upper,
                        py::arg("argmax_theta") = r.argmax_theta);
      },
      py::arg("chi"), py::arg("n"), py::arg("tol") = 1e-9);
  m.def(
      "compute_M",
      [](std::vector<Complex> chi, std::size_t n, double kappa, double tol) {
        const auto r = compute_M(make_chi(std::move(chi), kappa), n, kappa, circle(tol));
        return std::pair{r.lower, r.upper};
      },
      py::arg("chi"), py::arg("n"), py::arg("kappa"), py::arg("tol") = 1e-9);
  m.def("halasz_bound", &halasz_bound, py::arg("M"), py::arg("n"), py::arg("kappa"));
  m.def("smooth_bound", &smooth_bound, py::arg("M"), py::arg("n"), py::arg("kappa"), py::arg("delta"), py::arg("q"));
  m.def("sigma_m_bound", &sigma_m_bound, py::arg("M"), py::arg("n"), py::arg("m"), py::arg("kappa"));
  m.def("sigma_m_bound_delta", &sigma_m_bound_delta, py::arg("M"), py::arg("n"), py::arg("kappa"), py::arg("delta"));
  m.def(
      "sigma_m_contour",
      [](std::vector<Complex> chi, std::size_t n, std::size_t mm) {
        return sigma_m_contour(make_chi(std::move(chi), std::nullopt), n, mm).value;
      },
      py::arg("chi"), py::arg("n"), py::arg("m"));

  m.def(
      "halasz_report_json",
      [](std::vector<Complex> chi, std::size_t n, double kappa, std::optional<double> delta, std::optional<double> q,
         std::optional<std::size_t> mm, double tol) {
        ReportOptions opts;
        opts.circle = circle(tol);
        opts.delta = delta;
        opts.q = q;
        opts.prop_m = mm;
        return io::to_json(make_halasz_report(make_chi(std::move(chi), kappa), n, kappa, opts)).dump();
      },
      py::arg("chi"), py::arg("n"), py::arg("kappa"), py::arg("delta") = py::none(), py::arg("q") = py::none(),
      py::arg("m") = py::none(), py::arg("tol") = 1e-9);

  m.def("complex_binomial", &complex_binomial, py::arg("j"));
  m.def(
      "sharp_example",
      [](std::size_t n, double delta, double theta) {
        const auto inst = sharp_example(n, delta, theta);
        return py::dict(py::arg("chi") = to_vector(inst.chi.values()),
                        py::arg("sigma") = to_vector(inst.sigma.values()), py::arg("first_end") = inst.first_end,
                        py::arg("middle_end") = inst.middle_end);
      },
      py::arg("n"), py::arg("delta"), py::arg("theta") = 0.0);
  m.def(
      "sharp_example_report_json",
      [](std::size_t n, double delta, double theta, double tol) {
        return io::to_json(verify_sharp_example(sharp_example(n, delta, theta), circle(tol))).dump();
      },
      py::arg("n"), py::arg("delta"), py::arg("theta") = 0.0, py::arg("tol") = 1e-9);

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "ffhalasz");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
