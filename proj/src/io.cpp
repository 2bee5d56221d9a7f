#include "ffhalasz/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ffh::io {

namespace {

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw FormatError("expected a complex value as [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

std::string verdict(bool pass) { return pass ? "pass" : "fail"; }

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json to_json(const PolyGF& f) {
  return Json{{"p", f.field().p()}, {"deg", f.degree()}, {"coeffs", std::vector<std::uint32_t>(f.coeffs().begin(), f.coeffs().end())}};
}

PolyGF poly_from_json(const Json& j) {
  try {
    const PrimeField field(j.at("p").get<std::uint32_t>());
    auto coeffs = j.at("coeffs").get<std::vector<std::uint32_t>>();
    if (j.contains("deg") && j.at("deg").get<int>() != static_cast<int>(coeffs.size())) {
      throw FormatError("deg does not match the number of stored coefficients");
    }
    return PolyGF(field, std::move(coeffs));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed polynomial: ") + e.what());
  }
}

Json to_json(const ChiSequence& chi) {
  Json values = Json::array();
  for (const auto& v : chi.values()) values.push_back(complex_json(v));
  return Json{{"kappa", chi.kappa()}, {"chi", std::move(values)}};
}

ChiSequence chi_from_json(const Json& j, bool force_kappa) {
  if (!j.is_object() || !j.contains("chi") || !j.at("chi").is_array()) {
    throw FormatError("chi file needs a \"chi\" array");
  }
  std::vector<Complex> values;
  for (const auto& v : j.at("chi")) values.push_back(complex_from(v));
  if (force_kappa) return ChiSequence::with_observed_kappa(std::move(values));
  if (!j.contains("kappa") || !j.at("kappa").is_number()) throw FormatError("chi file needs a numeric \"kappa\"");
  return ChiSequence(std::move(values), j.at("kappa").get<double>());
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
}

ChiSequence load_chi(const std::string& path, bool force_kappa) {
  return chi_from_json(read_json_file(path), force_kappa);
}

std::string sigma_csv(const SigmaSequence& sigma) {
  std::ostringstream out;
  out << "j,re,im,abs,phase\n";
  for (std::size_t j = 0; j <= sigma.degree(); ++j) {
    const Complex v = sigma.at(j);
    out << j << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << ','
        << format_double(std::abs(v)) << ',' << format_double(sigma.phase(j)) << '\n';
  }
  return out.str();
}

Json to_json(const DegreeSymmetricSpec& spec, std::optional<std::uint64_t> q) {
  Json out;
  if (q) out["q"] = *q;
  Json g = Json::array();
  for (const auto& e : spec.entries()) {
    if (e.value == Complex(0.0)) continue;
    g.push_back(Json{{"d", e.d}, {"k", e.k}, {"v", complex_json(e.value)}});
  }
  out["g"] = std::move(g);
  out["support_cutoff"] = optional_json(spec.support_cutoff());
  return out;
}

LoadedSpec spec_from_json(const Json& j, int max_degree) {
  try {
    std::vector<SpecEntry> entries;
    for (const auto& e : j.at("g")) {
      entries.push_back({e.at("d").get<int>(), e.at("k").get<int>(), complex_from(e.at("v"))});
    }
    std::optional<int> cutoff;
    if (j.contains("support_cutoff") && !j.at("support_cutoff").is_null()) cutoff = j.at("support_cutoff").get<int>();
    std::optional<std::uint64_t> q;
    if (j.contains("q") && !j.at("q").is_null()) q = j.at("q").get<std::uint64_t>();
    return {DegreeSymmetricSpec::from_entries(max_degree, entries, cutoff), q};
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed spec: ") + e.what());
  }
}

LoadedSpec load_spec(const std::string& path, int max_degree) {
  return spec_from_json(read_json_file(path), max_degree);
}

Json to_json(const HalaszReport& rep) {
  Json out;
  out["n"] = rep.n;
  out["kappa"] = rep.kappa;
  out["M_lower"] = rep.M_lower;
  out["M_upper"] = rep.M_upper;
  out["circle_max"] = Json{{"lower", rep.circle_max.lower},
                           {"upper", rep.circle_max.upper},
                           {"argmax_theta", rep.circle_max.argmax_theta}};
  out["sigma_n"] = complex_json(rep.sigma_n);
  out["abs_sigma_n"] = std::abs(rep.sigma_n);
  out["bound_main"] = rep.bound_main;
  out["verdict_main"] = verdict(rep.verdict_main);
  out["delta"] = optional_json(rep.delta);
  out["q"] = optional_json(rep.q);
  out["bound_smooth"] = optional_json(rep.bound_smooth);
  out["verdict_smooth"] = rep.verdict_smooth ? Json(verdict(*rep.verdict_smooth)) : Json(nullptr);
  out["prop_m"] = optional_json(rep.prop_m);
  out["sigma_m"] = rep.sigma_m ? complex_json(*rep.sigma_m) : Json(nullptr);
  out["bound_prop"] = optional_json(rep.bound_prop);
  out["verdict_prop"] = rep.verdict_prop ? Json(verdict(*rep.verdict_prop)) : Json(nullptr);
  return out;
}

Json to_json(const CriterionReport& rep) {
  return Json{{"delta", rep.delta},
              {"m", rep.m},
              {"tail_sum", complex_json(rep.tail_sum)},
              {"threshold_scale", rep.threshold_scale},
              {"ratio", rep.ratio},
              {"small_o_check", rep.small_o_check},
              {"sigma_m", complex_json(rep.sigma_m)},
              {"decomposition_residual", rep.decomposition_residual}};
}

Json to_json(const SharpExampleReport& rep) {
  return Json{{"n", rep.n},
              {"delta", rep.delta},
              {"theta", rep.theta},
              {"M_lo", rep.M_lower},
              {"M_hi", rep.M_upper},
              {"M_over_logn", rep.M_over_log_n},
              {"S", rep.S},
              {"S_over_logn", rep.S_over_log_n},
              {"S_over_scale", rep.S_over_scale},
              {"tail_ratio", rep.criterion.ratio},
              {"abs_sigma_n", std::abs(rep.sigma_n)},
              {"bound_ratio", rep.bound_ratio},
              {"phase_alignment_residual", rep.phase_alignment_residual},
              {"criterion", to_json(rep.criterion)}};
}

std::string halasz_csv_header() {
  return "n,kappa,M_lo,M_hi,abs_sigma_n,bound_main,bound_smooth,verdict_main,verdict_smooth";
}

std::string halasz_csv_row(const HalaszReport& rep) {
  std::ostringstream out;
  out << rep.n << ',' << format_double(rep.kappa) << ',' << format_double(rep.M_lower) << ','
      << format_double(rep.M_upper) << ',' << format_double(std::abs(rep.sigma_n)) << ','
      << format_double(rep.bound_main) << ',' << (rep.bound_smooth ? format_double(*rep.bound_smooth) : "") << ','
      << verdict(rep.verdict_main) << ',' << (rep.verdict_smooth ? verdict(*rep.verdict_smooth) : "");
  return out.str();
}

std::string criterion_csv_header() {
  return "delta,m,tail_re,tail_im,threshold_scale,ratio,small_o_check,decomposition_residual";
}

std::string criterion_csv_row(const CriterionReport& rep) {
  std::ostringstream out;
  out << format_double(rep.delta) << ',' << rep.m << ',' << format_double(rep.tail_sum.real()) << ','
      << format_double(rep.tail_sum.imag()) << ',' << format_double(rep.threshold_scale) << ','
      << format_double(rep.ratio) << ',' << format_double(rep.small_o_check) << ','
      << format_double(rep.decomposition_residual);
  return out.str();
}

std::string sharp_csv_header() {
  return "n,delta,theta,M_lo,M_hi,S,S_over_logn,tail_ratio,abs_sigma_n,bound_ratio";
}

std::string sharp_csv_row(const SharpExampleReport& rep) {
  std::ostringstream out;
  out << rep.n << ',' << format_double(rep.delta) << ',' << format_double(rep.theta) << ','
      << format_double(rep.M_lower) << ',' << format_double(rep.M_upper) << ',' << format_double(rep.S) << ','
      << format_double(rep.S_over_log_n) << ',' << format_double(rep.criterion.ratio) << ','
      << format_double(std::abs(rep.sigma_n)) << ',' << format_double(rep.bound_ratio);
  return out.str();
}

}  // namespace ffh::io
