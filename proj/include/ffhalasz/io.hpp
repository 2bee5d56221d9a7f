// File formats: polynomials, chi sequences and specs as JSON; sigma tables,
// Halasz reports and sharp-example rows as CSV or JSON.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "ffhalasz/extremal.hpp"
#include "ffhalasz/field_poly.hpp"
#include "ffhalasz/halasz.hpp"
#include "ffhalasz/mult_fn.hpp"
#include "ffhalasz/series.hpp"

namespace ffh::io {

using Json = nlohmann::ordered_json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 17 significant digits, enough to round-trip any binary64 value.
std::string format_double(double x);

Json to_json(const PolyGF& f);
PolyGF poly_from_json(const Json& j);

/// {"kappa": k, "chi": [[re, im], ...]}
Json to_json(const ChiSequence& chi);

/// With force_kappa the declared kappa is replaced by the observed maximum;
/// otherwise a value above kappa raises KappaViolation naming the index.
ChiSequence chi_from_json(const Json& j, bool force_kappa = false);
ChiSequence load_chi(const std::string& path, bool force_kappa = false);

/// Columns j, re, im, abs, phase.
std::string sigma_csv(const SigmaSequence& sigma);

struct LoadedSpec {
  DegreeSymmetricSpec spec;
  std::optional<std::uint64_t> q;
};

/// {"q": 2, "g": [{"d": 1, "k": 1, "v": [re, im]}, ...], "support_cutoff": 6}
Json to_json(const DegreeSymmetricSpec& spec, std::optional<std::uint64_t> q = {});

/// Entries not listed are 0; the table is built through `max_degree`.
LoadedSpec spec_from_json(const Json& j, int max_degree);
LoadedSpec load_spec(const std::string& path, int max_degree);

Json to_json(const HalaszReport& rep);
Json to_json(const CriterionReport& rep);
Json to_json(const SharpExampleReport& rep);

/// n, kappa, M_lo, M_hi, abs_sigma_n, bound_main, bound_smooth, verdict_main, verdict_smooth
std::string halasz_csv_header();
std::string halasz_csv_row(const HalaszReport& rep);

/// delta, m, tail_re, tail_im, threshold_scale, ratio, small_o_check, decomposition_residual
std::string criterion_csv_header();
std::string criterion_csv_row(const CriterionReport& rep);

/// n, delta, theta, M_lo, M_hi, S, S_over_logn, tail_ratio, abs_sigma_n, bound_ratio
std::string sharp_csv_header();
std::string sharp_csv_row(const SharpExampleReport& rep);

Json read_json_file(const std::string& path);

}  // namespace ffh::io
