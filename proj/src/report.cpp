#include "tilebound/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "tilebound/error.hpp"

namespace tilebound {

namespace {

Int parse_int(const Json& v, const std::string& ctx) {
  if (v.is_number_unsigned()) return Int(std::to_string(v.get<std::uint64_t>()));
  if (v.is_number_integer()) return Int(std::to_string(v.get<std::int64_t>()));
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() > start && std::all_of(s.begin() + start, s.end(), [](char c) { return c >= '0' && c <= '9'; }))
      return Int(s[0] == '+' ? s.substr(1) : s);
  }
  throw ParseError(ctx + ": expected an integer, got " + v.dump());
}

std::vector<Int> parse_row(const Json& v, std::size_t n, const std::string& ctx) {
  if (!v.is_array()) throw ParseError(ctx + ": expected an array");
  if (v.size() != n)
    throw ParseError(ctx + ": expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
  std::vector<Int> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(parse_int(v[i], ctx + "[" + std::to_string(i) + "]"));
  return out;
}

Json real(long double x, double tol) { return tagged(x, tol); }

}  // namespace

PairSpec parse_spec_text(const std::string& text, const std::string& source) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw ParseError(source + ":" + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
  }
  if (!j.is_object()) throw ParseError(source + ": top level must be an object");
  auto field = [&](const char* name) -> const Json& {
    if (!j.contains(name)) throw ParseError(source + ": missing field '" + name + "'");
    return j.at(name);
  };

  PairSpec spec;
  const Int n = parse_int(field("n"), source + ": field 'n'");
  if (n < 1 || n > 64) throw ParseError(source + ": field 'n' must be between 1 and 64");
  spec.n = n.get_ui();

  const Json& mat = field("matrix");
  if (!mat.is_array() || mat.size() != spec.n)
    throw ParseError(source + ": field 'matrix' must have " + std::to_string(spec.n) + " rows");
  spec.matrix = IntMatrix(spec.n, spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    const auto row = parse_row(mat[i], spec.n, source + ": field 'matrix' row " + std::to_string(i));
    for (std::size_t c = 0; c < spec.n; ++c) spec.matrix(i, c) = row[c];
  }

  const Json& dig = field("digits");
  if (!dig.is_array() || dig.empty()) throw ParseError(source + ": field 'digits' must be a nonempty array");
  std::set<IntVector> seen;
  for (std::size_t i = 0; i < dig.size(); ++i) {
    IntVector d(parse_row(dig[i], spec.n, source + ": field 'digits' entry " + std::to_string(i)));
    if (!seen.insert(d).second) {
      spec.warnings.push_back("duplicate digit " + d.str() + " dropped");
      continue;
    }
    spec.digits.push_back(std::move(d));
  }

  if (j.contains("name")) {
    if (!j["name"].is_string()) throw ParseError(source + ": field 'name' must be a string");
    spec.name = j["name"].get<std::string>();
  }
  for (const auto& [key, value] : j.items())
    if (key != "n" && key != "matrix" && key != "digits" && key != "name")
      spec.warnings.push_back("unknown field '" + key + "' ignored");
  return spec;
}

PairSpec read_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec_text(ss.str(), path);
}

StandardPair make_pair(const PairSpec& spec) { return StandardPair::create(spec.matrix, spec.digits); }

StandardPair parse_spec(const std::string& path) { return make_pair(read_spec(path)); }

Json tagged(long double x, double tol) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12Lg", x);
  double v = std::strtod(buf, nullptr);
  if (v == 0) v = 0;  // no negative zero
  return Json{{"value", v}, {"tol", tol}};
}

Json int_json(const Int& x) {
  if (x.fits_slong_p()) return Json(static_cast<std::int64_t>(x.get_si()));
  return Json(x.get_str());
}

Json vector_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& c : v) a.push_back(int_json(c));
  return a;
}

Json matrix_json(const IntMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(vector_json(m.row(i)));
  return a;
}

Json validation_json(const ValidationReport& rep) {
  Json j;
  j["pass"] = rep.pass();
  j["flags"] = {{"square", rep.square},
                {"integer_matrix", rep.integer_matrix},
                {"nonsingular", rep.nonsingular},
                {"expanding", rep.expanding},
                {"cardinality", rep.cardinality},
                {"coset_complete", rep.coset_complete},
                {"digits_shape", rep.digits_shape},
                {"contains_zero", rep.contains_zero},
                {"primitive", rep.primitive}};
  j["m"] = int_json(rep.m);
  j["digit_count"] = rep.digit_count;
  j["messages"] = rep.messages;
  j["translation"] = rep.translation ? vector_json(*rep.translation) : Json(nullptr);
  if (rep.congruent_pair)
    j["congruent_pair"] = Json::array({vector_json(rep.congruent_pair->first), vector_json(rep.congruent_pair->second)});
  else
    j["congruent_pair"] = nullptr;
  return j;
}

Json pair_json(const StandardPair& pair) {
  Json digits = Json::array();
  for (const auto& d : pair.digits()) digits.push_back(vector_json(d));
  return {{"n", pair.dim()}, {"m", int_json(pair.modulus())}, {"matrix", matrix_json(pair.matrix())}, {"digits", digits}};
}

Json primitivization_json(const PrimitiveReduction& red) {
  return {{"changed", red.changed}, {"basis", matrix_json(red.basis)}, {"pair", pair_json(red.pair)}};
}

Json contact_json(const ContactSystem& cs) {
  Json S = Json::array(), Sp = Json::array();
  for (const auto& v : cs.S) S.push_back(vector_json(v));
  for (const auto& v : cs.Splus) Sp.push_back(vector_json(v));
  return {{"size_S", cs.S.size()}, {"S", S}, {"Splus", Sp}, {"Tplus", matrix_json(cs.Tplus)}};
}

namespace {

Json root_json(const PolyRoot& r) {
  Json j;
  j["re"] = real(r.value.real(), kEigenTol);
  j["im"] = real(r.real ? 0.0L : r.value.imag(), kEigenTol);
  j["real"] = r.real;
  j["multiplicity"] = r.multiplicity;
  j["exact"] = r.exact ? int_json(*r.exact) : Json(nullptr);
  return j;
}

Json special_json(const SpecialEigenvalue& s) {
  Json j;
  j["value"] = real(s.value(), kEigenTol);
  j["exact"] = s.root.exact ? int_json(*s.root.exact) : Json(nullptr);
  j["multiplicity"] = s.root.multiplicity;
  j["boundary_case"] = s.boundary_case;
  return j;
}

}  // namespace

Json spectrum_json(const SpectralReport& rep) {
  Json j;
  Json coeffs = Json::array();
  for (const auto& c : rep.tplus_char_poly.coeffs()) coeffs.push_back(int_json(c));
  j["tplus_char_poly"] = {{"text", rep.tplus_char_poly.str()}, {"coefficients_ascending", coeffs}};
  j["eigenvalues"] = Json::array();
  for (const auto& r : rep.eigenvalues) j["eigenvalues"].push_back(root_json(r));
  j["matrix_eigenvalues"] = Json::array();
  for (const auto& r : rep.matrix_eigenvalues) j["matrix_eigenvalues"].push_back(root_json(r));
  j["m_minus"] = real(rep.minus.value, kEigenTol);
  j["equal_modulus"] = rep.minus.equal_modulus;
  j["special_interval"] = {{"lower", real(rep.search.lower_end, kEigenTol)},
                           {"upper", real(rep.search.upper_end, 0.0)}};
  j["special"] = Json::array();
  for (const auto& s : rep.search.special) j["special"].push_back(special_json(s));
  j["boundary_excluded"] = Json::array();
  for (const auto& s : rep.search.boundary_excluded) j["boundary_excluded"].push_back(special_json(s));
  j["lambda_p"] = rep.lambda_p ? special_json(*rep.lambda_p) : Json(nullptr);
  j["status"] = rep.status();
  j["d_M"] = rep.d_M;
  j["d_lambda_p"] = rep.d_lambda_p ? Json(*rep.d_lambda_p) : Json(nullptr);
  j["m_simple"] = rep.m_simple;
  return j;
}

Json dimension_json(const DimensionReport& rep) {
  Json j;
  j["available"] = rep.available;
  j["tile_diagnostic"] = rep.tile_diagnostic;
  if (!rep.available) {
    j["status"] = "no_special_eigenvalue";
    return j;
  }
  j["status"] = "ok";
  j["lambda_p"] = real(rep.lambda_p, kEigenTol);
  j["lower"] = real(rep.bounds.lower, kDimensionTol);
  j["upper"] = real(rep.bounds.upper, kDimensionTol);
  j["beta_lower"] = real(rep.bounds.beta_lower, kDimensionTol);
  j["beta_upper"] = real(rep.bounds.beta_upper, kDimensionTol);
  j["clamped"] = rep.bounds.clamped;
  j["exact"] = rep.exact ? real(*rep.exact, kDimensionTol) : Json(nullptr);
  j["formula"] = rep.exact ? "n*ln(lambda_p)/ln(m)"
                           : "[n + (ln(lambda_p) - ln(m))/ln(m_minus), ln(lambda_p)/ln(m_minus)]";
  j["local_dimensions"] = Json::array();
  for (const auto& ld : rep.local_dimensions)
    j["local_dimensions"].push_back({{"lambda", real(ld.lambda, kEigenTol)},
                                     {"lower", real(ld.bounds.lower, kDimensionTol)},
                                     {"upper", real(ld.bounds.upper, kDimensionTol)},
                                     {"exact", ld.exact ? real(*ld.exact, kDimensionTol) : Json(nullptr)}});
  if (rep.measure) {
    const auto& m = *rep.measure;
    j["measure"] = {{"verdict", to_string(m.verdict)},
                    {"d_M", m.d_M},
                    {"d_lambda_p", m.d_lambda},
                    {"n", m.n},
                    {"beta", real(m.beta, kDimensionTol)},
                    {"lhs", real(m.lhs, kDimensionTol)},
                    {"rhs", real(m.rhs, kDimensionTol)},
                    {"conditions", {{"finite", m.cond_finite}, {"positive", m.cond_positive}, {"infinite", m.cond_infinite}}}};
  } else {
    j["measure"] = nullptr;
  }
  return j;
}

Json growth_json(const GrowthEstimate& est, const std::optional<Ball>& ball) {
  Json j;
  j["rate"] = real(est.rate, 0.0);
  j["residual"] = real(est.residual, 0.0);
  j["levels"] = est.levels;
  j["counts"] = est.counts;
  j["dropped_first"] = est.dropped_first;
  if (ball) {
    Json c = Json::array();
    for (long double x : ball->center) c.push_back(static_cast<double>(x));
    j["ball"] = {{"center", c}, {"radius", static_cast<double>(ball->radius)}};
  } else {
    j["ball"] = nullptr;
  }
  return j;
}

Json box_count_json(const BoxCountEstimate& est, unsigned k, std::size_t points) {
  Json ladder = Json::array();
  for (auto [jj, boxes] : est.ladder) ladder.push_back({{"j", jj}, {"boxes", boxes}});
  return {{"k", k},
          {"points", points},
          {"dimension", real(est.dimension, 0.0)},
          {"residual", real(est.residual, 0.0)},
          {"ladder", ladder}};
}

Analysis analyze(const StandardPair& pair, const SpectrumOptions& options) {
  PrimitiveReduction red = primitivize(pair);
  ContactSystem cs = contact_system(red.pair);
  SpectralReport sp = analyze_spectrum(red.pair, cs, options);
  DimensionReport dim = analyze_dimension(sp, red.pair.modulus(), red.pair.dim());
  return {pair, std::move(red), std::move(cs), std::move(sp), std::move(dim)};
}

Json analysis_json(const PairSpec& spec, const Analysis& a, bool with_dimension) {
  Json j;
  Json input_digits = Json::array();
  for (const auto& d : spec.digits) input_digits.push_back(vector_json(d));
  j["input"] = {{"name", spec.name ? Json(*spec.name) : Json(nullptr)},
                {"n", spec.n},
                {"matrix", matrix_json(spec.matrix)},
                {"digits", input_digits}};
  j["validation"] = validation_json(validate(spec.matrix, spec.digits));
  j["pair"] = pair_json(a.pair);
  j["primitivization"] = primitivization_json(a.reduction);
  j["contact"] = contact_json(a.contact);
  j["spectrum"] = spectrum_json(a.spectrum);
  if (with_dimension) j["dimension"] = dimension_json(a.dimension);
  j["warnings"] = spec.warnings;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

namespace {

bool is_tagged(const Json& j) { return j.is_object() && j.size() == 2 && j.contains("value") && j.contains("tol"); }

void text_rec(std::ostringstream& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [key, value] : j.items()) {
    out << pad << key << ":";
    if (is_tagged(value)) {
      out << " " << value["value"].dump() << "\n";
    } else if (value.is_object()) {
      out << "\n";
      text_rec(out, value, indent + 2);
    } else if (value.is_array() && !value.empty() && value[0].is_object()) {
      out << "\n";
      for (const auto& item : value) {
        if (is_tagged(item)) {
          out << pad << "  - " << item["value"].dump() << "\n";
          continue;
        }
        out << pad << "  -\n";
        text_rec(out, item, indent + 4);
      }
    } else {
      out << " " << value.dump() << "\n";
    }
  }
}

}  // namespace

std::string to_text(const Json& j) {
  std::ostringstream out;
  text_rec(out, j, 0);
  return out.str();
}

}  // namespace tilebound
