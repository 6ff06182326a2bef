#pragma once

// Pair specification files and JSON analysis reports.

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "tilebound/contact.hpp"
#include "tilebound/dimension.hpp"
#include "tilebound/geometry.hpp"
#include "tilebound/pair.hpp"
#include "tilebound/spectrum.hpp"

namespace tilebound {

using Json = nlohmann::json;

/// Contents of a spec file: {"n": .., "matrix": [[..]], "digits": [[..]], "name": ..}.
struct PairSpec {
  std::size_t n = 0;
  IntMatrix matrix;
  std::vector<IntVector> digits;
  std::optional<std::string> name;
  std::vector<std::string> warnings;
};

/// Throws ParseError with line or field context on bad syntax or shape.
/// Duplicate digits are dropped with a warning.
PairSpec parse_spec_text(const std::string& text, const std::string& source = "<input>");
PairSpec read_spec(const std::string& path);

/// Parses and validates; throws ValidationError if the pair is not standard.
StandardPair parse_spec(const std::string& path);
StandardPair make_pair(const PairSpec& spec);

/// Tolerance tags attached to reported reals.
inline constexpr double kEigenTol = 1e-12;
inline constexpr double kDimensionTol = 1e-10;

/// {"value": x rounded to 12 significant digits, "tol": tol}.
Json tagged(long double x, double tol);
/// JSON integer when it fits 64 bits, decimal string otherwise.
Json int_json(const Int& x);
Json vector_json(const IntVector& v);
Json matrix_json(const IntMatrix& m);

Json validation_json(const ValidationReport& rep);
Json pair_json(const StandardPair& pair);
Json primitivization_json(const PrimitiveReduction& red);
Json contact_json(const ContactSystem& cs);
Json spectrum_json(const SpectralReport& rep);
Json dimension_json(const DimensionReport& rep);
Json growth_json(const GrowthEstimate& est, const std::optional<Ball>& ball);
Json box_count_json(const BoxCountEstimate& est, unsigned k, std::size_t points);

struct Analysis {
  StandardPair pair;
  PrimitiveReduction reduction;
  ContactSystem contact;
  SpectralReport spectrum;
  DimensionReport dimension;
};

/// Primitivizes, then runs contact, spectrum and dimension on the reduced pair.
Analysis analyze(const StandardPair& pair, const SpectrumOptions& options = {});

/// Full report: input, validation, primitivization, contact, spectrum and,
/// with with_dimension, dimension sections.
Json analysis_json(const PairSpec& spec, const Analysis& analysis, bool with_dimension = true);

/// Key-sorted JSON text with a trailing newline.
std::string dump(const Json& j);

/// Compact human-readable rendering of a report.
std::string to_text(const Json& j);

}  // namespace tilebound
