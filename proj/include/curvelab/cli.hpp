#pragma once

// Command-line front end: polynomial expressions, curve-spec JSON, result
// emission and subcommand dispatch.

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "curvelab/intersect.hpp"
#include "json.hpp"

namespace curvelab::cli {

using ParamMap = std::map<std::string, Complex>;

/// Sparse polynomial in an ordered list of variables; exponent vectors have
/// one entry per variable.
using MultiPoly = std::map<std::vector<int>, Complex>;

/// Parses sums and products of complex literals (`2`, `1.5e-3`, `2i`, `i`,
/// `(1+2i)`), variables and parameters with nonnegative integer powers.
/// Juxtaposition multiplies (`3z^2w`). Unknown names throw SchemaError.
MultiPoly parse_expression(std::string_view text, const std::vector<std::string> &vars, const ParamMap &params);

BivarPoly parse_bivar(std::string_view text, const ParamMap &params);
/// Variables a, b, c.
TrivarPoly parse_trivar(std::string_view text, const ParamMap &params);
/// Expression without variables.
Complex parse_constant(std::string_view text, const ParamMap &params);

struct TermSpec {
  int i = 0;
  int j = 0;
  /// Numeric coefficient; unset when `coeff` names an expression.
  std::optional<Complex> value;
  std::string coeff;
  friend bool operator==(const TermSpec &, const TermSpec &) = default;
};

struct CurveSpec {
  std::string name;
  std::vector<TermSpec> terms;
  ParamMap params;
  friend bool operator==(const CurveSpec &, const CurveSpec &) = default;
};

/// Throws SchemaError (message starts with the JSON path of the offending
/// field) or DuplicateTerm.
CurveSpec parse_curve(std::string_view text);
std::string emit_curve(const CurveSpec &spec);
nlohmann::ordered_json curve_to_json(const CurveSpec &spec);

/// Evaluates a curve spec with its own params, overridden by `overrides`.
BivarPoly to_poly(const CurveSpec &spec, const ParamMap &overrides = {});
/// Numeric spec with terms in (i, j) order.
CurveSpec spec_from_poly(const BivarPoly &p, std::string name);

/// Serializes with every floating-point number at 17 significant digits;
/// non-finite numbers become null. Two-space indentation, trailing newline.
std::string dump(const nlohmann::ordered_json &doc);
/// One `path,value` row per leaf of the document.
std::string flatten_csv(const nlohmann::ordered_json &doc);
std::string format_double(double x);

/// `RE[,IM]`.
Complex parse_complex(std::string_view text);
/// `CX,CY,R`.
Disk parse_disk(std::string_view text);

/// Runs one invocation (args exclude the program name). Returns the exit
/// status: 0 success, 1 domain error, 2 usage error.
int dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace curvelab::cli
