#include <set>

#include "curvelab/cli.hpp"

namespace curvelab::cli {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string &path, const std::string &msg) {
  throw CurveError(ErrorKind::SchemaError, path + ": " + msg);
}

double number_at(const json &obj, const std::string &key, const std::string &path) {
  const auto it = obj.find(key);
  if (it == obj.end()) schema_error(path + "." + key, "missing");
  if (!it->is_number()) schema_error(path + "." + key, "must be a number");
  return it->get<double>();
}

int exponent_at(const json &obj, const std::string &key, const std::string &path) {
  const auto it = obj.find(key);
  if (it == obj.end()) schema_error(path + "." + key, "missing");
  if (!it->is_number_integer()) schema_error(path + "." + key, "must be an integer");
  const auto v = it->get<long long>();
  if (v < 0) schema_error(path + "." + key, "must be nonnegative");
  if (v > 100000) schema_error(path + "." + key, "too large");
  return static_cast<int>(v);
}

void only_keys(const json &obj, std::initializer_list<std::string_view> allowed, const std::string &path) {
  for (const auto &[k, v] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || k == a;
    if (!ok) schema_error(path + "." + k, "unknown field");
  }
}

Complex complex_value(const json &v, const std::string &path) {
  if (v.is_number()) return v.get<double>();
  if (!v.is_object()) schema_error(path, "must be a number or {\"re\", \"im\"}");
  only_keys(v, {"re", "im"}, path);
  return {number_at(v, "re", path), v.contains("im") ? number_at(v, "im", path) : 0.0};
}

nlohmann::ordered_json complex_json(Complex c) { return {{"re", c.real()}, {"im", c.imag()}}; }

}  // namespace

CurveSpec parse_curve(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    schema_error("$", std::string("malformed JSON (") + e.what() + ")");
  }
  if (!doc.is_object()) schema_error("$", "must be an object");
  only_keys(doc, {"name", "terms", "params"}, "$");

  CurveSpec spec;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) schema_error("$.name", "must be a string");
    spec.name = doc["name"].get<std::string>();
  }

  if (!doc.contains("terms")) schema_error("$.terms", "missing");
  const json &terms = doc["terms"];
  if (!terms.is_array()) schema_error("$.terms", "must be an array");
  if (terms.empty()) schema_error("$.terms", "needs at least one term");
  std::set<std::pair<int, int>> seen;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::string path = "$.terms[" + std::to_string(k) + "]";
    const json &t = terms[k];
    if (!t.is_object()) schema_error(path, "must be an object");
    only_keys(t, {"i", "j", "re", "im", "coeff"}, path);
    TermSpec term;
    term.i = exponent_at(t, "i", path);
    term.j = exponent_at(t, "j", path);
    if (t.contains("coeff")) {
      if (t.contains("re") || t.contains("im")) schema_error(path, "give either coeff or re/im, not both");
      if (!t["coeff"].is_string()) schema_error(path + ".coeff", "must be a string");
      term.coeff = t["coeff"].get<std::string>();
      if (term.coeff.empty()) schema_error(path + ".coeff", "must not be empty");
    } else {
      term.value = Complex(number_at(t, "re", path), t.contains("im") ? number_at(t, "im", path) : 0.0);
    }
    if (!seen.insert({term.i, term.j}).second)
      throw CurveError(ErrorKind::DuplicateTerm, path + ": exponent (" + std::to_string(term.i) + ", " +
                                                     std::to_string(term.j) + ") appears twice");
    spec.terms.push_back(std::move(term));
  }

  if (doc.contains("params")) {
    const json &params = doc["params"];
    if (!params.is_object()) schema_error("$.params", "must be an object");
    for (const auto &[name, v] : params.items()) spec.params[name] = complex_value(v, "$.params." + name);
  }
  return spec;
}

nlohmann::ordered_json curve_to_json(const CurveSpec &spec) {
  nlohmann::ordered_json doc;
  doc["name"] = spec.name;
  auto terms = nlohmann::ordered_json::array();
  for (const auto &t : spec.terms) {
    nlohmann::ordered_json term{{"i", t.i}, {"j", t.j}};
    if (t.value) {
      term["re"] = t.value->real();
      term["im"] = t.value->imag();
    } else {
      term["coeff"] = t.coeff;
    }
    terms.push_back(std::move(term));
  }
  doc["terms"] = std::move(terms);
  if (!spec.params.empty()) {
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto &[name, v] : spec.params) params[name] = complex_json(v);
    doc["params"] = std::move(params);
  }
  return doc;
}

std::string emit_curve(const CurveSpec &spec) { return dump(curve_to_json(spec)); }

BivarPoly to_poly(const CurveSpec &spec, const ParamMap &overrides) {
  ParamMap params = spec.params;
  for (const auto &[k, v] : overrides) params[k] = v;
  BivarPoly out;
  for (std::size_t k = 0; k < spec.terms.size(); ++k) {
    const auto &t = spec.terms[k];
    Complex c;
    if (t.value) {
      c = *t.value;
    } else {
      try {
        c = parse_constant(t.coeff, params);
      } catch (const CurveError &e) {
        schema_error("$.terms[" + std::to_string(k) + "].coeff", e.what());
      }
    }
    out.add(t.i, t.j, c);
  }
  return out;
}

CurveSpec spec_from_poly(const BivarPoly &p, std::string name) {
  CurveSpec spec;
  spec.name = std::move(name);
  for (const auto &[e, c] : p.terms()) spec.terms.push_back({e.first, e.second, c, {}});
  return spec;
}

}  // namespace curvelab::cli
