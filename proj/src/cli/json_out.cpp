#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "curvelab/cli.hpp"

namespace curvelab::cli {

namespace {

using ojson = nlohmann::ordered_json;

std::string scalar(const ojson &v) {
  if (v.is_number_float()) {
    const double x = v.get<double>();
    return std::isfinite(x) ? format_double(x) : "null";
  }
  return v.dump();
}

bool all_scalar(const ojson &v) {
  return std::all_of(v.begin(), v.end(), [](const ojson &x) { return x.is_primitive(); });
}

void write(const ojson &v, int indent, std::string &out) {
  if (v.is_structured() && !v.empty() && all_scalar(v)) {
    const bool obj = v.is_object();
    out += obj ? "{" : "[";
    bool first = true;
    for (const auto &[k, x] : v.items()) {
      if (!first) out += ", ";
      first = false;
      if (obj) out += ojson(k).dump() + ": ";
      out += scalar(x);
    }
    out += obj ? "}" : "]";
    return;
  }
  const std::string pad(2 * (indent + 1), ' ');
  const std::string close_pad(2 * indent, ' ');
  if (v.is_object()) {
    if (v.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (const auto &[k, x] : v.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad + ojson(k).dump() + ": ";
      write(x, indent + 1, out);
    }
    out += "\n" + close_pad + "}";
  } else if (v.is_array()) {
    if (v.empty()) {
      out += "[]";
      return;
    }
    out += "[\n";
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (k) out += ",\n";
      out += pad;
      write(v[k], indent + 1, out);
    }
    out += "\n" + close_pad + "]";
  } else {
    out += scalar(v);
  }
}

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void flatten(const ojson &v, const std::string &path, std::string &out) {
  if (v.is_object()) {
    for (const auto &[k, x] : v.items()) flatten(x, path.empty() ? k : path + "." + k, out);
  } else if (v.is_array()) {
    for (std::size_t k = 0; k < v.size(); ++k) flatten(v[k], path + "[" + std::to_string(k) + "]", out);
  } else {
    out += csv_field(path) + "," + csv_field(v.is_string() ? v.get<std::string>() : scalar(v)) + "\n";
  }
}

double parse_number(std::string_view s, std::string_view what) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double x = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(x))
    throw CurveError(ErrorKind::SchemaError, std::string(what) + ": '" + std::string(s) + "' is not a number");
  return x;
}

std::vector<double> parse_numbers(std::string_view text, std::string_view what) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_number(text.substr(start, comma - start), what));
    if (comma == std::string_view::npos) return out;
    start = comma + 1;
  }
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string dump(const ojson &doc) {
  std::string out;
  write(doc, 0, out);
  return out + "\n";
}

std::string flatten_csv(const ojson &doc) {
  std::string out = "key,value\n";
  flatten(doc, "", out);
  return out;
}

Complex parse_complex(std::string_view text) {
  const auto v = parse_numbers(text, "complex value");
  if (v.size() > 2) throw CurveError(ErrorKind::SchemaError, "complex value '" + std::string(text) + "': expected RE[,IM]");
  return {v[0], v.size() == 2 ? v[1] : 0.0};
}

Disk parse_disk(std::string_view text) {
  const auto v = parse_numbers(text, "disk");
  if (v.size() != 3) throw CurveError(ErrorKind::SchemaError, "disk '" + std::string(text) + "': expected CX,CY,R");
  if (!(v[2] > 0)) throw CurveError(ErrorKind::SchemaError, "disk '" + std::string(text) + "': radius must be positive");
  return Disk({v[0], v[1]}, v[2]);
}

}  // namespace curvelab::cli
