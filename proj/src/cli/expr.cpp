#include <cctype>
#include <charconv>

#include "curvelab/cli.hpp"

namespace curvelab::cli {

namespace {

constexpr int kMaxExponent = 4096;

MultiPoly add(MultiPoly a, const MultiPoly &b, Complex sign) {
  for (const auto &[e, c] : b) {
    auto &slot = a[e];
    slot += sign * c;
    if (slot == Complex{}) a.erase(e);
  }
  return a;
}

MultiPoly mul(const MultiPoly &a, const MultiPoly &b) {
  MultiPoly out;
  for (const auto &[ea, ca] : a)
    for (const auto &[eb, cb] : b) {
      auto e = ea;
      for (std::size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
      out[e] += ca * cb;
    }
  std::erase_if(out, [](const auto &kv) { return kv.second == Complex{}; });
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string> &vars, const ParamMap &params)
      : s_(text), vars_(vars), params_(params) {}

  MultiPoly parse() {
    MultiPoly p = sum();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string &msg) const {
    throw CurveError(ErrorKind::SchemaError,
                     "expression '" + std::string(s_) + "' at offset " + std::to_string(pos_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  MultiPoly constant(Complex c) const {
    MultiPoly p;
    if (c != Complex{}) p[std::vector<int>(vars_.size(), 0)] = c;
    return p;
  }

  MultiPoly sum() {
    MultiPoly acc;
    bool first = true;
    while (true) {
      Complex sign = 1.0;
      const char c = peek();
      if (c == '+' || c == '-') {
        sign = c == '-' ? -1.0 : 1.0;
        ++pos_;
      } else if (!first) {
        return acc;
      }
      acc = add(std::move(acc), product(), sign);
      first = false;
    }
  }

  bool starts_factor(char c) const {
    return c == '(' || c == '.' || std::isdigit(static_cast<unsigned char>(c)) ||
           std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

  MultiPoly product() {
    MultiPoly acc = power();
    while (true) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc = mul(acc, power());
      } else if (starts_factor(c)) {
        acc = mul(acc, power());
      } else {
        return acc;
      }
    }
  }

  MultiPoly power() {
    MultiPoly base = atom();
    if (peek() != '^') return base;
    ++pos_;
    skip_ws();
    int e = 0;
    const auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), e);
    if (ec != std::errc{} || e < 0) fail("exponent must be a nonnegative integer");
    if (e > kMaxExponent) fail("exponent too large");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    if (pos_ < s_.size() && s_[pos_] == '.')
      fail("exponent must be a nonnegative integer");
    MultiPoly out = constant(1.0);
    for (int k = 0; k < e; ++k) out = mul(out, base);
    return out;
  }

  MultiPoly atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      MultiPoly inner = sum();
      if (peek() != ')') fail("missing ')'");
      ++pos_;
      return inner;
    }
    if (c == '-' || c == '+') {
      ++pos_;
      MultiPoly inner = power();
      return c == '-' ? add({}, inner, -1.0) : inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name();
    fail(c == '\0' ? "unexpected end of expression" : "unexpected '" + std::string(1, c) + "'");
  }

  MultiPoly number() {
    double x = 0;
    const auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), x);
    if (ec != std::errc{}) fail("malformed number");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    if (pos_ < s_.size() && s_[pos_] == '.') fail("malformed number");
    // `2i` is an imaginary literal unless `i` continues into a longer name.
    if (pos_ < s_.size() && s_[pos_] == 'i' && !is_name_char(pos_ + 1) && !is_variable("i")) {
      ++pos_;
      return constant(Complex(0, x));
    }
    return constant(x);
  }

  bool is_name_char(std::size_t at) const {
    return at < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[at])) || s_[at] == '_');
  }

  bool is_variable(const std::string &n) const { return std::find(vars_.begin(), vars_.end(), n) != vars_.end(); }

  MultiPoly name() {
    // Single-letter variables may be juxtaposed (`zw`); parameter names are
    // matched greedily first.
    std::size_t end = pos_;
    while (is_name_char(end)) ++end;
    const std::string word(s_.substr(pos_, end - pos_));
    if (auto it = params_.find(word); it != params_.end()) {
      pos_ = end;
      return constant(it->second);
    }
    for (std::size_t k = 0; k < vars_.size(); ++k)
      if (word == vars_[k]) {
        pos_ = end;
        std::vector<int> e(vars_.size(), 0);
        e[k] = 1;
        return MultiPoly{{e, 1.0}};
      }
    if (word == "i") {
      pos_ = end;
      return constant(Complex(0, 1));
    }
    const std::string first(1, s_[pos_]);
    if (word.size() > 1 && (is_variable(first) || first == "i")) {
      ++pos_;
      if (first == "i" && !is_variable("i")) return constant(Complex(0, 1));
      std::vector<int> e(vars_.size(), 0);
      e[std::find(vars_.begin(), vars_.end(), first) - vars_.begin()] = 1;
      return MultiPoly{{e, 1.0}};
    }
    fail("unknown name '" + word + "'");
  }

  std::string_view s_;
  const std::vector<std::string> &vars_;
  const ParamMap &params_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_expression(std::string_view text, const std::vector<std::string> &vars, const ParamMap &params) {
  return Parser(text, vars, params).parse();
}

BivarPoly parse_bivar(std::string_view text, const ParamMap &params) {
  BivarPoly out;
  for (const auto &[e, c] : parse_expression(text, {"z", "w"}, params)) out.add(e[0], e[1], c);
  return out;
}

TrivarPoly parse_trivar(std::string_view text, const ParamMap &params) {
  TrivarPoly out;
  for (const auto &[e, c] : parse_expression(text, {"a", "b", "c"}, params)) out.add(e[0], e[1], e[2], c);
  return out;
}

Complex parse_constant(std::string_view text, const ParamMap &params) {
  const MultiPoly p = parse_expression(text, {}, params);
  return p.empty() ? Complex{} : p.begin()->second;
}

}  // namespace curvelab::cli
