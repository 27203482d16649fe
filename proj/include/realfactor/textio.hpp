#pragma once

// Polynomial text and JSON documents.
//
//   expression := term (('+' | '-') term)*      (a leading sign is allowed)
//   term       := number | number '*'? var ('^' uint)? | var ('^' uint)?
//
// Numbers are decimal floats with optional exponent. Whitespace between
// tokens is ignored and repeated powers are summed.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "realfactor/errors.hpp"
#include "realfactor/factorizer.hpp"
#include "realfactor/matrix.hpp"
#include "realfactor/oracle.hpp"
#include "realfactor/polynomial.hpp"
#include "realfactor/truepair.hpp"

namespace realfactor {

using Json = nlohmann::ordered_json;

/// Largest exponent accepted by the parser.
inline constexpr std::size_t kMaxExponent = 10000;

namespace detail {

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

class PolyParser {
 public:
  PolyParser(std::string_view text, char var) : s_(text), var_(var) {}

  Polynomial parse() {
    skip_ws();
    if (pos_ == s_.size()) throw ParseError("empty input", pos_);
    double sign = 1.0;
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? -1.0 : 1.0;
      ++pos_;
      skip_ws();
    }
    term(sign);
    while (true) {
      skip_ws();
      if (pos_ == s_.size()) break;
      const char c = peek();
      if (c != '+' && c != '-') throw ParseError(unexpected(c), pos_);
      ++pos_;
      skip_ws();
      term(c == '-' ? -1.0 : 1.0);
    }
    std::vector<double> coeffs;
    if (!terms_.empty()) coeffs.assign(terms_.rbegin()->first + 1, 0.0);
    for (const auto& [power, c] : terms_) coeffs[power] += c;
    return Polynomial(std::move(coeffs));
  }

 private:
  char peek() const { return s_[pos_]; }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r'))
      ++pos_;
  }

  static std::string unexpected(char c) { return std::string("unexpected character '") + c + "'"; }

  void term(double sign) {
    if (pos_ == s_.size()) throw ParseError("expected a term", pos_);
    double coeff = 1.0;
    bool have_number = false;
    if (is_digit(peek()) || peek() == '.') {
      coeff = number();
      have_number = true;
      skip_ws();
      if (pos_ < s_.size() && peek() == '*') {
        ++pos_;
        skip_ws();
        if (pos_ == s_.size() || peek() != var_)
          throw ParseError(std::string("expected '") + var_ + "' after '*'", pos_);
      }
    }
    std::size_t power = 0;
    if (pos_ < s_.size() && peek() == var_) {
      ++pos_;
      power = 1;
      skip_ws();
      if (pos_ < s_.size() && peek() == '^') {
        ++pos_;
        skip_ws();
        power = exponent();
      }
    } else if (!have_number) {
      throw ParseError(pos_ < s_.size() ? unexpected(peek()) : "expected a term", pos_);
    }
    terms_[power] += sign * coeff;
  }

  double number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (is_digit(peek()) || peek() == '.')) ++pos_;
    if (pos_ < s_.size() && (peek() == 'e' || peek() == 'E') && var_ != 'e' && var_ != 'E') {
      std::size_t q = pos_ + 1;
      if (q < s_.size() && (s_[q] == '+' || s_[q] == '-')) ++q;
      if (q < s_.size() && is_digit(s_[q])) {
        pos_ = q;
        while (pos_ < s_.size() && is_digit(peek())) ++pos_;
      }
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, value);
    if (ec == std::errc::result_out_of_range) throw ParseError("number out of range", start);
    if (ec != std::errc() || ptr != s_.data() + pos_) throw ParseError("malformed number", start);
    return value;
  }

  std::size_t exponent() {
    const std::size_t start = pos_;
    if (pos_ == s_.size() || !is_digit(peek()))
      throw ParseError(pos_ < s_.size() ? "expected exponent, found '" + std::string(1, peek()) + "'"
                                        : "expected exponent",
                       pos_);
    std::size_t value = 0;
    while (pos_ < s_.size() && is_digit(peek())) {
      value = value * 10 + static_cast<std::size_t>(peek() - '0');
      if (value > kMaxExponent) throw ParseError("exponent overflow", start);
      ++pos_;
    }
    return value;
  }

  std::string_view s_;
  char var_;
  std::size_t pos_ = 0;
  std::map<std::size_t, double> terms_;
};

/// Shortest decimal that reads back as the same double.
inline std::string shortest(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace detail

inline Polynomial parse_poly(std::string_view text, char var = 't') {
  return detail::PolyParser(text, var).parse();
}

/// Descending-power text that parse_poly reads back exactly.
inline std::string format_poly(const Polynomial& p, char var = 't') {
  if (var == 'e' || var == 'E' || detail::is_digit(var))
    throw ContractViolation("format_poly: variable clashes with number syntax");
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t k = p.degree() + 1; k-- > 0;) {
    const double c = p[k];
    if (c == 0.0) continue;
    const double mag = std::abs(c);
    if (out.empty())
      out += std::signbit(c) ? "-" : "";
    else
      out += std::signbit(c) ? " - " : " + ";
    if (k == 0 || mag != 1.0) out += detail::shortest(mag);
    if (k >= 1) out += var;
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out;
}

// JSON documents

inline Json factorization_json(const Factorization& f, const Polynomial& input, std::string_view method,
                               double timing_ms, const std::string* trace_file = nullptr) {
  Json doc;
  doc["input"] = input.coeff_vector();
  doc["method"] = method;
  doc["constant"] = f.constant;
  Json linear = Json::array();
  for (double r : f.linear_roots) linear.push_back({{"root", r}});
  doc["linear"] = std::move(linear);
  Json quadratic = Json::array();
  for (const QuadPair& q : f.quad_pairs) quadratic.push_back({{"alpha", q.alpha}, {"beta", q.beta}});
  doc["quadratic"] = std::move(quadratic);
  doc["residual"] = f.residual;
  doc["timing_ms"] = timing_ms;
  doc["trace"] = trace_file ? Json(*trace_file) : Json(nullptr);
  return doc;
}

/// Reads the factor lists of an output document. Throws ContractViolation
/// on a malformed document.
inline Factorization factorization_from_json(const Json& doc) {
  try {
    Factorization f;
    f.constant = doc.at("constant").get<double>();
    for (const Json& r : doc.at("linear")) f.linear_roots.push_back(r.at("root").get<double>());
    for (const Json& q : doc.at("quadratic"))
      f.quad_pairs.push_back({q.at("alpha").get<double>(), q.at("beta").get<double>()});
    if (doc.contains("residual") && doc["residual"].is_number()) f.residual = doc["residual"].get<double>();
    return f;
  } catch (const Json::exception& e) {
    throw ContractViolation(std::string("factorization document: ") + e.what());
  }
}

inline Json trace_json(const Trace& trace) {
  Json events = Json::array();
  for (const TraceEvent& e : trace) {
    Json detail = Json::object();
    for (const auto& [k, v] : e.detail) detail[k] = v;
    events.push_back({{"kind", to_string(e.kind)}, {"dim", e.dim}, {"detail", std::move(detail)}});
  }
  return Json{{"events", std::move(events)}};
}

inline Trace trace_from_json(const Json& doc) {
  Trace out;
  try {
    for (const Json& e : doc.at("events")) {
      const auto kind = trace_kind_from_string(e.at("kind").get<std::string>());
      if (!kind) throw ContractViolation("trace document: unknown event kind");
      TraceEvent ev{*kind, e.at("dim").get<std::size_t>(), {}};
      for (const auto& [k, v] : e.at("detail").items()) ev.detail.emplace_back(k, v.get<double>());
      out.push_back(std::move(ev));
    }
  } catch (const Json::exception& e) {
    throw ContractViolation(std::string("trace document: ") + e.what());
  }
  return out;
}

inline Json true_pair_json(const TruePair& tp) {
  return Json{{"alpha", tp.alpha}, {"beta", tp.beta}, {"vector", tp.vector}, {"residual", tp.residual}};
}

inline Json compare_json(const CompareReport& rep, double tol) {
  Json unmatched_pairs = Json::array();
  auto pairs = [](const std::vector<QuadPair>& v) {
    Json a = Json::array();
    for (const QuadPair& q : v) a.push_back({{"alpha", q.alpha}, {"beta", q.beta}});
    return a;
  };
  return Json{{"equal", rep.equal},
              {"tol", tol},
              {"max_distance", rep.max_distance},
              {"unmatched",
               {{"first", {{"linear", rep.unmatched_roots_first}, {"quadratic", pairs(rep.unmatched_pairs_first)}}},
                {"second",
                 {{"linear", rep.unmatched_roots_second}, {"quadratic", pairs(rep.unmatched_pairs_second)}}}}}};
}

/// Matrix from {"matrix": [[...], ...]} or companion matrix of the monic
/// normalization of {"coeffs": [a0, ..., an]}.
inline Matrix matrix_from_json(const Json& doc) {
  try {
    if (doc.contains("matrix")) {
      const Json& rows = doc.at("matrix");
      const std::size_t n = rows.size();
      Matrix m(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) throw ContractViolation("matrix document: matrix must be square");
        for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j].get<double>();
      }
      return m;
    }
    if (doc.contains("coeffs")) {
      const Polynomial p(doc.at("coeffs").get<std::vector<double>>());
      if (p.degree() < 1) throw ContractViolation("coefficient document: degree must be at least 1");
      return companion(p.monic());
    }
  } catch (const Json::exception& e) {
    throw ContractViolation(std::string("matrix document: ") + e.what());
  }
  throw ContractViolation("matrix document: expected a \"matrix\" or \"coeffs\" key");
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractViolation("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ContractViolation(path + ": " + e.what());
  }
}

}  // namespace realfactor
