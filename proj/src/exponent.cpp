#include "tfsharp/exponent.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace tfsharp {

namespace {

double parse_number(std::string_view text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

ExtendedExponent::ExtendedExponent(double value) : inv_(0.0), inv_conj_(1.0) {
  if (std::isnan(value) || value < 1.0) {
    throw std::invalid_argument("exponent must lie in [1, inf], got " + std::to_string(value));
  }
  if (std::isinf(value)) return;
  inv_ = 1.0 / value;
  inv_conj_ = (value - 1.0) / value;
}

ExtendedExponent ExtendedExponent::infinity() { return ExtendedExponent(0.0, 1.0); }

ExtendedExponent ExtendedExponent::from_reciprocal(double inv) {
  if (std::isnan(inv) || inv < 0.0 || inv > 1.0) {
    throw std::invalid_argument("reciprocal exponent must lie in [0, 1], got " + std::to_string(inv));
  }
  return ExtendedExponent(inv, 1.0 - inv);
}

ExtendedExponent ExtendedExponent::parse(std::string_view text) {
  text = trim(text);
  if (text == "inf" || text == "Inf" || text == "INF" || text == "infinity") return infinity();
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const double num = parse_number(trim(text.substr(0, slash)));
    const double den = parse_number(trim(text.substr(slash + 1)));
    if (den <= 0.0 || num <= 0.0) {
      throw std::invalid_argument("bad fraction '" + std::string(text) + "'");
    }
    if (num < den) {
      throw std::invalid_argument("exponent must lie in [1, inf], got " + std::string(text));
    }
    // Keep a/b exact in its reciprocal form b/a.
    return ExtendedExponent(den / num, (num - den) / num);
  }
  return ExtendedExponent(parse_number(text));
}

double ExtendedExponent::value() const {
  return is_infinite() ? std::numeric_limits<double>::infinity() : 1.0 / inv_;
}

std::string ExtendedExponent::to_string() const {
  if (is_infinite()) return "inf";
  // Small fractions a/b print as such when they parse back to the same value.
  for (int b = 2; b <= 16; ++b) {
    const double a = std::round(b / inv_);
    if (a > b && static_cast<double>(b) / a == inv_ && std::abs(a - b / inv_) < 1e-9 &&
        std::fmod(a, b) != 0.0) {
      return std::to_string(static_cast<long long>(a)) + "/" + std::to_string(b);
    }
  }
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value());
  (void)ec;
  std::string text(buf, ptr);
  if (parse(text) == *this) return text;
  // 1/p is stored, so "1/x" with x the shortest form of 1/p always parses back.
  auto [rptr, rec] = std::to_chars(buf, buf + sizeof buf, inv_);
  (void)rec;
  return "1/" + std::string(buf, rptr);
}

}  // namespace tfsharp
