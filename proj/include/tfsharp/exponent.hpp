#pragma once

#include <string>
#include <string_view>

namespace tfsharp {

/// A Lebesgue exponent p in [1, inf].
///
/// Stored as the pair (1/p, 1/p') so that conjugation is an exact swap and
/// conjugate(conjugate(p)) == p holds bit-for-bit.
class ExtendedExponent {
 public:
  /// Throws std::invalid_argument unless value >= 1 (value may be +inf).
  explicit ExtendedExponent(double value);

  static ExtendedExponent infinity();
  /// Builds the exponent with 1/p = inv, inv in [0, 1].
  static ExtendedExponent from_reciprocal(double inv);
  /// Accepts "inf", "a/b" and plain decimals. Throws std::invalid_argument.
  static ExtendedExponent parse(std::string_view text);

  bool is_infinite() const { return inv_ == 0.0; }
  double value() const;
  double reciprocal() const { return inv_; }
  double conjugate_reciprocal() const { return inv_conj_; }
  ExtendedExponent conjugate() const { return ExtendedExponent(inv_conj_, inv_); }

  /// "inf", a small fraction "a/b", the shortest decimal, or "1/x" with x = 1/p;
  /// always parses back to an equal exponent.
  std::string to_string() const;

  friend bool operator==(const ExtendedExponent& a, const ExtendedExponent& b) {
    return a.inv_ == b.inv_;
  }

 private:
  ExtendedExponent(double inv, double inv_conj) : inv_(inv), inv_conj_(inv_conj) {}

  double inv_;
  double inv_conj_;
};

}  // namespace tfsharp
