#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tfsharp {

/// One checked property: passes iff |measured - expected| <= tolerance
/// (kind Equal) or measured <= expected + tolerance (kind AtMost).
struct Assertion {
  enum class Kind { Equal, AtMost };

  std::string name;
  Kind kind = Kind::Equal;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool passed = false;

  static Assertion equal(std::string name, double measured, double expected, double tolerance);
  static Assertion at_most(std::string name, double measured, double bound, double tolerance = 0.0);
};

/// Identity and inequality checks for transforms, norms and localization
/// operators on small grids. Random trials are drawn from `seed`.
std::vector<Assertion> run_verification_suite(std::uint64_t seed);

}  // namespace tfsharp
