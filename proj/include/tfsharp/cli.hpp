#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tfsharp/verification.hpp"

namespace tfsharp::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { kPass = 0, kAssertionFailure = 1, kConfigError = 2 };

/// Rectangular table of preformatted cells.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// "%.12g", with "inf" for infinities.
std::string format_number(double v);
std::string to_csv(const Table& t);

struct RunConfig {
  std::string command;
  int L = 16;
  int m = 16;
  std::vector<std::string> exponents;
  std::vector<double> lambdas;
  std::string norm = "amalgam";
  std::string family = "gaussian";
  double family_param = 1.0;
  std::string window = "gaussian";
  double window_param = 1.0;
  std::string symbol = "gaussian";
  double symbol_param = 1.0;
  std::string symbol_p;
  std::string s1;
  std::string s2;
  double margin = 0.05;
  std::string out;
  std::string format = "csv";
  std::string summary;
  std::uint64_t seed = 1;
};

/// Outcome of a command: primary table, optional per-lambda plot data and
/// the assertions that decide the exit code.
struct RunResult {
  Table table;
  Table points;
  bool has_points = false;
  std::vector<Assertion> assertions;
};

/// Throws std::invalid_argument on invalid configuration.
RunResult execute(const RunConfig& config);

/// Parses arguments (and an optional --config file), runs, writes artifacts.
/// Returns the process exit code.
int main(int argc, char** argv);

}  // namespace tfsharp::cli
