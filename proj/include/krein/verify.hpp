#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "krein/io.hpp"

namespace krein::verify {

struct Options {
  std::string suite;
  Index count = 200;
  std::vector<Index> dims{1, 2, 3, 4, 5, 6, 7, 8};
  // Overrides the default tolerance of every numeric identity; pass/fail
  // identities keep their fixed thresholds.
  std::optional<double> tol;
  std::uint64_t seed = 0;
  bool timing = false;
};

struct IdentityResult {
  std::string name;
  double tolerance = 0.0;
  double max_deviation = 0.0;
  Index checks = 0;
};

struct Failure {
  std::uint64_t seed = 0;  // the instance's own seed
  Index instance = 0;
  std::string identity;
  double deviation = 0.0;
  std::string message;  // set when the instance threw
};

struct Report {
  std::string suite;
  Index instances = 0;
  std::uint64_t seed = 0;
  std::vector<Index> dims;
  double max_deviation = 0.0;
  std::vector<IdentityResult> identities;
  std::vector<Failure> failures;
  std::optional<double> runtime_ms;

  bool passed() const { return failures.empty(); }
  io::Json to_json() const;
};

std::vector<std::string> suite_names();
// One-line description per suite, for --help style listings.
std::string suite_description(const std::string& name);

// Throws UnknownSuite, BadDims.
Report run(const Options& options);

// "1,2,5" or "1..8", or a mix.
std::vector<Index> parse_dims(const std::string& text);

}  // namespace krein::verify
