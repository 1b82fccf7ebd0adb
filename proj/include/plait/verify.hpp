#pragma once

// Property suites behind `verify`. Each property runs to completion and
// reports pass/fail with a counterexample; nothing is thrown.

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "plait/io.hpp"

namespace plait {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct VerifyOptions {
  std::uint64_t seed = kDefaultSeed;
  // The threshold under test; replaceable so a corrupted constant can be
  // shown to be caught.
  std::function<double(int)> threshold = plaiting_threshold;
};

struct VerifyCase {
  std::string name;
  std::string classname;
  double seconds = 0.0;
  bool passed = false;
  std::string counterexample;
};

struct VerifyResult {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<VerifyCase> cases;
  std::size_t failures() const;
};

const std::vector<std::string>& verify_suite_names();  // sine, classifier, ifs
// suite is one of verify_suite_names() or "all"; throws InvalidArgument
// otherwise.
VerifyResult run_verify(std::string_view suite, const VerifyOptions& opts = {});
Json verify_json(const VerifyResult& r);

// Smallest |a| at which some pair of the family admits a root with nonzero
// delta, located by bisection on the closed-form solver to within tol.
double nesting_onset(int n_arcs, double tol = 1e-12);

}  // namespace plait
