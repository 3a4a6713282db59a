#pragma once

// Invariant suites over randomly generated (fixed-seed) inputs, used by the
// CLI "verify" task. Each suite reports counts and the worst residual rather
// than stopping at the first failure.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "weylkit/interval_set.hpp"
#include "weylkit/nevanlinna.hpp"

namespace weylkit {

// One instance of every node kind, plus the four SL extensions.
std::vector<std::pair<std::string, NevanlinnaFunction>> model_zoo(std::uint64_t seed = 7);

// Up to max_components intervals and points with endpoints on a coarse
// lattice in [−10, 10], so that coincidences and adjacency occur often.
IntervalSet random_interval_set(std::mt19937_64& rng, int max_components = 20);

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  double max_residual = 0.0;
  bool passed() const { return failures == 0; }
};

struct VerifyOptions {
  // Replace i√(z − T) by −i√(z − T) in every square-root leaf of the zoo.
  bool branch_flip = false;
  std::optional<NevanlinnaFunction> extra_model;  // also run through herglotz
  unsigned threads = 0;
};

// herglotz, gamma_identity, closed_forms, direct_sum, ac_lemmas,
// friedrichs_spectrum, stieltjes_roundtrip.
const std::vector<std::string>& default_suites();
// default_suites() plus normal_bound.
const std::vector<std::string>& available_suites();

// Throws ValidationError for an unknown suite name.
SuiteResult run_suite(const std::string& name, const VerifyOptions& opts = {});

}  // namespace weylkit
