#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "klein/serialize.hpp"

namespace klein {

/// Outcome of one acceptance suite.
struct SuiteResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double seconds = 0.0;
  double time_budget = 0.0;  ///< seconds
  Json details;
};

inline constexpr int kSuiteCount = 12;

/// Runs suite `id` in [1, kSuiteCount]. Randomized samples derive from `seed`.
SuiteResult run_suite(int id, std::uint64_t seed);

/// All suites in id order.
std::vector<SuiteResult> run_all_suites(std::uint64_t seed);

Json to_json(const SuiteResult& r);

// Fixtures shared with the CLI and the tests.

/// Seeded disks in the open quadrants that are certified disjoint from their b-image.
std::vector<Disk> seeded_free_disks(std::size_t count, std::uint64_t seed);

/// Seeded homeomorphisms of the (theta, r) plane commuting with a: undulations
/// with frequency a multiple of 4 and shears, alternating.
std::vector<PlaneHomeo> seeded_conjugators(std::size_t count, std::uint64_t seed);

/// The seed point used for index curves.
PlanePoint default_index_seed();

}  // namespace klein
