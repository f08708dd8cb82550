#pragma once

#include <string>
#include <vector>

namespace hyperdist::cli {

struct FixtureResult {
  std::string name;
  bool exact = false;
  std::vector<std::string> lines;  // computed values, printed for the user
  std::string mismatch;            // expected vs computed when not exact
};

/// Built-in worked examples with their expected values frozen exactly.
std::vector<std::string> fixture_names();
FixtureResult run_fixture(const std::string& name);

}  // namespace hyperdist::cli
