#pragma once

#include <string>
#include <vector>

namespace tsc {

struct Fixture {
  std::string name;
  std::string text;
};

/// Bundled code definitions, in the order they are listed by the CLI.
const std::vector<Fixture>& fixtures();

/// Looks a bundled code up by name; throws Error{Usage} when absent.
const Fixture& fixture(const std::string& name);

} // namespace tsc
