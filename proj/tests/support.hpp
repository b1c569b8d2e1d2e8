// Catch2 runner shared by the unit suites.  Property suites draw from a
// deterministic PRNG; override the default seed with --seed=N or the
// SHAGRAPH_TEST_SEED environment variable.

#ifndef SHAGRAPH_TESTS_SUPPORT_HPP
#define SHAGRAPH_TESTS_SUPPORT_HPP

#define CATCH_CONFIG_RUNNER
#include <catch2/catch.hpp>

#include <cstdlib>
#include <vector>

#include "oracles.hpp"

int main(int argc, char** argv) {
  std::vector<char*> args;
  for (int i = 0; i < argc; ++i) {
    std::string a = argv[i];
    if (a.rfind("--seed=", 0) == 0) {
      testsupport::seed = std::strtoull(a.c_str() + 7, nullptr, 10);
      continue;
    }
    args.push_back(argv[i]);
  }
  if (const char* env = std::getenv("SHAGRAPH_TEST_SEED"))
    testsupport::seed = std::strtoull(env, nullptr, 10);
  Catch::Session session;
  return session.run(static_cast<int>(args.size()), args.data());
}

#endif
