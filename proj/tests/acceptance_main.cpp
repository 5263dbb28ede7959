// Acceptance runner: one pass/fail line per criterion, nonzero exit on any
// failure.
#include <cstdio>

#include "specinv/acceptance.hpp"

int main(int argc, char** argv) {
  std::string filter = argc > 1 ? argv[1] : "";
  auto results = specinv::run_acceptance(filter);
  bool all = true;
  for (const auto& r : results) {
    std::printf("criterion %d [%s] %s (%.2f s) %s\n", r.id, r.name.c_str(),
                r.pass ? "PASS" : "FAIL", r.seconds,
                r.pass ? "" : r.detail.c_str());
    all &= r.pass;
  }
  return all ? 0 : 1;
}
