// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <cstdio>

#include "amoeba/checks.hpp"

int main() {
  namespace ck = amoeba::checks;
  const ck::Scale scale{};
  int failed = 0;
  int id = 0;
  for (auto fn : ck::all()) {
    const ck::Result r = ck::run(fn, scale, ++id);
    std::printf("[%s] criterion %d: %s: %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.detail.c_str());
    std::fflush(stdout);
    failed += !r.passed;
  }
  std::printf("%d/%d criteria passed\n", id - failed, id);
  return failed == 0 ? 0 : 1;
}
