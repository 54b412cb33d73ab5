// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "modlat/suite.hpp"

int main(int argc, char** argv) {
  modlat::suite::SuiteOptions opt;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--serial") == 0) opt.parallel = false;
    if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) opt.seed = std::strtoull(argv[++i], nullptr, 10);
  }
  int failed = 0;
  for (const auto& r : modlat::suite::run_acceptance(opt)) {
    std::printf("%s  %2d  %-34s %7.2fs  %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                r.detail.c_str());
    if (!r.passed) ++failed;
  }
  std::printf("%d of 10 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
