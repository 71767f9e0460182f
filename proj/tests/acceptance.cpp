// One PASS/FAIL line per acceptance criterion. Failing checks are listed below
// their criterion line. Exit status is nonzero if any criterion fails.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "magic/verify.hpp"

using namespace magic;

namespace {

struct Part {
  int loops;
  double budget;  // seconds, <= 0 for none
  const char *label;
};

std::vector<Part> parts(int c) {
  switch (c) {
  case 1: return {{0, 1.0, ""}};
  case 2: return {{0, 30.0, ""}};
  case 4: return {{1, 10.0, "n=1"}, {2, 300.0, "n=2"}};
  case 5: return {{0, 1200.0, ""}};
  default: return {{0, 0.0, ""}};
  }
}

}  // namespace

int main(int argc, char **argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  if (only.empty())
    for (int c = 1; c <= 10; ++c) only.push_back(c);

  int failed = 0;
  for (int c : only) {
    bool ok = true;
    std::vector<std::string> notes;
    double total = 0.0;
    for (const auto &part : parts(c)) {
      VerifyConfig cfg;
      cfg.loops = part.loops;
      const auto t0 = std::chrono::steady_clock::now();
      const auto recs = criterion_checks(c, cfg);
      const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      total += dt;
      for (const auto &r : recs) {
        if (r.pass) continue;
        ok = false;
        std::string v;
        for (double x : r.values) {
          char b[32];
          std::snprintf(b, sizeof b, " %.3e", x);
          v += b;
        }
        notes.push_back(r.id + " [" + r.inputs + "] values:" + v);
      }
      if (part.budget > 0 && dt > part.budget) {
        ok = false;
        notes.push_back(std::string("runtime ") + part.label + " " + std::to_string(dt) +
                        " s over budget " + std::to_string(part.budget) + " s");
      }
    }
    std::printf("%s criterion %d: %s (%.1f s)\n", ok ? "PASS" : "FAIL", c, criterion_title(c), total);
    for (const auto &n : notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
    if (!ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
