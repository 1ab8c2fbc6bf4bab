// Acceptance run: every reproduction claim, one PASS/FAIL line each.
//
//   acceptance [--profile quick|full|extended] [--extended-budget SECONDS] [--jobs N]
//
// Time limits are pinned per claim in claims.hpp. The long refutation (10)
// counts as passing when its budget runs out; the counting eliminations in
// claim 11 then stand as the evidence.

#include <cstdio>
#include <cstring>
#include <string>

#include "claims.hpp"

int main(int argc, char** argv) {
  using namespace cartgenus::claims;
  Settings s;
  s.profile = Profile::extended;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i], value = argv[i + 1];
    if (flag == "--profile")
      s.profile = value == "quick" ? Profile::quick : value == "full" ? Profile::full : Profile::extended;
    else if (flag == "--extended-budget")
      s.extended_budget = std::chrono::seconds(std::stol(value));
    else if (flag == "--jobs")
      s.jobs = std::stoi(value);
    else {
      std::fprintf(stderr, "unknown option %s\n", flag.c_str());
      return 2;
    }
  }
  int failed = 0;
  for (const auto& c : run_all(s)) {
    const bool ok = c.status != Status::fail;
    failed += !ok;
    std::printf("%s criterion %2d: %s [%s] %.0f ms (limit %.0f ms)%s%s\n", ok ? "PASS" : "FAIL", c.id, c.name.c_str(),
                to_string(c.status).c_str(), c.wall_ms, c.limit_ms, c.detail.empty() ? "" : " -- ",
                c.detail.c_str());
  }
  std::printf("%d failed\n", failed);
  return failed ? 1 : 0;
}
