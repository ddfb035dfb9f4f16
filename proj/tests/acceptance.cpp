// Acceptance criteria 1-8. Detail lines first, then one PASS/FAIL line per criterion.
// Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "lattice_theta/lattice_theta.hpp"

namespace {

const char* titles[9] = {
    "",
    "threshold reproduction (rho1, rho2, sigma2b, sigma1b reciprocity)",
    "Mueller-Ho thresholds (alpha1, alpha2, alpha0, theta_alpha0, rough bound)",
    "energy spot values theta(1;i), theta(1;hexagonal)",
    "appendix constants (fourteen named margins and values)",
    "oracle equivalence, brute force 400x400 vs closed-form minimizer",
    "property suites (identities, derivatives, sign scans)",
    "critical-point facts for J",
    "trajectory shape of W1 and monotone branch heights",
};

}  // namespace

int main() {
  using namespace lattice;
  std::vector<Check> checks;
  auto timed = [&](const char* what, auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    auto v = fn();
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("# %s suite: %zu checks in %.1f s\n", what, v.size(), s);
    checks.insert(checks.end(), v.begin(), v.end());
  };
  timed("thresholds", [] { return verify_thresholds(); });
  timed("appendix", [] { return verify_appendix(); });
  timed("oracle", [] { return verify_oracle(400); });
  timed("identities", [] { return verify_identities(200); });

  for (const auto& c : checks) {
    if (c.criterion == 0) continue;
    std::printf("  [%d] %-44s expected %-16.10g computed %-18.12g tol %-9.3g %s\n", c.criterion,
                c.name.c_str(), c.expected, c.computed, c.tol, c.pass ? "PASS" : "FAIL");
  }
  std::printf("\n");
  int failed = 0;
  for (int k = 1; k <= 8; ++k) {
    int n = 0, bad = 0;
    std::string failing;
    for (const auto& c : checks) {
      if (c.criterion != k) continue;
      ++n;
      if (!c.pass) {
        ++bad;
        failing += (failing.empty() ? "" : ", ") + c.name;
      }
    }
    const bool ok = n > 0 && bad == 0;
    if (!ok) ++failed;
    std::printf("criterion %d %s: %s (%d/%d checks)%s%s\n", k, titles[k], ok ? "PASS" : "FAIL", n - bad, n,
                failing.empty() ? "" : "; failing: ", failing.c_str());
  }
  return failed == 0 ? 0 : 1;
}
