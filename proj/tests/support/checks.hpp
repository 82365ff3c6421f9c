#pragma once

// Property suites shared by the unit tests and the acceptance runner.

#include <cstdint>
#include <string>

namespace checks {

struct Result {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
  void note(const std::string& s) {
    if (ok) detail += (detail.empty() ? "" : "; ") + s;
  }
};

/// polar(polar(P)) = P and h(P^o, x) = gauge(P, x) on random polytopes.
Result polar_duality(std::uint64_t seed, int probes = 1000);
/// gauge(K, x / gauge(K,x)) = 1, <u, support_point> = support, normal at the support point = u.
Result smooth_oracles(std::uint64_t seed, int probes = 1000);
/// x in K (-) A  <=>  x in K (-) bh_K(A), plus certified khull_contains verdicts.
Result idempotence(std::uint64_t seed, int probes = 1000);
/// Euler relations, f-vector reversal and facet/hyperplane incidence on zero cells and hulls.
Result euler_and_reversal(std::uint64_t seed, int cells_per_body = 100);
/// f_k <= C(f_0, k+1) on every f-vector the pipelines produce.
Result combinatorial_bound(std::uint64_t seed);
/// f_0 = f_1 in the exact planar pipeline, and the arc/vertex duality between X and Q.
Result planar_f0_equals_f1(std::uint64_t seed, int samples = 300);
/// Monte Carlo V(P + rB) against the Steiner polynomial on random polytopes.
Result steiner_fit(std::uint64_t seed, int polytopes = 20);
/// Identical CSV bytes for 1 and 4 worker threads.
Result thread_determinism(const std::string& scratch_dir);

Result square_example();
Result two_point_example();
Result single_set_example();
Result square_corner_example();

}  // namespace checks
