// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <cstdlib>
#include <string>
#include <vector>

#include "cayley_ising/factor_type.hpp"
#include "cayley_ising/gibbs.hpp"
#include "cayley_ising/model.hpp"
#include "cayley_ising/recursion.hpp"
#include "cayley_ising/root_count_oracle.hpp"

using namespace cayley_ising;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double linspace(double lo, double hi, int n, int i) { return lo + (hi - lo) * i / (n - 1); }

// Euclidean distance from (t1, t) to the curve t = c(s), sampled densely
// around t1 and refined by golden-section search in s.
double distance_to_curve(double t1, double t, const std::function<double(double)>& c, double s_lo,
                         double s_hi) {
  auto d2 = [&](double s) -> double {
    const double y = c(s);
    if (!std::isfinite(y)) return std::numeric_limits<double>::infinity();
    return (s - t1) * (s - t1) + (y - t) * (y - t);
  };
  const int samples = 2000;
  double best_s = s_lo, best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= samples; ++i) {
    const double s = s_lo + (s_hi - s_lo) * i / samples;
    if (d2(s) < best) best = d2(s), best_s = s;
  }
  const double h = (s_hi - s_lo) / samples;
  double a = std::max(s_lo, best_s - h), b = std::min(s_hi, best_s + h);
  const double g = (std::sqrt(5.0) - 1) / 2;
  for (int i = 0; i < 100; ++i) {
    const double x1 = b - g * (b - a), x2 = a + g * (b - a);
    (d2(x1) < d2(x2) ? b : a) = (d2(x1) < d2(x2) ? x2 : x1);
  }
  return std::sqrt(std::min(best, d2(0.5 * (a + b))));
}

struct Line {
  int id;
  bool pass;
  std::string text;
};

std::vector<Line> results;

void report(int id, bool pass, const std::string& text) {
  results.push_back({id, pass, text});
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", id, text.c_str());
  std::fflush(stdout);
}

Region oracle_region(const RootCountResult& r) {
  if (r.ti_count() == 3) return Region::ThreeTranslationInvariant;
  if (r.periodic_count() == 3) return Region::ThreePeriodic;
  return Region::Unique;
}

void criterion_1() {
  const auto t0 = Clock::now();
  const double sqrt3 = std::sqrt(3.0);
  int agree = 0, disagree = 0, excluded = 0, tags_seen = 0;
  bool seen[3] = {false, false, false};
  for (int i = 0; i < 100; ++i) {
    const double t1 = linspace(0.2, 4.0, 100, i);
    for (int j = 0; j < 100; ++j) {
      const double t = linspace(0.2, 10.0, 100, j);
      const double d = std::min(distance_to_curve(t1, t, ti_threshold, sqrt3 + 1e-12, 4.5),
                                distance_to_curve(t1, t, periodic_threshold, 0.0, 1.0 / sqrt3 - 1e-12));
      if (d <= 1e-6) {
        ++excluded;
        continue;
      }
      const auto p = ModelParams::from_thetas(t, t1);
      const Region tag = classify_region(p).tag;
      const Region oracle = oracle_region(root_count_oracle(p));
      if (tag == oracle) ++agree; else ++disagree;
      seen[static_cast<int>(tag)] = true;
    }
  }
  for (bool s : seen) tags_seen += s;
  const double secs = seconds_since(t0);
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "region agreement on 100x100 grid: %d agree, %d disagree, %d excluded near boundary, "
                "%d region tags, %.1f s (limit 30 s)",
                agree, disagree, excluded, tags_seen, secs);
  report(1, disagree == 0 && agree + excluded == 10000 && tags_seen == 3 && secs < 30.0, buf);
}

void criterion_2() {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> d1(0.2, 4.0), d(0.2, 10.0);
  int ti_n = 0, per_n = 0;
  double worst_prod = 0, worst_res = 0, worst_prod_p = 0, worst_res_p = 0;
  while (ti_n < 1000 || per_n < 1000) {
    const auto p = ModelParams::from_thetas(d(rng), d1(rng));
    const Region tag = classify_region(p).tag;
    if (tag == Region::ThreeTranslationInvariant && ti_n < 1000) {
      const auto fp = solve_ti(p);
      worst_prod = std::max(worst_prod, std::abs(*fp.u1 * *fp.u3 - 1));
      for (double u : {*fp.u1, fp.u2, *fp.u3}) worst_res = std::max(worst_res, std::abs(self_kernel(p, u) - u));
      ++ti_n;
    } else if (tag == Region::ThreePeriodic && per_n < 1000) {
      const auto pp = solve_periodic(p);
      worst_prod_p = std::max(worst_prod_p, std::abs(*pp.u_star * *pp.v_star - 1));
      for (double u : {*pp.u_star, *pp.v_star})
        worst_res_p = std::max(worst_res_p, std::abs(self_kernel(p, self_kernel(p, u)) - u));
      ++per_n;
    }
  }
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "fixed-point algebra over 1000+1000 points: max|u1*u3-1|=%.2e max|g(u)-u|=%.2e "
                "max|u*v*-1|=%.2e max|g(g(u*))-u*|=%.2e",
                worst_prod, worst_res, worst_prod_p, worst_res_p);
  report(2, worst_prod < 1e-12 && worst_prod_p < 1e-12 && worst_res < 1e-10 && worst_res_p < 1e-10, buf);
}

void criterion_3() {
  struct Case {
    std::string name;
    ModelParams params;
    FieldAssignment field;
    bool solution;
  };
  const auto ti = ModelParams::from_thetas(5.0, 2.0);
  const auto per = ModelParams::from_thetas(5.0, 0.5);
  const auto fp = solve_ti(ti);
  const auto pp = solve_periodic(per);
  const std::vector<Case> cases{
      {"ti/const0", ti, FieldAssignment::constant(0.0), true},
      {"ti/mu3", ti, FieldAssignment::constant_u(*fp.u3), true},
      {"ti/mu1", ti, FieldAssignment::constant_u(*fp.u1), true},
      {"ti/const0.3", ti, FieldAssignment::constant(0.3), false},
      {"per/const0", per, FieldAssignment::constant(0.0), true},
      {"per/mu12", per, FieldAssignment::parity_u(*pp.u_star, *pp.v_star), true},
      {"per/mu21", per, FieldAssignment::parity_u(*pp.v_star, *pp.u_star), true},
      {"per/const0.3", per, FieldAssignment::constant(0.3), false},
  };
  bool ok = true;
  std::string detail;
  double slowest[4] = {0, 0, 0, 0};
  for (int n : {2, 3}) {
    for (const auto& c : cases) {
      const auto t0 = Clock::now();
      const auto rep = check_consistency(c.params, c.field, n, 1e-10);
      const double secs = seconds_since(t0);
      slowest[n] = std::max(slowest[n], secs);
      const auto rec = verify_recursion(c.params, c.field, n, 1e-10);
      const bool good = c.solution ? rep.max_discrepancy < 1e-10 : rep.max_discrepancy > 1e-3;
      const bool equivalent = rec.passed == rep.passed && rep.passed == c.solution;
      if (!good || !equivalent) {
        ok = false;
        char b[160];
        std::snprintf(b, sizeof b, " [%s n=%d disc=%.2e rec=%d]", c.name.c_str(), n, rep.max_discrepancy,
                      int(rec.passed));
        detail += b;
      }
    }
  }
  ok = ok && slowest[2] < 1.0 && slowest[3] < 60.0;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "consistency <-> recursion for 8 fields at 2 parameter points, n=2,3; slowest run "
                "n=2 %.2f s, n=3 %.1f s",
                slowest[2], slowest[3]);
  report(3, ok, buf + detail);
}

void criterion_4() {
  const auto t0 = Clock::now();
  const auto rep = check_bond_gap_inequality(2);
  const BondTable table{Ball(2)};
  const long gap = rep.reference_gap;
  const bool plus_eq = table.B(0) - table.A(0) == gap;
  const bool minus_eq = table.B((1u << 10) - 1) - table.A((1u << 10) - 1) == gap;
  const double secs = seconds_since(t0);
  char buf[400];
  std::snprintf(buf, sizeof buf,
                "B(s)-A(s) <= B-A on %llu configurations at n=2: %llu violations (max excess %ld), "
                "%llu equalities (sigma+ %s, sigma- %s); violations with W_n all plus: %llu of %llu; %.3f s",
                (unsigned long long)rep.configurations_checked, (unsigned long long)rep.violations,
                -rep.min_slack, (unsigned long long)rep.equality_count, plus_eq ? "yes" : "no",
                minus_eq ? "yes" : "no", (unsigned long long)rep.shell_plus_violations,
                (unsigned long long)rep.shell_plus_configurations, secs);
  report(4, rep.configurations_checked == 1024 && rep.holds() && plus_eq && minus_eq && secs < 1.0, buf);
}

void criterion_5() {
  const auto r = reproduce_equal_coupling_example();
  const double delta = std::numbers::sqrt2 - 1;
  const bool m2 = r.m2.type == FactorType::TypeIIILambda && r.m2.delta &&
                  std::abs(*r.m2.delta - delta) < 1e-12;
  auto extreme_ok = [&](const FactorClassification& m) {
    return m.type == FactorType::TypeIIILambda && m.delta && std::abs(*m.delta - std::sqrt(delta)) < 1e-12;
  };
  const bool ok = r.delta_error < 1e-12 && r.identity_error < 1e-12 && r.u3_error < 1e-12 && m2 &&
                  extreme_ok(r.m1) && extreme_ok(r.m3) && r.r == Fraction{1, 2} &&
                  std::abs(r.t0_delta - 7.1287) < 1e-3;
  char buf[320];
  std::snprintf(buf, sizeof buf,
                "theta=theta1=1+sqrt2: |delta-(sqrt2-1)|=%.1e |delta+1/delta-(theta^2-3)|=%.1e "
                "|u3-(sqrt2+1)|=%.1e, mu2 %s(%.6f), mu1/mu3 %s/%s(%.6f), r=%s, t0=%.6f",
                r.delta_error, r.identity_error, r.u3_error, to_string(r.m2.type).c_str(),
                r.m2.delta.value_or(NAN), to_string(r.m1.type).c_str(), to_string(r.m3.type).c_str(),
                r.m3.delta.value_or(NAN), r.r ? r.r->to_string().c_str() : "none", r.t0_delta);
  report(5, ok, buf);
}

void criterion_6() {
  const auto r = reproduce_zero_ternary_example();
  const bool ok = r.theta_tilde > 0.509 && r.theta_tilde < 0.511 && std::abs(r.cubic_residual) < 1e-14 &&
                  r.identity_residual < 1e-10 && r.h1_residual < 1e-10 && r.n_exponent == -4 &&
                  r.k_exponent == -1 && r.r == Fraction{1, 4};
  char buf[320];
  std::snprintf(buf, sizeof buf,
                "J=0: theta~=%.16f residual=%.1e identity=%.1e |h1-artanh/2|=%.1e n=%lld k=%lld r=%s",
                r.theta_tilde, r.cubic_residual, r.identity_residual, r.h1_residual,
                (long long)r.n_exponent, (long long)r.k_exponent, r.r ? r.r->to_string().c_str() : "none");
  report(6, ok, buf);
}

void criterion_7() {
  const auto scan = zero_temperature_scan(1.0, 1.0, kDefaultBetaSchedule, 2);
  const bool ok = scan.rows.size() == 5 && scan.outside_region_betas.empty() && scan.ti_monotone &&
                  scan.ti_final_above_threshold;
  const auto& last = scan.rows.back();
  char buf[320];
  std::snprintf(buf, sizeof buf,
                "J=J1=1, beta in {1,2,4,8,16}, n=2: u3 and mu3(s+), mu1(s-) strictly increasing=%s; "
                "at beta=16 mu3(s+)=%.17g (log(1-mu3)=%.1f), mu1(s-)=%.17g",
                scan.ti_monotone ? "yes" : "no", last.mu3_plus.probability, last.mu3_plus.log_complement,
                last.mu1_minus.probability);
  report(7, ok, buf);
}

void criterion_8() {
  const std::vector<double> ratios{2.0, 3.0};
  const auto c = find_commensurable(ratios, std::nullopt, {1e-9, 64});
  const auto cls = classify(ModelParams::from_couplings(1.4142135, 1.0, 1.0), 2, {1e-9, 64});
  const bool ok = !c.found && !c.trace_like && cls.type == FactorType::TypeIII1;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "ratios {2,3}: %s; J/J1=1.4142135: %s (numerical=%s), tol=1e-9, max_exponent=64",
                c.found ? "commensurable" : "III_1", to_string(cls.type).c_str(), cls.numerical ? "yes" : "no");
  report(8, ok, buf);
}

}  // namespace

int main(int argc, char** argv) {
  // --known-failure N marks a criterion whose failure is documented; the
  // process still prints [FAIL] for it, and exits nonzero if any other
  // criterion fails or a known failure unexpectedly passes.
  std::set<int> known;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--known-failure" && i + 1 < argc) {
      known.insert(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--known-failure N]...\n", argv[0]);
      return 2;
    }
  }
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  int failed = 0;
  bool as_expected = true;
  for (const auto& r : results) {
    failed += !r.pass;
    if (r.pass == known.count(r.id) > 0) as_expected = false;
  }
  std::printf("%d/%zu criteria passed", int(results.size()) - failed, results.size());
  if (!known.empty()) {
    std::printf("; documented failures:");
    for (int k : known) std::printf(" %d", k);
  }
  std::printf("\n");
  return as_expected ? 0 : 1;
}
