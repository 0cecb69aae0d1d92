#include "cayley_ising/factor_type.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <tuple>

#include "cayley_ising/errors.hpp"
#include "cayley_ising/recursion.hpp"

namespace cayley_ising {
namespace {

// log(1 + e^z) without overflow.
double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

// (p, 1 - p) with p = 1/(e^{-x} + 1); the smaller entry is evaluated
// directly and the larger one as its complement.
std::pair<double, double> logistic_pair(double x) {
  if (x >= 0.0) {
    const double small = 1.0 / (std::exp(x) + 1.0);
    return {1.0 - small, small};
  }
  const double small = 1.0 / (std::exp(-x) + 1.0);
  return {small, 1.0 - small};
}

void validate(const CommensurabilityOptions& options) {
  if (!(options.tol > 0.0) || options.tol > 1e-3) throw DomainError("tol must lie in (0, 1e-3]");
  if (options.max_exponent < 1 || options.max_exponent > 64) {
    throw DomainError("max_exponent must lie in [1, 64]");
  }
}

}  // namespace

FactorProbabilities probabilities(const ModelParams& params) {
  const double x = 2.0 * params.beta_J();
  const double x1 = 2.0 * params.beta_J1();
  FactorProbabilities p;
  std::tie(p.p1, p.p2) = logistic_pair(x);
  std::tie(p.p11, p.p22) = logistic_pair(x1);
  // log p1 = -softplus(-x), log p11 = -softplus(-x1).
  p.log_ratios = {x, x1, softplus(-x1) - softplus(-x)};
  return p;
}

CommensurabilityResult find_commensurable_logs(std::span<const double> log_ratios,
                                               std::optional<double> h,
                                               const CommensurabilityOptions& options) {
  validate(options);
  CommensurabilityResult res;
  res.tol = options.tol;
  res.max_exponent = options.max_exponent;
  res.exponents.assign(log_ratios.size(), 0);

  // Active logs; the field term sits at index log_ratios.size().
  std::vector<std::pair<std::size_t, double>> active;
  for (std::size_t i = 0; i < log_ratios.size(); ++i) {
    if (!std::isfinite(log_ratios[i])) throw DomainError("ratios must be positive and finite");
    if (std::abs(log_ratios[i]) <= kUnitRatioTolerance) {
      res.excluded.push_back(i);
    } else {
      active.emplace_back(i, log_ratios[i]);
    }
  }
  const std::size_t field_slot = log_ratios.size();
  if (h) {
    if (!std::isfinite(*h)) throw DomainError("field term must be finite");
    if (std::abs(*h) <= kUnitRatioTolerance) {
      res.k = 0;
    } else {
      active.emplace_back(field_slot, *h);
    }
  }
  if (active.empty()) {
    res.trace_like = true;
    return res;
  }

  const auto ref = *std::min_element(active.begin(), active.end(), [](const auto& a, const auto& b) {
    return std::abs(a.second) < std::abs(b.second);
  });

  const std::int64_t max_exp = options.max_exponent;
  std::vector<Fraction> rel;
  rel.reserve(active.size());
  std::int64_t common_den = 1;
  for (const auto& [idx, L] : active) {
    auto f = rational_relation(L / ref.second, options.tol, max_exp);
    if (!f) return res;
    common_den = lcm64(common_den, f->den);
    if (common_den > max_exp) return res;
    rel.push_back(*f);
  }

  // L_a = (num_a * common_den / den_a) * (L_ref / common_den); divide out the gcd.
  std::vector<std::int64_t> scaled;
  std::int64_t g = 0;
  for (const Fraction& f : rel) {
    scaled.push_back(f.num * (common_den / f.den));
    g = gcd64(g, scaled.back());
  }
  const double unit = ref.second * static_cast<double>(g) / static_cast<double>(common_den);
  const double log_delta = -std::abs(unit);
  const std::int64_t orient = unit < 0.0 ? 1 : -1;

  double worst = 0.0;
  std::vector<std::int64_t> exps;
  for (std::size_t a = 0; a < active.size(); ++a) {
    const std::int64_t m = orient * scaled[a] / g;
    if (std::abs(m) > max_exp) return res;
    worst = std::max(worst, std::abs(active[a].second - static_cast<double>(m) * log_delta) /
                                std::abs(log_delta));
    exps.push_back(m);
  }
  if (!(worst < options.tol)) return res;

  for (std::size_t a = 0; a < active.size(); ++a) {
    if (active[a].first == field_slot) {
      res.k = exps[a];
    } else {
      res.exponents[active[a].first] = exps[a];
    }
  }
  res.found = true;
  res.log_delta = log_delta;
  res.delta = std::exp(log_delta);
  res.max_relative_error = worst;
  return res;
}

CommensurabilityResult find_commensurable(std::span<const double> ratios,
                                          std::optional<double> exp_h,
                                          const CommensurabilityOptions& options) {
  std::vector<double> logs;
  logs.reserve(ratios.size());
  for (double r : ratios) {
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("ratios must be positive and finite");
    logs.push_back(std::log(r));
  }
  std::optional<double> h;
  if (exp_h) {
    if (!(*exp_h > 0.0) || !std::isfinite(*exp_h)) throw DomainError("exp(h) must be positive");
    h = std::log(*exp_h);
  }
  return find_commensurable_logs(logs, h, options);
}

std::string to_string(FactorType t) {
  switch (t) {
    case FactorType::TypeIIILambda:
      return "III_lambda";
    case FactorType::TypeIII1:
      return "III_1";
    case FactorType::TypeII1:
      return "II_1";
  }
  return "unknown";
}

double modular_period(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("modular period needs delta in (0,1)");
  return -2.0 * std::numbers::pi / std::log(delta);
}

std::optional<Fraction> subfactor_exponent(double delta, double delta1, std::int64_t max_denominator) {
  if (!(delta > 0.0 && delta < 1.0) || !(delta1 > 0.0 && delta1 < 1.0)) {
    throw DomainError("subfactor exponent needs delta, delta1 in (0,1)");
  }
  const double x = std::log(delta1) / std::log(delta);
  auto r = rational_relation(x, 1e-10, max_denominator);
  if (!r || r->num <= 0 || r->num >= r->den) return std::nullopt;
  return r;
}

FactorClassification classify(const ModelParams& params, int measure,
                              const CommensurabilityOptions& options) {
  if (measure < 1 || measure > 3) throw DomainError("measure index must be 1, 2 or 3");
  validate(options);

  FactorClassification out;
  out.measure = measure;
  out.tol = options.tol;
  out.max_exponent = options.max_exponent;

  const FactorProbabilities probs = probabilities(params);
  out.log_ratios = probs.log_ratios;
  const bool ternary_live = std::abs(probs.log_ratios[0]) > kUnitRatioTolerance;
  const bool binary_live = std::abs(probs.log_ratios[1]) > kUnitRatioTolerance;
  out.ratio_active = {ternary_live, binary_live,
                      ternary_live && binary_live &&
                          std::abs(probs.log_ratios[2]) > kUnitRatioTolerance};
  if ((!ternary_live || !binary_live) && std::abs(probs.log_ratios[2]) > kUnitRatioTolerance) {
    out.notes.push_back(std::string("p1/p11 dropped: the ") + (ternary_live ? "binary" : "ternary") +
                        " block is a multiple of the identity");
  }
  out.numerical = out.ratio_active[2];

  std::optional<double> h;
  if (measure != 2) {
    if (classify_region(params).tag != Region::ThreeTranslationInvariant) {
      throw RegionError("measures 1 and 3 exist only in the three-translation-invariant region");
    }
    const TIFixedPoints ti = solve_ti(params);
    h = 0.5 * std::log(measure == 1 ? *ti.u1 : *ti.u3);
    out.field_h = h;
  }

  std::array<double, 3> search{};
  for (std::size_t i = 0; i < 3; ++i) search[i] = out.ratio_active[i] ? probs.log_ratios[i] : 0.0;
  out.commensurability = find_commensurable_logs(search, h, options);

  if (out.commensurability.trace_like) {
    out.type = FactorType::TypeII1;
    out.notes.push_back("all ratios equal 1 and the field vanishes: trace state");
  } else if (out.commensurability.found) {
    out.type = FactorType::TypeIIILambda;
    out.delta = out.commensurability.delta;
    out.modular_period = modular_period(*out.delta);
  } else {
    out.type = FactorType::TypeIII1;
    out.notes.push_back("no rational relation within tol and max_exponent");
  }

  if (measure != 2 && out.type == FactorType::TypeIIILambda) {
    const FactorClassification unordered = classify(params, 2, options);
    if (unordered.type == FactorType::TypeIIILambda) {
      out.subfactor_r = subfactor_exponent(*unordered.delta, *out.delta);
    }
  }
  return out;
}

ParametrizationCheck verify_power_parametrization(double delta, std::int64_t m1, std::int64_t m2,
                                                  std::int64_t m3, double tol) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0,1)");
  auto pw = [delta](std::int64_t e) { return std::pow(delta, static_cast<double>(e)); };
  ParametrizationCheck c;
  const double d = pw(m1);
  c.p1 = d / (d + 1.0);
  c.p2 = 1.0 / (d + 1.0);
  c.p11 = pw(m1 - m3) / (d + 1.0);
  c.p22 = pw(m1 - m2 - m3) / (d + 1.0);
  c.ratios = {c.p1 / c.p2, c.p11 / c.p22, c.p1 / c.p11};
  const std::array<double, 3> expected{pw(m1), pw(m2), pw(m3)};
  for (std::size_t i = 0; i < 3; ++i) {
    c.max_ratio_error = std::max(c.max_ratio_error, std::abs(c.ratios[i] - expected[i]) / expected[i]);
  }
  c.ratios_match = c.max_ratio_error <= tol;
  c.normalized = std::abs(c.p1 + c.p2 - 1.0) <= tol && std::abs(c.p11 + c.p22 - 1.0) <= tol;
  return c;
}

ZeroTernaryExampleReport reproduce_zero_ternary_example() {
  ZeroTernaryExampleReport rep;
  auto cubic = [](double t) { return ((t + 5.0) * t + 7.0) * t - 5.0; };

  double lo = 0.5;
  double hi = 1.0;
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (cubic(mid) < 0.0 ? lo : hi) = mid;
  }
  rep.bracket_lo = lo;
  rep.bracket_hi = hi;
  rep.theta_tilde = std::abs(cubic(lo)) <= std::abs(cubic(hi)) ? lo : hi;
  const double t = rep.theta_tilde;
  rep.cubic_residual = std::abs(cubic(t));
  rep.identity_residual = std::abs(std::sqrt(2.0 * t - 1.0) + std::sqrt(1.0 - t * t) - 1.0);
  rep.h1_closed_form = std::atanh(std::sqrt(2.0 * t - 1.0) / t);
  rep.h1_half_artanh = 0.5 * std::atanh(t);
  rep.h1_residual = std::abs(rep.h1_closed_form - rep.h1_half_artanh);

  const ModelParams params = ModelParams::from_couplings(0.0, std::atanh(t), 1.0);
  rep.theta1 = params.theta1();
  const TIFixedPoints ti = solve_ti(params);
  if (ti.has_three()) {
    rep.h1_fixed_point = 0.5 * std::log(*ti.u3);
    rep.fixed_point_residual = std::abs(rep.h1_fixed_point - rep.h1_closed_form);
  }

  rep.m1 = classify(params, 1);
  rep.m2 = classify(params, 2);
  rep.m3 = classify(params, 3);
  rep.delta = rep.m2.delta.value_or(0.0);
  rep.delta1 = rep.m3.delta.value_or(0.0);
  rep.n_exponent = rep.m3.commensurability.exponents[1];
  rep.k_exponent = rep.m3.commensurability.k.value_or(0);
  rep.r = rep.m3.subfactor_r;

  const bool types_ok = rep.m2.type == FactorType::TypeIIILambda &&
                        rep.m1.type == FactorType::TypeIIILambda &&
                        rep.m3.type == FactorType::TypeIIILambda && rep.m1.delta == rep.m3.delta;
  rep.passed = ti.has_three() && rep.cubic_residual < 1e-14 && t > 0.509 && t < 0.511 &&
               rep.identity_residual < 1e-10 && rep.h1_residual < 1e-10 &&
               rep.fixed_point_residual < 1e-10 && types_ok &&
               std::abs(rep.delta - 1.0 / rep.theta1) < 1e-12 &&
               std::abs(rep.delta1 - std::pow(rep.theta1, -0.25)) < 1e-12 && rep.n_exponent == -4 &&
               rep.k_exponent == -1 && rep.r && *rep.r == Fraction{1, 4};
  return rep;
}

EqualCouplingExampleReport reproduce_equal_coupling_example() {
  EqualCouplingExampleReport rep;
  const double theta = 1.0 + std::numbers::sqrt2;
  rep.theta = theta;
  rep.above_sqrt5 = theta > std::sqrt(5.0);
  rep.factored_residual = std::abs((theta + 1.0) * (theta * theta - 2.0 * theta - 1.0));

  const ModelParams params = ModelParams::from_thetas(theta, theta);
  const TIFixedPoints ti = solve_ti(params);
  if (ti.has_three()) {
    rep.u1 = *ti.u1;
    rep.u3 = *ti.u3;
  }
  rep.u3_error = std::abs(rep.u3 - (std::numbers::sqrt2 + 1.0));

  rep.m1 = classify(params, 1);
  rep.m2 = classify(params, 2);
  rep.m3 = classify(params, 3);
  rep.delta = rep.m2.delta.value_or(0.0);
  rep.delta1 = rep.m3.delta.value_or(0.0);
  rep.delta_error = std::abs(rep.delta - (std::numbers::sqrt2 - 1.0));
  rep.identity_error = rep.delta > 0.0 ? std::abs(rep.delta + 1.0 / rep.delta - (theta * theta - 3.0))
                                       : std::numeric_limits<double>::infinity();
  if (rep.delta > 0.0 && rep.delta < 1.0) rep.t0_delta = modular_period(rep.delta);
  if (rep.delta1 > 0.0 && rep.delta1 < 1.0) rep.t0_delta1 = modular_period(rep.delta1);
  rep.k_exponent = rep.m3.commensurability.k.value_or(0);
  rep.r = rep.m3.subfactor_r;

  rep.passed = rep.above_sqrt5 && ti.has_three() && rep.u3_error < 1e-12 && rep.delta_error < 1e-12 &&
               rep.identity_error < 1e-12 && rep.m2.type == FactorType::TypeIIILambda &&
               rep.m1.type == FactorType::TypeIIILambda && rep.m3.type == FactorType::TypeIIILambda &&
               std::abs(rep.delta1 - std::sqrt(rep.delta)) < 1e-12 && rep.r &&
               *rep.r == Fraction{1, 2} && std::abs(rep.t0_delta - 7.1287) < 1e-3;
  return rep;
}

}  // namespace cayley_ising
