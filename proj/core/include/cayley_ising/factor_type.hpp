#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cayley_ising/model.hpp"
#include "cayley_ising/rational.hpp"

namespace cayley_ising {

// p1 = 1/(exp(-2 beta J) + 1), p2 = 1 - p1, and likewise p11, p22 with J1.
struct FactorProbabilities {
  double p1 = 0.5;
  double p2 = 0.5;
  double p11 = 0.5;
  double p22 = 0.5;
  // Logs of p1/p2, p11/p22 and p1/p11 evaluated without forming the quotients.
  std::array<double, 3> log_ratios{};
};

FactorProbabilities probabilities(const ModelParams& params);

struct CommensurabilityOptions {
  double tol = 1e-9;
  int max_exponent = 64;
};

// Ratios within this distance of 1 (in log) carry exponent 0.
inline constexpr double kUnitRatioTolerance = 1e-14;

struct CommensurabilityResult {
  bool found = false;
  // Every ratio is 1 and there is no field term: no modular condition at all.
  bool trace_like = false;
  double delta = 0.0;      // in (0,1) when found
  double log_delta = 0.0;  // log(delta) < 0 when found
  // ratio_i = delta^{exponents[i]}; 0 for excluded ratios.
  std::vector<std::int64_t> exponents;
  // exp(h) = delta^k when a field term was supplied.
  std::optional<std::int64_t> k;
  std::vector<std::size_t> excluded;  // indices of ratios equal to 1
  double max_relative_error = 0.0;    // max |log r - m log delta| / |log delta|
  double tol = 0.0;
  int max_exponent = 0;
};

// Looks for the largest delta in (0,1) such that every ratio (and exp(h), if
// given) is an integer power of delta. Pairwise log-ratios against the
// smallest active log are matched with continued-fraction convergents of
// denominator <= max_exponent; resulting exponents are also bounded by
// max_exponent. Throws DomainError for non-positive ratios, tol outside
// (0, 1e-3] or max_exponent outside [1, 64].
CommensurabilityResult find_commensurable(std::span<const double> ratios,
                                          std::optional<double> exp_h,
                                          const CommensurabilityOptions& options = {});

// Same search on logarithms: log ratios and the field exponent h itself.
CommensurabilityResult find_commensurable_logs(std::span<const double> log_ratios,
                                               std::optional<double> h,
                                               const CommensurabilityOptions& options = {});

enum class FactorType { TypeIIILambda, TypeIII1, TypeII1 };

std::string to_string(FactorType t);

struct FactorClassification {
  int measure = 2;  // state omega_1, omega_2 or omega_3
  FactorType type = FactorType::TypeIII1;
  std::optional<double> delta;           // lambda of III_lambda
  std::optional<double> modular_period;  // t0 = -2 pi / log(delta)
  std::optional<Fraction> subfactor_r;   // delta_{1,3} = delta_2^r (measures 1, 3)
  std::optional<double> field_h;         // h_i = log(u_i*)/2 for measures 1, 3
  std::array<double, 3> log_ratios{};    // p1/p2, p11/p22, p1/p11
  std::array<bool, 3> ratio_active{};
  CommensurabilityResult commensurability;
  // True when p1/p11 entered the search: its relation to the other ratios is
  // transcendental in general, so the verdict is only as good as tol.
  bool numerical = false;
  double tol = 0.0;
  int max_exponent = 0;
  std::vector<std::string> notes;
};

// Measures 1 and 3 need the ThreeTranslationInvariant region (RegionError
// otherwise); measure 2 is classifiable everywhere.
FactorClassification classify(const ModelParams& params, int measure,
                              const CommensurabilityOptions& options = {});

inline constexpr std::int64_t kDefaultMaxDenominator = 64;

// r = log(delta1) / log(delta) as a fraction with denominator <=
// max_denominator (within 1e-10), returned only when 0 < r < 1, i.e.
// delta < delta1 < 1.
std::optional<Fraction> subfactor_exponent(double delta, double delta1,
                                           std::int64_t max_denominator = kDefaultMaxDenominator);

double modular_period(double delta);

struct ParametrizationCheck {
  double p1 = 0.0;
  double p2 = 0.0;
  double p11 = 0.0;
  double p22 = 0.0;
  std::array<double, 3> ratios{};  // reconstructed p1/p2, p11/p22, p1/p11
  double max_ratio_error = 0.0;    // relative, against delta^{m1}, delta^{m2}, delta^{m3}
  bool ratios_match = false;
  bool normalized = false;  // p1 + p2 = 1 and p11 + p22 = 1
};

// Rebuilds p1, p2, p11, p22 from delta and integer exponents and confirms
// they reproduce p1/p2 = delta^m1, p11/p22 = delta^m2, p1/p11 = delta^m3.
ParametrizationCheck verify_power_parametrization(double delta, std::int64_t m1, std::int64_t m2,
                                                  std::int64_t m3, double tol = 1e-14);

// Worked example with J = 0: theta~ = tanh(beta J1) is the root in (1/2, 1)
// of t^3 + 5 t^2 + 7 t - 5, and the extreme factors come out with
// delta1 = delta^{1/4}.
struct ZeroTernaryExampleReport {
  double theta_tilde = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double cubic_residual = 0.0;
  double identity_residual = 0.0;  // |sqrt(2t-1) + sqrt(1-t^2) - 1|
  double h1_closed_form = 0.0;     // artanh(sqrt(2t-1)/t)
  double h1_half_artanh = 0.0;     // artanh(t)/2
  double h1_residual = 0.0;
  double h1_fixed_point = 0.0;  // log(u3*)/2 from the quadratic
  double fixed_point_residual = 0.0;
  double theta1 = 0.0;
  double delta = 0.0;   // theta1^{-1}
  double delta1 = 0.0;  // theta1^{-1/4}
  std::int64_t n_exponent = 0;  // p11/p22 = delta1^n
  std::int64_t k_exponent = 0;  // exp(h3) = delta1^k
  FactorClassification m1;
  FactorClassification m2;
  FactorClassification m3;
  std::optional<Fraction> r;
  bool passed = false;
};

ZeroTernaryExampleReport reproduce_zero_ternary_example();

// Worked example with J = J1 and theta = 1 + sqrt2: delta = sqrt2 - 1 for
// the unordered phase and delta1 = sqrt(delta) for the extreme phases.
struct EqualCouplingExampleReport {
  double theta = 0.0;
  bool above_sqrt5 = false;
  double factored_residual = 0.0;  // (theta + 1)(theta^2 - 2 theta - 1)
  double u1 = 0.0;
  double u3 = 0.0;
  double u3_error = 0.0;  // |u3 - (sqrt2 + 1)|
  double delta = 0.0;
  double delta_error = 0.0;     // |delta - (sqrt2 - 1)|
  double identity_error = 0.0;  // |delta + 1/delta - (theta^2 - 3)|
  double delta1 = 0.0;
  double t0_delta = 0.0;
  double t0_delta1 = 0.0;
  std::int64_t k_exponent = 0;
  FactorClassification m1;
  FactorClassification m2;
  FactorClassification m3;
  std::optional<Fraction> r;
  bool passed = false;
};

EqualCouplingExampleReport reproduce_equal_coupling_example();

}  // namespace cayley_ising
