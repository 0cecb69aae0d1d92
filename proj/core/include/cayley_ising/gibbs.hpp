#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cayley_ising/model.hpp"
#include "cayley_ising/recursion.hpp"
#include "cayley_ising/tree_group.hpp"

namespace cayley_ising {

// Depth limit for the leaf-to-root contraction (|V_12| = 12286 vertices).
inline constexpr int kMaxContractionDepth = 12;

// mu^(n)(sigma) = Z_n^{-1} exp(-beta H(sigma) + sum_{x in W_n} h_x sigma(x)).
// Everything is kept in log space.
class FiniteVolumeMeasure {
 public:
  // log Z from the tree contraction. Throws ResourceLimitError above
  // kMaxContractionDepth.
  FiniteVolumeMeasure(const ModelParams& params, FieldAssignment field, int n);

  const ModelParams& params() const { return params_; }
  const FieldAssignment& field() const { return field_; }
  int depth() const { return ball_.depth(); }
  const Ball& ball() const { return ball_; }
  double log_Z() const { return log_Z_; }

  double log_weight(const Configuration& config) const;
  double log_probability(const Configuration& config) const { return log_weight(config) - log_Z_; }
  double probability(const Configuration& config) const;

  // P(sigma(e) = +1) from the same contraction.
  double root_plus_probability() const { return root_plus_; }

 private:
  ModelParams params_;
  FieldAssignment field_;
  Ball ball_;
  std::vector<double> boundary_h_;  // h_x for x in W_n, in ball order
  double log_Z_ = 0.0;
  double root_plus_ = 0.0;
};

FiniteVolumeMeasure measure_of(const ModelParams& params, const FieldAssignment& field, int n);

// log Z by leaf-to-root sum-product. n <= kMaxContractionDepth.
double log_partition_contracted(const ModelParams& params, const FieldAssignment& field, int n);
// log Z by summing all 2^{|V_n|} Boltzmann weights. n <= kMaxEnumerationDepth.
double log_partition_enumerated(const ModelParams& params, const FieldAssignment& field, int n);

// Unnormalized log weight of every configuration, indexed by packed mask
// (bit i set = spin -1 at ball index i). n <= kMaxEnumerationDepth.
std::vector<double> enumerate_log_weights(const ModelParams& params, const FieldAssignment& field,
                                          int n);

double log_sum_exp(const std::vector<double>& values);

struct ConsistencyReport {
  int depth = 0;
  double tol = 0.0;
  // Max |sum_{W_m} mu^(m) - mu^(m-1)| for m = 2..depth, in that order.
  std::vector<double> level_discrepancy;
  double max_discrepancy = 0.0;
  std::uint64_t configurations = 0;
  bool passed = false;
};

// Marginalizes mu^(m) over W_m by enumeration and compares with mu^(m-1) on
// every configuration of V_{m-1}, for each m in [2, n]. Throws
// ResourceLimitError for n > max_depth and DomainError for n < 2.
ConsistencyReport check_consistency(const ModelParams& params, const FieldAssignment& field, int n,
                                    double tol, int max_depth = kMaxEnumerationDepth);

struct NamedMeasure {
  std::string name;  // mu1, mu2, mu3, mu12, mu21
  FieldAssignment field;
};

// mu_i <-> constant h = log(u_i*)/2 for the available translation-invariant
// roots; mu12 <-> parity(log u_*/2, log v_*/2) and mu21 its mirror when the
// period-2 pair exists. mu2 is always present.
std::vector<NamedMeasure> named_measures(const ModelParams& params);

// P(sigma(x) = +1) = u / (u + 1) for a translation-invariant field u = exp(2h).
double root_marginal(double u);

enum class GroundConfig { AllPlus, AllMinus, ParityPlusMinus, ParityMinusPlus };

std::string to_string(GroundConfig g);
// sigma_{+-}: +1 on even words, -1 on odd words; sigma_{-+} the mirror.
Configuration ground_configuration(GroundConfig kind, int n);

struct TargetProbability {
  double probability = 0.0;
  double log_probability = 0.0;
  // log(1 - mu(target)), summed directly over the other configurations so it
  // stays resolvable after probability rounds to 1.
  double log_complement = 0.0;
};

TargetProbability target_probability(const ModelParams& params, const FieldAssignment& field,
                                     const Configuration& target);

struct ZeroTemperatureRow {
  double beta = 0.0;
  double theta = 0.0;
  double theta1 = 0.0;
  Region region = Region::Unique;

  // Translation-invariant columns; NaN outside ThreeTranslationInvariant.
  double u3 = 0.0;
  double root_marginal_u3 = 0.0;
  TargetProbability mu3_plus;   // mu3(sigma_+ | V_n)
  TargetProbability mu1_minus;  // mu1(sigma_- | V_n)
  double mu2_root_marginal = 0.5;

  // Parity columns; NaN outside ThreePeriodic.
  TargetProbability mu12_minus_plus;  // mu12(sigma_{-+} | V_n)
  TargetProbability mu21_plus_minus;  // mu21(sigma_{+-} | V_n)
};

struct ZeroTemperatureScan {
  double J = 0.0;
  double J1 = 0.0;
  int depth = 0;
  std::vector<ZeroTemperatureRow> rows;
  std::vector<double> outside_region_betas;  // no three-measure region at these beta
  // Over rows in the translation-invariant region: u3, mu3(sigma_+) and
  // mu1(sigma_-) all strictly increasing. False when fewer than two rows qualify.
  bool ti_monotone = false;
  bool ti_final_above_threshold = false;  // last qualifying mu3, mu1 target >= threshold
  bool periodic_monotone = false;
  bool periodic_final_above_threshold = false;
};

inline const std::vector<double> kDefaultBetaSchedule{1.0, 2.0, 4.0, 8.0, 16.0};
inline constexpr double kZeroTemperatureThreshold = 0.99;

// Throws DomainError unless the schedule is nonempty and strictly increasing.
ZeroTemperatureScan zero_temperature_scan(double J, double J1, const std::vector<double>& betas,
                                          int n);

}  // namespace cayley_ising
