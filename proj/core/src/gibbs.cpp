#include "cayley_ising/gibbs.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <tuple>

#include "cayley_ising/errors.hpp"

namespace cayley_ising {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double lse2(double a, double b) {
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

void require_contractable(int n) {
  if (n < 0) throw DomainError("depth must be non-negative");
  if (n > kMaxContractionDepth) {
    throw ResourceLimitError("contraction depth " + std::to_string(n) + " exceeds cap " +
                             std::to_string(kMaxContractionDepth));
  }
}

struct Contraction {
  double log_Z;
  double root_plus;
};

// Messages m_x(s) = log sum over the subtree below x given sigma(x) = s.
// Index 0 is s = +1, index 1 is s = -1.
Contraction contract(const ModelParams& params, const FieldAssignment& field, const Ball& ball) {
  const double bJ = params.beta_J();
  const double bJ1 = params.beta_J1();
  const int n = ball.depth();
  std::vector<std::array<double, 2>> msg(ball.size());

  for (std::size_t i = ball.shell_begin(n); i < ball.shell_end(n); ++i) {
    const double h = field.h(ball.vertex(i));
    msg[i] = {h, -h};
  }
  if (n == 0) {
    const double log_Z = lse2(msg[0][0], msg[0][1]);
    return {log_Z, std::exp(msg[0][0] - log_Z)};
  }

  constexpr std::array<int, 2> kSpin{1, -1};
  for (std::size_t i = ball.shell_end(n - 1); i-- > 0;) {
    auto kids = ball.children(i);
    for (int si = 0; si < 2; ++si) {
      const int s = kSpin[si];
      std::vector<double> terms;
      terms.reserve(8);
      if (kids.size() == 2) {
        for (int ai = 0; ai < 2; ++ai) {
          for (int bi = 0; bi < 2; ++bi) {
            const int a = kSpin[ai];
            const int b = kSpin[bi];
            terms.push_back(bJ * a * b + bJ1 * s * (a + b) + msg[kids[0]][ai] + msg[kids[1]][bi]);
          }
        }
      } else {
        for (int ai = 0; ai < 2; ++ai) {
          for (int bi = 0; bi < 2; ++bi) {
            for (int ci = 0; ci < 2; ++ci) {
              const int a = kSpin[ai];
              const int b = kSpin[bi];
              const int c = kSpin[ci];
              terms.push_back(bJ * (a * b + a * c + b * c) + bJ1 * s * (a + b + c) +
                              msg[kids[0]][ai] + msg[kids[1]][bi] + msg[kids[2]][ci]);
            }
          }
        }
      }
      msg[i][si] = log_sum_exp(terms);
    }
  }
  const double log_Z = lse2(msg[0][0], msg[0][1]);
  return {log_Z, std::exp(msg[0][0] - log_Z)};
}

}  // namespace

double log_sum_exp(const std::vector<double>& values) {
  if (values.empty()) return -std::numeric_limits<double>::infinity();
  const double m = *std::max_element(values.begin(), values.end());
  if (!std::isfinite(m)) return m;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - m);
  return m + std::log(sum);
}

FiniteVolumeMeasure::FiniteVolumeMeasure(const ModelParams& params, FieldAssignment field, int n)
    : params_(params), field_(std::move(field)), ball_((require_contractable(n), n)) {
  for (std::size_t i = ball_.shell_begin(n); i < ball_.shell_end(n); ++i) {
    boundary_h_.push_back(field_.h(ball_.vertex(i)));
  }
  const Contraction c = contract(params_, field_, ball_);
  log_Z_ = c.log_Z;
  root_plus_ = c.root_plus;
}

double FiniteVolumeMeasure::log_weight(const Configuration& config) const {
  if (config.depth() != depth()) throw DomainError("configuration depth does not match measure");
  const ConfigStats s = stats(ball_, config.spins());
  double w = params_.beta_J() * static_cast<double>(s.A) + params_.beta_J1() * static_cast<double>(s.B);
  const std::size_t first = ball_.shell_begin(depth());
  for (std::size_t k = 0; k < boundary_h_.size(); ++k) w += boundary_h_[k] * config.spin(first + k);
  return w;
}

double FiniteVolumeMeasure::probability(const Configuration& config) const {
  return std::exp(log_probability(config));
}

FiniteVolumeMeasure measure_of(const ModelParams& params, const FieldAssignment& field, int n) {
  return FiniteVolumeMeasure(params, field, n);
}

double log_partition_contracted(const ModelParams& params, const FieldAssignment& field, int n) {
  require_contractable(n);
  return contract(params, field, Ball(n)).log_Z;
}

std::vector<double> enumerate_log_weights(const ModelParams& params, const FieldAssignment& field,
                                          int n) {
  require_enumerable(n);
  const Ball ball(n);
  const BondTable table(ball);
  const double bJ = params.beta_J();
  const double bJ1 = params.beta_J1();

  const std::size_t first = ball.shell_begin(n);
  const std::size_t shell = ball.shell_end(n) - first;
  std::vector<double> h(shell);
  for (std::size_t k = 0; k < shell; ++k) h[k] = field.h(ball.vertex(first + k));

  // The boundary term depends only on the W_n bits, which are the high bits.
  std::vector<double> boundary(std::size_t{1} << shell);
  for (std::size_t hi = 0; hi < boundary.size(); ++hi) {
    double t = 0.0;
    for (std::size_t k = 0; k < shell; ++k) t += ((hi >> k) & 1U) ? -h[k] : h[k];
    boundary[hi] = t;
  }

  std::vector<double> out(std::size_t{1} << ball.size());
  for_each_mask(ball, [&](std::uint64_t mask) {
    out[mask] = bJ * static_cast<double>(table.A(mask)) + bJ1 * static_cast<double>(table.B(mask)) +
                boundary[mask >> first];
  });
  return out;
}

double log_partition_enumerated(const ModelParams& params, const FieldAssignment& field, int n) {
  return log_sum_exp(enumerate_log_weights(params, field, n));
}

ConsistencyReport check_consistency(const ModelParams& params, const FieldAssignment& field, int n,
                                    double tol, int max_depth) {
  if (n < 2) throw DomainError("consistency check needs depth >= 2");
  require_enumerable(n, std::min(max_depth, kMaxEnumerationDepth));

  ConsistencyReport report;
  report.depth = n;
  report.tol = tol;

  std::vector<double> coarse = enumerate_log_weights(params, field, 1);
  double coarse_log_Z = log_sum_exp(coarse);
  for (int m = 2; m <= n; ++m) {
    std::vector<double> fine = enumerate_log_weights(params, field, m);
    const double fine_log_Z = log_sum_exp(fine);
    const std::size_t low_bits = ball_size(m - 1);
    const std::size_t high_count = std::size_t{1} << shell_size(m);

    double worst = 0.0;
    std::vector<double> slice(high_count);
    for (std::size_t lo = 0; lo < coarse.size(); ++lo) {
      for (std::size_t hi = 0; hi < high_count; ++hi) slice[hi] = fine[lo | (hi << low_bits)];
      const double marginal = std::exp(log_sum_exp(slice) - fine_log_Z);
      const double expected = std::exp(coarse[lo] - coarse_log_Z);
      worst = std::max(worst, std::abs(marginal - expected));
    }
    report.level_discrepancy.push_back(worst);
    report.max_discrepancy = std::max(report.max_discrepancy, worst);
    report.configurations += fine.size();

    coarse = std::move(fine);
    coarse_log_Z = fine_log_Z;
  }
  report.passed = report.max_discrepancy <= tol;
  return report;
}

std::vector<NamedMeasure> named_measures(const ModelParams& params) {
  std::vector<NamedMeasure> out;
  const TIFixedPoints ti = solve_ti(params);
  if (ti.has_three()) out.push_back({"mu1", FieldAssignment::constant_u(*ti.u1)});
  out.push_back({"mu2", FieldAssignment::constant(0.0)});
  if (ti.has_three()) out.push_back({"mu3", FieldAssignment::constant_u(*ti.u3)});
  const PeriodicFixedPoints pp = solve_periodic(params);
  if (pp.has_pair()) {
    out.push_back({"mu12", FieldAssignment::parity_u(*pp.u_star, *pp.v_star)});
    out.push_back({"mu21", FieldAssignment::parity_u(*pp.v_star, *pp.u_star)});
  }
  return out;
}

double root_marginal(double u) {
  if (!(u > 0.0)) throw DomainError("root_marginal needs u > 0");
  if (std::isinf(u)) return 1.0;
  return u / (u + 1.0);
}

std::string to_string(GroundConfig g) {
  switch (g) {
    case GroundConfig::AllPlus:
      return "sigma_plus";
    case GroundConfig::AllMinus:
      return "sigma_minus";
    case GroundConfig::ParityPlusMinus:
      return "sigma_plus_minus";
    case GroundConfig::ParityMinusPlus:
      return "sigma_minus_plus";
  }
  return "unknown";
}

Configuration ground_configuration(GroundConfig kind, int n) {
  switch (kind) {
    case GroundConfig::AllPlus:
      return Configuration::constant(n, 1);
    case GroundConfig::AllMinus:
      return Configuration::constant(n, -1);
    case GroundConfig::ParityPlusMinus:
    case GroundConfig::ParityMinusPlus:
      break;
  }
  const int even_spin = kind == GroundConfig::ParityPlusMinus ? 1 : -1;
  std::vector<std::int8_t> spins;
  spins.reserve(ball_size(n));
  for (int m = 0; m <= n; ++m) {
    spins.insert(spins.end(), shell_size(m), static_cast<std::int8_t>(m % 2 == 0 ? even_spin : -even_spin));
  }
  return Configuration(n, std::move(spins));
}

TargetProbability target_probability(const ModelParams& params, const FieldAssignment& field,
                                     const Configuration& target) {
  std::vector<double> w = enumerate_log_weights(params, field, target.depth());
  const std::uint64_t t = target.to_mask();
  const double target_w = w[t];
  w.erase(w.begin() + static_cast<std::ptrdiff_t>(t));
  const double log_others_rel = log_sum_exp(w) - target_w;

  TargetProbability out;
  out.log_probability = -std::log1p(std::exp(log_others_rel));
  out.log_complement = log_others_rel + out.log_probability;
  out.probability = std::exp(out.log_probability);
  return out;
}

ZeroTemperatureScan zero_temperature_scan(double J, double J1, const std::vector<double>& betas,
                                          int n) {
  if (betas.empty()) throw DomainError("beta schedule is empty");
  for (std::size_t i = 1; i < betas.size(); ++i) {
    if (!(betas[i] > betas[i - 1])) throw DomainError("beta schedule must be strictly increasing");
  }
  require_enumerable(n);

  ZeroTemperatureScan scan;
  scan.J = J;
  scan.J1 = J1;
  scan.depth = n;
  const TargetProbability missing{kNaN, kNaN, kNaN};

  for (double beta : betas) {
    const ModelParams params = ModelParams::from_couplings(J, J1, beta);
    ZeroTemperatureRow row;
    row.beta = beta;
    row.theta = params.theta();
    row.theta1 = params.theta1();
    row.region = classify_region(params).tag;
    row.mu2_root_marginal = root_marginal(1.0);
    row.u3 = kNaN;
    row.root_marginal_u3 = kNaN;
    row.mu3_plus = row.mu1_minus = row.mu12_minus_plus = row.mu21_plus_minus = missing;

    const TIFixedPoints ti = solve_ti(params);
    if (row.region == Region::ThreeTranslationInvariant && ti.has_three()) {
      row.u3 = *ti.u3;
      row.root_marginal_u3 = root_marginal(*ti.u3);
      row.mu3_plus = target_probability(params, FieldAssignment::constant_u(*ti.u3),
                                        ground_configuration(GroundConfig::AllPlus, n));
      row.mu1_minus = target_probability(params, FieldAssignment::constant_u(*ti.u1),
                                         ground_configuration(GroundConfig::AllMinus, n));
    }
    const PeriodicFixedPoints pp = solve_periodic(params);
    if (row.region == Region::ThreePeriodic && pp.has_pair()) {
      row.mu12_minus_plus =
          target_probability(params, FieldAssignment::parity_u(*pp.u_star, *pp.v_star),
                             ground_configuration(GroundConfig::ParityMinusPlus, n));
      row.mu21_plus_minus =
          target_probability(params, FieldAssignment::parity_u(*pp.v_star, *pp.u_star),
                             ground_configuration(GroundConfig::ParityPlusMinus, n));
    }
    if (row.region == Region::Unique) scan.outside_region_betas.push_back(beta);
    scan.rows.push_back(row);
  }

  // Strictly increasing target probabilities, judged on log(1 - mu) which
  // stays resolvable once mu rounds to 1.
  auto monotone = [&](Region region, auto&& first, auto&& second, bool with_u3) {
    const ZeroTemperatureRow* prev = nullptr;
    int count = 0;
    bool ok = true;
    for (const auto& row : scan.rows) {
      if (row.region != region || std::isnan(first(row).log_complement)) continue;
      ++count;
      if (prev) {
        ok = ok && first(row).log_complement < first(*prev).log_complement &&
             second(row).log_complement < second(*prev).log_complement;
        if (with_u3) ok = ok && row.u3 > prev->u3;
      }
      prev = &row;
    }
    const bool above = prev && first(*prev).probability >= kZeroTemperatureThreshold &&
                       second(*prev).probability >= kZeroTemperatureThreshold;
    return std::pair<bool, bool>{ok && count >= 2, above};
  };
  std::tie(scan.ti_monotone, scan.ti_final_above_threshold) = monotone(
      Region::ThreeTranslationInvariant, [](const ZeroTemperatureRow& r) { return r.mu3_plus; },
      [](const ZeroTemperatureRow& r) { return r.mu1_minus; }, true);
  std::tie(scan.periodic_monotone, scan.periodic_final_above_threshold) = monotone(
      Region::ThreePeriodic, [](const ZeroTemperatureRow& r) { return r.mu12_minus_plus; },
      [](const ZeroTemperatureRow& r) { return r.mu21_plus_minus; }, false);
  return scan;
}

}  // namespace cayley_ising
