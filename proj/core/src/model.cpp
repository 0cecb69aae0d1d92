#include "cayley_ising/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <string>

#include "cayley_ising/errors.hpp"

namespace cayley_ising {

ModelParams ModelParams::from_couplings(double J, double J1, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("beta must be positive and finite");
  if (!std::isfinite(J) || !std::isfinite(J1)) throw DomainError("couplings must be finite");
  const double theta = std::exp(2.0 * beta * J);
  const double theta1 = std::exp(2.0 * beta * J1);
  if (!(theta > 0.0) || !(theta1 > 0.0) || !std::isfinite(theta) || !std::isfinite(theta1)) {
    throw DomainError("exp(2 beta J) or exp(2 beta J1) is not a positive finite number");
  }
  return ModelParams(J, J1, beta, theta, theta1);
}

ModelParams ModelParams::from_thetas(double theta, double theta1) {
  if (!(theta > 0.0) || !(theta1 > 0.0) || !std::isfinite(theta) || !std::isfinite(theta1)) {
    throw DomainError("theta and theta1 must be positive and finite");
  }
  return ModelParams(0.5 * std::log(theta), 0.5 * std::log(theta1), 1.0, theta, theta1);
}

void require_enumerable(int n, int max_depth) {
  if (n < 0) throw DomainError("depth must be non-negative");
  if (n > max_depth) {
    throw ResourceLimitError("exhaustive enumeration at depth " + std::to_string(n) +
                             " exceeds cap " + std::to_string(max_depth) + " (2^" +
                             std::to_string(ball_size(n)) + " configurations)");
  }
}

Configuration::Configuration(int depth, std::vector<std::int8_t> spins)
    : depth_(depth), spins_(std::move(spins)) {
  if (depth < 0 || depth > kMaxTreeDepth) throw DomainError("configuration depth out of range");
  if (spins_.size() != ball_size(depth)) {
    throw DomainError("configuration has " + std::to_string(spins_.size()) + " spins, V_" +
                      std::to_string(depth) + " has " + std::to_string(ball_size(depth)));
  }
  for (auto s : spins_) {
    if (s != 1 && s != -1) throw DomainError("spins must be +1 or -1");
  }
}

Configuration Configuration::constant(int depth, int spin) {
  if (depth < 0 || depth > kMaxTreeDepth) throw DomainError("configuration depth out of range");
  return Configuration(depth, std::vector<std::int8_t>(ball_size(depth), static_cast<std::int8_t>(spin)));
}

Configuration Configuration::from_mask(int depth, std::uint64_t mask) {
  if (depth < 0 || ball_size(depth) > 63) throw DomainError("mask packing needs |V_n| <= 63");
  std::vector<std::int8_t> spins(ball_size(depth));
  for (std::size_t i = 0; i < spins.size(); ++i) spins[i] = ((mask >> i) & 1U) ? -1 : 1;
  return Configuration(depth, std::move(spins));
}

int Configuration::spin(const Vertex& v) const {
  if (v.level() > static_cast<std::size_t>(depth_)) {
    throw DomainError("vertex " + v.to_string() + " is outside V_n");
  }
  // Shortlex rank inside W_m: first letter has 3 choices, later letters 2.
  const auto w = v.word();
  if (w.empty()) return spins_[0];
  std::size_t rank = static_cast<std::size_t>(w[0] - 1);
  for (std::size_t i = 1; i < w.size(); ++i) {
    const int rel = w[i] > w[i - 1] ? w[i] - 2 : w[i] - 1;  // 0 or 1 among the two allowed letters
    rank = rank * 2 + static_cast<std::size_t>(rel);
  }
  const std::size_t offset = ball_size(static_cast<int>(w.size()) - 1);
  return spins_[offset + rank];
}

void Configuration::set_spin(std::size_t index, int spin) {
  if (spin != 1 && spin != -1) throw DomainError("spins must be +1 or -1");
  spins_.at(index) = static_cast<std::int8_t>(spin);
}

Configuration Configuration::flipped() const {
  Configuration out = *this;
  for (auto& s : out.spins_) s = static_cast<std::int8_t>(-s);
  return out;
}

std::uint64_t Configuration::to_mask() const {
  if (spins_.size() > 63) throw DomainError("mask packing needs |V_n| <= 63");
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < spins_.size(); ++i) {
    if (spins_[i] < 0) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

ConfigStats stats(const Ball& ball, std::span<const std::int8_t> spins) {
  ConfigStats s;
  for (auto [x, y] : ball.ternary_bonds()) s.A += spins[x] * spins[y];
  for (auto [x, y] : ball.nn_bonds()) s.B += spins[x] * spins[y];
  for (auto v : spins) s.C += v;
  return s;
}

ConfigStats stats(const Configuration& config) {
  const Ball ball(config.depth());
  return stats(ball, config.spins());
}

double energy(const ModelParams& params, const Configuration& config) {
  if (config.depth() < 1) throw DomainError("energy needs depth >= 1");
  const ConfigStats s = stats(config);
  return -params.J() * static_cast<double>(s.A) - params.J1() * static_cast<double>(s.B);
}

BondTable::BondTable(const Ball& ball) : sites_(ball.size()) {
  if (sites_ > 63) throw DomainError("bond table packing needs |V_n| <= 63");
  for (auto [x, y] : ball.nn_bonds()) nn_.emplace_back(static_cast<int>(x), static_cast<int>(y));
  for (auto [x, y] : ball.ternary_bonds()) {
    ternary_.emplace_back(static_cast<int>(x), static_cast<int>(y));
  }
}

long BondTable::count(const std::vector<std::pair<int, int>>& bonds, std::uint64_t mask) {
  long unequal = 0;
  for (auto [x, y] : bonds) unequal += static_cast<long>(((mask >> x) ^ (mask >> y)) & 1U);
  return static_cast<long>(bonds.size()) - 2 * unequal;
}

long BondTable::C(std::uint64_t mask) const {
  return static_cast<long>(sites_) - 2 * static_cast<long>(std::popcount(mask));
}

BoundarySets boundary_sets(std::span<const Vertex> K, int n) {
  if (K.empty()) throw DomainError("boundary_sets needs a nonempty vertex set");
  const std::set<Vertex> members(K.begin(), K.end());
  for (const auto& v : members) {
    if (v.level() > static_cast<std::size_t>(n)) {
      throw DomainError("vertex " + v.to_string() + " is outside V_" + std::to_string(n));
    }
  }

  // Connectivity by BFS over nearest-neighbour edges restricted to K.
  std::set<Vertex> seen{*members.begin()};
  std::queue<Vertex> frontier;
  frontier.push(*members.begin());
  while (!frontier.empty()) {
    Vertex v = frontier.front();
    frontier.pop();
    for (auto& w : neighbors(v)) {
      if (members.count(w) && !seen.count(w)) {
        seen.insert(w);
        frontier.push(std::move(w));
      }
    }
  }
  if (seen.size() != members.size()) throw DomainError("vertex set is not connected");

  auto inside = [n](const Vertex& v) { return v.level() <= static_cast<std::size_t>(n); };
  BoundarySets out;
  for (const auto& v : members) {
    for (auto& w : neighbors(v)) {
      if (inside(w) && !members.count(w)) out.boundary.insert(w);
    }
    if (!v.is_root()) {
      for (auto& [a, b] : ternary_sibling_pairs(v.parent())) {
        const Vertex* other = a == v ? &b : (b == v ? &a : nullptr);
        if (other && inside(*other) && !members.count(*other)) out.second_boundary.insert(*other);
      }
    }
  }
  return out;
}

BondGapReport check_bond_gap_inequality(int n, bool allow_depth_three) {
  if (n < 1) throw DomainError("bond gap inequality is stated for n >= 1");
  require_enumerable(n, allow_depth_three ? 3 : 2);
  const Ball ball(n);
  const BondTable table(ball);

  BondGapReport report;
  report.depth = n;
  report.reference_gap = table.B(0) - table.A(0);
  report.min_slack = std::numeric_limits<long>::max();
  report.max_slack = std::numeric_limits<long>::min();
  const std::uint64_t shell_bits =
      ((std::uint64_t{1} << ball.size()) - 1) & ~((std::uint64_t{1} << ball.shell_begin(n)) - 1);
  for_each_mask(ball, [&](std::uint64_t mask) {
    const long slack = report.reference_gap - (table.B(mask) - table.A(mask));
    const bool shell_plus = (mask & shell_bits) == 0;
    ++report.configurations_checked;
    report.shell_plus_configurations += shell_plus;
    if (slack < 0) {
      ++report.violations;
      report.shell_plus_violations += shell_plus;
    }
    if (slack == 0) ++report.equality_count;
    report.min_slack = std::min(report.min_slack, slack);
    report.max_slack = std::max(report.max_slack, slack);
  });
  return report;
}

}  // namespace cayley_ising
