#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <vector>

#include "cayley_ising/tree_group.hpp"

namespace cayley_ising {

// Couplings J (ternary, sibling pairs), J1 (nearest neighbour) and inverse
// temperature beta, together with theta = exp(2 beta J), theta1 = exp(2 beta J1).
class ModelParams {
 public:
  // Throws DomainError unless beta > 0 and the derived thetas are finite and positive.
  static ModelParams from_couplings(double J, double J1, double beta);
  // beta = 1, J = log(theta)/2, J1 = log(theta1)/2; the thetas are stored as given.
  static ModelParams from_thetas(double theta, double theta1);

  double J() const { return J_; }
  double J1() const { return J1_; }
  double beta() const { return beta_; }
  double theta() const { return theta_; }
  double theta1() const { return theta1_; }
  // beta*J and beta*J1, the only combinations the Boltzmann weight needs.
  double beta_J() const { return beta_ * J_; }
  double beta_J1() const { return beta_ * J1_; }

 private:
  ModelParams(double J, double J1, double beta, double theta, double theta1)
      : J_(J), J1_(J1), beta_(beta), theta_(theta), theta1_(theta1) {}

  double J_;
  double J1_;
  double beta_;
  double theta_;
  double theta1_;
};

// Maximum depth for exhaustive 2^{|V_n|} enumeration: |V_3| = 22.
inline constexpr int kMaxEnumerationDepth = 3;

// Spin assignment on V_n, stored in the shortlex vertex order of Ball(n).
class Configuration {
 public:
  // Throws DomainError if spins.size() != |V_n| or any spin is not +-1.
  Configuration(int depth, std::vector<std::int8_t> spins);

  static Configuration constant(int depth, int spin);
  // Bit i of mask set means spin -1 at vertex index i. Requires |V_n| <= 63.
  static Configuration from_mask(int depth, std::uint64_t mask);

  int depth() const { return depth_; }
  std::size_t size() const { return spins_.size(); }
  std::span<const std::int8_t> spins() const { return spins_; }
  int spin(std::size_t index) const { return spins_[index]; }
  int spin(const Vertex& v) const;
  void set_spin(std::size_t index, int spin);

  Configuration flipped() const;
  std::uint64_t to_mask() const;

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  int depth_;
  std::vector<std::int8_t> spins_;
};

// A = sum over ternary bonds, B = sum over nearest-neighbour bonds, C = sum of spins.
struct ConfigStats {
  long A = 0;
  long B = 0;
  long C = 0;
  friend bool operator==(const ConfigStats&, const ConfigStats&) = default;
};

ConfigStats stats(const Configuration& config);
ConfigStats stats(const Ball& ball, std::span<const std::int8_t> spins);

// H(sigma_n) = -J A - J1 B. Requires depth >= 1.
double energy(const ModelParams& params, const Configuration& config);

// Precomputed bit masks of both endpoints of every bond in V_n; evaluates
// (A, B) for a packed configuration without unpacking.
class BondTable {
 public:
  explicit BondTable(const Ball& ball);

  std::size_t sites() const { return sites_; }
  std::size_t nn_bond_count() const { return nn_.size(); }
  std::size_t ternary_bond_count() const { return ternary_.size(); }

  // mask bit i set = spin -1 at index i.
  long A(std::uint64_t mask) const { return count(ternary_, mask); }
  long B(std::uint64_t mask) const { return count(nn_, mask); }
  long C(std::uint64_t mask) const;

 private:
  static long count(const std::vector<std::pair<int, int>>& bonds, std::uint64_t mask);
  std::size_t sites_;
  std::vector<std::pair<int, int>> nn_;
  std::vector<std::pair<int, int>> ternary_;
};

struct BoundarySets {
  std::set<Vertex> boundary;         // dK: outside vertices nearest-neighbour adjacent to K
  std::set<Vertex> second_boundary;  // d2K: outside vertices sibling-adjacent to K
};

// Boundaries of a connected vertex set K inside V_n. Throws DomainError if K
// is empty, leaves V_n, or is not connected in the nearest-neighbour graph.
BoundarySets boundary_sets(std::span<const Vertex> K, int n);

struct BondGapReport {
  int depth = 0;
  std::uint64_t configurations_checked = 0;
  std::uint64_t violations = 0;
  // Violations among configurations that are +1 on the whole outer shell W_n,
  // i.e. no minus cluster reaches the volume boundary.
  std::uint64_t shell_plus_configurations = 0;
  std::uint64_t shell_plus_violations = 0;
  std::uint64_t equality_count = 0;  // configurations attaining B(s)-A(s) = B-A
  long reference_gap = 0;            // B - A for the all-plus configuration
  long min_slack = 0;                // min over sigma of (B-A) - (B(s)-A(s))
  long max_slack = 0;
  bool holds() const { return violations == 0; }
};

// Exhaustive check of B(s) - A(s) <= B(s+) - A(s+) on V_n. This is a check,
// not a guarantee: minus spins on the outer shell W_n violate it already at
// n = 1. The default cap is n <= 2; n = 3 requires allow_depth_three.
// Throws ResourceLimitError.
BondGapReport check_bond_gap_inequality(int n, bool allow_depth_three = false);

// Iterates all 2^{|V_n|} packed configurations. Requires n <= kMaxEnumerationDepth.
template <class Fn>
void for_each_mask(const Ball& ball, Fn&& fn) {
  const std::uint64_t total = std::uint64_t{1} << ball.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) fn(mask);
}

// Throws ResourceLimitError if n exceeds max_depth.
void require_enumerable(int n, int max_depth = kMaxEnumerationDepth);

}  // namespace cayley_ising
