#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cayley_ising {

// Reduced fraction with positive denominator.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const;
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

// Convergents p_k/q_k of the regular continued fraction of x, stopping before
// the first denominator above max_denominator or once x is matched exactly.
std::vector<Fraction> convergents(double x, std::int64_t max_denominator);

// First convergent with |x - p/q| <= tol, if any has q <= max_denominator.
std::optional<Fraction> rational_relation(double x, double tol, std::int64_t max_denominator);

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);

}  // namespace cayley_ising
