#include "cayley_ising/rational.hpp"

#include <cmath>
#include <numeric>

namespace cayley_ising {

std::string Fraction::to_string() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

std::vector<Fraction> convergents(double x, std::int64_t max_denominator) {
  std::vector<Fraction> out;
  if (!std::isfinite(x) || max_denominator < 1) return out;
  // Long double keeps the remainders accurate for a few more terms.
  long double y = x;
  std::int64_t p_prev = 1, q_prev = 0;
  std::int64_t p = static_cast<std::int64_t>(std::floor(y));
  std::int64_t q = 1;
  out.push_back({p, q});
  long double frac = y - std::floor(y);
  for (int iter = 0; iter < 64 && frac != 0.0L; ++iter) {
    y = 1.0L / frac;
    if (y > 1e18L) break;
    const auto a = static_cast<std::int64_t>(std::floor(y));
    frac = y - std::floor(y);
    const std::int64_t p_next = a * p + p_prev;
    const std::int64_t q_next = a * q + q_prev;
    if (q_next > max_denominator || q_next <= 0) break;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
    out.push_back({p, q});
  }
  return out;
}

std::optional<Fraction> rational_relation(double x, double tol, std::int64_t max_denominator) {
  for (const Fraction& f : convergents(x, max_denominator)) {
    if (std::abs(x - f.value()) <= tol) return f;
  }
  return std::nullopt;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

}  // namespace cayley_ising
