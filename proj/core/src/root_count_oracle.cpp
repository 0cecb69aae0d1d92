#include "cayley_ising/root_count_oracle.hpp"

#include <cmath>
#include <functional>

#include "cayley_ising/errors.hpp"
#include "cayley_ising/recursion.hpp"

namespace cayley_ising {
namespace {

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

// Roots of phi on the grid: exact zeros at grid points plus one bisected
// root per strict sign change between consecutive nonzero samples.
std::vector<double> scan(const std::function<double(double)>& phi, const std::vector<double>& u) {
  std::vector<double> roots;
  double prev_u = u.front();
  int prev_sign = sign_of(phi(prev_u));
  if (prev_sign == 0) roots.push_back(prev_u);
  for (std::size_t i = 1; i < u.size(); ++i) {
    const int s = sign_of(phi(u[i]));
    if (s == 0) {
      roots.push_back(u[i]);
    } else if (prev_sign != 0 && s != prev_sign) {
      double lo = std::log(prev_u);
      double hi = std::log(u[i]);
      for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (sign_of(phi(std::exp(mid))) == prev_sign) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      roots.push_back(std::exp(0.5 * (lo + hi)));
    }
    prev_u = u[i];
    prev_sign = s;
  }
  return roots;
}

}  // namespace

RootCountResult root_count_oracle(const ModelParams& params, const LogGrid& grid) {
  if (grid.lo > 1e-6 || grid.hi < 1e6 || grid.points < 10000 || !(grid.lo > 0.0)) {
    throw DomainError("root count grid must span [1e-6, 1e6] with at least 10^4 points");
  }
  std::vector<double> u(static_cast<std::size_t>(grid.points));
  const double a = std::log10(grid.lo);
  const double b = std::log10(grid.hi);
  for (int i = 0; i < grid.points; ++i) {
    u[static_cast<std::size_t>(i)] = std::pow(10.0, a + (b - a) * i / (grid.points - 1));
  }
  RootCountResult out;
  out.ti_roots = scan([&](double x) { return self_kernel(params, x) - x; }, u);
  out.periodic_roots =
      scan([&](double x) { return self_kernel(params, self_kernel(params, x)) - x; }, u);
  return out;
}

}  // namespace cayley_ising
