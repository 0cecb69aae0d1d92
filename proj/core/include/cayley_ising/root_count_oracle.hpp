#pragma once

#include <vector>

#include "cayley_ising/model.hpp"

namespace cayley_ising {

// Brute-force root counting for g(u) - u and g(g(u)) - u on a log-spaced
// grid, with bisection refinement of every bracketed sign change. Used only
// to cross-check the closed forms.
struct RootCountResult {
  std::vector<double> ti_roots;        // roots of g(u) = u
  std::vector<double> periodic_roots;  // roots of g(g(u)) = u
  int ti_count() const { return static_cast<int>(ti_roots.size()); }
  int periodic_count() const { return static_cast<int>(periodic_roots.size()); }
};

struct LogGrid {
  double lo = 1e-6;
  double hi = 1e6;
  int points = 20001;
};

// Throws DomainError unless the grid covers [1e-6, 1e6] with >= 10^4 points.
RootCountResult root_count_oracle(const ModelParams& params, const LogGrid& grid = {});

}  // namespace cayley_ising
