#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <vector>

#include "cayley_ising/errors.hpp"
#include "cayley_ising/model.hpp"

using namespace cayley_ising;

namespace {

// Direct sums over Vertex objects, independent of the index tables.
ConfigStats naive_stats(const Configuration& c) {
  ConfigStats s;
  const auto ball = enumerate_levels(c.depth()).ball();
  for (const auto& v : ball) {
    s.C += c.spin(v);
    if (v.level() < static_cast<std::size_t>(c.depth())) {
      for (const auto& w : direct_successors(v)) s.B += c.spin(v) * c.spin(w);
      for (const auto& [x, y] : ternary_sibling_pairs(v)) s.A += c.spin(x) * c.spin(y);
    }
  }
  return s;
}

// Connected components of the minus set in the nearest-neighbour graph.
std::vector<std::vector<Vertex>> minus_components(const Configuration& c) {
  const auto ball = enumerate_levels(c.depth()).ball();
  std::set<Vertex> todo;
  for (const auto& v : ball) if (c.spin(v) < 0) todo.insert(v);
  std::vector<std::vector<Vertex>> out;
  while (!todo.empty()) {
    std::vector<Vertex> comp{*todo.begin()};
    todo.erase(todo.begin());
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (const auto& w : neighbors(comp[i])) {
        auto it = todo.find(w);
        if (it != todo.end()) {
          comp.push_back(*it);
          todo.erase(it);
        }
      }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

}  // namespace

TEST_CASE("parameters") {
  const auto p = ModelParams::from_couplings(1.0, 0.5, 2.0);
  CHECK(p.theta() == doctest::Approx(std::exp(4.0)).epsilon(1e-15));
  CHECK(p.theta1() == doctest::Approx(std::exp(2.0)).epsilon(1e-15));
  CHECK(p.beta_J() == 2.0);
  CHECK_THROWS_AS(ModelParams::from_couplings(1.0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(ModelParams::from_couplings(1e6, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(ModelParams::from_thetas(-1.0, 2.0), DomainError);
  const auto t = ModelParams::from_thetas(5.0, 2.0);
  CHECK(t.theta() == 5.0);
  CHECK(t.theta1() == 2.0);
  CHECK(t.beta() == 1.0);
}

TEST_CASE("configuration basics") {
  CHECK_THROWS_AS(Configuration(1, {1, 1, 1}), DomainError);
  CHECK_THROWS_AS(Configuration(1, {1, 1, 0, 1}), DomainError);
  const auto c = Configuration::from_mask(2, 0b101);
  CHECK(c.spin(0) == -1);
  CHECK(c.spin(1) == 1);
  CHECK(c.spin(Vertex::from_word({2})) == -1);
  CHECK(c.to_mask() == 0b101);
  CHECK(c.flipped().flipped() == c);
  CHECK(Configuration::constant(2, -1).to_mask() == (1u << 10) - 1);
}

TEST_CASE("frozen statistics") {
  // all plus, n = 1: 3 sibling pairs under the root, 3 edges
  const auto plus1 = Configuration::constant(1, 1);
  CHECK(stats(plus1) == ConfigStats{3, 3, 4});
  const auto p = ModelParams::from_couplings(1.0, 1.0, 1.0);
  CHECK(energy(p, plus1) == -6.0);

  auto root_minus = plus1;
  root_minus.set_spin(0, -1);
  CHECK(stats(root_minus) == ConfigStats{3, -3, 2});

  // all plus, n = 2: 3 + 3 sibling pairs, 9 edges, 10 sites
  CHECK(stats(Configuration::constant(2, 1)) == ConfigStats{6, 9, 10});
  CHECK(stats(Configuration::constant(2, -1)) == ConfigStats{6, 9, -10});
}

TEST_CASE("stats agree with naive sums and the bond table") {
  for (int n = 1; n <= 3; ++n) {
    const Ball ball(n);
    const BondTable table(ball);
    std::mt19937_64 rng(42 + n);
    for (int trial = 0; trial < 200; ++trial) {
      const std::uint64_t mask = rng() & ((std::uint64_t{1} << ball.size()) - 1);
      const auto c = Configuration::from_mask(n, mask);
      const auto s = stats(c);
      CHECK(s == naive_stats(c));
      CHECK(table.A(mask) == s.A);
      CHECK(table.B(mask) == s.B);
      CHECK(table.C(mask) == s.C);
      // Global flip leaves both bond sums invariant.
      const auto f = stats(c.flipped());
      CHECK(f.A == s.A);
      CHECK(f.B == s.B);
      CHECK(f.C == -s.C);
    }
  }
}

TEST_CASE("nearest-neighbour sum drops by twice the boundary of each minus cluster") {
  const long B_plus = stats(Configuration::constant(3, 1)).B;
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const auto c = Configuration::from_mask(3, rng() & ((1u << 22) - 1));
    long boundary_total = 0;
    for (const auto& K : minus_components(c)) boundary_total += boundary_sets(K, 3).boundary.size();
    CHECK(stats(c).B == B_plus - 2 * boundary_total);
  }
}

TEST_CASE("boundary sets") {
  const std::vector<Vertex> K{Vertex::from_word({1}), Vertex::from_word({1, 2})};
  const auto b = boundary_sets(K, 2);
  CHECK(b.boundary == std::set<Vertex>{Vertex{}, Vertex::from_word({1, 3})});
  CHECK(b.second_boundary ==
        std::set<Vertex>{Vertex::from_word({2}), Vertex::from_word({3}), Vertex::from_word({1, 3})});

  const std::vector<Vertex> root_only{Vertex{}};
  CHECK(boundary_sets(root_only, 1).boundary.size() == 3);
  CHECK(boundary_sets(root_only, 1).second_boundary.empty());

  CHECK_THROWS_AS(boundary_sets(std::vector<Vertex>{}, 2), DomainError);
  const std::vector<Vertex> split{Vertex::from_word({1}), Vertex::from_word({2})};
  CHECK_THROWS_AS(boundary_sets(split, 2), DomainError);
  const std::vector<Vertex> outside{Vertex::from_word({1, 2, 1})};
  CHECK_THROWS_AS(boundary_sets(outside, 2), DomainError);
}

TEST_CASE("bond gap inequality, exhaustive") {
  // The inequality B(s) - A(s) <= B - A does not hold in general: a minus
  // spin on the outer shell flips one edge but two sibling pairs.
  // Frozen counts come from an independent enumeration:
  //   n = 1: 6 violations, 8 equalities, max gap 2 (reference 0)
  //   n = 2: 162 violations, 216 equalities, max gap 5 (reference 3)
  struct Frozen {
    int n;
    std::uint64_t violations, equalities;
    long reference, max_gap;
  };
  for (const auto& f : {Frozen{1, 6, 8, 0, 2}, Frozen{2, 162, 216, 3, 5}}) {
    const int n = f.n;
    const auto report = check_bond_gap_inequality(n);
    CHECK(report.configurations_checked == (std::uint64_t{1} << ball_size(n)));
    CHECK(report.violations == f.violations);
    CHECK(report.equality_count == f.equalities);
    CHECK(report.reference_gap == f.reference);
    CHECK(report.min_slack == f.reference - f.max_gap);
    CHECK(report.max_slack > 0);
    // Restricted to configurations that are +1 on W_n it does hold.
    CHECK(report.shell_plus_configurations == (std::uint64_t{1} << ball_size(n - 1)));
    CHECK(report.shell_plus_violations == 0);

    // Independent pass over Configuration objects.
    const auto ref = stats(Configuration::constant(n, 1));
    long max_gap = std::numeric_limits<long>::min();
    std::uint64_t eq = 0, viol = 0;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << ball_size(n)); ++m) {
      const auto s = stats(Configuration::from_mask(n, m));
      max_gap = std::max(max_gap, s.B - s.A);
      eq += (s.B - s.A == ref.B - ref.A);
      viol += (s.B - s.A > ref.B - ref.A);
    }
    CHECK(max_gap == f.max_gap);
    CHECK(eq == f.equalities);
    CHECK(viol == f.violations);
    const auto minus = stats(Configuration::constant(n, -1));
    CHECK(minus.B - minus.A == ref.B - ref.A);
  }

  // Smallest counterexample: one minus leaf at n = 1.
  auto c = Configuration::constant(1, 1);
  c.set_spin(3, -1);
  CHECK(stats(c) == ConfigStats{-1, 1, 2});
  CHECK(stats(c).B - stats(c).A == 2);

  CHECK_NOTHROW(check_bond_gap_inequality(3, true));
  CHECK_THROWS_AS(check_bond_gap_inequality(3), ResourceLimitError);
  CHECK_THROWS_AS(check_bond_gap_inequality(4, true), ResourceLimitError);
}

TEST_CASE("enumeration cap") {
  CHECK_NOTHROW(require_enumerable(3));
  CHECK_THROWS_AS(require_enumerable(4), ResourceLimitError);
}
