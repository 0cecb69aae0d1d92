#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cayley_ising/model.hpp"
#include "cayley_ising/tree_group.hpp"

namespace cayley_ising {

// Boundary field h: vertex -> R. Equivalently u_x = exp(2 h_x).
class FieldAssignment {
 public:
  struct Constant {
    double h;
  };
  struct Parity {
    double h_even;  // on G2^(2) (even word length)
    double h_odd;
  };
  struct Explicit {
    std::map<Vertex, double> values;
  };
  using Form = std::variant<Constant, Parity, Explicit>;

  // Throw DomainError unless every exp(2h) is finite and positive.
  static FieldAssignment constant(double h);
  static FieldAssignment parity(double h_even, double h_odd);
  static FieldAssignment explicit_values(std::map<Vertex, double> values);
  // Same forms parametrized by u = exp(2h).
  static FieldAssignment constant_u(double u);
  static FieldAssignment parity_u(double u_even, double u_odd);

  const Form& form() const { return form_; }
  bool is_constant() const { return std::holds_alternative<Constant>(form_); }
  bool is_parity() const { return std::holds_alternative<Parity>(form_); }
  bool is_explicit() const { return std::holds_alternative<Explicit>(form_); }

  // Throws DomainError for an Explicit field missing v.
  double h(const Vertex& v) const;
  double u(const Vertex& v) const { return std::exp(2.0 * h(v)); }
  // Value on a whole level; only defined for Constant and Parity.
  double h_at_level(std::size_t level) const;

  // h -> -h.
  FieldAssignment negated() const;

  std::string describe() const;

 private:
  explicit FieldAssignment(Form f) : form_(std::move(f)) {}
  Form form_;
};

// f(x, y) of the boundary-field recursion: exp(2 h_parent) = f(exp(2 h_y), exp(2 h_z))
// for the two successors y, z. Throws DomainError unless x, y > 0.
double kernel(const ModelParams& params, double x, double y);

// g(u) = f(u, u), the translation-invariant map.
double self_kernel(const ModelParams& params, double u);

struct RecursionCheck {
  bool passed = false;
  double max_residual = 0.0;  // max |exp(2 h_x) - f| / f over checked parents
  std::size_t parents_checked = 0;
  // Set for Explicit fields whose three root successors carry unequal
  // values: the two-successor kernel does not describe the root there.
  bool root_unverified = false;
};

// Checks exp(2 h_x) = f(exp(2 h_y), exp(2 h_z)) for every x in V_{n-1}. The
// root is checked through the same kernel on its first two successors when
// all three successor values agree.
RecursionCheck verify_recursion(const ModelParams& params, const FieldAssignment& field, int n,
                                double tol);

// Fixed points of g: u2 = 1 always, u1 < 1 < u3 when the phase-transition
// condition holds. u1 * u3 = 1 because the deflated quadratic
// u^2 + (1 + alpha) u + 1 has unit constant term.
struct TIFixedPoints {
  std::optional<double> u1;
  double u2 = 1.0;
  std::optional<double> u3;
  double alpha = 0.0;  // 2 theta1 / theta - theta1^2
  bool has_three() const { return u1.has_value(); }
};

// Closed form: deflate u = 1 from the cubic and solve the quadratic.
TIFixedPoints solve_ti(const ModelParams& params);

// Period-2 orbits (u, v) with u = g(v), v = g(u), u != v.
struct PeriodicFixedPoints {
  std::optional<double> u_star;  // u_star < 1 < v_star, product 1
  std::optional<double> v_star;
  double c2 = 0.0;  // quadratic c2 (x^2 + 1) + c1 x = 0
  double c1 = 0.0;
  bool has_pair() const { return u_star.has_value(); }
};

PeriodicFixedPoints solve_periodic(const ModelParams& params);

enum class Region { ThreeTranslationInvariant, ThreePeriodic, Unique };

std::string to_string(Region r);

struct RegionClass {
  Region tag = Region::Unique;
  // Positive inside a phase-transition region (the smaller of the two
  // inequality margins), non-positive in Unique (how far the nearest region
  // is from being entered). Zero exactly on a boundary curve.
  double boundary_distance = 0.0;
};

// theta1 > sqrt3, theta > 2 theta1 / (theta1^2 - 3)  -> ThreeTranslationInvariant
// theta1 < 1/sqrt3, theta > 2 theta1 / (1 - 3 theta1^2) -> ThreePeriodic
// otherwise Unique (boundaries included).
RegionClass classify_region(const ModelParams& params);

// Threshold curves; +infinity where the curve does not exist.
double ti_threshold(double theta1);
double periodic_threshold(double theta1);

struct PeriodicMeasureSet {
  std::vector<std::pair<std::string, FieldAssignment>> measures;
  // theta1 == 1: f is not injective in each argument, the subgroup reduction
  // does not apply and the periodic classification is not asserted.
  bool kernel_non_injective = false;
  std::string note;
};

// Periodic Gibbs measures for a finite-index subgroup: translation-invariant
// ones always; the two parity measures exactly when I(H0) is empty and the
// parameters are in the ThreePeriodic region.
PeriodicMeasureSet classify_periodic_measures(const SubgroupDescriptor& subgroup,
                                              const ModelParams& params);

}  // namespace cayley_ising
