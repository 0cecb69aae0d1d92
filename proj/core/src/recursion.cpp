#include "cayley_ising/recursion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cayley_ising/errors.hpp"

namespace cayley_ising {
namespace {

constexpr double kSqrt3 = 1.7320508075688772;
constexpr double kDiscriminantFloor = 1e-14;

void require_finite_field(double h) {
  const double u = std::exp(2.0 * h);
  if (!std::isfinite(h) || !std::isfinite(u) || !(u > 0.0)) {
    throw DomainError("field value h = " + std::to_string(h) + " has no finite positive exp(2h)");
  }
}

double h_from_u(double u) {
  if (!(u > 0.0) || !std::isfinite(u)) throw DomainError("u = exp(2h) must be positive and finite");
  return 0.5 * std::log(u);
}

// Larger root of x^2 + b x + 1 = 0, or nothing unless both roots are real,
// positive and distinct (b < -2 with discriminant above the floor). Written
// to avoid overflow in b^2 for very large |b|.
std::optional<double> upper_unit_product_root(double b) {
  if (!(b < -2.0)) return std::nullopt;
  const double mag = -b;
  const double disc_over_b2 = (1.0 - 2.0 / mag) * (1.0 + 2.0 / mag);
  if (mag * mag * disc_over_b2 < kDiscriminantFloor) return std::nullopt;
  return 0.5 * (mag + mag * std::sqrt(disc_over_b2));
}

double relative_residual(double u, double target) { return std::abs(u - target) / target; }

}  // namespace

FieldAssignment FieldAssignment::constant(double h) {
  require_finite_field(h);
  return FieldAssignment(Constant{h});
}

FieldAssignment FieldAssignment::parity(double h_even, double h_odd) {
  require_finite_field(h_even);
  require_finite_field(h_odd);
  return FieldAssignment(Parity{h_even, h_odd});
}

FieldAssignment FieldAssignment::explicit_values(std::map<Vertex, double> values) {
  for (const auto& [v, h] : values) require_finite_field(h);
  return FieldAssignment(Explicit{std::move(values)});
}

FieldAssignment FieldAssignment::constant_u(double u) { return constant(h_from_u(u)); }

FieldAssignment FieldAssignment::parity_u(double u_even, double u_odd) {
  return parity(h_from_u(u_even), h_from_u(u_odd));
}

double FieldAssignment::h(const Vertex& v) const {
  if (const auto* c = std::get_if<Constant>(&form_)) return c->h;
  if (const auto* p = std::get_if<Parity>(&form_)) return in_even_subgroup(v) ? p->h_even : p->h_odd;
  const auto& values = std::get<Explicit>(form_).values;
  auto it = values.find(v);
  if (it == values.end()) throw DomainError("explicit field has no value at " + v.to_string());
  return it->second;
}

double FieldAssignment::h_at_level(std::size_t level) const {
  if (const auto* c = std::get_if<Constant>(&form_)) return c->h;
  if (const auto* p = std::get_if<Parity>(&form_)) return level % 2 == 0 ? p->h_even : p->h_odd;
  throw DomainError("explicit fields are not level-uniform");
}

FieldAssignment FieldAssignment::negated() const {
  if (const auto* c = std::get_if<Constant>(&form_)) return FieldAssignment(Constant{-c->h});
  if (const auto* p = std::get_if<Parity>(&form_)) {
    return FieldAssignment(Parity{-p->h_even, -p->h_odd});
  }
  Explicit e = std::get<Explicit>(form_);
  for (auto& [v, h] : e.values) h = -h;
  return FieldAssignment(std::move(e));
}

std::string FieldAssignment::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (const auto* c = std::get_if<Constant>(&form_)) {
    os << "constant(h=" << c->h << ")";
  } else if (const auto* p = std::get_if<Parity>(&form_)) {
    os << "parity(h_even=" << p->h_even << ", h_odd=" << p->h_odd << ")";
  } else {
    os << "explicit(" << std::get<Explicit>(form_).values.size() << " vertices)";
  }
  return os.str();
}

double kernel(const ModelParams& params, double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) throw DomainError("kernel arguments must be positive");
  const double t = params.theta();
  const double t1 = params.theta1();
  const double xy = x * y;
  const double s = x + y;
  return (t1 * t1 * t * xy + t1 * s + t) / (t * xy + t1 * s + t1 * t1 * t);
}

double self_kernel(const ModelParams& params, double u) { return kernel(params, u, u); }

RecursionCheck verify_recursion(const ModelParams& params, const FieldAssignment& field, int n,
                                double tol) {
  if (n < 1) throw DomainError("recursion check needs depth >= 1");
  RecursionCheck check;
  auto record = [&](double u_parent, double u_a, double u_b) {
    const double r = relative_residual(u_parent, kernel(params, u_a, u_b));
    check.max_residual = std::max(check.max_residual, r);
    ++check.parents_checked;
  };

  if (!field.is_explicit()) {
    // Level-uniform: one representative parent per level.
    for (int m = 0; m < n; ++m) {
      const double child = std::exp(2.0 * field.h_at_level(static_cast<std::size_t>(m) + 1));
      record(std::exp(2.0 * field.h_at_level(static_cast<std::size_t>(m))), child, child);
    }
  } else {
    const Ball ball(n);
    for (std::size_t i = 0; i < ball.shell_end(n - 1); ++i) {
      auto kids = ball.children(i);
      const double ua = field.u(ball.vertex(kids[0]));
      const double ub = field.u(ball.vertex(kids[1]));
      if (kids.size() == 3) {
        const double uc = field.u(ball.vertex(kids[2]));
        if (ua != ub || ub != uc) {
          check.root_unverified = true;
          continue;
        }
      }
      record(field.u(ball.vertex(i)), ua, ub);
    }
  }
  check.passed = check.max_residual <= tol;
  return check;
}

TIFixedPoints solve_ti(const ModelParams& params) {
  TIFixedPoints out;
  out.alpha = 2.0 * params.theta1() / params.theta() - params.theta1() * params.theta1();
  if (auto u3 = upper_unit_product_root(1.0 + out.alpha)) {
    out.u3 = *u3;
    out.u1 = 1.0 / *u3;
  }
  return out;
}

PeriodicFixedPoints solve_periodic(const ModelParams& params) {
  const double t = params.theta();
  const double t1 = params.theta1();
  const double a = t1 * t1 * t;
  PeriodicFixedPoints out;
  out.c2 = a * (a + 2.0 * t1 + t);
  out.c1 = a * a + 4.0 * t1 * t1 * t1 * t + 4.0 * t1 * t1 - t * t;
  if (auto v = upper_unit_product_root(out.c1 / out.c2)) {
    out.v_star = *v;
    out.u_star = 1.0 / *v;
  }
  return out;
}

std::string to_string(Region r) {
  switch (r) {
    case Region::ThreeTranslationInvariant:
      return "three_translation_invariant";
    case Region::ThreePeriodic:
      return "three_periodic";
    case Region::Unique:
      return "unique";
  }
  return "unknown";
}

double ti_threshold(double theta1) {
  return theta1 > kSqrt3 ? 2.0 * theta1 / (theta1 * theta1 - 3.0)
                         : std::numeric_limits<double>::infinity();
}

double periodic_threshold(double theta1) {
  return theta1 < 1.0 / kSqrt3 ? 2.0 * theta1 / (1.0 - 3.0 * theta1 * theta1)
                               : std::numeric_limits<double>::infinity();
}

RegionClass classify_region(const ModelParams& params) {
  const double t = params.theta();
  const double t1 = params.theta1();

  const double ti_margin =
      t1 > kSqrt3 ? std::min(t1 - kSqrt3, t - ti_threshold(t1)) : t1 - kSqrt3;
  const double p_margin = t1 < 1.0 / kSqrt3 ? std::min(1.0 / kSqrt3 - t1, t - periodic_threshold(t1))
                                            : 1.0 / kSqrt3 - t1;

  RegionClass rc;
  if (ti_margin > 0.0) {
    rc.tag = Region::ThreeTranslationInvariant;
    rc.boundary_distance = ti_margin;
  } else if (p_margin > 0.0) {
    rc.tag = Region::ThreePeriodic;
    rc.boundary_distance = p_margin;
  } else {
    rc.tag = Region::Unique;
    rc.boundary_distance = std::max(ti_margin, p_margin);
  }
  return rc;
}

PeriodicMeasureSet classify_periodic_measures(const SubgroupDescriptor& subgroup,
                                              const ModelParams& params) {
  PeriodicMeasureSet out;
  const TIFixedPoints ti = solve_ti(params);
  if (ti.has_three()) {
    out.measures.emplace_back("mu1", FieldAssignment::constant_u(*ti.u1));
    out.measures.emplace_back("mu2", FieldAssignment::constant(0.0));
    out.measures.emplace_back("mu3", FieldAssignment::constant_u(*ti.u3));
  } else {
    out.measures.emplace_back("mu2", FieldAssignment::constant(0.0));
  }

  if (std::abs(params.theta1() - 1.0) <= 1e-14) {
    out.kernel_non_injective = true;
    out.note = "kernel non-injective; periodic classification not asserted";
    return out;
  }

  const bool periodic_region = classify_region(params).tag == Region::ThreePeriodic;
  if (!subgroup.has_generator() && periodic_region) {
    const PeriodicFixedPoints pp = solve_periodic(params);
    if (pp.has_pair()) {
      out.measures.emplace_back("mu12", FieldAssignment::parity_u(*pp.u_star, *pp.v_star));
      out.measures.emplace_back("mu21", FieldAssignment::parity_u(*pp.v_star, *pp.u_star));
    }
  } else if (subgroup.has_generator()) {
    out.note = "I(H0) nonempty: every H0-periodic measure is translation-invariant";
  }
  return out;
}

}  // namespace cayley_ising
