#include "convert.hpp"

namespace cayley_ising::cli {

namespace {

Json fraction(const std::optional<Fraction>& f) { return f ? Json(f->to_string()) : Json(nullptr); }

}  // namespace

Json params_json(const ModelParams& p) {
  return Json{{"J", p.J()}, {"J1", p.J1()}, {"beta", p.beta()}, {"theta", p.theta()}, {"theta1", p.theta1()}};
}

Json region_row(const ModelParams& p) {
  const auto rc = classify_region(p);
  const auto ti = solve_ti(p);
  const auto pp = solve_periodic(p);
  return Json{{"theta1", p.theta1()},       {"theta", p.theta()},
              {"region", to_string(rc.tag)}, {"boundary_distance", rc.boundary_distance},
              {"u1", opt(ti.u1)},            {"u2", ti.u2},
              {"u3", opt(ti.u3)},            {"u_star", opt(pp.u_star)},
              {"v_star", opt(pp.v_star)}};
}

Json classification_json(const FactorClassification& c) {
  const auto& cm = c.commensurability;
  Json exps = Json::array();
  for (auto e : cm.exponents) exps.push_back(e);
  Json excluded = Json::array();
  for (auto e : cm.excluded) excluded.push_back(e);
  Json notes = Json::array();
  for (const auto& n : c.notes) notes.push_back(n);
  return Json{{"measure", c.measure},
              {"type", to_string(c.type)},
              {"delta", opt(c.delta)},
              {"modular_period", opt(c.modular_period)},
              {"subfactor_r", fraction(c.subfactor_r)},
              {"field_h", opt(c.field_h)},
              {"log_ratios", {c.log_ratios[0], c.log_ratios[1], c.log_ratios[2]}},
              {"ratio_active", {c.ratio_active[0], c.ratio_active[1], c.ratio_active[2]}},
              {"exponents", exps},
              {"k", opt(cm.k)},
              {"excluded", excluded},
              {"trace_like", cm.trace_like},
              {"max_relative_error", cm.max_relative_error},
              {"numerical", c.numerical},
              {"tol", c.tol},
              {"max_exponent", c.max_exponent},
              {"notes", notes}};
}

Json target_json(const TargetProbability& t) {
  return Json{{"probability", t.probability},
              {"log_probability", t.log_probability},
              {"log_complement", t.log_complement}};
}

Json zero_temperature_row(const ZeroTemperatureRow& r) {
  return Json{{"beta", r.beta},
              {"theta", r.theta},
              {"theta1", r.theta1},
              {"region", to_string(r.region)},
              {"u3", r.u3},
              {"root_marginal_u3", r.root_marginal_u3},
              {"mu3_plus", target_json(r.mu3_plus)},
              {"mu1_minus", target_json(r.mu1_minus)},
              {"mu2_root_marginal", r.mu2_root_marginal},
              {"mu12_minus_plus", target_json(r.mu12_minus_plus)},
              {"mu21_plus_minus", target_json(r.mu21_plus_minus)}};
}

Json zero_ternary_json(const ZeroTernaryExampleReport& r) {
  return Json{{"example", "3.1"},
              {"theta_tilde", r.theta_tilde},
              {"bracket", {r.bracket_lo, r.bracket_hi}},
              {"cubic_residual", r.cubic_residual},
              {"identity_residual", r.identity_residual},
              {"h1_closed_form", r.h1_closed_form},
              {"h1_half_artanh", r.h1_half_artanh},
              {"h1_residual", r.h1_residual},
              {"h1_fixed_point", r.h1_fixed_point},
              {"fixed_point_residual", r.fixed_point_residual},
              {"theta1", r.theta1},
              {"delta", r.delta},
              {"delta1", r.delta1},
              {"n_exponent", r.n_exponent},
              {"k_exponent", r.k_exponent},
              {"subfactor_r", fraction(r.r)},
              {"measure_1", classification_json(r.m1)},
              {"measure_2", classification_json(r.m2)},
              {"measure_3", classification_json(r.m3)},
              {"passed", r.passed}};
}

Json equal_coupling_json(const EqualCouplingExampleReport& r) {
  return Json{{"example", "3.2"},
              {"theta", r.theta},
              {"above_sqrt5", r.above_sqrt5},
              {"factored_residual", r.factored_residual},
              {"u1", r.u1},
              {"u3", r.u3},
              {"u3_error", r.u3_error},
              {"delta", r.delta},
              {"delta_error", r.delta_error},
              {"identity_error", r.identity_error},
              {"delta1", r.delta1},
              {"t0_delta", r.t0_delta},
              {"t0_delta1", r.t0_delta1},
              {"k_exponent", r.k_exponent},
              {"subfactor_r", fraction(r.r)},
              {"measure_1", classification_json(r.m1)},
              {"measure_2", classification_json(r.m2)},
              {"measure_3", classification_json(r.m3)},
              {"passed", r.passed}};
}

}  // namespace cayley_ising::cli
