#pragma once

#include <optional>

#include "cayley_ising/factor_type.hpp"
#include "cayley_ising/gibbs.hpp"
#include "cayley_ising/recursion.hpp"
#include "emit.hpp"

namespace cayley_ising::cli {

template <class T>
Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json params_json(const ModelParams& p);
Json region_row(const ModelParams& p);
Json classification_json(const FactorClassification& c);
Json target_json(const TargetProbability& t);
Json zero_temperature_row(const ZeroTemperatureRow& r);
Json zero_ternary_json(const ZeroTernaryExampleReport& r);
Json equal_coupling_json(const EqualCouplingExampleReport& r);

}  // namespace cayley_ising::cli
