#pragma once

#include "logpar/monoid.hpp"
#include "logpar/weights.hpp"

#include <initializer_list>
#include <memory>

namespace fixtures {

using namespace logpar;

inline std::shared_ptr<const ToricMonoid> monoid_n() {
  static const auto p = std::make_shared<const ToricMonoid>(ToricMonoid::make({{1}}));
  return p;
}
inline std::shared_ptr<const ToricMonoid> monoid_n2() {
  static const auto p = std::make_shared<const ToricMonoid>(ToricMonoid::make({{1, 0}, {0, 1}}));
  return p;
}
inline std::shared_ptr<const ToricMonoid> monoid_a1() {
  static const auto p = std::make_shared<const ToricMonoid>(ToricMonoid::make({{2, 0}, {1, 1}, {0, 2}}));
  return p;
}

inline Weight wt(std::initializer_list<const char*> coords) {
  Weight w;
  for (const char* c : coords) w.coords.push_back(parse_weight_scalar(c, sqrt2_ground()));
  return w;
}

inline WeightMonoid sat_alpha(std::shared_ptr<const ToricMonoid> p, std::initializer_list<const char*> g) {
  return WeightMonoid::saturated(std::move(p), {wt(g)});
}

}  // namespace fixtures
