#pragma once

// JSON instance files and reports. Instance coordinates are ambient (the
// coordinates the monoid generators are written in); everything inside the
// library works in the basis of P^gp chosen by ToricMonoid, so weights are
// converted on the way in and out. Exact scalars travel as strings.

#include "logpar/correspondence.hpp"
#include "logpar/errors.hpp"

#include "json.hpp"

#include <memory>
#include <optional>
#include <string>

namespace logpar {

using Json = nlohmann::json;

// Input that violates the instance schema, located by a JSON pointer.
class SchemaError : public InputError {
 public:
  SchemaError(std::string pointer, const std::string& what)
      : InputError(pointer + ": " + what), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

// The chart an instance lives on.
class Instance {
 public:
  explicit Instance(Json doc);
  static Instance from_file(const std::string& path);

  const Json& document() const { return doc_; }
  const GroundPtr& ground() const { return ground_; }
  const ToricMonoid& monoid() const { return *monoid_; }
  const WeightMonoid& lambda() const { return ring_->lambda(); }
  const RingPtr& ring() const { return ring_; }

  bool has(const std::string& key) const { return doc_.contains(key); }

  // Ambient <-> basis coordinates.
  Weight weight(const Json& coords, const std::string& pointer) const;
  Weight weight_text(const std::string& text, const std::string& pointer) const;  // "1/2,3-2a"
  Json to_json(const Weight& w) const;

  FineWeightSystem system(const Json& reps, const std::string& pointer) const;
  EquivariantModule module(const Json& payload, const std::string& pointer) const;
  ParabolicSheaf sheaf(const Json& payload, const std::string& pointer) const;
  Json to_json(const EquivariantModule& f) const;
  Json to_json(const ParabolicSheaf& e) const;

 private:
  // As weight(), rejecting weights outside Lambda^gp.
  Weight group_weight(const Json& coords, const std::string& pointer) const;

  Json doc_;
  GroundPtr ground_;
  std::shared_ptr<const ToricMonoid> monoid_;
  RingPtr ring_;
};

Json to_json(const AMatrix& m);
Json to_json(const FGModule& m);

// 64-bit FNV-1a of the text, as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

}  // namespace logpar
