#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "nullcover/arith.hpp"
#include "nullcover/cover.hpp"
#include "nullcover/ek.hpp"
#include "nullcover/error.hpp"
#include "nullcover/nullset_spec.hpp"
#include "nullcover/plan.hpp"
#include "nullcover/slalom.hpp"
#include "nullcover/structure.hpp"

// JSON forms of every artifact the CLI reads or writes. Integers above 2^53
// are written as decimal strings; readers accept either form.

namespace nullcover::json_io {

using nlohmann::json;

inline constexpr std::uint64_t kMaxSafeInteger = (std::uint64_t{1} << 53);

inline json uint_to_json(std::uint64_t v) { return v <= kMaxSafeInteger ? json(v) : json(std::to_string(v)); }

inline std::uint64_t uint_from_json(const json& j, const std::string& what) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer()) {
    const auto v = j.get<std::int64_t>();
    if (v < 0) fail_schema("SchemaViolation", what + " must be nonnegative");
    return static_cast<std::uint64_t>(v);
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s.empty() || s.size() > 20 || s.find_first_not_of("0123456789") != std::string::npos) {
      fail_schema("SchemaViolation", what + " is not a decimal integer string");
    }
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      fail_schema("SchemaViolation", what + " does not fit in 64 bits");
    }
  }
  fail_schema("SchemaViolation", what + " must be an integer");
}

inline const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail_schema("SchemaViolation", where + " must be an object");
  auto it = j.find(key);
  if (it == j.end()) fail_schema("SchemaViolation", where + " is missing \"" + key + "\"");
  return *it;
}

inline json uints_to_json(const std::vector<std::uint64_t>& xs) {
  json out = json::array();
  for (auto x : xs) out.push_back(uint_to_json(x));
  return out;
}

inline std::vector<std::uint64_t> uints_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) fail_schema("SchemaViolation", what + " must be an array");
  std::vector<std::uint64_t> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(uint_from_json(x, what));
  return out;
}

inline json nested_to_json(const std::vector<std::vector<std::uint64_t>>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(uints_to_json(x));
  return out;
}

inline std::vector<std::vector<std::uint64_t>> nested_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) fail_schema("SchemaViolation", what + " must be an array of arrays");
  std::vector<std::vector<std::uint64_t>> out;
  for (const auto& x : j) out.push_back(uints_from_json(x, what));
  return out;
}

// -- exact numbers --------------------------------------------------------------

inline json rational_to_json(const Rational& r) {
  return {{"num", boost::multiprecision::numerator(r).str()}, {"den", boost::multiprecision::denominator(r).str()}};
}

inline BigInt bigint_from_json(const json& j, const std::string& what) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
  if (!j.is_string()) fail_schema("SchemaViolation", what + " must be an integer or decimal string");
  const auto& s = j.get_ref<const std::string&>();
  const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos) {
    fail_schema("SchemaViolation", what + " is not a decimal integer string");
  }
  return BigInt(s);
}

inline Rational rational_from_json(const json& j) {
  const BigInt num = bigint_from_json(field(j, "num", "rational"), "num");
  const BigInt den = bigint_from_json(field(j, "den", "rational"), "den");
  if (den == 0) fail_schema("SchemaViolation", "rational denominator is zero");
  return Rational(num, den);
}

// -- plans, nullsets, slaloms, certificates -------------------------------------

inline json to_json(const BlockPlan& plan) {
  json j = {{"mode", to_string(plan.mode)},
            {"boundaries", uints_to_json(plan.boundaries)},
            {"block_orders", uints_to_json(plan.block_orders)}};
  if (plan.mode == PlanMode::padic) {
    j["p"] = uint_to_json(plan.p);
  } else {
    j["orders"] = uints_to_json(plan.orders);
  }
  return j;
}

inline BlockPlan plan_from_json(const json& j) {
  BlockPlan plan;
  const auto& mode = field(j, "mode", "plan");
  if (mode == "product") {
    plan.mode = PlanMode::product;
    plan.orders = uints_from_json(field(j, "orders", "plan"), "orders");
  } else if (mode == "padic") {
    plan.mode = PlanMode::padic;
    plan.p = uint_from_json(field(j, "p", "plan"), "p");
  } else {
    fail_schema("SchemaViolation", "plan mode must be \"product\" or \"padic\"");
  }
  plan.boundaries = uints_from_json(field(j, "boundaries", "plan"), "boundaries");
  if (plan.boundaries.empty()) fail_schema("SchemaViolation", "boundaries must not be empty");
  if (auto it = j.find("block_orders"); it != j.end()) {
    plan.block_orders = uints_from_json(*it, "block_orders");
  } else {
    for (std::size_t n = 0; n + 1 < plan.boundaries.size(); ++n) {
      if (plan.boundaries[n + 1] <= plan.boundaries[n]) fail_precondition("InvalidPlan", "boundaries must increase");
      if (plan.mode == PlanMode::product && plan.boundaries[n + 1] > plan.orders.size()) {
        fail_precondition("InvalidPlan", "boundaries run past the coordinate orders");
      }
      plan.block_orders.push_back(plan.mode == PlanMode::product ? plan.product_block(n).order()
                                                                 : plan.padic_block(n).order());
    }
  }
  validate_plan(plan);
  return plan;
}

inline json to_json(const NullsetSpec& spec) { return {{"plan", to_json(spec.plan)}, {"A", nested_to_json(spec.blocks)}}; }

inline NullsetSpec nullset_from_json(const json& j) {
  NullsetSpec spec{plan_from_json(field(j, "plan", "nullset")), nested_from_json(field(j, "A", "nullset"), "A")};
  validate_nullset(spec);
  return spec;
}

inline json width_to_json(const Width& w) {
  if (w.tag == Width::Tag::table) return uints_to_json(w.table);
  return to_string(w.tag);
}

inline Width width_from_json(const json& j) {
  if (j.is_array()) return Width::from_table(uints_from_json(j, "width"));
  if (j == "n+2") return Width::linear();
  if (j == "floor((n+2)/2)") return Width::half();
  fail_schema("SchemaViolation", "width must be \"n+2\", \"floor((n+2)/2)\" or an array of integers");
}

inline json to_json(const Slalom& s) {
  return {{"width", width_to_json(s.width)}, {"domains", uints_to_json(s.domains)}, {"sets", nested_to_json(s.sets)}};
}

/// `domains` may be omitted when a plan supplies them.
inline Slalom slalom_from_json(const json& j, const BlockPlan* plan = nullptr) {
  Slalom s;
  s.width = width_from_json(field(j, "width", "slalom"));
  s.sets = nested_from_json(field(j, "sets", "slalom"), "sets");
  if (auto it = j.find("domains"); it != j.end()) {
    s.domains = uints_from_json(*it, "domains");
    if (plan && s.domains != plan->block_orders) fail_precondition("DomainMismatch", "slalom domains differ from the plan");
  } else if (plan) {
    s.domains = plan->block_orders;
  } else {
    fail_schema("SchemaViolation", "slalom is missing \"domains\"");
  }
  normalize_slalom(s);
  return s;
}

inline json to_json(const CoverCertificate& c) {
  json j = {{"mode", to_string(c.mode)},
            {"translate", uints_to_json(c.translate)},
            {"block_translators", uints_to_json(c.block_translators)},
            {"verified", c.verified},
            {"checked_count", uint_to_json(c.checked_count)}};
  if (c.mode == PlanMode::padic) j["carried"] = uint_to_json(c.carried);
  return j;
}

inline CoverCertificate certificate_from_json(const json& j) {
  CoverCertificate c;
  const auto& mode = field(j, "mode", "certificate");
  if (mode == "product") {
    c.mode = PlanMode::product;
  } else if (mode == "padic") {
    c.mode = PlanMode::padic;
  } else {
    fail_schema("SchemaViolation", "certificate mode must be \"product\" or \"padic\"");
  }
  c.translate = uints_from_json(field(j, "translate", "certificate"), "translate");
  if (auto it = j.find("block_translators"); it != j.end()) c.block_translators = uints_from_json(*it, "block_translators");
  if (auto it = j.find("verified"); it != j.end()) {
    if (!it->is_boolean()) fail_schema("SchemaViolation", "verified must be a boolean");
    c.verified = it->get<bool>();
  }
  if (auto it = j.find("checked_count"); it != j.end()) c.checked_count = uint_from_json(*it, "checked_count");
  if (auto it = j.find("carried"); it != j.end()) c.carried = uint_from_json(*it, "carried");
  return c;
}

inline json to_json(const VerifyResult& r) {
  json j = {{"verified", r.ok},
            {"checked_count", uint_to_json(r.checked_count)},
            {"counterexample", r.counterexample ? uints_to_json(*r.counterexample) : json(nullptr)}};
  return j;
}

// -- factorial digits -------------------------------------------------------------

inline json to_json(const FactorialDigits& f) { return uints_to_json(f.digits); }

// -- descriptors ------------------------------------------------------------------

inline json to_json(const Descriptor& d) {
  using K = Descriptor::Kind;
  json j = {{"type", kind_name(d.kind)}};
  switch (d.kind) {
    case K::Cyclic: j["m"] = uint_to_json(d.param); break;
    case K::Quasicyclic:
    case K::Padic: j["p"] = uint_to_json(d.param); break;
    case K::RPower: j["n"] = uint_to_json(d.param); break;
    case K::FiniteSum:
    case K::SumOmega:
    case K::ProdOmega: {
      json parts = json::array();
      for (const auto& p : d.parts) parts.push_back(to_json(p));
      j["parts"] = std::move(parts);
      break;
    }
    default: break;
  }
  return j;
}

inline Descriptor descriptor_from_json(const json& j) {
  using K = Descriptor::Kind;
  const auto& type = field(j, "type", "descriptor");
  if (!type.is_string()) fail_schema("SchemaViolation", "descriptor type must be a string");
  const auto& t = type.get_ref<const std::string&>();
  static const std::pair<const char*, K> kinds[] = {
      {"Int", K::Int},         {"Reals", K::Reals},         {"Torus", K::Torus},
      {"Cyclic", K::Cyclic},   {"Quasicyclic", K::Quasicyclic}, {"Padic", K::Padic},
      {"RPower", K::RPower},   {"FiniteSum", K::FiniteSum}, {"SumOmega", K::SumOmega},
      {"ProdOmega", K::ProdOmega}};
  Descriptor d;
  bool known = false;
  for (const auto& [name, kind] : kinds) {
    if (t == name) {
      d.kind = kind;
      known = true;
    }
  }
  if (!known) fail_schema("SchemaViolation", "unknown descriptor type \"" + t + "\"");
  switch (d.kind) {
    case K::Cyclic: d.param = uint_from_json(field(j, "m", t), "m"); break;
    case K::Quasicyclic:
    case K::Padic: d.param = uint_from_json(field(j, "p", t), "p"); break;
    case K::RPower: d.param = uint_from_json(field(j, "n", t), "n"); break;
    case K::FiniteSum:
    case K::SumOmega:
    case K::ProdOmega: {
      const auto& parts = field(j, "parts", t);
      if (!parts.is_array()) fail_schema("SchemaViolation", t + " parts must be an array");
      for (const auto& p : parts) d.parts.push_back(descriptor_from_json(p));
      break;
    }
    default: break;
  }
  validate_descriptor(d);
  return d;
}

inline json to_json(const TrichotomyVerdict& v) {
  json j = {{"case", v.which}, {"witness", to_json(v.witness)}};
  if (v.which == 3) j["p"] = uint_to_json(v.p);
  return j;
}

inline json to_json(const ReductionTrace& t) {
  json steps = json::array();
  for (const auto& s : t.steps) {
    steps.push_back({{"rule", s.rule},
                     {"before", to_json(s.before)},
                     {"after", to_json(s.after)},
                     {"justification", s.justification}});
  }
  return {{"verdict", to_string(t.verdict)}, {"trace", std::move(steps)}, {"side_conditions", t.side_conditions}};
}

inline json rule_registry_json() {
  json out = json::array();
  for (const auto& r : rule_registry()) out.push_back({{"rule", r.tag}, {"statement", r.statement}, {"terminal", r.terminal}});
  return out;
}

inline json to_json(const GroupElement& g) { return uints_to_json(g.residues); }

}  // namespace nullcover::json_io
