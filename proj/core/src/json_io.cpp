#include "advicebench/json_io.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "advicebench/errors.hpp"

namespace advicebench {

namespace {

using nlohmann::json;

json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ContractError(std::string("malformed JSON: ") + e.what());
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ContractError(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

template <typename T>
T get_as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ContractError(std::string("bad value for ") + what);
  }
}

double number_or_string(const json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) {
      throw ContractError(std::string("bad number for ") + what + ": " + s);
    }
    return v;
  }
  throw ContractError(std::string("bad value for ") + what);
}

// Shortest decimal that reads back to the same double.
json exact_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

Payload payload_from(const json& p, Problem problem) {
  switch (problem) {
    case Problem::kMinAsg:
      return AsgBit{get_as<int>(field(p, "bit"), "bit") != 0};
    case Problem::kVertexCover:
    case Problem::kDominatingSet:
    case Problem::kCycleFinding:
    case Problem::kIndependentSet:
    case Problem::kClique:
      return VertexArrival{
          get_as<std::vector<int>>(field(p, "neighbors"), "neighbors")};
    case Problem::kMatching:
      return Edge{get_as<int>(field(p, "u"), "u"), get_as<int>(field(p, "v"), "v")};
    case Problem::kDisjointPath:
      return Subpath{get_as<int>(field(p, "start"), "start"),
                     get_as<int>(field(p, "end"), "end")};
    case Problem::kSetCover:
      return Subset{get_as<std::vector<int>>(field(p, "elements"), "elements")};
  }
  throw ContractError("unknown problem");
}

json payload_to(const Payload& payload) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, AsgBit>) {
          return {{"bit", v.value ? 1 : 0}};
        } else if constexpr (std::is_same_v<T, VertexArrival>) {
          return {{"neighbors", v.earlier_neighbors}};
        } else if constexpr (std::is_same_v<T, Edge>) {
          return {{"u", v.u}, {"v", v.v}};
        } else if constexpr (std::is_same_v<T, Subpath>) {
          return {{"start", v.start}, {"end", v.end}};
        } else {
          return {{"elements", v.elements}};
        }
      },
      payload);
}

}  // namespace

Instance instance_from_json(std::string_view text) {
  const json doc = parse_document(text);
  Instance inst;
  inst.problem = parse_problem(get_as<std::string>(field(doc, "problem"), "problem"));
  if (doc.contains("universe_size")) {
    inst.universe_size = get_as<int>(doc.at("universe_size"), "universe_size");
  }
  if (doc.contains("path_length")) {
    inst.path_length = get_as<int>(doc.at("path_length"), "path_length");
  }
  const json& requests = field(doc, "requests");
  if (!requests.is_array()) throw ContractError("requests must be an array");
  for (const auto& r : requests) {
    Request req;
    req.payload = payload_from(field(r, "payload"), inst.problem);
    req.weight = r.contains("weight") ? number_or_string(r.at("weight"), "weight") : 1.0;
    inst.requests.push_back(std::move(req));
  }
  inst.validate();
  return inst;
}

std::string instance_to_json(const Instance& instance) {
  json doc;
  doc["problem"] = std::string(to_string(instance.problem));
  if (instance.problem == Problem::kSetCover) doc["universe_size"] = instance.universe_size;
  if (instance.problem == Problem::kDisjointPath) doc["path_length"] = instance.path_length;
  doc["requests"] = json::array();
  for (const auto& r : instance.requests) {
    doc["requests"].push_back({{"payload", payload_to(r.payload)},
                               {"weight", exact_number(r.weight)}});
  }
  return doc.dump();
}

SchedulingInstance scheduling_from_json(std::string_view text) {
  const json doc = parse_document(text);
  SchedulingInstance s;
  s.machines = get_as<int>(field(doc, "machines"), "machines");
  if (s.machines < 1) throw ContractError("machines must be positive");
  if (doc.contains("speeds")) {
    s.speeds = get_as<std::vector<double>>(doc.at("speeds"), "speeds");
    if (static_cast<int>(s.speeds->size()) != s.machines) {
      throw ContractError("speeds must list one value per machine");
    }
  }
  for (const auto& j : field(doc, "jobs")) {
    if (j.is_array()) {
      if (s.speeds) throw ContractError("related jobs are sizes, not load rows");
      Job job{get_as<std::vector<double>>(j, "job loads")};
      if (static_cast<int>(job.loads.size()) != s.machines) {
        throw ContractError("job load row has the wrong length");
      }
      s.jobs.push_back(std::move(job));
    } else {
      const double size = number_or_string(j, "job size");
      if (s.speeds) {
        s.sizes.push_back(size);
      } else {
        s.jobs.push_back(Job{std::vector<double>(s.machines, size)});
      }
    }
  }
  if (s.speeds) s.jobs = related_jobs(s.sizes, *s.speeds);

  const json& obj = field(doc, "objective");
  const auto kind = get_as<std::string>(field(obj, "kind"), "objective kind");
  const auto direction = obj.contains("direction")
                             ? get_as<std::string>(obj.at("direction"), "direction")
                             : std::string(kind == "minload" ? "max" : "min");
  if (direction != "min" && direction != "max") {
    throw ContractError("direction must be min or max");
  }
  if (kind == "lp") {
    const double p = obj.contains("p") ? number_or_string(obj.at("p"), "p")
                                       : std::numeric_limits<double>::infinity();
    s.objective = Objective::lp(p);
  } else if (kind == "minload") {
    s.objective = Objective::min_load();
  } else {
    throw ContractError("objective kind must be lp or minload");
  }
  s.objective.goal = direction == "min" ? Goal::kMinimize : Goal::kMaximize;
  return s;
}

std::string scheduling_to_json(const SchedulingInstance& s) {
  json doc;
  doc["machines"] = s.machines;
  doc["jobs"] = json::array();
  if (s.speeds) {
    doc["speeds"] = *s.speeds;
    for (double p : s.sizes) doc["jobs"].push_back(p);
  } else {
    for (const auto& job : s.jobs) doc["jobs"].push_back(job.loads);
  }
  json obj;
  if (s.objective.kind == ObjectiveKind::kMinLoad) {
    obj["kind"] = "minload";
  } else {
    obj["kind"] = "lp";
    obj["p"] = exact_number(s.objective.p);
  }
  obj["direction"] = s.objective.minimize() ? "min" : "max";
  doc["objective"] = obj;
  return doc.dump();
}

std::string family_to_json(const CoveringFamily& family) {
  json doc;
  doc["n"] = family.n;
  doc["c"] = to_string(family.c);
  doc["direction"] = std::string(to_string(family.direction));
  doc["members"] = json::array();
  for (const auto& m : family.members) doc["members"].push_back(m.str());
  return doc.dump();
}

CoveringFamily family_from_json(std::string_view text) {
  const json doc = parse_document(text);
  CoveringFamily f;
  f.n = get_as<int>(field(doc, "n"), "n");
  const json& c = field(doc, "c");
  f.c = c.is_string() ? parse_rational(c.get<std::string>())
                      : parse_rational(c.dump());
  f.direction = parse_direction(get_as<std::string>(field(doc, "direction"), "direction"));
  for (const auto& m : field(doc, "members")) {
    BitString b = BitString::parse(get_as<std::string>(m, "member"));
    if (b.size() != f.n) throw ContractError("member length differs from n");
    f.members.push_back(b);
  }
  f.index_width = bits_for_count(f.members.size());
  return f;
}

std::string witness_to_json(const LowerBoundWitness& w) {
  json doc;
  doc["x"] = w.x.str();
  doc["colliding_x"] = w.colliding_x.str();
  doc["diverge_position"] = w.diverge_position;
  doc["advice_class"] = w.advice_class;
  if (w.infeasible) {
    doc["log2_ratio_lower_bound"] = "infeasible";
  } else {
    doc["log2_ratio_lower_bound"] = w.log2_ratio;
  }
  return doc.dump();
}

std::string witness_to_json(const PrefixWitness& w) {
  json doc;
  doc["shorter"] = w.shorter;
  doc["longer"] = w.longer;
  doc["erring"] = w.erring;
  doc["advice_class"] = w.advice_class;
  if (w.infeasible) {
    doc["log2_ratio_lower_bound"] = "infeasible";
  } else if (w.unbounded) {
    doc["log2_ratio_lower_bound"] = "unbounded";
  } else {
    doc["log2_ratio_lower_bound"] = w.log2_ratio;
  }
  return doc.dump();
}

std::string expectations_to_json(const StarExpectations& e,
                                 const std::optional<StarMonteCarlo>& mc) {
  json doc;
  doc["k"] = e.k;
  doc["e_opt"] = to_string(e.e_opt);
  doc["distribution"] = json::array();
  for (const auto& p : e.distribution) doc["distribution"].push_back(to_string(p));
  doc["e_det"] = json::array();
  for (const auto& d : e.e_det) doc["e_det"].push_back(to_string(d));
  doc["identities_hold"] = e.identities_hold();
  if (mc) {
    doc["monte_carlo"] = {{"samples", mc->samples},
                          {"mean_opt", mc->mean_opt},
                          {"se_opt", mc->se_opt},
                          {"mean_det", mc->mean_det},
                          {"se_det", mc->se_det}};
  }
  return doc.dump();
}

std::string report_to_json(const RunReport& r, bool include_timing) {
  json doc;
  doc["run_id"] = r.run_id;
  doc["problem"] = r.problem;
  doc["n"] = r.n;
  doc["algorithm"] = r.algorithm;
  doc["params"] = r.params;
  doc["alg_score"] = r.alg_feasible ? exact_number(r.alg_score) : json("inf");
  doc["opt_score"] = exact_number(r.opt_score);
  doc["ratio"] = exact_number(r.ratio);
  doc["additive_alpha"] = r.additive_alpha;
  doc["bits_read"] = r.bits_read;
  doc["advice_bound"] = exact_number(r.advice_bound);
  if (include_timing) doc["runtime_ms"] = r.runtime_ms;
  doc["output"] = r.output;
  doc["tape_hex"] = r.tape_hex;
  doc["violations"] = r.violations;
  return doc.dump();
}

}  // namespace advicebench
