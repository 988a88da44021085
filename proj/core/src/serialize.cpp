#include "coslab/serialize.hpp"

#include "coslab/error.hpp"

namespace coslab {

Json element_to_json(const Group& g, Index x) { return Json(g.coords_of(x)); }

Json set_to_json(const Group& g, const ElementSet& set) {
  Json out = Json::array();
  for (Index x : set) out.push_back(element_to_json(g, x));
  return out;
}

Json density_to_json(const DensityFunction& f) {
  Json values = Json::array();
  for (const auto& v : f.values()) values.push_back({v.real(), v.imag()});
  return {{"group", f.group().spec()}, {"side", std::string(to_string(f.side()))}, {"values", std::move(values)}};
}

DensityFunction density_from_json(const Json& j) {
  try {
    const Group g = parse_group(j.at("group").get<std::string>());
    const std::string side_name = j.at("side").get<std::string>();
    if (side_name != "primal" && side_name != "dual") {
      throw Error(ErrorCode::kParse, "unknown side '" + side_name + "'");
    }
    const Side side = side_name == "primal" ? Side::kPrimal : Side::kDual;
    std::vector<DensityFunction::value_type> values;
    for (const auto& v : j.at("values")) values.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    return DensityFunction(g, side, std::move(values));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed density JSON: ") + e.what());
  }
}

Json structure_distance_to_json(const Group& g, const StructureDistance& d) {
  Json subgroups = Json::array();
  for (const auto& h : d.subgroups) subgroups.push_back(set_to_json(g, h.elements()));
  Json out = {{"distance", d.distance}, {"heuristic", d.heuristic}, {"searched", d.searched}};
  if (d.subgroups.size() == 1) {
    out["subgroup"] = subgroups.front();
  } else {
    out["subgroups"] = std::move(subgroups);
  }
  return out;
}

Json chowla_to_json(const Group& g, const MgResult& m, const StructureDistance& nearest) {
  return {{"m_g", m.value},
          {"witness", element_to_json(g, m.witness)},
          {"nearest", structure_distance_to_json(g, nearest)}};
}

Json outcome_to_json(const Group& g, const DichotomyOutcome& outcome) {
  Json out = {{"tag", std::string(to_string(outcome.tag))},
              {"branch_trace", outcome.branch_trace},
              {"hypothesis_flags", outcome.hypothesis_flags},
              {"quantities", outcome.quantities},
              {"verified", outcome.verified}};
  if (outcome.structure) {
    const auto& s = *outcome.structure;
    Json st = {{"subgroup", set_to_json(g, s.subgroup.elements())}, {"dual", s.dual}};
    st["distance"] = s.distance ? Json(*s.distance) : Json(nullptr);
    if (s.certified_bound) st["certified_bound"] = *s.certified_bound;
    out["structure"] = std::move(st);
  }
  if (outcome.witness) {
    out["witness"] = {{"character", element_to_json(g, outcome.witness->character)},
                      {"certified", outcome.witness->certified},
                      {"achieved", outcome.witness->achieved}};
  }
  if (outcome.character) out["character"] = element_to_json(g, *outcome.character);
  if (!outcome.provenance.empty()) out["provenance"] = set_to_json(g, outcome.provenance);
  return out;
}

Json heart_to_json(const Group& g, const HeartReport& r) {
  return {{"character", element_to_json(g, r.character)},
          {"coefficient", r.coefficient},
          {"hypothesis_holds", r.hypothesis_holds},
          {"lhs", r.lhs},
          {"rhs", r.rhs},
          {"verified", r.verified},
          {"claim_r", r.claim_r},
          {"claim_holds", r.claim_holds}};
}

Json progression_to_json(const CosetProgressionParams& p) {
  const Group& g = p.h.parent();
  return {{"group", g.spec()}, {"H", set_to_json(g, p.h.elements())}, {"x", set_to_json(g, p.x)}, {"L", p.l}};
}

CosetProgressionParams progression_from_json(const Json& j) {
  try {
    const Group g = parse_group(j.at("group").get<std::string>());
    auto read_elements = [&](const Json& list) {
      std::vector<Index> out;
      for (const auto& e : list) out.push_back(g.index_of(e.get<std::vector<std::int64_t>>()));
      return out;
    };
    const auto gens = read_elements(j.at("H"));
    return CosetProgressionParams{Subgroup::generated_by(g, gens), read_elements(j.at("x")),
                                  j.at("L").get<std::vector<std::int64_t>>()};
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed progression JSON: ") + e.what());
  }
}

Json axioms_to_json(const AxiomReport& r) {
  Json axioms = Json::object();
  for (const auto& a : r.axioms) axioms[a.name] = {{"pass", a.passed}, {"witness", a.witness}};
  return {{"axioms", std::move(axioms)},
          {"nominal_dimension", r.nominal_dimension},
          {"empirical_dimension", r.empirical_dimension},
          {"pass", r.all_passed()}};
}

Json regularity_to_json(const RegularityReport& r) {
  return {{"lambda", r.lambda},         {"dimension", r.dimension}, {"etas", r.etas},
          {"ratios", r.ratios},         {"passes", r.passes},       {"worst_excess", r.worst_excess}};
}

Json continuity_to_json(const Group& g, const ContinuityReport& r) {
  return {{"eta", r.eta},
          {"dimension", r.dimension},
          {"bound", r.bound},
          {"max_observed", r.max_observed},
          {"argmax", element_to_json(g, r.argmax)},
          {"checked", r.checked},
          {"pass", r.holds}};
}

Json level_set_to_json(const LevelSetReport& r) {
  Json out = {{"epsilon", r.epsilon},
              {"dimension", r.dimension},
              {"values_in_range", r.values_in_range},
              {"epsilon_in_range", r.epsilon_in_range},
              {"almost_boolean", r.almost_boolean},
              {"hypothesis_holds", r.hypothesis_holds},
              {"level_set_size", r.level_set.size()},
              {"constant_on_cosets", r.constant_on_cosets},
              {"pass", r.holds}};
  if (r.v) out["v_order"] = r.v->order();
  return out;
}

}  // namespace coslab
