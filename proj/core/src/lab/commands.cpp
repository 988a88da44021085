#include "coslab/lab/commands.hpp"

#include "coslab/chowla.hpp"
#include "coslab/dichotomy.hpp"
#include "coslab/error.hpp"

namespace coslab::lab {

Json cmd_transform(const std::string& group, const std::string& set, const Tolerances& tol) {
  const Group g = parse_group(group);
  const ElementSet a = parse_set(g, set);
  if (a.empty()) throw Error(ErrorCode::kEmptySet, "transform needs a nonempty set");
  const DensityFunction f = indicator(g, a);
  const DensityFunction t = dft(f);
  Json table = Json::array();
  for (Index gamma = 0; gamma < g.order(); ++gamma) {
    table.push_back({{"character", element_to_json(g, gamma)}, {"re", t[gamma].real()}, {"im", t[gamma].imag()}});
  }
  Json out = {{"group", g.spec()},
              {"set", set_to_json(g, a)},
              {"transform", std::move(table)},
              {"algebra_norm", algebra_norm(f)},
              {"symmetric", is_symmetric(g, a)}};
  if (is_symmetric(g, a)) {
    const MgResult m = mg(g, a, tol);
    out["m_g"] = m.value;
    out["witness"] = element_to_json(g, m.witness);
  } else {
    out["m_g"] = nullptr;
  }
  return out;
}

Json cmd_mg(const std::string& group, const std::string& set, const Tolerances& tol) {
  const Group g = parse_group(group);
  const ElementSet a = parse_set(g, set);
  const MgResult m = mg(g, a, tol);
  Json out = chowla_to_json(g, m, nearest_subgroup(g, a));
  out["group"] = g.spec();
  out["set"] = set_to_json(g, a);
  out["max_imag"] = m.max_imag;
  return out;
}

Json cmd_spec(const std::string& group, const std::string& set, double epsilon, const Tolerances& tol) {
  const Group g = parse_group(group);
  const ElementSet a = parse_set(g, set);
  const Spectrum s = spectrum(g, a, epsilon, tol);
  return {{"group", g.spec()},
          {"epsilon", s.epsilon},
          {"source_size", s.source_size},
          {"characters", set_to_json(g, s.characters)},
          {"is_subgroup", is_subgroup(g, s.characters)}};
}

Json cmd_nearest(const std::string& group, const std::string& set, std::size_t m) {
  const Group g = parse_group(group);
  const ElementSet a = parse_set(g, set);
  Json out = m == 1 ? structure_distance_to_json(g, nearest_subgroup(g, a))
                    : structure_distance_to_json(g, nearest_subgroup_union(g, a, m));
  out["group"] = g.spec();
  out["m"] = m;
  return out;
}

Json cmd_dichotomy(const std::string& group, const std::string& set, double k, const Tolerances& tol) {
  const Group g = parse_group(group);
  const ElementSet a = parse_set(g, set);
  Json out = outcome_to_json(g, structure_or_witness(g, a, k, tol));
  out["group"] = g.spec();
  out["set"] = set_to_json(g, a);
  return out;
}

}  // namespace coslab::lab
