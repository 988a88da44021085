#pragma once

#include <nlohmann/json.hpp>

#include "coslab/bourgain.hpp"
#include "coslab/chowla.hpp"
#include "coslab/dichotomy.hpp"
#include "coslab/harmonic.hpp"

namespace coslab {

using Json = nlohmann::json;

Json element_to_json(const Group& g, Index x);
Json set_to_json(const Group& g, const ElementSet& set);

// {group, side, values: [[re, im], ...]} in row-major order.
Json density_to_json(const DensityFunction& f);
DensityFunction density_from_json(const Json& j);

// {m_g, witness, nearest: {subgroup, distance, heuristic}}.
Json chowla_to_json(const Group& g, const MgResult& m, const StructureDistance& nearest);
Json structure_distance_to_json(const Group& g, const StructureDistance& d);

Json outcome_to_json(const Group& g, const DichotomyOutcome& outcome);
Json heart_to_json(const Group& g, const HeartReport& r);

// {group, H, x, L}; H lists generators (listing every element also works).
Json progression_to_json(const CosetProgressionParams& p);
CosetProgressionParams progression_from_json(const Json& j);

Json axioms_to_json(const AxiomReport& r);
Json regularity_to_json(const RegularityReport& r);
Json continuity_to_json(const Group& g, const ContinuityReport& r);
Json level_set_to_json(const LevelSetReport& r);

}  // namespace coslab
