#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coslab/group.hpp"
#include "coslab/harmonic.hpp"
#include "coslab/subgroup.hpp"
#include "coslab/tolerance.hpp"

namespace coslab {

enum class BooleanNorm { kL1, kLinf };

std::string_view to_string(BooleanNorm p);

struct AlmostBooleanCertificate {
  BooleanNorm p = BooleanNorm::kL1;
  ElementSet best_boolean;  // {x : f(x) > 1/2}
  double deviation = 0.0;   // ||f - 1_best||_p
  double norm = 0.0;        // ||f||_p
  double epsilon = 0.0;     // deviation / norm, 0 when f = 0

  // deviation <= eps ||f||_p up to `slack`.
  bool holds_for(double eps, double slack = 1e-9) const { return deviation <= eps * norm + slack; }
};

// The infimum over boolean functions is attained by rounding each value to the
// nearer of 0 and 1, for both norms. Throws kNotReal.
AlmostBooleanCertificate almost_boolean_check(const DensityFunction& f, BooleanNorm p,
                                              const Tolerances& tol = {});

enum class OutcomeTag { kStructure, kWitness, kTrichotomy2, kTrichotomy3 };

std::string_view to_string(OutcomeTag tag);

struct StructureCertificate {
  Subgroup subgroup;
  std::optional<double> distance;        // ||f - 1_H||_1, exact
  std::optional<double> certified_bound;  // what the argument guarantees for it
  bool dual = false;                     // subgroup of the dual group
};

struct WitnessCertificate {
  Index character = 0;
  double certified = 0.0;  // the branch's guaranteed upper bound
  double achieved = 0.0;   // the coefficient at `character`
};

struct DichotomyOutcome {
  OutcomeTag tag = OutcomeTag::kStructure;
  std::optional<StructureCertificate> structure;
  std::optional<WitnessCertificate> witness;
  // Trichotomy3: the moderate character, with provenance (gamma', gamma'').
  std::optional<Index> character;
  // (x, y) with x + y outside H, or (gamma', gamma'').
  std::vector<Index> provenance;
  std::map<std::string, bool> hypothesis_flags;
  std::vector<std::string> branch_trace;
  std::map<std::string, double> quantities;
  bool verified = false;
};

// Recomputes the outcome's claims from f with the naive transform and direct
// sums. Sets and returns `outcome.verified`.
bool verify_outcome(const DensityFunction& f, DichotomyOutcome& outcome, const Tolerances& tol = {});

// Single coefficient by direct summation.
double naive_coefficient(const DensityFunction& f, Index gamma);

DichotomyOutcome trivial_witness_l1(const DensityFunction& f, const Subgroup& v, double epsilon,
                                    const Tolerances& tol = {});
DichotomyOutcome trivial_witness_linf(const DensityFunction& f, const Subgroup& v, double epsilon,
                                      const Tolerances& tol = {});

DichotomyOutcome spec_trichotomy(const Group& g, const ElementSet& a, double epsilon, const Tolerances& tol = {});

struct HeartReport {
  Index character = 0;
  double coefficient = 0.0;
  bool hypothesis_holds = false;  // 0 <= hat 1_A(gamma) <= |A|/32
  double lhs = 0.0;               // M_G(A)
  double rhs = 0.0;
  bool verified = false;          // hypothesis => lhs >= rhs

  // Intermediate claim for r = 1..claim_r: sup|f^(r) - hat 1_A^(r)| against
  // r M ||1_A||^(r-1), f = max(hat 1_A, 0).
  int claim_r = 0;
  std::vector<double> claim_observed;
  std::vector<double> claim_bound;
  bool claim_holds = true;
};

struct HeartOptions {
  bool check_claim = true;
  // Upper limit on r for the claim; 2 ceil(1/alpha) when 0.
  int claim_r_limit = 0;
};

HeartReport heart_check(const Group& g, const ElementSet& a, Index gamma, const HeartOptions& options = {},
                        const Tolerances& tol = {});

struct CalculationReport {
  double lhs = 0.0;  // ||1_A - 1_A * mu_V||_1
  double rhs = 0.0;  // 2 <1_A, 1_A - 1_A * mu_V>
  bool holds = false;
};

CalculationReport calculation_identity_check(const Group& g, const ElementSet& a, const Subgroup& v,
                                             const Tolerances& tol = {});

DichotomyOutcome structure_or_witness(const Group& g, const ElementSet& a, double k, const Tolerances& tol = {});

}  // namespace coslab
