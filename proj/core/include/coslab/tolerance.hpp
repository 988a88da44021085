#pragma once

namespace coslab {

// Single knob for every floating-point comparison in the library. Structural
// checks (membership thresholds, realness, certificate slack) use
// `structural`; spectral identities on transforms use `spectral`.
struct Tolerances {
  double structural = 1e-9;
  double spectral = 1e-8;

  // Defaults overridden by COSLAB_TOL_STRUCTURAL / COSLAB_TOL_SPECTRAL.
  static Tolerances from_env();
};

}  // namespace coslab
