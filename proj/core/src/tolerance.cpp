#include "coslab/tolerance.hpp"

#include <cstdlib>
#include <string>

#include "coslab/error.hpp"

namespace coslab {

namespace {

void override_from(const char* name, double& slot) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return;
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(raw, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || raw[used] != '\0' || !(value > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(name) + " must be a positive number, got '" + raw + "'");
  }
  slot = value;
}

}  // namespace

Tolerances Tolerances::from_env() {
  Tolerances tol;
  override_from("COSLAB_TOL_STRUCTURAL", tol.structural);
  override_from("COSLAB_TOL_SPECTRAL", tol.spectral);
  return tol;
}

}  // namespace coslab
