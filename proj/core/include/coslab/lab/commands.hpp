#pragma once

#include <string>

#include "coslab/serialize.hpp"
#include "coslab/tolerance.hpp"

namespace coslab::lab {

// Single computations behind the CLI subcommands. Inputs are the textual
// group and set specs; all failures surface as coslab::Error.
Json cmd_transform(const std::string& group, const std::string& set, const Tolerances& tol = {});
Json cmd_mg(const std::string& group, const std::string& set, const Tolerances& tol = {});
Json cmd_spec(const std::string& group, const std::string& set, double epsilon, const Tolerances& tol = {});
Json cmd_nearest(const std::string& group, const std::string& set, std::size_t m);
Json cmd_dichotomy(const std::string& group, const std::string& set, double k, const Tolerances& tol = {});

}  // namespace coslab::lab
