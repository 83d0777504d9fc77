#pragma once

#include <string>
#include <vector>

#include "arco/core.hpp"

namespace arco {

/// Dolan-More style performance profile. `metric` is problems-by-solvers
/// (wall time or prox count); `failed` marks runs that never reached the
/// target. Failed runs get ratio +infinity and never enter a curve; rows
/// where every solver failed are dropped with a warning.
struct ProfileCurves {
  std::vector<double> tau;            // sorted ratio grid, starting at 1
  Matrix fraction;                    // |tau| x solvers, cumulative fractions
  std::vector<std::string> warnings;  // dropped problems etc.
  int problems_used = 0;
};

ProfileCurves performance_profile(const Matrix& metric,
                                  const std::vector<std::vector<bool>>& failed);

void write_profile_csv(const ProfileCurves& curves,
                       const std::vector<std::string>& solver_names,
                       const std::string& path);

}  // namespace arco
