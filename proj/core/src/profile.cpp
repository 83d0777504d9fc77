#include "arco/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <stdexcept>

namespace arco {

ProfileCurves performance_profile(const Matrix& metric,
                                  const std::vector<std::vector<bool>>& failed) {
  const int P = static_cast<int>(metric.rows());
  const int S = static_cast<int>(metric.cols());
  if (P == 0 || S == 0)
    throw std::invalid_argument("performance_profile: empty metric matrix");
  if (static_cast<int>(failed.size()) != P)
    throw std::invalid_argument("performance_profile: failure flags shape mismatch");

  constexpr double inf = std::numeric_limits<double>::infinity();
  ProfileCurves out;
  Matrix ratios(P, S);
  std::vector<bool> keep(P, true);

  for (int p = 0; p < P; ++p) {
    if (static_cast<int>(failed[p].size()) != S)
      throw std::invalid_argument("performance_profile: failure flags shape mismatch");
    double best = inf;
    for (int s = 0; s < S; ++s)
      if (!failed[p][s]) best = std::min(best, metric(p, s));
    if (!std::isfinite(best)) {
      keep[p] = false;
      out.warnings.push_back("problem " + std::to_string(p) +
                             " failed on every solver; excluded");
      continue;
    }
    for (int s = 0; s < S; ++s)
      ratios(p, s) = failed[p][s] ? inf : metric(p, s) / best;
  }

  std::set<double> grid{1.0};
  int used = 0;
  for (int p = 0; p < P; ++p) {
    if (!keep[p]) continue;
    ++used;
    for (int s = 0; s < S; ++s)
      if (std::isfinite(ratios(p, s))) grid.insert(ratios(p, s));
  }
  if (used == 0)
    throw std::invalid_argument("performance_profile: every problem failed everywhere");
  out.problems_used = used;

  out.tau.assign(grid.begin(), grid.end());
  out.fraction = Matrix::Zero(static_cast<int>(out.tau.size()), S);
  for (std::size_t t = 0; t < out.tau.size(); ++t) {
    for (int s = 0; s < S; ++s) {
      int count = 0;
      for (int p = 0; p < P; ++p)
        if (keep[p] && ratios(p, s) <= out.tau[t]) ++count;
      out.fraction(static_cast<int>(t), s) = static_cast<double>(count) / used;
    }
  }
  return out;
}

void write_profile_csv(const ProfileCurves& curves,
                       const std::vector<std::string>& solver_names,
                       const std::string& path) {
  if (static_cast<int>(solver_names.size()) != curves.fraction.cols())
    throw std::invalid_argument("write_profile_csv: solver name count mismatch");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write profile file: " + path);
  out << "tau";
  for (const auto& name : solver_names) out << ',' << name;
  out << '\n';
  char buf[32];
  for (std::size_t t = 0; t < curves.tau.size(); ++t) {
    std::snprintf(buf, sizeof(buf), "%.17g", curves.tau[t]);
    out << buf;
    for (int s = 0; s < curves.fraction.cols(); ++s) {
      std::snprintf(buf, sizeof(buf), "%.17g", curves.fraction(static_cast<int>(t), s));
      out << ',' << buf;
    }
    out << '\n';
  }
}

}  // namespace arco
