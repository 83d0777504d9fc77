#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace arco {

struct TraceRow {
  long outer_iter = 0;
  long inner_iters = 0;
  long prox_evals = 0;
  long grad_evals = 0;
  double wall_time_s = 0.0;
  double objective = 0.0;
  double gap_estimate = 0.0;  // NaN when no reference/bound is available
  double feasibility = 0.0;   // NaN for unconstrained runs
  double grad_map_norm = 0.0;
  double dual_norm = 0.0;     // NaN for unconstrained runs
};

enum class RunStatus { terminated, budget_exhausted };

/// Per-run log. prox_evals and wall_time_s are nondecreasing across rows.
/// Serialized as CSV with a fixed header; a trailing `# status: ...` comment
/// records whether the run terminated or ran out of budget.
struct RunTrace {
  std::vector<TraceRow> rows;
  RunStatus status = RunStatus::terminated;
};

extern const char* const kTraceHeader;

void write_trace_csv(const RunTrace& trace, std::ostream& out);
void write_trace_csv(const RunTrace& trace, const std::string& path);
RunTrace read_trace_csv(std::istream& in);
RunTrace read_trace_csv_file(const std::string& path);

}  // namespace arco
