#include "arco/trace.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace arco {

const char* const kTraceHeader =
    "outer_iter,inner_iters,prox_evals,grad_evals,wall_time_s,objective,"
    "gap_estimate,feasibility,grad_map_norm,dual_norm";

void write_trace_csv(const RunTrace& trace, std::ostream& out) {
  out << kTraceHeader << '\n';
  char buf[64];
  auto put = [&](double v, char sep) {
    std::snprintf(buf, sizeof(buf), "%.17g%c", v, sep);
    out << buf;
  };
  for (const TraceRow& r : trace.rows) {
    out << r.outer_iter << ',' << r.inner_iters << ',' << r.prox_evals << ','
        << r.grad_evals << ',';
    put(r.wall_time_s, ',');
    put(r.objective, ',');
    put(r.gap_estimate, ',');
    put(r.feasibility, ',');
    put(r.grad_map_norm, ',');
    put(r.dual_norm, '\n');
  }
  out << "# status: "
      << (trace.status == RunStatus::terminated ? "terminated" : "budget_exhausted")
      << '\n';
}

void write_trace_csv(const RunTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trace file: " + path);
  write_trace_csv(trace, out);
}

RunTrace read_trace_csv(std::istream& in) {
  RunTrace trace;
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader)
    throw std::runtime_error("trace file: missing or unexpected header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# status:", 0) == 0) {
      trace.status = line.find("budget_exhausted") != std::string::npos
                         ? RunStatus::budget_exhausted
                         : RunStatus::terminated;
      continue;
    }
    // strtod-based field parsing: stream extraction rejects "nan"/"inf".
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t next = line.find(',', pos);
      if (next == std::string::npos) next = line.size();
      fields.push_back(line.substr(pos, next - pos));
      pos = next + 1;
    }
    if (fields.size() != 10)
      throw std::runtime_error("trace file: bad row '" + line + "'");
    auto num = [&](int i) { return std::strtod(fields[i].c_str(), nullptr); };
    TraceRow r;
    r.outer_iter = std::strtol(fields[0].c_str(), nullptr, 10);
    r.inner_iters = std::strtol(fields[1].c_str(), nullptr, 10);
    r.prox_evals = std::strtol(fields[2].c_str(), nullptr, 10);
    r.grad_evals = std::strtol(fields[3].c_str(), nullptr, 10);
    r.wall_time_s = num(4);
    r.objective = num(5);
    r.gap_estimate = num(6);
    r.feasibility = num(7);
    r.grad_map_norm = num(8);
    r.dual_norm = num(9);
    trace.rows.push_back(r);
  }
  return trace;
}

RunTrace read_trace_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);
  return read_trace_csv(in);
}

}  // namespace arco
