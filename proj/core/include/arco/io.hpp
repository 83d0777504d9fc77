#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "arco/generators.hpp"

namespace arco {

/// Self-describing text format for problem instances: a header line
///   LASSO n m density gamma seed
///   LCQP n m r density seed
/// followed by named sections (`MATRIX <name> coo <nnz>` with one `i j v`
/// triplet per line, `VECTOR <name> <len>` with one value per line). Floats
/// are written with 17 significant digits, so a parse/serialize round trip
/// is bit-exact.
std::string serialize(const LassoInstance& inst);
std::string serialize(const LcqpInstance& inst);

using ProblemInstance = std::variant<LassoInstance, LcqpInstance>;

ProblemInstance parse_problem(std::istream& in);
ProblemInstance load_problem(const std::string& path);
void save_problem(const ProblemInstance& inst, const std::string& path);

}  // namespace arco
