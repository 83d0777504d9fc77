#include "arco/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace arco {

namespace {

void append_double(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

void append_vector(std::string& out, const char* name, const Vector& v) {
  out += "VECTOR ";
  out += name;
  out += ' ';
  out += std::to_string(v.size());
  out += '\n';
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    append_double(out, v[i]);
    out += '\n';
  }
}

void append_dense_coo(std::string& out, const char* name, const Matrix& A) {
  long nnz = 0;
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      if (A(i, j) != 0.0) ++nnz;
  out += "MATRIX ";
  out += name;
  out += " coo ";
  out += std::to_string(nnz);
  out += '\n';
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (A(i, j) == 0.0) continue;
      out += std::to_string(i);
      out += ' ';
      out += std::to_string(j);
      out += ' ';
      append_double(out, A(i, j));
      out += '\n';
    }
  }
}

void append_sparse_coo(std::string& out, const char* name, const SparseMatrix& A) {
  out += "MATRIX ";
  out += name;
  out += " coo ";
  out += std::to_string(A.nonZeros());
  out += '\n';
  for (int k = 0; k < A.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(A, k); it; ++it) {
      out += std::to_string(it.row());
      out += ' ';
      out += std::to_string(it.col());
      out += ' ';
      append_double(out, it.value());
      out += '\n';
    }
  }
}

struct SectionReader {
  std::istream& in;

  std::string expect_line() {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("problem file: unexpected EOF");
    return line;
  }

  std::vector<Eigen::Triplet<double>> read_coo(const std::string& name, long& nnz) {
    std::string header = expect_line();
    std::istringstream hs(header);
    std::string kw, nm, fmt;
    hs >> kw >> nm >> fmt >> nnz;
    if (kw != "MATRIX" || nm != name || fmt != "coo" || hs.fail())
      throw std::runtime_error("problem file: expected 'MATRIX " + name + " coo <nnz>'");
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(nnz);
    for (long t = 0; t < nnz; ++t) {
      std::istringstream ls(expect_line());
      long i, j;
      double v;
      ls >> i >> j >> v;
      if (ls.fail()) throw std::runtime_error("problem file: bad coo entry");
      trips.emplace_back(i, j, v);
    }
    return trips;
  }

  Vector read_vector(const std::string& name) {
    std::string header = expect_line();
    std::istringstream hs(header);
    std::string kw, nm;
    long len;
    hs >> kw >> nm >> len;
    if (kw != "VECTOR" || nm != name || hs.fail())
      throw std::runtime_error("problem file: expected 'VECTOR " + name + " <len>'");
    Vector v(len);
    for (long i = 0; i < len; ++i) {
      std::istringstream ls(expect_line());
      ls >> v[i];
      if (ls.fail()) throw std::runtime_error("problem file: bad vector entry");
    }
    return v;
  }
};

}  // namespace

std::string serialize(const LassoInstance& inst) {
  std::string out = "LASSO " + std::to_string(inst.n) + ' ' + std::to_string(inst.m) + ' ';
  append_double(out, inst.density);
  out += ' ';
  append_double(out, inst.gamma);
  out += ' ';
  out += std::to_string(inst.seed);
  out += '\n';
  append_sparse_coo(out, "A", inst.A);
  append_vector(out, "b", inst.b);
  return out;
}

std::string serialize(const LcqpInstance& inst) {
  std::string out = "LCQP " + std::to_string(inst.n) + ' ' + std::to_string(inst.m) + ' ' +
                    std::to_string(inst.r) + ' ';
  append_double(out, inst.density);
  out += ' ';
  out += std::to_string(inst.seed);
  out += '\n';
  append_dense_coo(out, "M", inst.M);
  append_vector(out, "c", inst.c);
  append_dense_coo(out, "A", inst.A);
  append_vector(out, "b", inst.b);
  return out;
}

ProblemInstance parse_problem(std::istream& in) {
  SectionReader rd{in};
  std::string header = rd.expect_line();
  std::istringstream hs(header);
  std::string kind;
  hs >> kind;

  if (kind == "LASSO") {
    LassoInstance inst;
    hs >> inst.n >> inst.m >> inst.density >> inst.gamma >> inst.seed;
    if (hs.fail()) throw std::runtime_error("problem file: bad LASSO header");
    long nnz = 0;
    auto trips = rd.read_coo("A", nnz);
    inst.A.resize(inst.m, inst.n);
    inst.A.setFromTriplets(trips.begin(), trips.end());
    inst.A.makeCompressed();
    inst.b = rd.read_vector("b");
    if (inst.b.size() != inst.m) throw std::runtime_error("problem file: b length mismatch");
    inst.op_norm = operator_norm(inst.A);
    return inst;
  }
  if (kind == "LCQP") {
    LcqpInstance inst;
    hs >> inst.n >> inst.m >> inst.r >> inst.density >> inst.seed;
    if (hs.fail()) throw std::runtime_error("problem file: bad LCQP header");
    long nnz = 0;
    auto mt = rd.read_coo("M", nnz);
    inst.M = Matrix::Zero(inst.n, inst.n);
    for (const auto& t : mt) inst.M(t.row(), t.col()) = t.value();
    inst.c = rd.read_vector("c");
    auto at = rd.read_coo("A", nnz);
    inst.A = Matrix::Zero(inst.m, inst.n);
    for (const auto& t : at) inst.A(t.row(), t.col()) = t.value();
    inst.b = rd.read_vector("b");
    if (inst.c.size() != inst.n || inst.b.size() != inst.m)
      throw std::runtime_error("problem file: vector length mismatch");
    return inst;
  }
  throw std::runtime_error("problem file: unknown kind '" + kind + "'");
}

ProblemInstance load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open problem file: " + path);
  return parse_problem(in);
}

void save_problem(const ProblemInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write problem file: " + path);
  std::visit([&out](const auto& p) { out << serialize(p); }, inst);
}

}  // namespace arco
