#include "ngonxc/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "ngonxc/errors.hpp"

namespace ngonxc {

std::string format_value(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

void write_rows(std::ostream& os, const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << format_value(m(i, j));
    }
    os << '\n';
  }
}

long read_count(std::istream& is, const char* what) {
  long v;
  if (!(is >> v) || v < 0) throw ParseError(std::string("expected nonnegative integer for ") + what);
  return v;
}

Eigen::MatrixXd read_rows(std::istream& is, long rows, long cols, const char* what) {
  Eigen::MatrixXd m(rows, cols);
  for (long i = 0; i < rows; ++i) {
    for (long j = 0; j < cols; ++j) {
      std::string token;
      if (!(is >> token))
        throw ParseError(std::string(what) + ": unexpected end of input at row " + std::to_string(i));
      double x;
      const auto res = std::from_chars(token.data(), token.data() + token.size(), x);
      if (res.ec != std::errc() || res.ptr != token.data() + token.size())
        throw ParseError(std::string(what) + ": bad number '" + token + "'");
      m(i, j) = x;
    }
  }
  return m;
}

void expect_end(std::istream& is, const char* what) {
  std::string extra;
  if (is >> extra) throw ParseError(std::string(what) + ": trailing data '" + extra + "'");
}

}  // namespace

void write_matrix(std::ostream& os, int n, const Eigen::MatrixXd& m) {
  os << n << ' ' << m.rows() << ' ' << m.cols() << '\n';
  write_rows(os, m);
}

void write_factorization(std::ostream& os, int n, const Eigen::MatrixXd& U, const Eigen::MatrixXd& V) {
  os << n << ' ' << U.cols() << '\n';
  write_rows(os, U);
  os << '\n';
  write_rows(os, V);
}

MatrixDump read_matrix(std::istream& is) {
  MatrixDump d;
  d.n = static_cast<int>(read_count(is, "n"));
  const long rows = read_count(is, "rows");
  const long cols = read_count(is, "cols");
  d.entries = read_rows(is, rows, cols, "matrix");
  expect_end(is, "matrix");
  return d;
}

FactorizationDump read_factorization(std::istream& is) {
  FactorizationDump d;
  d.n = static_cast<int>(read_count(is, "n"));
  const long r = read_count(is, "r");
  d.U = read_rows(is, d.n, r, "U");
  d.V = read_rows(is, r, d.n, "V");
  expect_end(is, "factorization");
  return d;
}

MatrixDump load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_matrix(in);
}

FactorizationDump load_factorization(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_factorization(in);
}

}  // namespace ngonxc
