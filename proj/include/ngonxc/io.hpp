#pragma once

// Plain-text dumps shared by the CLI.
//
//   matrix:         "n rows cols", then `rows` lines of `cols` values
//   factorization:  "n r", then U (n lines of r values), a blank line,
//                   then V (r lines of n values)
//
// Values are written with 17 significant digits, which round-trips doubles.

#include <Eigen/Core>

#include <iosfwd>
#include <string>

namespace ngonxc {

struct MatrixDump {
  int n = 0;
  Eigen::MatrixXd entries;
};

struct FactorizationDump {
  int n = 0;
  Eigen::MatrixXd U;
  Eigen::MatrixXd V;
};

std::string format_value(double x);

void write_matrix(std::ostream& os, int n, const Eigen::MatrixXd& m);
void write_factorization(std::ostream& os, int n, const Eigen::MatrixXd& U, const Eigen::MatrixXd& V);

/// Throw ParseError on malformed input.
MatrixDump read_matrix(std::istream& is);
FactorizationDump read_factorization(std::istream& is);

MatrixDump load_matrix(const std::string& path);
FactorizationDump load_factorization(const std::string& path);

}  // namespace ngonxc
