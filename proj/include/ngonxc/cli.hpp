#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ngonxc/bounds.hpp"

namespace ngonxc::cli {

enum ExitCode : int {
  ok = 0,
  verification_failed = 1,
  usage_error = 2,
  budget_exhausted = 3,
};

struct BoundsTableArgs {
  int from = 3;
  int to = 100;
  bool rcb = false;
  int rcb_max = 12;  // rectangle covering is only attempted up to this n
  long long budget = default_rcb_budget;
  std::string out;  // empty: standard output
  bool markdown = false;
};

struct FactorizeArgs {
  int n = 0;
  bool normalized = false;
  std::string out;
  std::string matrix_out;
};

struct VerifyArgs {
  std::string matrix;
  std::string facto;
  double tol = 1e-8;
};

struct RcbArgs {
  int n = 0;
  long long budget = default_rcb_budget;
};

struct MinFkzArgs {
  int r = 0;
};

/// Rows for n in [from, to], computed on worker threads, returned in n order.
std::vector<BoundsRow> compute_rows(const BoundsTableArgs& args);

void write_csv(std::ostream& os, const std::vector<BoundsRow>& rows);
void write_markdown(std::ostream& os, const std::vector<BoundsRow>& rows);

int cmd_bounds_table(const BoundsTableArgs& args, std::ostream& out, std::ostream& err);
int cmd_factorize(const FactorizeArgs& args, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err);
int cmd_rcb(const RcbArgs& args, std::ostream& out, std::ostream& err);
int cmd_minfkz(const MinFkzArgs& args, std::ostream& out, std::ostream& err);

/// Full command line dispatch; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ngonxc::cli
