#include "ngonxc/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "ngonxc/errors.hpp"
#include "ngonxc/factorize.hpp"
#include "ngonxc/io.hpp"
#include "ngonxc/rectcover.hpp"

namespace ngonxc::cli {

std::vector<BoundsRow> compute_rows(const BoundsTableArgs& args) {
  if (args.from < 3 || args.to < args.from)
    throw DomainError("range must satisfy 3 <= from <= to");
  const int count = args.to - args.from + 1;
  std::vector<BoundsRow> rows(count);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int idx = next++; idx < count; idx = next++) {
      const int n = args.from + idx;
      rows[idx] = bounds_row(n, args.rcb && n <= args.rcb_max, args.budget);
    }
  };
  const unsigned threads = std::clamp(std::thread::hardware_concurrency(), 1U, 16U);
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < std::min<unsigned>(threads, count); ++t) pool.emplace_back(worker);
  worker();
  return rows;
}

namespace {

std::string rcb_cell(const BoundsRow& row) {
  if (!row.rcb) return "";
  if (row.rcb->optimal) return std::to_string(row.rcb->value);
  return std::to_string(row.rcb->lower_bound) + "+";
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<BoundsRow>& rows) {
  os << "# Bounds on rank_+(S_n), the extension complexity of the regular n-gon.\n"
        "# lb_log: ceil(log2(2n+2))\n"
        "# lb_sperner: min r with C(r,floor(r/2)) >= n\n"
        "# lb_improved: min r with n(r-1) <= (r-floor(r/2)) C(r,floor(r/2))\n"
        "# lb_geometric: min r with n <= max_{3<=d<=r-1} min_{i=0,1} faces(r,d-1,d-3+i)\n"
        "# rcb: exact rectangle covering number; 'k+' = search budget exhausted, only k proven; "
        "blank = not computed\n"
        "# lb_best: max of the lower bounds; lb_sperner, lb_improved and rcb bound the boolean rank, "
        "which is <= rank_+\n"
        "# ub: inner dimension of the recursive nonnegative factorization\n"
        "# gap: ub - lb_best\n";
  os << "n,lb_log,lb_sperner,lb_improved,lb_geometric,rcb,lb_best,ub,gap\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.lb_log << ',' << r.lb_sperner << ',' << r.lb_improved << ','
       << r.lb_geometric << ',' << rcb_cell(r) << ',' << r.lb_best << ',' << r.ub << ',' << r.gap
       << '\n';
  }
}

void write_markdown(std::ostream& os, const std::vector<BoundsRow>& rows) {
  const bool with_rcb = std::any_of(rows.begin(), rows.end(), [](const BoundsRow& r) { return r.rcb.has_value(); });
  auto line = [&](const std::string& label, auto cell) {
    os << "| " << label << " |";
    for (const auto& r : rows) os << ' ' << cell(r) << " |";
    os << '\n';
  };
  line("n", [](const BoundsRow& r) { return std::to_string(r.n); });
  os << "|---|";
  for (std::size_t i = 0; i < rows.size(); ++i) os << "---|";
  os << '\n';
  // bold marks bounds that meet the upper bound
  auto bold = [](int v, int ub) { return v == ub ? "**" + std::to_string(v) + "**" : std::to_string(v); };
  line("log", [&](const BoundsRow& r) { return bold(r.lb_log, r.ub); });
  line("Sperner", [&](const BoundsRow& r) { return bold(r.lb_sperner, r.ub); });
  line("improved boolean", [&](const BoundsRow& r) { return bold(r.lb_improved, r.ub); });
  line("geometric", [&](const BoundsRow& r) { return bold(r.lb_geometric, r.ub); });
  if (with_rcb) {
    line("RCB", [&](const BoundsRow& r) {
      if (!r.rcb) return std::string("?");
      return r.rcb->optimal ? bold(r.rcb->value, r.ub) : rcb_cell(r);
    });
  }
  line("upper bound", [&](const BoundsRow& r) {
    return r.lb_best == r.ub ? "**" + std::to_string(r.ub) + "**" : std::to_string(r.ub);
  });
}

int cmd_bounds_table(const BoundsTableArgs& args, std::ostream& out, std::ostream& err) {
  std::vector<BoundsRow> rows;
  try {
    rows = compute_rows(args);
  } catch (const DomainError& e) {
    err << "bounds-table: " << e.what() << '\n';
    return usage_error;
  }
  std::ostringstream text;
  if (args.markdown)
    write_markdown(text, rows);
  else
    write_csv(text, rows);
  if (args.out.empty()) {
    out << text.str();
    return ok;
  }
  std::ofstream file(args.out);
  if (!file || !(file << text.str()) || !file.flush()) {
    err << "bounds-table: cannot write " << args.out << '\n';
    return verification_failed;
  }
  return ok;
}

int cmd_factorize(const FactorizeArgs& args, std::ostream& out, std::ostream& err) {
  if (args.n < 3) {
    err << "factorize: n must be at least 3\n";
    return usage_error;
  }
  Factorization<double> f;
  SlackMatrix<double> s;
  try {
    f = args.normalized ? recursive_factorize_normalized(args.n) : recursive_factorize(args.n);
    s = slack_matrix(args.n, args.normalized);
  } catch (const ConstructionError& e) {
    err << "factorize: " << e.what() << " (n=" << e.n() << ", row " << e.row() << ", col " << e.col()
        << ")\n";
    return verification_failed;
  }
  const auto rep = verify_factorization(s, f, 1e-8);
  out << "n=" << args.n << '\n'
      << "r=" << f.r() << '\n'
      << "max_abs_residual=" << format_value(rep.max_abs_residual) << '\n'
      << "max_rel_residual=" << format_value(rep.max_rel_residual) << '\n'
      << "min_entry=" << format_value(rep.min_entry) << '\n'
      << "verification=" << (rep.passed ? "pass" : "fail") << '\n';

  auto dump = [&](const std::string& path, auto&& writer) {
    std::ofstream file(path);
    if (file) writer(file);
    if (!file || !file.flush()) {
      err << "factorize: cannot write " << path << '\n';
      return false;
    }
    return true;
  };
  if (!args.out.empty() && !dump(args.out, [&](std::ostream& os) { write_factorization(os, args.n, f.U, f.V); }))
    return verification_failed;
  if (!args.matrix_out.empty() &&
      !dump(args.matrix_out, [&](std::ostream& os) { write_matrix(os, args.n, s.entries); }))
    return verification_failed;
  return rep.passed ? ok : verification_failed;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  MatrixDump m;
  FactorizationDump f;
  try {
    m = load_matrix(args.matrix);
    f = load_factorization(args.facto);
  } catch (const ParseError& e) {
    err << "verify: " << e.what() << '\n';
    return usage_error;
  }
  try {
    const auto rep = verify_factorization(m.entries, f.U, f.V, args.tol);
    out << rep.summary() << '\n';
    return rep.passed ? ok : verification_failed;
  } catch (const DimensionMismatch& e) {
    err << "verify: " << e.what() << '\n';
    return verification_failed;
  }
}

int cmd_rcb(const RcbArgs& args, std::ostream& out, std::ostream& err) {
  if (args.n < 3 || args.n > 64 || args.budget < 1) {
    err << "rcb: need 3 <= n <= 64 and budget >= 1\n";
    return usage_error;
  }
  const auto res = rectangle_cover_number(ngon_support(args.n), args.budget);
  out << "n=" << args.n << '\n'
      << "value=" << res.value << '\n'
      << "optimal=" << (res.optimal ? "yes" : "no") << '\n'
      << "lower_bound=" << res.lower_bound << '\n'
      << "nodes=" << res.nodes_explored << '\n';
  for (const auto& r : res.cover) out << "rectangle " << to_string(r) << '\n';
  return res.optimal ? ok : budget_exhausted;
}

int cmd_minfkz(const MinFkzArgs& args, std::ostream& out, std::ostream& err) {
  if (args.r < 2) {
    err << "minfkz: r must be at least 2\n";
    return usage_error;
  }
  const auto res = minimize_fkz(args.r);
  out << "r=" << res.r << '\n'
      << "min_f=" << res.min_f << '\n'
      << "min_f_over_r_factorial=" << res.min_value << '\n'
      << "minimizers=";
  for (std::size_t i = 0; i < res.all_minimizers.size(); ++i)
    out << (i ? " " : "") << '(' << res.all_minimizers[i].first << ',' << res.all_minimizers[i].second << ')';
  out << '\n' << "k_star=" << res.k_star << " z_star=" << res.z_star << '\n';
  return ok;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extension complexity of regular n-gons: factorizations and bounds", "ngon-xc"};
  app.require_subcommand(1);

  BoundsTableArgs table;
  auto* bt = app.add_subcommand("bounds-table", "lower/upper bound table as CSV");
  bt->add_option("--from", table.from, "first n")->capture_default_str();
  bt->add_option("--to", table.to, "last n")->capture_default_str();
  bt->add_flag("--rcb", table.rcb, "also compute the exact rectangle covering number");
  bt->add_option("--rcb-max", table.rcb_max, "largest n for --rcb")->capture_default_str();
  bt->add_option("--budget", table.budget, "search nodes per rectangle covering")->capture_default_str();
  bt->add_option("--out", table.out, "output file (default: stdout)");
  bt->add_flag("--markdown", table.markdown, "render a markdown table instead of CSV");

  FactorizeArgs fact;
  auto* fc = app.add_subcommand("factorize", "recursive nonnegative factorization of S_n");
  fc->add_option("--n", fact.n, "polygon size")->required();
  fc->add_flag("--normalized", fact.normalized, "factor S_n / c_1");
  fc->add_option("--out", fact.out, "write the U/V dump here");
  fc->add_option("--matrix-out", fact.matrix_out, "write the slack matrix dump here");

  VerifyArgs ver;
  auto* vf = app.add_subcommand("verify", "check a factorization dump against a matrix dump");
  vf->add_option("--matrix", ver.matrix, "matrix dump")->required();
  vf->add_option("--facto", ver.facto, "factorization dump")->required();
  vf->add_option("--tol", ver.tol, "relative residual tolerance")->capture_default_str();

  RcbArgs rcb;
  auto* rc = app.add_subcommand("rcb", "exact rectangle covering number of the n-gon pattern");
  rc->add_option("--n", rcb.n, "polygon size")->required();
  rc->add_option("--budget", rcb.budget, "search node budget")->capture_default_str();

  MinFkzArgs mf;
  auto* mk = app.add_subcommand("minfkz", "brute-force minimizers of the permutation count f(k,z)");
  mk->add_option("--r", mf.r, "ground set size")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage_error;
  }

  if (*bt) return cmd_bounds_table(table, out, err);
  if (*fc) return cmd_factorize(fact, out, err);
  if (*vf) return cmd_verify(ver, out, err);
  if (*rc) return cmd_rcb(rcb, out, err);
  return cmd_minfkz(mf, out, err);
}

}  // namespace ngonxc::cli
