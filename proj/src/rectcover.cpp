#include "ngonxc/rectcover.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

#include "ngonxc/errors.hpp"

namespace ngonxc {

namespace {

constexpr int max_dim = 64;

Mask low_bits(int count) { return count >= 64 ? ~Mask{0} : (Mask{1} << count) - 1; }

std::vector<int> bits_of(Mask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

}  // namespace

Mask SupportPattern::column(int j) const {
  Mask m = 0;
  for (int i = 0; i < rows; ++i)
    if (at(i, j)) m |= Mask{1} << i;
  return m;
}

Mask SupportPattern::all_rows() const { return low_bits(rows); }
Mask SupportPattern::all_cols() const { return low_bits(cols); }

int SupportPattern::count() const {
  int c = 0;
  for (Mask m : row_bits) c += std::popcount(m);
  return c;
}

SupportPattern support_pattern(const Eigen::Ref<const Eigen::MatrixXd>& M, double tol) {
  if (tol < 0) throw DomainError("support tolerance must be nonnegative");
  if (M.rows() > max_dim || M.cols() > max_dim)
    throw DimensionMismatch("support patterns are limited to 64 x 64");
  SupportPattern p;
  p.rows = static_cast<int>(M.rows());
  p.cols = static_cast<int>(M.cols());
  p.row_bits.assign(p.rows, 0);
  for (int i = 0; i < p.rows; ++i)
    for (int j = 0; j < p.cols; ++j)
      if (M(i, j) > tol) p.row_bits[i] |= Mask{1} << j;
  return p;
}

SupportPattern ngon_support(int n) {
  if (n < 3) throw DomainError("ngon_support needs n >= 3");
  if (n > max_dim) throw DimensionMismatch("support patterns are limited to 64 x 64");
  SupportPattern p;
  p.rows = p.cols = n;
  p.row_bits.assign(n, low_bits(n));
  for (int i = 0; i < n; ++i) {
    p.row_bits[i] &= ~(Mask{1} << i);
    p.row_bits[i] &= ~(Mask{1} << ((i + n - 1) % n));  // i = j + 1 mod n
  }
  return p;
}

Rectangle Rectangle::from_masks(Mask rows, Mask cols) {
  Rectangle r;
  r.row_mask = rows;
  r.col_mask = cols;
  r.row_set = bits_of(rows);
  r.col_set = bits_of(cols);
  return r;
}

std::string to_string(const Rectangle& r) {
  std::ostringstream os;
  os << "rows {";
  for (std::size_t i = 0; i < r.row_set.size(); ++i) os << (i ? "," : "") << r.row_set[i];
  os << "} x cols {";
  for (std::size_t j = 0; j < r.col_set.size(); ++j) os << (j ? "," : "") << r.col_set[j];
  os << "}";
  return os.str();
}

Mask common_cols(const SupportPattern& p, Mask rows) {
  Mask acc = p.all_cols();
  for (int i : bits_of(rows)) acc &= p.row_bits[i];
  return acc;
}

Mask common_rows(const SupportPattern& p, Mask cols) {
  Mask acc = p.all_rows();
  for (int j : bits_of(cols)) acc &= p.column(j);
  return acc;
}

namespace {

// Close-by-one: extend the closed pair (rows, cols) by column j >= next and
// accept the closure only if it adds no column below j (canonicity test).
void close_by_one(const SupportPattern& p, const std::vector<Mask>& column_rows, Mask rows, Mask cols,
                  int next, std::vector<Rectangle>& out) {
  if (rows && cols) out.push_back(Rectangle::from_masks(rows, cols));
  for (int j = next; j < p.cols; ++j) {
    if ((cols >> j) & 1U) continue;
    const Mask new_rows = rows & column_rows[j];
    if (!new_rows) continue;  // closes to the empty-row pair, never a rectangle
    const Mask new_cols = common_cols(p, new_rows);
    const Mask below = low_bits(j);
    if ((new_cols & below) != (cols & below)) continue;
    close_by_one(p, column_rows, new_rows, new_cols, j + 1, out);
  }
}

}  // namespace

std::vector<Rectangle> maximal_rectangles(const SupportPattern& p) {
  std::vector<Rectangle> out;
  if (p.empty()) return out;
  std::vector<Mask> column_rows(p.cols);
  for (int j = 0; j < p.cols; ++j) column_rows[j] = p.column(j);
  const Mask rows = p.all_rows();
  close_by_one(p, column_rows, rows, common_cols(p, rows), 0, out);
  return out;
}

bool is_valid_cover(const SupportPattern& p, const std::vector<Rectangle>& cover) {
  std::vector<Mask> covered(p.rows, 0);
  for (const auto& r : cover) {
    for (int i : r.row_set) {
      if (i >= p.rows || (r.col_mask & ~p.row_bits[i])) return false;
      covered[i] |= r.col_mask;
    }
  }
  for (int i = 0; i < p.rows; ++i)
    if (p.row_bits[i] & ~covered[i]) return false;
  return true;
}

namespace {

struct Cell {
  int row, col;
};

class CoverSearch {
 public:
  CoverSearch(const SupportPattern& p, long long budget)
      : p_(p), budget_(budget), rects_(maximal_rectangles(p)), covered_(p.rows, 0),
        forbidden_(rects_.size(), 0) {
    rects_of_cell_.assign(static_cast<std::size_t>(p.rows) * p.cols, {});
    for (int r = 0; r < static_cast<int>(rects_.size()); ++r)
      for (int i : rects_[r].row_set)
        for (int j : rects_[r].col_set) rects_of_cell_[cell_id(i, j)].push_back(r);
    for (int i = 0; i < p.rows; ++i)
      for (int j = 0; j < p.cols; ++j)
        if (p.at(i, j)) cells_.push_back({i, j});
    order_ = cells_;
    // fewest containing rectangles first, then (row, col)
    std::stable_sort(order_.begin(), order_.end(), [this](const Cell& a, const Cell& b) {
      return rects_of_cell_[cell_id(a.row, a.col)].size() < rects_of_cell_[cell_id(b.row, b.col)].size();
    });
  }

  RcResult run() {
    RcResult res;
    if (order_.empty()) {
      res.optimal = true;
      return res;
    }
    greedy();
    root_lower_bound_ = fooling_bound();
    if (root_lower_bound_ < best_value_) search(0);
    res.value = best_value_;
    res.nodes_explored = nodes_;
    res.optimal = !aborted_;
    res.lower_bound = res.optimal ? best_value_ : root_lower_bound_;
    for (int r : best_cover_) res.cover.push_back(rects_[r]);
    return res;
  }

 private:
  std::size_t cell_id(int i, int j) const { return static_cast<std::size_t>(i) * p_.cols + j; }
  bool uncovered(const Cell& c) const { return (p_.row_bits[c.row] & ~covered_[c.row]) >> c.col & 1U; }

  int gain(int r) const {
    int g = 0;
    for (int i : rects_[r].row_set) g += std::popcount(rects_[r].col_mask & p_.row_bits[i] & ~covered_[i]);
    return g;
  }

  void apply(int r) {
    for (int i : rects_[r].row_set) covered_[i] |= rects_[r].col_mask;
  }

  void greedy() {
    std::vector<int> chosen;
    for (;;) {
      int best = -1, best_gain = 0;
      for (int r = 0; r < static_cast<int>(rects_.size()); ++r) {
        const int g = gain(r);
        if (g > best_gain) {
          best_gain = g;
          best = r;
        }
      }
      if (best < 0) break;
      apply(best);
      chosen.push_back(best);
    }
    std::fill(covered_.begin(), covered_.end(), Mask{0});
    best_value_ = static_cast<int>(chosen.size());
    best_cover_ = chosen;
  }

  // Greedy set of uncovered cells no two of which fit in one rectangle.
  int fooling_bound() const {
    std::vector<Cell> picked;
    for (const Cell& c : order_) {
      if (!uncovered(c)) continue;
      bool independent = true;
      for (const Cell& d : picked) {
        if (p_.at(c.row, d.col) && p_.at(d.row, c.col)) {
          independent = false;
          break;
        }
      }
      if (independent) picked.push_back(c);
    }
    return static_cast<int>(picked.size());
  }

  // Sets rather than sequences: once a rectangle has been tried at a node,
  // the remaining siblings and their subtrees never use it again.
  void search(int depth) {
    if (aborted_) return;
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    const Cell* branch = nullptr;
    int fewest = 0;
    int uncovered_count = 0;
    for (const Cell& c : cells_) {  // row-major, so ties go to the lowest (row, col)
      if (!uncovered(c)) continue;
      ++uncovered_count;
      int allowed = 0;
      for (int r : rects_of_cell_[cell_id(c.row, c.col)]) allowed += !forbidden_[r];
      if (allowed == 0) return;  // this cell can no longer be covered
      if (!branch || allowed < fewest) {
        branch = &c;
        fewest = allowed;
      }
    }
    if (!branch) {
      if (depth < best_value_) {
        best_value_ = depth;
        best_cover_ = chosen_;
      }
      return;
    }
    const int slack = best_value_ - 1 - depth;  // rectangles we may still add
    if (slack <= 0 || fooling_bound() > slack) return;

    // each further rectangle covers at most max_gain new cells
    int max_gain = 0;
    for (int r = 0; r < static_cast<int>(rects_.size()); ++r)
      if (!forbidden_[r]) max_gain = std::max(max_gain, gain(r));
    if (static_cast<long long>(max_gain) * slack < uncovered_count) return;

    std::vector<std::pair<int, int>> options;  // (-gain, rect)
    for (int r : rects_of_cell_[cell_id(branch->row, branch->col)])
      if (!forbidden_[r]) options.emplace_back(-gain(r), r);
    std::sort(options.begin(), options.end());

    const std::vector<Mask> saved = covered_;
    std::vector<int> excluded;
    for (const auto& [neg_gain, r] : options) {
      apply(r);
      chosen_.push_back(r);
      search(depth + 1);
      chosen_.pop_back();
      covered_ = saved;
      forbidden_[r] = 1;
      excluded.push_back(r);
      if (aborted_ || depth + 1 >= best_value_) break;
    }
    for (int r : excluded) forbidden_[r] = 0;
  }

  const SupportPattern& p_;
  long long budget_;
  std::vector<Rectangle> rects_;
  std::vector<std::vector<int>> rects_of_cell_;
  std::vector<Cell> cells_;  // row-major
  std::vector<Cell> order_;  // fewest containing rectangles first
  std::vector<Mask> covered_;
  std::vector<char> forbidden_;
  std::vector<int> chosen_;
  std::vector<int> best_cover_;
  int best_value_ = 0;
  int root_lower_bound_ = 0;
  long long nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace

RcResult rectangle_cover_number(const SupportPattern& p, long long node_budget) {
  if (node_budget < 1) throw DomainError("node budget must be at least 1");
  return CoverSearch(p, node_budget).run();
}

}  // namespace ngonxc
