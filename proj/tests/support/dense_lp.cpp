#include "dense_lp.hpp"

#include <cmath>
#include <stdexcept>

namespace varispeed::testing {

namespace {

constexpr double kPivotTol = 1e-11;

struct Tableau {
  std::size_t rows = 0, cols = 0;  // cols excludes the right-hand side
  std::vector<std::vector<double>> t;  // rows + 1 objective row
  std::vector<std::size_t> basis;

  void pivot(std::size_t r, std::size_t c) {
    double p = t[r][c];
    for (auto& x : t[r]) x /= p;
    for (std::size_t i = 0; i <= rows; ++i) {
      if (i == r || t[i][c] == 0.0) continue;
      double f = t[i][c];
      for (std::size_t k = 0; k <= cols; ++k) t[i][k] -= f * t[r][k];
    }
    basis[r] = c;
  }

  // Minimizes the objective row over columns allowed[k]; false when unbounded.
  bool optimize(const std::vector<char>& allowed) {
    for (;;) {
      std::size_t enter = cols;
      for (std::size_t k = 0; k < cols; ++k)
        if (allowed[k] && t[rows][k] < -1e-12) {
          enter = k;
          break;
        }
      if (enter == cols) return true;
      std::size_t leave = rows;
      double best = 0.0;
      for (std::size_t i = 0; i < rows; ++i) {
        if (t[i][enter] <= kPivotTol) continue;
        double ratio = t[i][cols] / t[i][enter];
        if (leave == rows || ratio < best - 1e-15 || (std::abs(ratio - best) <= 1e-15 && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

DenseLpResult solve_dense_lp(const DenseLp& lp) {
  const std::size_t m = lp.a.size();
  const std::size_t n = lp.c.size();
  std::size_t slacks = 0, artificials = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (lp.b[i] < 0) throw std::invalid_argument("dense LP expects b >= 0");
    if (lp.equality[i])
      ++artificials;
    else
      ++slacks;
  }
  Tableau tab;
  tab.rows = m;
  tab.cols = n + slacks + artificials;
  tab.t.assign(m + 1, std::vector<double>(tab.cols + 1, 0.0));
  tab.basis.assign(m, 0);
  std::size_t s = n, art = n + slacks;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < n; ++k) tab.t[i][k] = lp.a[i][k];
    tab.t[i][tab.cols] = lp.b[i];
    if (lp.equality[i]) {
      tab.t[i][art] = 1.0;
      tab.basis[i] = art++;
    } else {
      tab.t[i][s] = 1.0;
      tab.basis[i] = s++;
    }
  }
  // Phase one: minimize the sum of artificials.
  for (std::size_t i = 0; i < m; ++i)
    if (lp.equality[i])
      for (std::size_t k = 0; k <= tab.cols; ++k)
        if (k < n + slacks || k == tab.cols) tab.t[m][k] -= tab.t[i][k];
  std::vector<char> all(tab.cols, 1);
  tab.optimize(all);
  DenseLpResult out;
  if (-tab.t[m][tab.cols] > 1e-9) return out;
  // Drive remaining artificials out of the basis where possible.
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis[i] < n + slacks) continue;
    for (std::size_t k = 0; k < n + slacks; ++k)
      if (std::abs(tab.t[i][k]) > kPivotTol) {
        tab.pivot(i, k);
        break;
      }
  }
  std::vector<char> allowed(tab.cols, 0);
  for (std::size_t k = 0; k < n + slacks; ++k) allowed[k] = 1;
  std::fill(tab.t[m].begin(), tab.t[m].end(), 0.0);
  for (std::size_t k = 0; k < n; ++k) tab.t[m][k] = lp.c[k];
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t bcol = tab.basis[i];
    double f = tab.t[m][bcol];
    if (f == 0.0) continue;
    for (std::size_t k = 0; k <= tab.cols; ++k) tab.t[m][k] -= f * tab.t[i][k];
  }
  out.feasible = true;
  if (!tab.optimize(allowed)) {
    out.bounded = false;
    return out;
  }
  out.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (tab.basis[i] < n) out.x[tab.basis[i]] = tab.t[i][tab.cols];
  out.value = -tab.t[m][tab.cols];
  return out;
}

}  // namespace varispeed::testing
