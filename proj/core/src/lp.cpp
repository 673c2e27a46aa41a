#include "chainlab/lp.hpp"

#include <algorithm>
#include <cmath>

#include "chainlab/vec.hpp"

namespace chainlab {

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), t_((rows + 1) * (cols + 1), 0.0) {}

  double& at(std::size_t i, std::size_t j) { return t_[i * (n_ + 1) + j]; }
  double& rhs(std::size_t i) { return at(i, n_); }
  // Row m_ holds reduced costs; its rhs holds minus the objective value.
  double& cost(std::size_t j) { return at(m_, j); }

  void pivot(std::size_t r, std::size_t c) {
    const double inv = 1.0 / at(r, c);
    for (std::size_t j = 0; j <= n_; ++j) at(r, j) *= inv;
    at(r, c) = 1.0;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= n_; ++j) at(i, j) -= f * at(r, j);
      at(i, c) = 0.0;
    }
  }

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }

 private:
  std::size_t m_, n_;
  std::vector<double> t_;
};

enum class Phase { Done, Unbounded, Limit };

// Runs simplex iterations; columns >= `enter_limit` may not enter the basis.
Phase iterate(Tableau& tab, std::vector<std::size_t>& basis, std::size_t enter_limit, double tol) {
  const std::size_t max_iter = 50000 + 50 * (tab.rows() + tab.cols());
  for (std::size_t it = 0; it < max_iter; ++it) {
    std::size_t enter = enter_limit;
    for (std::size_t j = 0; j < enter_limit; ++j) {
      if (tab.cost(j) < -tol) {
        enter = j;
        break;
      }
    }
    if (enter == enter_limit) return Phase::Done;
    std::size_t leave = tab.rows();
    double best = 0.0;
    for (std::size_t i = 0; i < tab.rows(); ++i) {
      const double a = tab.at(i, enter);
      if (a <= tol) continue;
      const double ratio = tab.rhs(i) / a;
      if (leave == tab.rows() || ratio < best - tol || (ratio <= best + tol && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == tab.rows()) return Phase::Unbounded;
    tab.pivot(leave, enter);
    basis[leave] = enter;
  }
  return Phase::Limit;
}

void load_costs(Tableau& tab, const std::vector<std::size_t>& basis, const std::vector<double>& c) {
  const std::size_t total = tab.cols();
  for (std::size_t j = 0; j < total; ++j) tab.cost(j) = j < c.size() ? c[j] : 0.0;
  tab.rhs(tab.rows()) = 0.0;
  for (std::size_t i = 0; i < tab.rows(); ++i) {
    const double cb = basis[i] < c.size() ? c[basis[i]] : 0.0;
    if (cb == 0.0) continue;
    for (std::size_t j = 0; j <= total; ++j) tab.at(tab.rows(), j) -= cb * tab.at(i, j);
  }
}

}  // namespace

LpResult solve_standard_lp(const std::vector<double>& a, std::size_t rows, const std::vector<double>& b,
                           const std::vector<double>& c, double tol) {
  const std::size_t n = c.size();
  require(a.size() == rows * n && b.size() == rows, "solve_standard_lp: inconsistent sizes");
  LpResult res;
  Tableau tab(rows, n + rows);
  std::vector<double> flip(rows, 1.0);
  double bscale = 1.0;
  for (std::size_t i = 0; i < rows; ++i) {
    flip[i] = b[i] < 0.0 ? -1.0 : 1.0;
    bscale = std::max(bscale, std::fabs(b[i]));
    for (std::size_t j = 0; j < n; ++j) tab.at(i, j) = flip[i] * a[i * n + j];
    tab.at(i, n + i) = 1.0;
    tab.rhs(i) = flip[i] * b[i];
  }
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) basis[i] = n + i;

  // Phase 1: minimize the sum of artificials.
  std::vector<double> c1(n + rows, 0.0);
  for (std::size_t i = 0; i < rows; ++i) c1[n + i] = 1.0;
  load_costs(tab, basis, c1);
  if (iterate(tab, basis, n + rows, tol) == Phase::Limit) {
    res.status = LpResult::Status::IterationLimit;
    return res;
  }
  if (-tab.rhs(rows) > tol * bscale) {
    res.status = LpResult::Status::Infeasible;
    return res;
  }
  // Drive remaining artificials out of the basis where possible.
  for (std::size_t i = 0; i < rows; ++i) {
    if (basis[i] < n) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::fabs(tab.at(i, j)) > tol) {
        tab.pivot(i, j);
        basis[i] = j;
        break;
      }
    }
  }

  load_costs(tab, basis, c);
  const Phase p2 = iterate(tab, basis, n, tol);
  if (p2 == Phase::Unbounded) {
    res.status = LpResult::Status::Unbounded;
    return res;
  }
  if (p2 == Phase::Limit) {
    res.status = LpResult::Status::IterationLimit;
    return res;
  }
  res.status = LpResult::Status::Optimal;
  res.x.assign(n, 0.0);
  for (std::size_t i = 0; i < rows; ++i)
    if (basis[i] < n) res.x[basis[i]] = std::max(0.0, tab.rhs(i));
  res.value = 0.0;
  for (std::size_t j = 0; j < n; ++j) res.value += c[j] * res.x[j];
  // The reduced cost of artificial column i is -y_i in the flipped system.
  res.dual.assign(rows, 0.0);
  for (std::size_t i = 0; i < rows; ++i) res.dual[i] = -tab.cost(n + i) * flip[i];
  return res;
}

}  // namespace chainlab
