#include "hyperdist/feasibility.hpp"

#include "hyperdist/errors.hpp"

namespace hyperdist {

void LinearSystem::add_equation(std::vector<Q> coefficients, Q constant) {
  if (coefficients.size() != num_vars)
    throw DomainError("equation arity " + std::to_string(coefficients.size()) +
                      " does not match " + std::to_string(num_vars) + " unknowns");
  lhs.push_back(std::move(coefficients));
  rhs.push_back(std::move(constant));
}

std::optional<std::vector<Q>> solve_nonnegative(const LinearSystem& system) {
  const std::size_t n = system.num_vars;
  const std::size_t m = system.lhs.size();
  const std::size_t cols = n + m;  // structural then artificial

  // Tableau rows with rhs >= 0; basis starts on the artificials.
  std::vector<std::vector<Q>> row(m, std::vector<Q>(cols, Q(0)));
  std::vector<Q> rhs(m);
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    bool flip = sgn(system.rhs[i]) < 0;
    for (std::size_t j = 0; j < n; ++j) row[i][j] = flip ? -system.lhs[i][j] : system.lhs[i][j];
    rhs[i] = flip ? -system.rhs[i] : system.rhs[i];
    row[i][n + i] = 1;
    basis[i] = n + i;
  }

  // Reduced costs for minimising the artificial mass, with the basic
  // artificials already priced out.
  std::vector<Q> z(cols, Q(0));
  Q value = 0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) z[j] -= row[i][j];
  for (std::size_t i = 0; i < m; ++i) value += rhs[i];

  while (true) {
    // Entering column: smallest index with negative reduced cost.
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (sgn(z[j]) < 0) {
        enter = j;
        break;
      }
    if (enter == cols) break;

    // Ratio test, smallest basic index on ties.
    std::size_t leave = m;
    Q best;
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(row[i][enter]) <= 0) continue;
      Q ratio = rhs[i] / row[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) return std::nullopt;  // objective unbounded: cannot happen here

    // Pivot (enter, leave).
    Q pivot = row[leave][enter];
    for (auto& c : row[leave]) c /= pivot;
    rhs[leave] /= pivot;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || sgn(row[i][enter]) == 0) continue;
      Q f = row[i][enter];
      for (std::size_t j = 0; j < cols; ++j) row[i][j] -= f * row[leave][j];
      rhs[i] -= f * rhs[leave];
    }
    if (sgn(z[enter]) != 0) {
      Q f = z[enter];
      for (std::size_t j = 0; j < cols; ++j) z[j] -= f * row[leave][j];
      value += f * rhs[leave];
    }
    basis[leave] = enter;
  }

  if (sgn(value) != 0) return std::nullopt;

  std::vector<Q> x(n, Q(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) x[basis[i]] = rhs[i];
  return x;
}

}  // namespace hyperdist
