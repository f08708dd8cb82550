#pragma once

#include <optional>
#include <vector>

#include "hyperdist/rational.hpp"

namespace hyperdist {

/// A system of exact linear equations lhs·x = rhs over nonnegative
/// unknowns.
struct LinearSystem {
  std::size_t num_vars = 0;
  std::vector<std::vector<Q>> lhs;  // each row has num_vars coefficients
  std::vector<Q> rhs;

  void add_equation(std::vector<Q> coefficients, Q constant);
};

/// Finds some x ≥ 0 with lhs·x = rhs, or reports infeasibility. Exact
/// rational vertex search (phase-1 simplex, smallest-index pivoting), so
/// the answer is deterministic and never approximate. Intended for small
/// systems (tens of variables).
std::optional<std::vector<Q>> solve_nonnegative(const LinearSystem& system);

}  // namespace hyperdist
