#pragma once

#include <cstddef>
#include <vector>

#include "gnrel/rational.hpp"

namespace gnrel::lp {

enum class Relation { less_equal, equal, greater_equal };

struct Constraint {
  std::vector<Rational> coefficients;
  Relation relation = Relation::less_equal;
  Rational rhs;
};

/// maximize objective·x subject to the constraints and x ≥ 0.
struct Problem {
  std::size_t variables = 0;
  std::vector<Rational> objective;
  std::vector<Constraint> constraints;
};

enum class Status { optimal, infeasible, unbounded };

struct Solution {
  Status status = Status::infeasible;
  Rational objective;
  std::vector<Rational> values;
};

/// Exact two-phase simplex on a dense rational tableau. Bland's rule
/// picks entering and leaving variables, so the method terminates.
Solution maximize(const Problem& problem);

}  // namespace gnrel::lp
