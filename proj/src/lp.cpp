#include "gnrel/lp.hpp"

#include <limits>

#include "gnrel/errors.hpp"

namespace gnrel::lp {
namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

struct Tableau {
  std::size_t width = 0;                   // number of columns, rhs excluded
  std::vector<std::vector<Rational>> rows; // width + 1 entries, rhs last
  std::vector<Rational> cost;              // reduced costs; cost[width] = objective value
  std::vector<std::size_t> basis;

  void pivot(std::size_t r, std::size_t c) {
    auto& pivot_row = rows[r];
    Rational inv = 1 / pivot_row[c];
    for (auto& v : pivot_row) {
      if (sgn(v) != 0) v *= inv;
    }
    auto eliminate = [&](std::vector<Rational>& row) {
      if (sgn(row[c]) == 0) return;
      Rational factor = row[c];
      for (std::size_t j = 0; j <= width; ++j) {
        if (sgn(pivot_row[j]) != 0) row[j] -= factor * pivot_row[j];
      }
    };
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r) eliminate(rows[i]);
    }
    eliminate(cost);
    basis[r] = c;
  }

  // Bland's rule over the columns flagged in `allowed`. Returns false when unbounded.
  bool optimize(const std::vector<bool>& allowed) {
    for (;;) {
      std::size_t enter = npos;
      for (std::size_t j = 0; j < width; ++j) {
        if (allowed[j] && sgn(cost[j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == npos) return true;
      std::size_t leave = npos;
      Rational best;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (sgn(rows[i][enter]) <= 0) continue;
        Rational ratio = rows[i][width] / rows[i][enter];
        if (leave == npos || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == npos) return false;
      pivot(leave, enter);
    }
  }

  // Re-express `cost` (given as −c over all columns) in terms of the current basis.
  void price_out() {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Rational factor = cost[basis[i]];
      if (sgn(factor) == 0) continue;
      for (std::size_t j = 0; j <= width; ++j) {
        if (sgn(rows[i][j]) != 0) cost[j] -= factor * rows[i][j];
      }
    }
  }
};

}  // namespace

Solution maximize(const Problem& problem) {
  const std::size_t n = problem.variables;
  if (problem.objective.size() != n) throw DomainError("lp: objective size mismatch");
  for (const auto& c : problem.constraints) {
    if (c.coefficients.size() != n) throw DomainError("lp: constraint size mismatch");
  }

  // Column layout: originals, one slack/surplus per inequality, artificials.
  std::size_t slack_count = 0;
  std::size_t artificial_count = 0;
  for (const auto& c : problem.constraints) {
    bool flip = sgn(c.rhs) < 0;
    Relation rel = c.relation;
    if (flip && rel != Relation::equal) {
      rel = rel == Relation::less_equal ? Relation::greater_equal : Relation::less_equal;
    }
    if (rel != Relation::equal) ++slack_count;
    if (rel != Relation::less_equal) ++artificial_count;
  }

  Tableau t;
  t.width = n + slack_count + artificial_count;
  const std::size_t first_artificial = n + slack_count;
  std::size_t next_slack = n;
  std::size_t next_artificial = first_artificial;

  for (const auto& c : problem.constraints) {
    std::vector<Rational> row(t.width + 1);
    bool flip = sgn(c.rhs) < 0;
    Relation rel = c.relation;
    if (flip && rel != Relation::equal) {
      rel = rel == Relation::less_equal ? Relation::greater_equal : Relation::less_equal;
    }
    for (std::size_t j = 0; j < n; ++j) row[j] = flip ? Rational(-c.coefficients[j]) : c.coefficients[j];
    row[t.width] = flip ? Rational(-c.rhs) : c.rhs;
    std::size_t basic = npos;
    if (rel == Relation::less_equal) {
      row[next_slack] = 1;
      basic = next_slack++;
    } else if (rel == Relation::greater_equal) {
      row[next_slack++] = -1;
      row[next_artificial] = 1;
      basic = next_artificial++;
    } else {
      row[next_artificial] = 1;
      basic = next_artificial++;
    }
    t.rows.push_back(std::move(row));
    t.basis.push_back(basic);
  }

  Solution solution;

  if (artificial_count > 0) {
    // Phase 1: maximize −Σ artificials.
    t.cost.assign(t.width + 1, 0);
    for (std::size_t j = first_artificial; j < t.width; ++j) t.cost[j] = 1;
    t.price_out();
    std::vector<bool> all(t.width, true);
    t.optimize(all);
    if (sgn(t.cost[t.width]) < 0) {
      solution.status = Status::infeasible;
      return solution;
    }
    // Drive artificials that remain basic at level zero out of the basis.
    for (std::size_t i = 0; i < t.rows.size();) {
      if (t.basis[i] < first_artificial) {
        ++i;
        continue;
      }
      std::size_t col = npos;
      for (std::size_t j = 0; j < first_artificial; ++j) {
        if (sgn(t.rows[i][j]) != 0) {
          col = j;
          break;
        }
      }
      if (col == npos) {
        t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
        t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
      } else {
        t.pivot(i, col);
        ++i;
      }
    }
  }

  // Phase 2 on the original objective; artificial columns stay out.
  t.cost.assign(t.width + 1, 0);
  for (std::size_t j = 0; j < n; ++j) t.cost[j] = -problem.objective[j];
  t.price_out();
  std::vector<bool> allowed(t.width, false);
  for (std::size_t j = 0; j < first_artificial; ++j) allowed[j] = true;
  if (!t.optimize(allowed)) {
    solution.status = Status::unbounded;
    return solution;
  }

  solution.status = Status::optimal;
  solution.objective = t.cost[t.width];
  solution.values.assign(n, 0);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (t.basis[i] < n) solution.values[t.basis[i]] = t.rows[i][t.width];
  }
  return solution;
}

}  // namespace gnrel::lp
