#include "gnrel/coherence.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>

#include "gnrel/lp.hpp"

namespace gnrel {

Event GainSpec::conditioning() const {
  if (terms.empty()) throw DomainError("gain without terms");
  Event b = terms.front().gamble.conditioning();
  for (const auto& t : terms) b = b | t.gamble.conditioning();
  return b;
}

Rational evaluate_gain(const GainSpec& gain, std::size_t world) {
  Rational total = 0;
  for (std::size_t i = 0; i < gain.terms.size(); ++i) {
    const auto& t = gain.terms[i];
    if (!t.gamble.conditioning().contains(world)) continue;
    Rational part = t.stake * (t.gamble.payoff()(world) - t.value);
    if (gain.against == i) {
      total -= part;
    } else {
      total += part;
    }
  }
  return total;
}

Rational max_conditioned_gain(const GainSpec& gain) {
  auto worlds = gain.conditioning().worlds();
  Rational best = evaluate_gain(gain, worlds.front());
  for (auto w : worlds) {
    Rational g = evaluate_gain(gain, w);
    if (g > best) best = g;
  }
  return best;
}

namespace {

enum class Mode { dF, W, convex, one_convex, asl };

std::string criterion_name(Mode mode) {
  switch (mode) {
    case Mode::dF: return "dF";
    case Mode::W: return "W";
    case Mode::convex: return "convex";
    case Mode::one_convex: return "1convex";
    case Mode::asl: return "ASL";
  }
  return "?";
}

// Per-world contributions dᵢ(w) = Bᵢ(w)(Xᵢ(w) − μᵢ), computed once per check.
class GainTable {
 public:
  explicit GainTable(const std::vector<AssessmentEntry>& entries) : entries_(entries) {
    const std::size_t n = entries.front().gamble.universe()->size();
    table_.assign(entries.size(), std::vector<Rational>(n));
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto& xb = entries[i].gamble;
      for (auto w : xb.conditioning().worlds()) table_[i][w] = xb.payoff()(w) - entries[i].value;
    }
  }

  const Rational& operator()(std::size_t entry, std::size_t world) const {
    return table_[entry][world];
  }

  Event conditioning(const std::vector<std::size_t>& family) const {
    Event b = entries_[family.front()].gamble.conditioning();
    for (auto i : family) b = b | entries_[i].gamble.conditioning();
    return b;
  }

  // Distinct rows (dᵢ(w))_{i ∈ family} over the worlds of B_family.
  std::vector<std::vector<Rational>> rows(const std::vector<std::size_t>& family) const {
    std::vector<std::vector<Rational>> out;
    for (auto w : conditioning(family).worlds()) {
      std::vector<Rational> row;
      row.reserve(family.size());
      for (auto i : family) row.push_back(table_[i][w]);
      if (std::find(out.begin(), out.end(), row) == out.end()) out.push_back(std::move(row));
    }
    return out;
  }

  const std::vector<AssessmentEntry>& entries() const { return entries_; }

 private:
  const std::vector<AssessmentEntry>& entries_;
  std::vector<std::vector<Rational>> table_;
};

GainSpec make_gain(const GainTable& table, const std::vector<std::size_t>& family,
                   const std::vector<Rational>& stakes, std::optional<std::size_t> against) {
  GainSpec gain;
  for (std::size_t k = 0; k < family.size(); ++k) {
    const auto& e = table.entries()[family[k]];
    gain.terms.push_back({e.gamble, e.value, stakes[k]});
  }
  gain.against = against;
  return gain;
}

// One LP cell. `against` is a position in `family` (W and convex only).
// Returns the violating gain, if any.
std::optional<GainSpec> solve_cell(const GainTable& table, const std::vector<std::size_t>& family,
                                   Mode mode, std::optional<std::size_t> against) {
  const std::size_t k = family.size();
  auto rows = table.rows(family);
  lp::Problem problem;

  if (mode == Mode::dF) {
    // Variables: p_0..p_{k-1}, q_0..q_{k-1} (s = p − q), ε.
    problem.variables = 2 * k + 1;
    for (const auto& row : rows) {
      lp::Constraint c{std::vector<Rational>(problem.variables), lp::Relation::less_equal, 0};
      for (std::size_t i = 0; i < k; ++i) {
        c.coefficients[i] = row[i];
        c.coefficients[k + i] = -row[i];
      }
      c.coefficients[2 * k] = 1;
      problem.constraints.push_back(std::move(c));
    }
    lp::Constraint norm{std::vector<Rational>(problem.variables, 1), lp::Relation::less_equal, 1};
    norm.coefficients[2 * k] = 0;
    problem.constraints.push_back(std::move(norm));
  } else if (mode == Mode::convex) {
    // Variables: s_i (i ≠ against, positionally; the against slot is unused), ε.
    // The against stake is fixed at 1 and the others sum to 1.
    problem.variables = k + 1;
    for (const auto& row : rows) {
      lp::Constraint c{std::vector<Rational>(problem.variables), lp::Relation::less_equal,
                       row[*against]};
      for (std::size_t i = 0; i < k; ++i) {
        if (i != *against) c.coefficients[i] = row[i];
      }
      c.coefficients[k] = 1;
      problem.constraints.push_back(std::move(c));
    }
    lp::Constraint sum{std::vector<Rational>(problem.variables, 1), lp::Relation::equal, 1};
    sum.coefficients[*against] = 0;
    sum.coefficients[k] = 0;
    problem.constraints.push_back(std::move(sum));
  } else {
    // W and ASL: nonnegative stakes. For W the against entry may also be
    // bet on, so its net stake is free: s_a = p_a − q_a, entering negated
    // (variable k + 1 holds q_a).
    const bool split = mode == Mode::W;
    problem.variables = split ? k + 2 : k + 1;
    for (const auto& row : rows) {
      lp::Constraint c{std::vector<Rational>(problem.variables), lp::Relation::less_equal, 0};
      for (std::size_t i = 0; i < k; ++i) {
        c.coefficients[i] = (against == i) ? Rational(-row[i]) : row[i];
      }
      c.coefficients[k] = 1;
      if (split) c.coefficients[k + 1] = row[*against];
      problem.constraints.push_back(std::move(c));
    }
    lp::Constraint norm{std::vector<Rational>(problem.variables, 1), lp::Relation::less_equal, 1};
    norm.coefficients[k] = 0;
    problem.constraints.push_back(std::move(norm));
  }
  problem.objective.assign(problem.variables, 0);
  problem.objective[mode == Mode::dF ? 2 * k : k] = 1;

  // ε ≥ 0 is a column bound: an infeasible cell admits no violating gain.
  auto solution = lp::maximize(problem);
  if (solution.status != lp::Status::optimal || sgn(solution.objective) <= 0) return std::nullopt;

  std::vector<Rational> stakes(k);
  std::optional<std::size_t> placed = mode == Mode::dF || mode == Mode::asl ? std::nullopt : against;
  if (mode == Mode::dF) {
    for (std::size_t i = 0; i < k; ++i) stakes[i] = solution.values[i] - solution.values[k + i];
  } else {
    for (std::size_t i = 0; i < k; ++i) stakes[i] = solution.values[i];
    if (mode == Mode::convex) stakes[*against] = 1;
    if (mode == Mode::W) {
      stakes[*against] -= solution.values[k + 1];
      if (sgn(stakes[*against]) < 0) {
        // Net bet in favour of the against entry.
        stakes[*against] = -stakes[*against];
        placed.reset();
      }
    }
  }
  auto gain = make_gain(table, family, stakes, placed);
  if (sgn(max_conditioned_gain(gain)) >= 0) {
    throw std::logic_error("coherence LP produced a witness that does not re-evaluate negative");
  }
  return gain;
}

std::vector<std::size_t> family_of(std::uint32_t mask) {
  std::vector<std::size_t> family;
  while (mask) {
    family.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return family;
}

std::optional<GainSpec> find_violation(const std::vector<AssessmentEntry>& entries, Mode mode) {
  if (entries.empty()) return std::nullopt;
  if (entries.size() > max_check_entries) {
    throw SizeError("coherence check enumerates at most " + std::to_string(max_check_entries) +
                    " entries, got " + std::to_string(entries.size()));
  }
  GainTable table(entries);

  if (mode == Mode::one_convex) {
    // Pairs only, both stakes 1; no LP needed.
    for (std::size_t a = 0; a < entries.size(); ++a) {
      for (std::size_t b = a + 1; b < entries.size(); ++b) {
        std::vector<std::size_t> family{a, b};
        for (std::size_t against = 0; against < 2; ++against) {
          auto gain = make_gain(table, family, {Rational(1), Rational(1)}, against);
          if (sgn(max_conditioned_gain(gain)) < 0) return gain;
        }
      }
    }
    return std::nullopt;
  }

  const std::uint32_t limit = std::uint32_t{1} << entries.size();
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    auto family = family_of(mask);
    switch (mode) {
      case Mode::dF:
      case Mode::asl:
        if (auto gain = solve_cell(table, family, mode, std::nullopt)) return gain;
        break;
      case Mode::W:
      case Mode::convex:
        if (mode == Mode::convex && family.size() < 2) break;
        for (std::size_t against = 0; against < family.size(); ++against) {
          if (auto gain = solve_cell(table, family, mode, against)) return gain;
        }
        break;
      case Mode::one_convex:
        break;
    }
  }
  return std::nullopt;
}

// Adds 0|B (value 0) for every conditioning event lacking one.
std::vector<AssessmentEntry> centered(const std::vector<AssessmentEntry>& entries,
                                      std::vector<ConditionalGamble>& added) {
  std::vector<AssessmentEntry> out = entries;
  for (const auto& e : entries) {
    const Event& b = e.gamble.conditioning();
    ConditionalGamble zero(Gamble::constant(b.universe(), 0), b);
    bool present = std::any_of(out.begin(), out.end(),
                               [&](const AssessmentEntry& x) { return x.gamble == zero; });
    if (!present) {
      out.push_back({zero, Rational(0)});
      added.push_back(zero);
    }
  }
  return out;
}

std::vector<AssessmentEntry> negated(const std::vector<AssessmentEntry>& entries) {
  std::vector<AssessmentEntry> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back({-e.gamble, Rational(-e.value)});
  return out;
}

Mode mode_of(ConsistencyClass cls) {
  switch (cls) {
    case ConsistencyClass::dF: return Mode::dF;
    case ConsistencyClass::W: return Mode::W;
    case ConsistencyClass::convex: return Mode::convex;
    case ConsistencyClass::one_convex: return Mode::one_convex;
  }
  return Mode::dF;
}

}  // namespace

Verdict check(const Assessment& a, ConsistencyClass cls) {
  Mode mode = mode_of(cls);
  Verdict verdict;
  verdict.criterion = criterion_name(mode);
  if (a.empty()) return verdict;

  if (mode == Mode::dF) {
    if (auto gain = find_violation(a.entries(), mode)) {
      verdict.consistent = false;
      verdict.witness = std::move(gain);
    }
    return verdict;
  }

  // Imprecise classes are checked on the lower side; the upper side of a
  // precise or upper assessment goes through conjugation.
  bool check_lower = a.kind() != PrevisionKind::upper;
  bool check_upper = a.kind() != PrevisionKind::lower;
  bool needs_centering = mode == Mode::convex || mode == Mode::one_convex;

  if (check_lower) {
    auto entries = needs_centering ? centered(a.entries(), verdict.centering_added) : a.entries();
    if (auto gain = find_violation(entries, mode)) {
      verdict.consistent = false;
      verdict.witness = std::move(gain);
      return verdict;
    }
  }
  if (check_upper) {
    std::vector<ConditionalGamble> added;
    auto entries = negated(a.entries());
    if (needs_centering) entries = centered(entries, added);
    if (!check_lower) verdict.centering_added = added;
    if (auto gain = find_violation(entries, mode)) {
      verdict.consistent = false;
      verdict.witness = std::move(gain);
      verdict.witness_conjugated = true;
    }
  }
  return verdict;
}

Assessment conjugate(const Assessment& a) {
  PrevisionKind kind;
  switch (a.kind()) {
    case PrevisionKind::lower: kind = PrevisionKind::upper; break;
    case PrevisionKind::upper: kind = PrevisionKind::lower; break;
    default: throw DomainError("conjugate is defined for lower and upper previsions only");
  }
  return Assessment(kind, a.intended_class(), negated(a.entries()));
}

Verdict check_avoids_sure_loss(const Assessment& a) {
  Verdict verdict;
  verdict.criterion = criterion_name(Mode::asl);
  if (a.empty()) return verdict;
  if (a.kind() != PrevisionKind::upper) {
    if (auto gain = find_violation(a.entries(), Mode::asl)) {
      verdict.consistent = false;
      verdict.witness = std::move(gain);
      return verdict;
    }
  }
  if (a.kind() != PrevisionKind::lower) {
    if (auto gain = find_violation(negated(a.entries()), Mode::asl)) {
      verdict.consistent = false;
      verdict.witness = std::move(gain);
      verdict.witness_conjugated = true;
    }
  }
  return verdict;
}

AslCounterexample asl_monotonicity_counterexample() {
  auto u = make_universe(std::vector<std::string>{"w1", "w2", "w3"});
  Event omega = Event::all(u);
  Event e = Event::of(u, {0});
  Event f = Event::of(u, {0, 1});
  Assessment a(PrevisionKind::lower, ConsistencyClass::W,
               {{ConditionalGamble::indicator(ConditionalEvent(e, omega)), Rational(1, 2)},
                {ConditionalGamble::indicator(ConditionalEvent(f, omega)), Rational(2, 5)}});
  AslCounterexample out{a, 0, 1};

  const auto& small = a.entries()[out.smaller];
  const auto& large = a.entries()[out.larger];
  bool implication = small.gamble.as_event().conditioned().subset_of(large.gamble.as_event().conditioned());
  if (!implication || !(small.value > large.value) || !check_avoids_sure_loss(a).consistent ||
      check(a, ConsistencyClass::W).consistent) {
    throw std::logic_error("stored ASL counterexample failed verification");
  }
  return out;
}

}  // namespace gnrel
