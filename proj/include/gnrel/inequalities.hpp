#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gnrel/assessment.hpp"
#include "gnrel/gn.hpp"

namespace gnrel {

/// One instance of an inequality. When applicable and both sides are
/// known, `holds` is set; for ordinary bounds it means lhs ≤ rhs.
struct BoundReport {
  std::string name;
  bool applicable = false;
  std::optional<Rational> lhs;
  std::optional<Rational> rhs;
  std::optional<bool> holds;
  std::string context;
};

/// Weak product rule for a lower evaluator, with p = μ(A|B)·μ(X|A∧B):
///   [0] "product_rule.positive": μ(X|A∧B) > 0 ⇒ p ≤ μ(AX|B)
///   [1] "product_rule.negative": μ(X|A∧B) < 0 ⇒ μ(AX|B) ≤ p
///   [2] "product_rule.zero":     μ(AX|B) = 0 ⇔ p = 0 (lhs μ(AX|B), rhs p)
/// Throws DomainError when A∧B = ∅.
std::array<BoundReport, 3> product_rule_report(const Evaluator& mu, const Event& a,
                                               const Event& b, const Gamble& x);

/// Ordered pairs (i, j) of entries with entry i ≤GN entry j and
/// value i > value j. Pairs of indicators are compared as events.
std::vector<std::pair<std::size_t, std::size_t>> monotonicity_audit(const Assessment& a);

/// For B₁ ⊆ B₀ (throws DomainError otherwise):
///   [0] "nested.shrink":    μ(A|B₀) ≤ μ(A|B₁), applicable when A∧B₀∧¬B₁ = ∅
///   [1] "nested.restrict":  μ(A∧B₁|B₀) ≤ μ(A|B₁)
std::array<BoundReport, 2> nested_conditioning_report(const Evaluator& mu, const Event& a,
                                                      const Event& b1, const Event& b0);
///   [0] "nested.gamble":       μ(B₁X|B₀) ≤ μ(X|B₁), applicable when inf(X|B₁) ≥ 0
///   [1] "nested.gamble_ratio": μ(X|B₁) ≤ μ(B₁X|B₀)/μ(B₁|B₀), additionally
///       requiring a lower or precise evaluator and μ(X|B₁)·μ(B₁|B₀) > 0
std::array<BoundReport, 2> nested_conditioning_report(const Evaluator& mu, const Gamble& x,
                                                      const Event& b1, const Event& b0);

/// μ(B_*|B^*)·μ(X|B_*) + μ̄(¬B_*|B^*)·inf_B X as a lower bound for μ(X|B),
/// with inner and outer events taken over `p`. `truth`, when given, is
/// the value of μ(X|B) the bound is compared with. Not applicable when
/// B_* = ∅ or the evaluator is an upper one.
BoundReport inner_event_lower_bound(const Evaluator& mu, const Gamble& x, const Event& b,
                                    const Partition& p,
                                    std::optional<Rational> truth = std::nullopt);

/// ∑ xᵢ·μ((ωᵢ|B)_*) over the distinct values xᵢ of X on B, ωᵢ = B∧(X = xᵢ).
/// Not applicable when X is negative somewhere on B or the evaluator is an upper one.
BoundReport finite_values_lower_bound(const Evaluator& mu, const Gamble& x, const Event& b,
                                      const Partition& p,
                                      std::optional<Rational> truth = std::nullopt);

struct SignRelation {
  GnVerdict verdict;  ///< of (B₁X|B₀) against X|B₁
  std::string rationale;
};

/// GN comparison of B₁X|B₀ with X|B₁ read off the signs of X on B₁.
/// B₁ = B₀ makes the two operands identical. Throws DomainError unless
/// ∅ ≠ B₁ ⊆ B₀.
SignRelation sign_relation(const Gamble& x, const Event& b1, const Event& b0);

}  // namespace gnrel
