#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gnrel/assessment.hpp"

namespace gnrel {

struct GainTerm {
  ConditionalGamble gamble;
  Rational value;  ///< assessed μᵢ
  Rational stake;  ///< sᵢ
};

/// A betting gain ∑ sᵢ Bᵢ (Xᵢ − μᵢ), with the term at `against` (when set)
/// entering with a minus sign, as in the W-coherence and convexity gains.
/// Zero-stake terms still count towards the conditioning event.
struct GainSpec {
  std::vector<GainTerm> terms;
  std::optional<std::size_t> against;

  /// B = ⋁ Bᵢ over all terms.
  Event conditioning() const;
};

Rational evaluate_gain(const GainSpec& gain, std::size_t world);
/// max over the worlds of the conditioning event of the gain.
Rational max_conditioned_gain(const GainSpec& gain);

struct Verdict {
  bool consistent = true;
  /// "dF", "W", "convex", "1convex" or "ASL".
  std::string criterion;
  /// A gain whose conditioned maximum is strictly negative.
  std::optional<GainSpec> witness;
  /// True when the witness bets on the conjugate (negated) assessment,
  /// which happens for upper previsions.
  bool witness_conjugated = false;
  /// 0|B entries added with value 0 to centre a convexity check.
  std::vector<ConditionalGamble> centering_added;
};

/// Largest number of entries (centering entries included) that check()
/// will enumerate subfamilies of.
inline constexpr std::size_t max_check_entries = 16;

/// Decides whether `a` is consistent in the sense of `cls`.
///
/// Every nonempty subfamily T of the entries, and for W and convex every
/// choice of the bet placed against, gets one exact LP: maximize ε with
/// gain(w) ≤ −ε at every world of B_T and normalized stakes. A positive
/// optimum is a violation and its stakes are the witness. The 1-convex
/// class only uses pairs with unit stakes. Lower previsions are checked
/// directly, upper ones through conjugate(), and precise values tagged
/// with an imprecise class must pass both as lower and as upper.
Verdict check(const Assessment& a, ConsistencyClass cls);
inline Verdict check(const Assessment& a) { return check(a, a.intended_class()); }

/// (−X|B, −μ) for every entry with lower and upper swapped.
Assessment conjugate(const Assessment& a);

/// Avoiding sure loss: no nonnegative combination of bets in favour of
/// the entries has a strictly negative conditioned maximum.
Verdict check_avoids_sure_loss(const Assessment& a);

struct AslCounterexample {
  Assessment assessment;
  std::size_t smaller;  ///< entry index of E
  std::size_t larger;   ///< entry index of F ⊇ E with μ(E) > μ(F)
};

/// An unconditional lower probability that avoids sure loss while
/// μ(E) > μ(F) for some E ⊆ F. All three properties are re-verified
/// before returning.
AslCounterexample asl_monotonicity_counterexample();

}  // namespace gnrel
