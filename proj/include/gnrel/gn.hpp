#pragma once

#include <optional>
#include <string_view>

#include "gnrel/core.hpp"

namespace gnrel {

enum class GnVerdict { leq, geq, equivalent, incomparable };

/// "LEQ", "GEQ", "EQUIVALENT" or "INCOMPARABLE".
std::string_view to_string(GnVerdict verdict);

/// A|B ≤GN C|D iff A∧B ⇒ C∧D and ¬C∧D ⇒ ¬A∧B.
bool gn_leq(const ConditionalEvent& ab, const ConditionalEvent& cd);

/// Goodman-Nguyen conjunction and disjunction of conditional events.
/// Empty optional when the resulting conditioning event is impossible.
std::optional<ConditionalEvent> ce_and(const ConditionalEvent& ab, const ConditionalEvent& cd);
std::optional<ConditionalEvent> ce_or(const ConditionalEvent& ab, const ConditionalEvent& cd);

/// ab ≤GN cd decided as ab = ab ∧ cd. False when the conjunction is undefined.
bool gn_leq_via_algebra(const ConditionalEvent& ab, const ConditionalEvent& cd);

/// Conditional-gamble form: for every world,
///   I_B X + I_{¬B∧D} sup_B X  ≤  I_D Y + I_{B∧¬D} inf_D Y.
bool gn_leq(const ConditionalGamble& xb, const ConditionalGamble& yd);

GnVerdict gn_compare(const ConditionalEvent& left, const ConditionalEvent& right);
GnVerdict gn_compare(const ConditionalGamble& left, const ConditionalGamble& right);

/// The two conditional implications carried by A|B ≤GN C|D on B∧D:
///   A|B∧D ⇒ C|B∧D   and   ¬C|B∧D ⇒ ¬A|B∧D.
struct ConditionalImplications {
  Event common;  ///< B∧D
  ConditionalEvent antecedent;
  ConditionalEvent consequent;
  ConditionalEvent negated_antecedent;  ///< ¬C|B∧D
  ConditionalEvent negated_consequent;  ///< ¬A|B∧D
};

/// Requires ab ≤GN cd and B∧D ≠ ∅; throws DomainError otherwise.
ConditionalImplications implied_conditional_implications(const ConditionalEvent& ab,
                                                         const ConditionalEvent& cd);

}  // namespace gnrel
