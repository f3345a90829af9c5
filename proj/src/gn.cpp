#include "gnrel/gn.hpp"

namespace gnrel {

std::string_view to_string(GnVerdict verdict) {
  switch (verdict) {
    case GnVerdict::leq: return "LEQ";
    case GnVerdict::geq: return "GEQ";
    case GnVerdict::equivalent: return "EQUIVALENT";
    case GnVerdict::incomparable: return "INCOMPARABLE";
  }
  return "?";
}

bool gn_leq(const ConditionalEvent& ab, const ConditionalEvent& cd) {
  require_same_universe(ab.universe(), cd.universe(), "gn_leq");
  const Event& a_and_b = ab.conditioned();
  const Event& c_and_d = cd.conditioned();
  Event not_c_and_d = cd.conditioning() - c_and_d;
  Event not_a_and_b = ab.conditioning() - a_and_b;
  return a_and_b.subset_of(c_and_d) && not_c_and_d.subset_of(not_a_and_b);
}

std::optional<ConditionalEvent> ce_and(const ConditionalEvent& ab, const ConditionalEvent& cd) {
  require_same_universe(ab.universe(), cd.universe(), "ce_and");
  const Event& b = ab.conditioning();
  const Event& d = cd.conditioning();
  Event numerator = ab.conditioned() & cd.conditioned();
  Event denominator = (b - ab.conditioned()) | (d - cd.conditioned()) | (b & d);
  if (denominator.empty()) return std::nullopt;
  return ConditionalEvent(numerator, denominator);
}

std::optional<ConditionalEvent> ce_or(const ConditionalEvent& ab, const ConditionalEvent& cd) {
  require_same_universe(ab.universe(), cd.universe(), "ce_or");
  Event numerator = ab.conditioned() | cd.conditioned();
  Event denominator = numerator | (ab.conditioning() & cd.conditioning());
  if (denominator.empty()) return std::nullopt;
  return ConditionalEvent(numerator, denominator);
}

bool gn_leq_via_algebra(const ConditionalEvent& ab, const ConditionalEvent& cd) {
  auto meet = ce_and(ab, cd);
  return meet.has_value() && *meet == ab;
}

bool gn_leq(const ConditionalGamble& xb, const ConditionalGamble& yd) {
  require_same_universe(xb.universe(), yd.universe(), "gn_leq");
  const Event& b = xb.conditioning();
  const Event& d = yd.conditioning();
  const Gamble& x = xb.payoff();
  const Gamble& y = yd.payoff();
  // Worlds outside B∨D impose 0 ≤ 0.
  Event b_and_d = b & d;
  for (auto w : b_and_d.worlds()) {
    if (x(w) > y(w)) return false;
  }
  Event only_d = d - b;
  if (!only_d.empty()) {
    Rational sup_x = xb.sup();
    for (auto w : only_d.worlds()) {
      if (sup_x > y(w)) return false;
    }
  }
  Event only_b = b - d;
  if (!only_b.empty()) {
    Rational inf_y = yd.inf();
    for (auto w : only_b.worlds()) {
      if (x(w) > inf_y) return false;
    }
  }
  return true;
}

namespace {

GnVerdict verdict_from(bool leq, bool geq) {
  if (leq && geq) return GnVerdict::equivalent;
  if (leq) return GnVerdict::leq;
  if (geq) return GnVerdict::geq;
  return GnVerdict::incomparable;
}

}  // namespace

GnVerdict gn_compare(const ConditionalEvent& left, const ConditionalEvent& right) {
  return verdict_from(gn_leq(left, right), gn_leq(right, left));
}

GnVerdict gn_compare(const ConditionalGamble& left, const ConditionalGamble& right) {
  return verdict_from(gn_leq(left, right), gn_leq(right, left));
}

ConditionalImplications implied_conditional_implications(const ConditionalEvent& ab,
                                                         const ConditionalEvent& cd) {
  if (!gn_leq(ab, cd)) {
    throw DomainError("implied_conditional_implications: operands are not GN-related");
  }
  Event common = ab.conditioning() & cd.conditioning();
  if (common.empty()) {
    throw DomainError("implied_conditional_implications: B∧D is impossible");
  }
  ConditionalImplications out{
      common,
      ConditionalEvent(ab.conditioned(), common),
      ConditionalEvent(cd.conditioned(), common),
      ConditionalEvent(~cd.conditioned(), common),
      ConditionalEvent(~ab.conditioned(), common),
  };
  if (!out.antecedent.conditioned().subset_of(out.consequent.conditioned()) ||
      !out.negated_antecedent.conditioned().subset_of(out.negated_consequent.conditioned())) {
    throw std::logic_error("conditional implication failed for a GN-related pair");
  }
  return out;
}

}  // namespace gnrel
