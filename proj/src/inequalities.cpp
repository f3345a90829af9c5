#include "gnrel/inequalities.hpp"

#include <algorithm>

#include "gnrel/extension.hpp"

namespace gnrel {

namespace {

BoundReport leq_report(std::string name, Rational lhs, Rational rhs, std::string context) {
  BoundReport r;
  r.name = std::move(name);
  r.applicable = true;
  r.holds = lhs <= rhs;
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.context = std::move(context);
  return r;
}

BoundReport skipped(std::string name, std::string context) {
  BoundReport r;
  r.name = std::move(name);
  r.context = std::move(context);
  return r;
}

void require_nested(const Event& b1, const Event& b0) {
  require_same_universe(b1.universe(), b0.universe(), "nested conditioning");
  if (b1.empty()) throw DomainError("B1 must not be empty");
  if (!b1.subset_of(b0)) throw DomainError("B1 " + b1.to_string() + " is not contained in B0 " + b0.to_string());
}

bool lower_like(const Evaluator& mu) { return mu.side() != EvaluatorSide::upper; }

}  // namespace

std::array<BoundReport, 3> product_rule_report(const Evaluator& mu, const Event& a,
                                               const Event& b, const Gamble& x) {
  Event ab = a & b;
  if (ab.empty()) throw DomainError("product rule needs A∧B nonempty");
  Rational joint = mu(ConditionalGamble(x.restricted_to(a), b));
  Rational marginal = mu(ConditionalEvent(a, b));
  Rational conditional = mu(ConditionalGamble(x, ab));
  Rational product = marginal * conditional;
  std::string context = "A=" + a.to_string() + " B=" + b.to_string() + " mu(AX|B)=" +
                        to_string(joint) + " mu(A|B)=" + to_string(marginal) +
                        " mu(X|AB)=" + to_string(conditional);

  std::array<BoundReport, 3> out;
  out[0] = sgn(conditional) > 0 ? leq_report("product_rule.positive", product, joint, context)
                                : skipped("product_rule.positive", context);
  out[1] = sgn(conditional) < 0 ? leq_report("product_rule.negative", joint, product, context)
                                : skipped("product_rule.negative", context);
  BoundReport zero;
  zero.name = "product_rule.zero";
  zero.applicable = true;
  zero.lhs = joint;
  zero.rhs = product;
  zero.holds = (sgn(joint) == 0) == (sgn(product) == 0);
  zero.context = context;
  out[2] = std::move(zero);
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> monotonicity_audit(const Assessment& a) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const auto& entries = a.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = 0; j < entries.size(); ++j) {
      if (i == j || !(entries[i].value > entries[j].value)) continue;
      bool related = entries[i].is_event() && entries[j].is_event()
                         ? gn_leq(entries[i].gamble.as_event(), entries[j].gamble.as_event())
                         : gn_leq(entries[i].gamble, entries[j].gamble);
      if (related) out.emplace_back(i, j);
    }
  }
  return out;
}

std::array<BoundReport, 2> nested_conditioning_report(const Evaluator& mu, const Event& a,
                                                      const Event& b1, const Event& b0) {
  require_nested(b1, b0);
  Rational narrow = mu(ConditionalEvent(a, b1));
  std::string context = "A=" + a.to_string() + " B1=" + b1.to_string() + " B0=" + b0.to_string();
  std::array<BoundReport, 2> out;
  if ((a & b0 & ~b1).empty()) {
    out[0] = leq_report("nested.shrink", mu(ConditionalEvent(a, b0)), narrow, context);
  } else {
    out[0] = skipped("nested.shrink", context + " (A∧B0∧¬B1 nonempty)");
  }
  out[1] = leq_report("nested.restrict", mu(ConditionalEvent(a & b1, b0)), narrow, context);
  return out;
}

std::array<BoundReport, 2> nested_conditioning_report(const Evaluator& mu, const Gamble& x,
                                                      const Event& b1, const Event& b0) {
  require_nested(b1, b0);
  std::string context = "B1=" + b1.to_string() + " B0=" + b0.to_string();
  std::array<BoundReport, 2> out;
  if (sgn(inf_over(x, b1)) < 0) {
    out[0] = skipped("nested.gamble", context + " (X takes negative values on B1)");
    out[1] = skipped("nested.gamble_ratio", out[0].context);
    return out;
  }
  Rational narrow = mu(ConditionalGamble(x, b1));
  Rational wide = mu(ConditionalGamble(x.restricted_to(b1), b0));
  out[0] = leq_report("nested.gamble", wide, narrow, context);
  if (!lower_like(mu)) {
    out[1] = skipped("nested.gamble_ratio", context + " (needs a lower evaluator)");
    return out;
  }
  Rational weight = mu(ConditionalEvent(b1, b0));
  if (sgn(narrow * weight) <= 0) {
    out[1] = skipped("nested.gamble_ratio", context + " (mu(X|B1)·mu(B1|B0) is not positive)");
  } else {
    out[1] = leq_report("nested.gamble_ratio", narrow, wide / weight, context);
  }
  return out;
}

BoundReport inner_event_lower_bound(const Evaluator& mu, const Gamble& x, const Event& b,
                                    const Partition& p, std::optional<Rational> truth) {
  const std::string name = "inner_event_bound";
  require_same_universe(x.universe(), b.universe(), name);
  Event inner = inner_event(b, p);
  Event outer = outer_event(b, p);
  std::string context = "B=" + b.to_string() + " B_*=" + inner.to_string() +
                        " B^*=" + outer.to_string();
  if (!lower_like(mu)) return skipped(name, context + " (needs a lower evaluator)");
  if (inner.empty()) return skipped(name, context + " (B_* is empty)");

  Rational bound = mu(ConditionalEvent(inner, outer)) * mu(ConditionalGamble(x, inner)) +
                   mu.conjugate(ConditionalEvent(outer - inner, outer)) * inf_over(x, b);
  if (!truth) {
    BoundReport r = skipped(name, context);
    r.applicable = true;
    r.lhs = bound;
    return r;
  }
  return leq_report(name, bound, *truth, context);
}

BoundReport finite_values_lower_bound(const Evaluator& mu, const Gamble& x, const Event& b,
                                      const Partition& p, std::optional<Rational> truth) {
  const std::string name = "level_set_bound";
  require_same_universe(x.universe(), b.universe(), name);
  std::string context = "B=" + b.to_string();
  if (!lower_like(mu)) return skipped(name, context + " (needs a lower evaluator)");
  if (sgn(inf_over(x, b)) < 0) return skipped(name, context + " (X takes negative values on B)");

  std::vector<Rational> levels;
  for (auto w : b.worlds()) {
    if (std::find(levels.begin(), levels.end(), x(w)) == levels.end()) levels.push_back(x(w));
  }
  std::sort(levels.begin(), levels.end());

  Rational bound = 0;
  for (const auto& level : levels) {
    if (sgn(level) == 0) continue;
    Event omega = Event::none(b.universe());
    for (auto w : b.worlds()) {
      if (x(w) == level) omega = omega.with(w);
    }
    ConditionalEvent target(omega, b);
    // (ω|B)_* only vanishes for ω = B, whose value is 1.
    auto inner = conditional_inner(target, p);
    bound += level * (inner ? mu(*inner) : Rational(1));
  }
  if (!truth) {
    BoundReport r = skipped(name, context);
    r.applicable = true;
    r.lhs = bound;
    return r;
  }
  return leq_report(name, bound, *truth, context);
}

SignRelation sign_relation(const Gamble& x, const Event& b1, const Event& b0) {
  require_nested(b1, b0);
  require_same_universe(x.universe(), b1.universe(), "sign_relation");
  if (b1 == b0) return {GnVerdict::equivalent, "B1 = B0: both operands are X|B1"};
  Rational lo = inf_over(x, b1);
  Rational hi = sup_over(x, b1);
  if (sgn(lo) >= 0 && sgn(hi) <= 0) return {GnVerdict::equivalent, "X is 0 on B1"};
  if (sgn(lo) >= 0) return {GnVerdict::leq, "inf(X|B1) = " + to_string(lo) + " >= 0"};
  if (sgn(hi) <= 0) return {GnVerdict::geq, "sup(X|B1) = " + to_string(hi) + " <= 0"};
  return {GnVerdict::incomparable,
          "X takes both signs on B1: inf " + to_string(lo) + ", sup " + to_string(hi)};
}

}  // namespace gnrel
