#include "gnrel/extension.hpp"

#include "gnrel/gn.hpp"

namespace gnrel {

namespace {

std::optional<ConditionalEvent> assemble(const Event& conditioned, const Event& rest) {
  Event conditioning = conditioned | rest;
  if (conditioning.empty()) return std::nullopt;
  return ConditionalEvent(conditioned, conditioning);
}

void require_nontrivial(const ConditionalEvent& cd) {
  if (cd.is_trivial()) {
    throw DomainError("trivial target " + cd.to_string() +
                      ": its value is fixed at 0 for ∅|B and 1 for B|B");
  }
}

ConditionalEvent inner_or_throw(const ConditionalEvent& cd, const Partition& p) {
  auto ce = conditional_inner(cd, p);
  if (!ce) throw DomainError("inner conditional event of " + cd.to_string() + " is undefined");
  return *ce;
}

ConditionalEvent outer_or_throw(const ConditionalEvent& cd, const Partition& p) {
  auto ce = conditional_outer(cd, p);
  if (!ce) throw DomainError("outer conditional event of " + cd.to_string() + " is undefined");
  return *ce;
}

void require_enumerable(const Partition& p) {
  if (p.size() > max_enumerated_blocks) {
    throw SizeError("conditional domain enumeration supports at most " +
                    std::to_string(max_enumerated_blocks) + " blocks, got " +
                    std::to_string(p.size()));
  }
}

}  // namespace

std::optional<ConditionalEvent> conditional_inner(const ConditionalEvent& cd, const Partition& p) {
  require_same_universe(cd.universe(), p.universe(), "conditional_inner");
  const Event& d = cd.conditioning();
  const Event& cd_and = cd.conditioned();
  return assemble(inner_event(cd_and, p), outer_event(d - cd_and, p));
}

std::optional<ConditionalEvent> conditional_outer(const ConditionalEvent& cd, const Partition& p) {
  require_same_universe(cd.universe(), p.universe(), "conditional_outer");
  const Event& d = cd.conditioning();
  const Event& cd_and = cd.conditioned();
  return assemble(outer_event(cd_and, p), inner_event(d - cd_and, p));
}

std::vector<ConditionalEvent> conditional_domain(const Partition& p) {
  require_enumerable(p);
  const std::size_t k = p.size();
  // Each block is outside B (0), in B but not A (1), or in A∧B (2).
  std::vector<int> digit(k, 0);
  std::vector<ConditionalEvent> out;
  for (;;) {
    std::size_t i = 0;
    while (i < k && digit[i] == 2) digit[i++] = 0;
    if (i == k) break;
    ++digit[i];
    std::uint64_t a_mask = 0, b_mask = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (digit[j] >= 1) b_mask |= std::uint64_t{1} << j;
      if (digit[j] == 2) a_mask |= std::uint64_t{1} << j;
    }
    out.emplace_back(p.union_of(a_mask), p.union_of(b_mask));
  }
  return out;
}

std::vector<ConditionalEvent> gn_lower_set(const ConditionalEvent& cd, const Partition& p) {
  require_same_universe(cd.universe(), p.universe(), "gn_lower_set");
  std::vector<ConditionalEvent> out;
  for (auto& ab : conditional_domain(p)) {
    if (gn_leq(ab, cd)) out.push_back(std::move(ab));
  }
  return out;
}

std::vector<ConditionalEvent> gn_upper_set(const ConditionalEvent& cd, const Partition& p) {
  require_same_universe(cd.universe(), p.universe(), "gn_upper_set");
  std::vector<ConditionalEvent> out;
  for (auto& ab : conditional_domain(p)) {
    if (gn_leq(cd, ab)) out.push_back(std::move(ab));
  }
  return out;
}

ExtensionInterval extension_interval(const Evaluator& mu, const ConditionalEvent& cd,
                                     const Partition& p) {
  require_nontrivial(cd);
  ConditionalEvent lo = inner_or_throw(cd, p);
  ConditionalEvent hi = outer_or_throw(cd, p);
  return {cd, mu(lo), mu(hi), lo, hi};
}

std::vector<Rational> natural_extension(const Evaluator& mu,
                                        std::span<const ConditionalEvent> targets,
                                        const Partition& p) {
  std::vector<Rational> out;
  out.reserve(targets.size());
  for (const auto& cd : targets) {
    require_nontrivial(cd);
    out.push_back(mu.side() == EvaluatorSide::upper ? mu(outer_or_throw(cd, p))
                                                    : mu(inner_or_throw(cd, p)));
  }
  return out;
}

Rational upper_extension(const Evaluator& mu, const ConditionalEvent& cd, const Partition& p) {
  require_nontrivial(cd);
  return mu.side() == EvaluatorSide::upper ? mu(inner_or_throw(cd, p))
                                           : mu(outer_or_throw(cd, p));
}

Rational upper_extension(const Evaluator& mu, std::span<const ConditionalEvent> targets,
                         const Partition& p) {
  if (targets.size() != 1) {
    throw UnsupportedOperation("upper extension is computed for exactly one target, got " +
                               std::to_string(targets.size()));
  }
  return upper_extension(mu, targets.front(), p);
}

std::pair<Assessment, Assessment> df_to_imprecise(const LayeredProbability& p,
                                                  std::span<const ConditionalEvent> targets,
                                                  const Partition& part) {
  std::vector<AssessmentEntry> lower, upper;
  for (const auto& cd : targets) {
    require_nontrivial(cd);
    auto target = ConditionalGamble::indicator(cd);
    lower.push_back({target, p.probability(inner_or_throw(cd, part))});
    upper.push_back({target, p.probability(outer_or_throw(cd, part))});
  }
  return {Assessment(PrevisionKind::lower, ConsistencyClass::W, std::move(lower)),
          Assessment(PrevisionKind::upper, ConsistencyClass::W, std::move(upper))};
}

}  // namespace gnrel
