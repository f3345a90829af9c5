#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gnrel/assessment.hpp"

namespace gnrel {

/// (C|D)_* = (C∧D)_* | [(C∧D)_* ∨ (¬C∧D)^*], the GN-largest conditional
/// event over the partition lying below C|D. Empty when the conditioning
/// event vanishes.
std::optional<ConditionalEvent> conditional_inner(const ConditionalEvent& cd, const Partition& p);
/// (C|D)^* = (C∧D)^* | [(C∧D)^* ∨ (¬C∧D)_*], the GN-smallest one above it.
std::optional<ConditionalEvent> conditional_outer(const ConditionalEvent& cd, const Partition& p);

/// Largest partition size accepted by the enumerating operations below.
inline constexpr std::size_t max_enumerated_blocks = 12;

/// Every A|B with A, B unions of blocks of `p` and B ≠ ∅ (3^k − 1 items).
std::vector<ConditionalEvent> conditional_domain(const Partition& p);
/// {A|B in the domain : A|B ≤GN cd}.
std::vector<ConditionalEvent> gn_lower_set(const ConditionalEvent& cd, const Partition& p);
/// {A|B in the domain : cd ≤GN A|B}.
std::vector<ConditionalEvent> gn_upper_set(const ConditionalEvent& cd, const Partition& p);

struct ExtensionInterval {
  ConditionalEvent target;
  Rational low;
  Rational high;
  ConditionalEvent low_witness;   ///< (C|D)_*
  ConditionalEvent high_witness;  ///< (C|D)^*
};

/// [μ((C|D)_*), μ((C|D)^*)]: the values at C|D compatible with μ on the
/// partition's conditional domain. `mu` must be defined on that domain.
ExtensionInterval extension_interval(const Evaluator& mu, const ConditionalEvent& cd,
                                     const Partition& p);

/// Lower (or precise) evaluators are read at the inner conditional event,
/// upper ones at the outer conditional event.
std::vector<Rational> natural_extension(const Evaluator& mu,
                                        std::span<const ConditionalEvent> targets,
                                        const Partition& p);

/// The opposite choice: a lower evaluator read at (C|D)^*, an upper one at
/// (C|D)_*. Only one target at a time.
Rational upper_extension(const Evaluator& mu, const ConditionalEvent& cd, const Partition& p);
Rational upper_extension(const Evaluator& mu, std::span<const ConditionalEvent> targets,
                         const Partition& p);

/// Lower and upper assessments P((·)_*), P((·)^*) of `targets`, tagged W.
std::pair<Assessment, Assessment> df_to_imprecise(const LayeredProbability& p,
                                                  std::span<const ConditionalEvent> targets,
                                                  const Partition& part);

}  // namespace gnrel
