#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gnrel/core.hpp"

namespace gnrel {

enum class PrevisionKind { precise, lower, upper };
enum class ConsistencyClass { dF, W, convex, one_convex };

std::string_view to_string(PrevisionKind kind);
std::string_view to_string(ConsistencyClass cls);
PrevisionKind parse_prevision_kind(std::string_view text);
/// Accepts "dF", "W", "convex" (or "C-convex") and "1convex" (or "1-convex").
ConsistencyClass parse_consistency_class(std::string_view text);

struct AssessmentEntry {
  ConditionalGamble gamble;
  Rational value;

  bool is_event() const { return gamble.is_indicator(); }
};

/// A finite list of (conditional gamble, value) pairs with a kind tag
/// (precise, lower, upper) and the consistency class it is meant to satisfy.
///
/// Exact duplicates collapse; the same conditional gamble with two
/// different values is rejected. The [0,1] range and μ(∅|B) = 0,
/// μ(B|B) = 1 conditions for event entries are *not* enforced here, since
/// the coherence checks must be able to reject assessments that break
/// them; see necessary_condition_violations().
class Assessment {
 public:
  Assessment(PrevisionKind kind, ConsistencyClass cls, std::vector<AssessmentEntry> entries = {});

  PrevisionKind kind() const { return kind_; }
  ConsistencyClass intended_class() const { return class_; }
  const std::vector<AssessmentEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  /// Universe of the entries, or null for an empty assessment.
  const UniversePtr& universe() const { return universe_; }

  /// Copy with one more entry appended.
  Assessment with(AssessmentEntry entry) const;
  Assessment with(const ConditionalEvent& ce, const Rational& value) const;

  /// Index of the entry for `gamble`, or size() when absent.
  std::size_t find(const ConditionalGamble& gamble) const;

  /// Human-readable descriptions of event entries that break
  /// μ(A|B) ∈ [0,1], μ(∅|B) = 0 or μ(B|B) = 1.
  std::vector<std::string> necessary_condition_violations() const;

 private:
  PrevisionKind kind_;
  ConsistencyClass class_;
  std::vector<AssessmentEntry> entries_;
  UniversePtr universe_;
};

/// A full conditional probability on a finite universe, stored as a stack
/// of probability vectors with pairwise-disjoint supports covering every
/// world. P(A|B) uses the first layer giving B positive mass.
class LayeredProbability {
 public:
  LayeredProbability(UniversePtr universe, std::vector<std::vector<Rational>> layers);

  static LayeredProbability uniform(UniversePtr universe);

  const UniversePtr& universe() const { return universe_; }
  const std::vector<std::vector<Rational>>& layers() const { return layers_; }
  std::size_t layer_of(std::size_t world) const { return layer_of_[world]; }

  Rational probability(const ConditionalEvent& ce) const;
  Rational prevision(const ConditionalGamble& xb) const;

 private:
  std::size_t first_layer(const Event& b) const;

  UniversePtr universe_;
  std::vector<std::vector<Rational>> layers_;
  std::vector<std::size_t> layer_of_;
};

Rational eval_precise(const LayeredProbability& p, const ConditionalEvent& ce);
Rational eval_precise_gamble(const LayeredProbability& p, const ConditionalGamble& xb);

/// Nonempty finite set of layered probabilities on one universe.
class CredalSet {
 public:
  explicit CredalSet(std::vector<LayeredProbability> members);

  const std::vector<LayeredProbability>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  const UniversePtr& universe() const { return members_.front().universe(); }

 private:
  std::vector<LayeredProbability> members_;
};

Rational envelope_lower(const CredalSet& m, const ConditionalGamble& xb);
Rational envelope_upper(const CredalSet& m, const ConditionalGamble& xb);

enum class EvaluatorSide { precise, lower, upper };
std::string_view to_string(EvaluatorSide side);

/// An uncertainty measure queried pointwise on conditional gambles: a
/// precise layered probability, the lower or upper envelope of a credal
/// set, or a caller-supplied function.
class Evaluator {
 public:
  using Function = std::function<Rational(const ConditionalGamble&)>;

  static Evaluator precise(LayeredProbability p);
  static Evaluator lower(CredalSet m);
  static Evaluator upper(CredalSet m);
  /// `value` must behave as a measure of the stated side; `conjugate`
  /// defaults to X|B ↦ −value(−X|B).
  static Evaluator custom(EvaluatorSide side, Function value, Function conjugate = {});

  EvaluatorSide side() const { return side_; }

  Rational operator()(const ConditionalGamble& xb) const;
  Rational operator()(const ConditionalEvent& ce) const;
  /// Conjugate measure: −μ(−X|B). Upper envelope for a lower envelope,
  /// and the measure itself for a precise probability.
  Rational conjugate(const ConditionalGamble& xb) const;
  Rational conjugate(const ConditionalEvent& ce) const;

  /// Precise, lower or upper assessment of `targets` under this measure.
  Assessment assess(std::span<const ConditionalEvent> targets, ConsistencyClass cls) const;
  Assessment assess(std::span<const ConditionalGamble> targets, ConsistencyClass cls) const;

 private:
  Evaluator(EvaluatorSide side, Function value, Function conjugate);

  EvaluatorSide side_;
  Function value_;
  Function conjugate_;
};

/// Deterministic for a fixed seed. Layer supports form a random ordered
/// set partition of the worlds into at most `max_layers` layers; masses
/// are random positive rationals normalized per layer.
LayeredProbability random_layered(std::uint64_t seed, const UniversePtr& universe,
                                  std::size_t max_layers);
CredalSet random_credal(std::uint64_t seed, const UniversePtr& universe, std::size_t size,
                        std::size_t max_layers = 2);

/// Throws DomainError describing the first broken invariant.
void validate(const LayeredProbability& p);

}  // namespace gnrel
