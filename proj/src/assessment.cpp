#include "gnrel/assessment.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <utility>

namespace gnrel {

std::string_view to_string(PrevisionKind kind) {
  switch (kind) {
    case PrevisionKind::precise: return "precise";
    case PrevisionKind::lower: return "lower";
    case PrevisionKind::upper: return "upper";
  }
  return "?";
}

std::string_view to_string(ConsistencyClass cls) {
  switch (cls) {
    case ConsistencyClass::dF: return "dF";
    case ConsistencyClass::W: return "W";
    case ConsistencyClass::convex: return "convex";
    case ConsistencyClass::one_convex: return "1convex";
  }
  return "?";
}

PrevisionKind parse_prevision_kind(std::string_view text) {
  if (text == "precise") return PrevisionKind::precise;
  if (text == "lower") return PrevisionKind::lower;
  if (text == "upper") return PrevisionKind::upper;
  throw DomainError("unknown prevision kind '" + std::string(text) + "'");
}

ConsistencyClass parse_consistency_class(std::string_view text) {
  if (text == "dF" || text == "df") return ConsistencyClass::dF;
  if (text == "W" || text == "w") return ConsistencyClass::W;
  if (text == "convex" || text == "C-convex") return ConsistencyClass::convex;
  if (text == "1convex" || text == "1-convex") return ConsistencyClass::one_convex;
  throw DomainError("unknown consistency class '" + std::string(text) + "'");
}

// -------------------------------------------------------------- Assessment

Assessment::Assessment(PrevisionKind kind, ConsistencyClass cls,
                       std::vector<AssessmentEntry> entries)
    : kind_(kind), class_(cls) {
  for (auto& entry : entries) {
    if (!universe_) {
      universe_ = entry.gamble.universe();
    } else {
      require_same_universe(universe_, entry.gamble.universe(), "assessment");
    }
    auto existing = std::find_if(entries_.begin(), entries_.end(), [&](const AssessmentEntry& e) {
      return e.gamble == entry.gamble;
    });
    if (existing != entries_.end()) {
      if (existing->value != entry.value) {
        throw DomainError("assessment gives two values to " + entry.gamble.to_string());
      }
      continue;
    }
    entries_.push_back(std::move(entry));
  }
}

Assessment Assessment::with(AssessmentEntry entry) const {
  auto entries = entries_;
  entries.push_back(std::move(entry));
  return Assessment(kind_, class_, std::move(entries));
}

Assessment Assessment::with(const ConditionalEvent& ce, const Rational& value) const {
  return with(AssessmentEntry{ConditionalGamble::indicator(ce), value});
}

std::size_t Assessment::find(const ConditionalGamble& gamble) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].gamble == gamble) return i;
  }
  return entries_.size();
}

std::vector<std::string> Assessment::necessary_condition_violations() const {
  std::vector<std::string> out;
  for (const auto& entry : entries_) {
    if (!entry.is_event()) continue;
    auto ce = entry.gamble.as_event();
    std::string label = ce.to_string() + " = " + to_string(entry.value);
    if (entry.value < 0 || entry.value > 1) out.push_back(label + " lies outside [0,1]");
    if (ce.conditioned().empty() && entry.value != 0) out.push_back(label + " but μ(∅|B) must be 0");
    if (ce.conditioned() == ce.conditioning() && entry.value != 1) {
      out.push_back(label + " but μ(B|B) must be 1");
    }
  }
  return out;
}

// ------------------------------------------------------- LayeredProbability

namespace {

// Layer index charging each world; throws on any broken layer invariant.
std::vector<std::size_t> assign_layers(const UniversePtr& u,
                                       const std::vector<std::vector<Rational>>& layers) {
  if (!u) throw DomainError("layered probability without a universe");
  if (layers.empty()) throw DomainError("layered probability needs at least one layer");
  constexpr std::size_t unassigned = static_cast<std::size_t>(-1);
  std::vector<std::size_t> layer_of(u->size(), unassigned);
  for (std::size_t k = 0; k < layers.size(); ++k) {
    const auto& layer = layers[k];
    if (layer.size() != u->size()) {
      throw DomainError("layer " + std::to_string(k) + " needs one mass per world");
    }
    Rational total = 0;
    for (std::size_t w = 0; w < layer.size(); ++w) {
      if (layer[w] < 0) throw DomainError("layer " + std::to_string(k) + " has a negative mass");
      if (layer[w] > 0) {
        if (layer_of[w] != unassigned) {
          throw DomainError("world '" + u->name(w) + "' is charged by two layers");
        }
        layer_of[w] = k;
      }
      total += layer[w];
    }
    if (total != 1) {
      throw DomainError("layer " + std::to_string(k) + " sums to " + to_string(total) + ", not 1");
    }
  }
  for (std::size_t w = 0; w < u->size(); ++w) {
    if (layer_of[w] == unassigned) {
      throw DomainError("world '" + u->name(w) + "' has no positive mass in any layer");
    }
  }
  return layer_of;
}

}  // namespace

LayeredProbability::LayeredProbability(UniversePtr universe,
                                       std::vector<std::vector<Rational>> layers)
    : universe_(std::move(universe)), layers_(std::move(layers)) {
  layer_of_ = assign_layers(universe_, layers_);
}

void validate(const LayeredProbability& p) { assign_layers(p.universe(), p.layers()); }

LayeredProbability LayeredProbability::uniform(UniversePtr universe) {
  std::vector<Rational> layer(universe->size(), Rational(1, static_cast<long>(universe->size())));
  for (auto& v : layer) v.canonicalize();
  return LayeredProbability(std::move(universe), {std::move(layer)});
}

std::size_t LayeredProbability::first_layer(const Event& b) const {
  require_same_universe(universe_, b.universe(), "layered evaluation");
  if (b.empty()) throw DomainError("conditioning event must not be impossible");
  std::size_t best = layers_.size();
  for (auto w : b.worlds()) best = std::min(best, layer_of_[w]);
  return best;
}

Rational LayeredProbability::probability(const ConditionalEvent& ce) const {
  std::size_t k = first_layer(ce.conditioning());
  const auto& layer = layers_[k];
  Rational num = 0;
  Rational den = 0;
  for (auto w : ce.conditioning().worlds()) {
    den += layer[w];
    if (ce.conditioned().contains(w)) num += layer[w];
  }
  return num / den;
}

Rational LayeredProbability::prevision(const ConditionalGamble& xb) const {
  std::size_t k = first_layer(xb.conditioning());
  const auto& layer = layers_[k];
  Rational num = 0;
  Rational den = 0;
  for (auto w : xb.conditioning().worlds()) {
    den += layer[w];
    num += layer[w] * xb.payoff()(w);
  }
  return num / den;
}

Rational eval_precise(const LayeredProbability& p, const ConditionalEvent& ce) {
  return p.probability(ce);
}

Rational eval_precise_gamble(const LayeredProbability& p, const ConditionalGamble& xb) {
  return p.prevision(xb);
}

// ---------------------------------------------------------------- CredalSet

CredalSet::CredalSet(std::vector<LayeredProbability> members) : members_(std::move(members)) {
  if (members_.empty()) throw DomainError("a credal set needs at least one member");
  for (const auto& m : members_) require_same_universe(universe(), m.universe(), "credal set");
}

Rational envelope_lower(const CredalSet& m, const ConditionalGamble& xb) {
  Rational best = m.members().front().prevision(xb);
  for (const auto& p : m.members()) {
    Rational v = p.prevision(xb);
    if (v < best) best = v;
  }
  return best;
}

Rational envelope_upper(const CredalSet& m, const ConditionalGamble& xb) {
  Rational best = m.members().front().prevision(xb);
  for (const auto& p : m.members()) {
    Rational v = p.prevision(xb);
    if (v > best) best = v;
  }
  return best;
}

// ---------------------------------------------------------------- Evaluator

std::string_view to_string(EvaluatorSide side) {
  switch (side) {
    case EvaluatorSide::precise: return "precise";
    case EvaluatorSide::lower: return "lower";
    case EvaluatorSide::upper: return "upper";
  }
  return "?";
}

Evaluator::Evaluator(EvaluatorSide side, Function value, Function conjugate)
    : side_(side), value_(std::move(value)), conjugate_(std::move(conjugate)) {}

Evaluator Evaluator::precise(LayeredProbability p) {
  auto fn = [p = std::move(p)](const ConditionalGamble& xb) { return p.prevision(xb); };
  return Evaluator(EvaluatorSide::precise, fn, fn);
}

Evaluator Evaluator::lower(CredalSet m) {
  return Evaluator(
      EvaluatorSide::lower, [m](const ConditionalGamble& xb) { return envelope_lower(m, xb); },
      [m](const ConditionalGamble& xb) { return envelope_upper(m, xb); });
}

Evaluator Evaluator::upper(CredalSet m) {
  return Evaluator(
      EvaluatorSide::upper, [m](const ConditionalGamble& xb) { return envelope_upper(m, xb); },
      [m](const ConditionalGamble& xb) { return envelope_lower(m, xb); });
}

Evaluator Evaluator::custom(EvaluatorSide side, Function value, Function conjugate) {
  if (!value) throw DomainError("custom evaluator needs a value function");
  if (!conjugate) {
    conjugate = [value](const ConditionalGamble& xb) { return Rational(-value(-xb)); };
  }
  return Evaluator(side, std::move(value), std::move(conjugate));
}

Rational Evaluator::operator()(const ConditionalGamble& xb) const { return value_(xb); }

Rational Evaluator::operator()(const ConditionalEvent& ce) const {
  return value_(ConditionalGamble::indicator(ce));
}

Rational Evaluator::conjugate(const ConditionalGamble& xb) const { return conjugate_(xb); }

Rational Evaluator::conjugate(const ConditionalEvent& ce) const {
  return conjugate_(ConditionalGamble::indicator(ce));
}

namespace {

PrevisionKind kind_for(EvaluatorSide side) {
  switch (side) {
    case EvaluatorSide::precise: return PrevisionKind::precise;
    case EvaluatorSide::lower: return PrevisionKind::lower;
    case EvaluatorSide::upper: return PrevisionKind::upper;
  }
  return PrevisionKind::precise;
}

}  // namespace

Assessment Evaluator::assess(std::span<const ConditionalEvent> targets,
                             ConsistencyClass cls) const {
  std::vector<AssessmentEntry> entries;
  for (const auto& ce : targets) entries.push_back({ConditionalGamble::indicator(ce), (*this)(ce)});
  return Assessment(kind_for(side_), cls, std::move(entries));
}

Assessment Evaluator::assess(std::span<const ConditionalGamble> targets,
                             ConsistencyClass cls) const {
  std::vector<AssessmentEntry> entries;
  for (const auto& xb : targets) entries.push_back({xb, (*this)(xb)});
  return Assessment(kind_for(side_), cls, std::move(entries));
}

// --------------------------------------------------------------- generators

LayeredProbability random_layered(std::uint64_t seed, const UniversePtr& universe,
                                  std::size_t max_layers) {
  if (max_layers == 0) throw DomainError("random_layered needs max_layers >= 1");
  std::mt19937_64 rng(seed);
  const std::size_t n = universe->size();
  std::size_t layer_count =
      std::uniform_int_distribution<std::size_t>(1, std::min(max_layers, n))(rng);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  // Cut the shuffled worlds into `layer_count` nonempty runs.
  std::vector<std::size_t> cuts(n - 1);
  std::iota(cuts.begin(), cuts.end(), 1);
  std::shuffle(cuts.begin(), cuts.end(), rng);
  cuts.resize(layer_count - 1);
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(n);

  std::uniform_int_distribution<long> mass(1, 9);
  std::vector<std::vector<Rational>> layers;
  std::size_t start = 0;
  for (std::size_t end : cuts) {
    std::vector<Rational> layer(n, 0);
    Rational total = 0;
    for (std::size_t i = start; i < end; ++i) {
      layer[order[i]] = mass(rng);
      total += layer[order[i]];
    }
    for (auto& v : layer) v /= total;
    layers.push_back(std::move(layer));
    start = end;
  }
  return LayeredProbability(universe, std::move(layers));
}

CredalSet random_credal(std::uint64_t seed, const UniversePtr& universe, std::size_t size,
                        std::size_t max_layers) {
  if (size == 0) throw DomainError("random_credal needs size >= 1");
  std::mt19937_64 rng(seed);
  std::vector<LayeredProbability> members;
  for (std::size_t i = 0; i < size; ++i) {
    members.push_back(random_layered(rng(), universe, max_layers));
  }
  return CredalSet(std::move(members));
}

}  // namespace gnrel
