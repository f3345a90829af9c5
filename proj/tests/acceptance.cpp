// Acceptance suite: one PASS/FAIL line per criterion, exact rationals throughout.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "gnrel/coherence.hpp"
#include "gnrel/extension.hpp"
#include "gnrel/gn.hpp"
#include "gnrel/inequalities.hpp"
#include "support.hpp"

using namespace gnrel;
using support::to_set;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool oracle_leq(const ConditionalEvent& l, const ConditionalEvent& r) {
  return oracle::gn_leq(to_set(l.conditioned()), to_set(l.conditioning()), to_set(r.conditioned()),
                        to_set(r.conditioning()));
}

bool oracle_leq(const ConditionalGamble& l, const ConditionalGamble& r) {
  return oracle::gn_leq_gamble(l.payoff().values(), to_set(l.conditioning()), r.payoff().values(),
                               to_set(r.conditioning()));
}

Rational oracle_gain(const GainSpec& g, std::size_t w) {
  Rational total = 0;
  for (std::size_t i = 0; i < g.terms.size(); ++i) {
    const auto& t = g.terms[i];
    if (!t.gamble.conditioning().contains(w)) continue;
    Rational bet = t.stake * (t.gamble.payoff()(w) - t.value);
    total += g.against == i ? Rational(-bet) : bet;
  }
  return total;
}

bool witness_sound(const Verdict& v) {
  if (v.consistent) return !v.witness;
  if (!v.witness) return false;
  std::optional<Rational> best;
  for (auto w : v.witness->conditioning().worlds()) {
    Rational g = oracle_gain(*v.witness, w);
    if (!best || g > *best) best = g;
  }
  return best && *best < 0;
}

// Block masses on the first world of each block, other worlds in later singleton layers.
LayeredProbability block_measure(const Partition& p, const std::vector<std::vector<Rational>>& block_layers) {
  const auto& u = p.universe();
  std::vector<std::vector<Rational>> layers;
  std::vector<bool> charged(u->size(), false);
  for (const auto& bl : block_layers) {
    std::vector<Rational> layer(u->size());
    for (std::size_t j = 0; j < p.size(); ++j) {
      auto w = p.blocks()[j].worlds().front();
      layer[w] = bl[j];
      if (bl[j] > 0) charged[w] = true;
    }
    layers.push_back(layer);
  }
  for (std::size_t w = 0; w < u->size(); ++w) {
    if (charged[w]) continue;
    std::vector<Rational> single(u->size());
    single[w] = 1;
    layers.push_back(single);
  }
  return LayeredProbability(u, layers);
}

// Random one- or two-layer block measure.
std::vector<std::vector<Rational>> random_block_layers(std::mt19937_64& rng, std::size_t k) {
  std::uniform_int_distribution<int> mass(0, 3);
  std::vector<Rational> first(k), second(k);
  Rational s1 = 0, s2 = 0;
  for (auto& v : first) s1 += (v = mass(rng));
  if (s1 == 0) first[0] = s1 = 1;
  for (std::size_t j = 0; j < k; ++j) {
    first[j] /= s1;
    if (first[j] == 0) s2 += (second[j] = 1 + mass(rng));
  }
  std::vector<std::vector<Rational>> out{first};
  if (s2 > 0) {
    for (auto& v : second) v /= s2;
    out.push_back(second);
  }
  return out;
}

Partition random_partition(std::mt19937_64& rng, const UniversePtr& u) {
  auto parts = support::all_partitions(u);
  return parts[rng() % parts.size()];
}

// ------------------------------------------------------------------ criteria

Outcome football() {
  auto t0 = std::chrono::steady_clock::now();
  auto u = make_universe({"w1", "w2", "w3", "w4", "w5"});
  Event b = Event::of(u, {0}), s = Event::of(u, {1, 2}), t = Event::of(u, {3, 4});
  Event f = Event::of(u, {0, 1, 3});
  Partition p(u, {b, s, t});
  ConditionalEvent target(s, f);
  auto outer = conditional_outer(target, p);
  auto inner = conditional_inner(target, p);
  bool ok = outer && inner && *outer == ConditionalEvent(s, s | b) &&
            *inner == ConditionalEvent(Event::none(u), b | t);
  double secs = seconds_since(t0);
  std::ostringstream d;
  d << "outer " << (outer ? outer->to_string() : "-") << ", inner " << (inner ? inner->to_string() : "-")
    << ", " << secs << " s";
  return {ok && secs < 1.0, d.str()};
}

template <class F>
Outcome sweep_pairs(std::size_t max_n, F&& agree) {
  std::size_t compared = 0, bad = 0;
  std::string first;
  for (std::size_t n = 1; n <= max_n; ++n) {
    auto u = make_universe(n);
    std::vector<ConditionalEvent> events;
    for (const auto& ce : support::all_conditional_events(u)) {
      if (!ce.is_trivial()) events.push_back(ce);
    }
    for (const auto& l : events) {
      for (const auto& r : events) {
        ++compared;
        if (!agree(l, r)) {
          if (bad++ == 0) first = l.to_string() + " vs " + r.to_string();
        }
      }
    }
  }
  std::ostringstream d;
  d << compared << " pairs, " << bad << " discrepancies" << (bad ? " (first: " + first + ")" : "");
  return {bad == 0, d.str()};
}

Outcome gamble_form() {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o = sweep_pairs(4, [](const ConditionalEvent& l, const ConditionalEvent& r) {
    bool events = gn_leq(l, r);
    return events == gn_leq(ConditionalGamble::indicator(l), ConditionalGamble::indicator(r)) &&
           events == oracle_leq(l, r);
  });
  double secs = seconds_since(t0);
  o.detail += ", " + std::to_string(secs) + " s";
  o.pass = o.pass && secs < 120;
  return o;
}

Outcome algebra_form() {
  return sweep_pairs(4, [](const ConditionalEvent& l, const ConditionalEvent& r) {
    return gn_leq_via_algebra(l, r) == gn_leq(l, r);
  });
}

Outcome partial_order() {
  std::size_t bad = 0, triples = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    auto u = make_universe(n);
    auto events = support::all_conditional_events(u);
    const std::size_t m = events.size();
    std::vector<char> leq(m * m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) leq[i * m + j] = gn_leq(events[i], events[j]);
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (!leq[i * m + i]) ++bad;
      for (std::size_t j = 0; j < m; ++j) {
        if (i != j && leq[i * m + j] && leq[j * m + i]) ++bad;
        if (!leq[i * m + j]) continue;
        for (std::size_t k = 0; k < m; ++k) {
          ++triples;
          if (leq[j * m + k] && !leq[i * m + k]) ++bad;
        }
      }
    }
  }
  return {bad == 0, std::to_string(triples) + " chains checked, " + std::to_string(bad) + " failures"};
}

Outcome monotonicity() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2024);
  std::size_t pairs = 0, bad = 0;
  for (std::uint64_t trial = 0; trial < 1000; ++trial) {
    auto u = make_universe(1 + trial % 5);
    CredalSet m = random_credal(trial, u, 1 + trial % 3, 2);
    Evaluator lo = Evaluator::lower(m), up = Evaluator::upper(m);
    std::vector<ConditionalEvent> events;
    std::vector<ConditionalGamble> gambles;
    for (int i = 0; i < 20; ++i) {
      events.emplace_back(support::random_event(rng, u), support::random_event(rng, u, true));
      gambles.emplace_back(support::random_gamble(rng, u), support::random_event(rng, u, true));
    }
    for (const auto& l : events) {
      for (const auto& r : events) {
        if (!gn_leq(l, r) || !oracle_leq(l, r)) continue;
        ++pairs;
        if (lo(l) > lo(r) || up(l) > up(r)) ++bad;
      }
    }
    for (const auto& l : gambles) {
      for (const auto& r : gambles) {
        if (!gn_leq(l, r) || !oracle_leq(l, r)) continue;
        ++pairs;
        if (lo(l) > lo(r) || up(l) > up(r)) ++bad;
      }
    }
  }
  double secs = seconds_since(t0);
  std::ostringstream d;
  d << pairs << " related pairs, " << bad << " violations, " << secs << " s";
  return {bad == 0 && pairs > 0 && secs < 300, d.str()};
}

Outcome endpoints() {
  std::mt19937_64 rng(77);
  const Rational delta = q(1, 1000);
  std::size_t instances = 0, bad = 0;
  std::string first;
  for (std::uint64_t trial = 0; instances < 60 && trial < 2000; ++trial) {
    auto u = make_universe(2 + trial % 4);
    Partition p = random_partition(rng, u);
    if (p.size() == u->size()) continue;  // every target would be measurable
    std::vector<ConditionalEvent> all = support::all_conditional_events(u);
    const ConditionalEvent& cd = all[rng() % all.size()];
    if (cd.is_trivial() || cd.is_measurable(p)) continue;

    // Rotate through a precise measure, a lower envelope and an upper envelope.
    int flavour = static_cast<int>(instances % 3);
    std::vector<LayeredProbability> members;
    for (std::size_t i = 0; i < (flavour == 0 ? 1u : 2u); ++i) {
      members.push_back(block_measure(p, random_block_layers(rng, p.size())));
    }
    Evaluator mu = flavour == 0 ? Evaluator::precise(members.front())
                   : flavour == 1 ? Evaluator::lower(CredalSet(members))
                                  : Evaluator::upper(CredalSet(members));
    ConsistencyClass cls = flavour == 0 ? ConsistencyClass::dF : ConsistencyClass::W;

    ExtensionInterval iv = extension_interval(mu, cd, p);
    auto domain = conditional_domain(p);
    std::vector<ConditionalEvent> restriction{iv.low_witness, iv.high_witness};
    while (restriction.size() < 4) restriction.push_back(domain[rng() % domain.size()]);
    Assessment base = mu.assess(std::span<const ConditionalEvent>(restriction), cls);

    bool ok = check(base.with(cd, iv.low)).consistent && check(base.with(cd, iv.high)).consistent &&
              !check(base.with(cd, iv.low - delta)).consistent &&
              !check(base.with(cd, iv.high + delta)).consistent;
    if (!ok && bad++ == 0) first = cd.to_string();
    ++instances;
  }
  std::ostringstream d;
  d << instances << " instances, " << bad << " failures" << (bad ? " (first: " + first + ")" : "");
  return {instances >= 50 && bad == 0, d.str()};
}

Outcome dominance() {
  std::mt19937_64 rng(404);
  std::size_t checks = 0, bad = 0, oracle_bad = 0;
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    auto u = make_universe(2 + trial % 4);
    Partition p = random_partition(rng, u);
    std::size_t size = 1 + trial % 3;
    std::vector<LayeredProbability> members;
    std::vector<std::vector<std::vector<Rational>>> block_layers;
    for (std::size_t i = 0; i < size; ++i) {
      block_layers.push_back(random_block_layers(rng, p.size()));
      members.push_back(block_measure(p, block_layers.back()));
    }
    Evaluator lo = Evaluator::lower(CredalSet(members));
    std::vector<std::vector<std::size_t>> blocks;
    for (const auto& b : p.blocks()) blocks.push_back(b.worlds());
    std::vector<ConditionalEvent> targets;
    for (const auto& ce : support::all_conditional_events(u)) {
      if (!ce.is_trivial()) targets.push_back(ce);
    }
    std::vector<Rational> natural = natural_extension(lo, targets, p);
    for (std::size_t t = 0; t < targets.size(); ++t) {
      // Least value over all refinements of all members.
      std::optional<Rational> least;
      for (const auto& bl : block_layers) {
        auto r = oracle::refinement_range(u->size(), blocks, bl, to_set(targets[t].conditioned()),
                                          to_set(targets[t].conditioning()));
        if (!least || r.first < *least) least = r.first;
      }
      if (*least != natural[t]) ++oracle_bad;
      // Every nonempty sub-credal-set, refined inside the blocks.
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << size); ++mask) {
        // Each kept member is refined at random inside the blocks.
        std::vector<LayeredProbability> sub;
        for (std::size_t i = 0; i < size; ++i) {
          if (!(mask >> i & 1u)) continue;
          std::vector<std::vector<Rational>> layers;
          for (const auto& bl : block_layers[i]) {
            std::vector<Rational> layer(u->size());
            for (std::size_t j = 0; j < p.size(); ++j) {
              auto ws = p.blocks()[j].worlds();
              auto w = ws[rng() % ws.size()];
              layer[w] = bl[j];
            }
            layers.push_back(layer);
          }
          std::vector<bool> charged(u->size(), false);
          for (const auto& l : layers) {
            for (std::size_t w = 0; w < u->size(); ++w) charged[w] = charged[w] || l[w] > 0;
          }
          std::vector<std::size_t> rest;
          for (std::size_t w = 0; w < u->size(); ++w) {
            if (!charged[w]) rest.push_back(w);
          }
          std::shuffle(rest.begin(), rest.end(), rng);
          for (auto w : rest) {
            std::vector<Rational> single(u->size());
            single[w] = 1;
            layers.push_back(single);
          }
          sub.emplace_back(u, layers);
        }
        Rational value = Evaluator::lower(CredalSet(sub))(targets[t]);
        ++checks;
        if (value < natural[t]) ++bad;
      }
    }
  }
  std::ostringstream d;
  d << checks << " dominating evaluations, " << bad << " below the natural extension, " << oracle_bad
    << " oracle mismatches";
  return {bad == 0 && oracle_bad == 0, d.str()};
}

Outcome product_rule() {
  std::mt19937_64 rng(55);
  std::array<std::size_t, 3> applied{}, failed{};
  std::string first;
  for (std::uint64_t trial = 0; trial < 1000; ++trial) {
    auto u = make_universe(2 + trial % 4);
    CredalSet m = random_credal(trial, u, 1 + trial % 3, 2);
    Evaluator lo = Evaluator::lower(m);
    Event a = support::random_event(rng, u, true);
    Event b = support::random_event(rng, u, true);
    if ((a & b).empty()) b = b | a;
    Gamble x = support::random_gamble(rng, u);
    auto reports = product_rule_report(lo, a, b, x);
    for (std::size_t i = 0; i < 3; ++i) {
      if (!reports[i].applicable) continue;
      ++applied[i];
      if (!*reports[i].holds) {
        if (failed[0] + failed[1] + failed[2] == 0) first = reports[i].name + " " + reports[i].context;
        ++failed[i];
      }
    }
  }
  std::ostringstream d;
  d << "(a) " << failed[0] << "/" << applied[0] << " fail, (b) " << failed[1] << "/" << applied[1]
    << " fail, (c) " << failed[2] << "/" << applied[2] << " fail";
  if (!first.empty()) d << "; first: " << first;
  return {failed[0] + failed[1] + failed[2] == 0, d.str()};
}

Outcome bounds() {
  std::mt19937_64 rng(909);
  std::size_t applied = 0, bad = 0;
  for (std::uint64_t trial = 0; trial < 500; ++trial) {
    auto u = make_universe(2 + trial % 4);
    Partition p = random_partition(rng, u);
    bool precise = trial % 2 == 0;
    CredalSet m = random_credal(trial, u, precise ? 1 : 1 + trial % 3, 2);
    Evaluator mu = precise ? Evaluator::precise(m.members().front()) : Evaluator::lower(m);
    Event b0 = support::random_event(rng, u, true);
    Event b1 = b0 & support::random_event(rng, u, true);
    if (b1.empty()) b1 = b0;
    Gamble x = support::random_gamble(rng, u, 0, 3);
    auto truth = [&](const Gamble& g, const Event& c) {
      std::optional<Rational> best;
      for (const auto& member : m.members()) {
        Rational v = oracle::layered_gamble(member.layers(), g.values(), to_set(c));
        if (!best || v < *best) best = v;
      }
      return *best;
    };
    auto nested = nested_conditioning_report(mu, x, b1, b0);
    for (const auto& r : nested) {
      if (!r.applicable) continue;
      ++applied;
      if (!*r.holds) ++bad;
    }
    if (nested[0].applicable && (*nested[0].lhs != truth(x.restricted_to(b1), b0) || *nested[0].rhs != truth(x, b1))) ++bad;
    Rational t = truth(x, b0);
    for (const BoundReport& r : {inner_event_lower_bound(mu, x, b0, p, t), finite_values_lower_bound(mu, x, b0, p, t)}) {
      if (!r.applicable) continue;
      ++applied;
      if (!*r.holds) ++bad;
    }
  }
  // Hand instances.
  auto u = make_universe(4);
  Partition p(u, {Event::of(u, {0}), Event::of(u, {1, 2}), Event::of(u, {3})});
  Event b = Event::of(u, {0, 1});
  Gamble x(u, {q(1), q(2), q(0), q(0)});
  Evaluator uniform = Evaluator::precise(LayeredProbability::uniform(u));
  Rational t = uniform(ConditionalGamble(x, b));
  BoundReport e22 = inner_event_lower_bound(uniform, x, b, p, t);
  BoundReport e23 = finite_values_lower_bound(uniform, x, b, p, t);
  bool hand = t == q(3, 2) && e22.applicable && *e22.lhs == 1 && *e22.holds && e23.applicable &&
              *e23.lhs == q(1, 3) && *e23.holds;
  std::ostringstream d;
  d << applied << " applicable reports, " << bad << " failures; hand instances " << to_string(*e22.lhs)
    << " <= " << to_string(t) << " and " << to_string(*e23.lhs) << " <= " << to_string(t);
  return {bad == 0 && hand && applied > 0, d.str()};
}

Outcome checker_soundness() {
  std::mt19937_64 rng(31337);
  std::size_t verdicts = 0, unsound = 0, induced_bad = 0, hierarchy_bad = 0;
  std::uniform_int_distribution<int> grid(0, 5);
  for (std::uint64_t trial = 0; trial < 150; ++trial) {
    auto u = make_universe(2 + trial % 3);
    // Random assessments on events.
    std::vector<AssessmentEntry> entries;
    for (int i = 0; i < 3; ++i) {
      auto g = ConditionalGamble::indicator(
          ConditionalEvent(support::random_event(rng, u), support::random_event(rng, u, true)));
      bool dup = false;
      for (const auto& e : entries) dup = dup || e.gamble == g;
      if (!dup) entries.push_back({g, q(grid(rng) - 1, 4)});
    }
    for (auto kind : {PrevisionKind::lower, PrevisionKind::upper}) {
      Assessment a(kind, ConsistencyClass::W, entries);
      Verdict w = check(a, ConsistencyClass::W);
      Verdict c = check(a, ConsistencyClass::convex);
      Verdict one = check(a, ConsistencyClass::one_convex);
      Verdict df = check(Assessment(PrevisionKind::precise, ConsistencyClass::dF, entries));
      for (const Verdict* v : {&w, &c, &one, &df}) {
        ++verdicts;
        if (!witness_sound(*v)) ++unsound;
      }
      if ((w.consistent && !c.consistent) || (c.consistent && !one.consistent)) ++hierarchy_bad;
    }
    // Induced assessments.
    LayeredProbability p = random_layered(trial, u, 3);
    CredalSet m = random_credal(trial + 5000, u, 1 + trial % 3, 2);
    std::vector<ConditionalEvent> events;
    std::vector<ConditionalGamble> gambles;
    for (int i = 0; i < 3; ++i) {
      events.emplace_back(support::random_event(rng, u), support::random_event(rng, u, true));
      gambles.emplace_back(support::random_gamble(rng, u), support::random_event(rng, u, true));
    }
    std::vector<Verdict> induced{
        check(Evaluator::precise(p).assess(std::span<const ConditionalEvent>(events), ConsistencyClass::dF)),
        check(Evaluator::precise(p).assess(std::span<const ConditionalGamble>(gambles), ConsistencyClass::dF)),
        check(Evaluator::lower(m).assess(std::span<const ConditionalEvent>(events), ConsistencyClass::W)),
        check(Evaluator::upper(m).assess(std::span<const ConditionalGamble>(gambles), ConsistencyClass::W))};
    for (const auto& v : induced) {
      ++verdicts;
      if (!v.consistent) ++induced_bad;
    }
    Assessment env = Evaluator::lower(m).assess(std::span<const ConditionalGamble>(gambles), ConsistencyClass::W);
    if (!check(env, ConsistencyClass::convex).consistent || !check(env, ConsistencyClass::one_convex).consistent) {
      ++hierarchy_bad;
    }
  }
  std::ostringstream d;
  d << verdicts << " verdicts, " << unsound << " unsound witnesses, " << induced_bad
    << " induced assessments rejected, " << hierarchy_bad << " hierarchy breaks";
  return {unsound == 0 && induced_bad == 0 && hierarchy_bad == 0, d.str()};
}

Outcome asl() {
  AslCounterexample ce = asl_monotonicity_counterexample();
  bool passes_asl = check_avoids_sure_loss(ce.assessment).consistent;
  Verdict w = check(ce.assessment, ConsistencyClass::W);
  auto pairs = monotonicity_audit(ce.assessment);
  bool pair_found = std::find(pairs.begin(), pairs.end(), std::make_pair(ce.smaller, ce.larger)) != pairs.end();
  std::ostringstream d;
  d << "ASL " << (passes_asl ? "passes" : "fails") << ", monotonicity pairs " << pairs.size() << ", W "
    << (w.consistent ? "passes" : "fails");
  return {passes_asl && pair_found && !w.consistent && witness_sound(w), d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"football inner and outer conditional events", football},
      {"event and gamble forms agree on indicators", gamble_form},
      {"algebraic form agrees with the definition", algebra_form},
      {"partial order", partial_order},
      {"monotonicity of envelopes", monotonicity},
      {"extension endpoints", endpoints},
      {"natural extension dominance", dominance},
      {"weak product rule", product_rule},
      {"lower bounds on conditional previsions", bounds},
      {"coherence checker soundness", checker_soundness},
      {"avoiding sure loss without monotonicity", asl},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << "  ["
              << o.detail << "]" << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria pass" << std::endl;
  return failures == 0 ? 0 : 1;
}
