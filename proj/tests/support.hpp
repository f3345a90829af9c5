#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "gnrel/assessment.hpp"
#include "oracle.hpp"

namespace support {

using namespace gnrel;

inline oracle::Set to_set(const Event& e) {
  oracle::Set s(e.universe()->size());
  for (auto w : e.worlds()) s[w] = true;
  return s;
}

inline std::uint64_t full_mask(std::size_t n) { return (std::uint64_t{1} << n) - 1; }

/// Every normalized A|B on `u` (3^n − 1 of them).
inline std::vector<ConditionalEvent> all_conditional_events(const UniversePtr& u) {
  std::vector<ConditionalEvent> out;
  const std::uint64_t full = full_mask(u->size());
  for (std::uint64_t b = 1; b <= full; ++b) {
    for (std::uint64_t a = b;; a = (a - 1) & b) {
      out.emplace_back(Event::from_mask(u, a), Event::from_mask(u, b));
      if (a == 0) break;
    }
  }
  return out;
}

/// Every partition of the worlds of `u` (restricted growth strings).
inline std::vector<Partition> all_partitions(const UniversePtr& u) {
  const std::size_t n = u->size();
  std::vector<Partition> out;
  std::vector<std::size_t> label(n, 0);
  for (;;) {
    std::size_t blocks = *std::max_element(label.begin(), label.end()) + 1;
    std::vector<Event> events(blocks, Event::none(u));
    for (std::size_t w = 0; w < n; ++w) events[label[w]] = events[label[w]].with(w);
    out.emplace_back(u, std::move(events));
    // next restricted growth string
    std::size_t i = n;
    for (;;) {
      if (i <= 1) return out;
      --i;
      std::size_t prefix_max = *std::max_element(label.begin(), label.begin() + i);
      if (label[i] <= prefix_max) {
        ++label[i];
        for (std::size_t j = i + 1; j < n; ++j) label[j] = 0;
        break;
      }
    }
  }
}

inline Event random_event(std::mt19937_64& rng, const UniversePtr& u, bool nonempty = false) {
  std::uniform_int_distribution<std::uint64_t> d(nonempty ? 1 : 0, full_mask(u->size()));
  return Event::from_mask(u, d(rng));
}

inline Gamble random_gamble(std::mt19937_64& rng, const UniversePtr& u, int lo = -3, int hi = 3) {
  std::uniform_int_distribution<int> d(lo, hi);
  std::vector<Rational> v(u->size());
  for (auto& x : v) x = d(rng);
  return Gamble(u, std::move(v));
}

inline std::vector<Rational> values_of(const Gamble& g) { return g.values(); }

}  // namespace support
