#include "gnrel/core.hpp"

#include <algorithm>
#include <bit>
#include <utility>

namespace gnrel {

// ---------------------------------------------------------------- Universe

Universe::Universe(std::vector<std::string> worlds) : worlds_(std::move(worlds)) {
  if (worlds_.empty()) throw DomainError("a universe needs at least one world");
  for (std::size_t i = 0; i < worlds_.size(); ++i) {
    if (!index_.emplace(worlds_[i], i).second) {
      throw DomainError("duplicate world identifier '" + worlds_[i] + "'");
    }
  }
}

std::optional<std::size_t> Universe::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

UniversePtr make_universe(std::vector<std::string> worlds) {
  return std::make_shared<const Universe>(std::move(worlds));
}

UniversePtr make_universe(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) names.push_back(std::to_string(i));
  return make_universe(std::move(names));
}

bool same_universe(const UniversePtr& a, const UniversePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

void require_same_universe(const UniversePtr& a, const UniversePtr& b, std::string_view what) {
  if (!same_universe(a, b)) {
    throw DomainError(std::string(what) + ": operands live on different universes");
  }
}

// ------------------------------------------------------------------- Event

Event::Event(UniversePtr universe) : universe_(std::move(universe)) {
  if (!universe_) throw DomainError("event without a universe");
  words_.assign((universe_->size() + 63) / 64, 0);
}

Event Event::none(UniversePtr universe) { return Event(std::move(universe)); }

Event Event::all(UniversePtr universe) { return ~Event(std::move(universe)); }

Event Event::of(UniversePtr universe, std::initializer_list<std::size_t> worlds) {
  return of(std::move(universe), std::span<const std::size_t>(worlds.begin(), worlds.size()));
}

Event Event::of(UniversePtr universe, std::span<const std::size_t> worlds) {
  Event e(std::move(universe));
  for (std::size_t w : worlds) {
    if (w >= e.universe_->size()) throw DomainError("world index out of range");
    e.words_[w / 64] |= std::uint64_t{1} << (w % 64);
  }
  return e;
}

Event Event::from_mask(UniversePtr universe, std::uint64_t mask) {
  Event e(std::move(universe));
  if (e.universe_->size() > 64) throw DomainError("from_mask needs at most 64 worlds");
  e.words_[0] = mask;
  e.trim();
  return e;
}

void Event::trim() {
  std::size_t rem = universe_->size() % 64;
  if (rem != 0) words_.back() &= (std::uint64_t{1} << rem) - 1;
}

bool Event::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

bool Event::is_all() const { return (~*this).empty(); }

std::size_t Event::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<std::size_t> Event::worlds() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w) {
      out.push_back(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

std::uint64_t Event::mask() const {
  if (words_.size() != 1) throw DomainError("mask() needs at most 64 worlds");
  return words_[0];
}

bool Event::subset_of(const Event& other) const {
  require_same_universe(universe_, other.universe_, "subset test");
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

bool Event::intersects(const Event& other) const {
  require_same_universe(universe_, other.universe_, "intersection test");
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & other.words_[i]) return true;
  }
  return false;
}

Event Event::operator~() const {
  Event e(*this);
  for (auto& w : e.words_) w = ~w;
  e.trim();
  return e;
}

Event Event::operator&(const Event& other) const {
  require_same_universe(universe_, other.universe_, "conjunction");
  Event e(*this);
  for (std::size_t i = 0; i < words_.size(); ++i) e.words_[i] &= other.words_[i];
  return e;
}

Event Event::operator|(const Event& other) const {
  require_same_universe(universe_, other.universe_, "disjunction");
  Event e(*this);
  for (std::size_t i = 0; i < words_.size(); ++i) e.words_[i] |= other.words_[i];
  return e;
}

Event Event::operator-(const Event& other) const {
  require_same_universe(universe_, other.universe_, "difference");
  Event e(*this);
  for (std::size_t i = 0; i < words_.size(); ++i) e.words_[i] &= ~other.words_[i];
  return e;
}

Event Event::with(std::size_t world) const {
  if (world >= universe_->size()) throw DomainError("world index out of range");
  Event e(*this);
  e.words_[world / 64] |= std::uint64_t{1} << (world % 64);
  return e;
}

bool Event::operator==(const Event& other) const {
  return words_ == other.words_ && same_universe(universe_, other.universe_);
}

std::string Event::to_string() const {
  std::string out = "{";
  bool first = true;
  for (auto w : worlds()) {
    if (!first) out += ",";
    out += universe_->name(w);
    first = false;
  }
  return out + "}";
}

// --------------------------------------------------------------- Partition

Partition::Partition(UniversePtr universe, std::vector<Event> blocks)
    : universe_(std::move(universe)), blocks_(std::move(blocks)) {
  if (!universe_) throw DomainError("partition without a universe");
  constexpr std::size_t unassigned = static_cast<std::size_t>(-1);
  block_of_.assign(universe_->size(), unassigned);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    require_same_universe(universe_, blocks_[b].universe(), "partition");
    if (blocks_[b].empty()) throw DomainError("partition has an empty block");
    for (auto w : blocks_[b].worlds()) {
      if (block_of_[w] != unassigned) {
        throw DomainError("partition blocks overlap at world '" + universe_->name(w) + "'");
      }
      block_of_[w] = b;
    }
  }
  for (std::size_t w = 0; w < block_of_.size(); ++w) {
    if (block_of_[w] == unassigned) {
      throw DomainError("partition does not cover world '" + universe_->name(w) + "'");
    }
  }
}

Partition Partition::trivial(UniversePtr universe) {
  Event omega = Event::all(universe);
  return Partition(std::move(universe), {omega});
}

Partition Partition::finest(UniversePtr universe) {
  std::vector<Event> blocks;
  for (std::size_t w = 0; w < universe->size(); ++w) blocks.push_back(Event::of(universe, {w}));
  return Partition(std::move(universe), std::move(blocks));
}

Event Partition::union_of(std::uint64_t mask) const {
  Event e(universe_);
  while (mask) {
    auto b = static_cast<std::size_t>(std::countr_zero(mask));
    e = e | blocks_.at(b);
    mask &= mask - 1;
  }
  return e;
}

bool Partition::operator==(const Partition& other) const {
  if (!same_universe(universe_, other.universe_) || blocks_.size() != other.blocks_.size()) {
    return false;
  }
  for (std::size_t w = 0; w < block_of_.size(); ++w) {
    if (!(blocks_[block_of_[w]] == other.blocks_[other.block_of_[w]])) return false;
  }
  return true;
}

Partition generated_partition(const UniversePtr& universe, std::span<const Event> events) {
  for (const auto& e : events) require_same_universe(universe, e.universe(), "generated_partition");
  // Worlds sharing the same membership signature across all events form one cell.
  std::vector<Event> cells;
  std::vector<std::vector<bool>> signatures;
  for (std::size_t w = 0; w < universe->size(); ++w) {
    std::vector<bool> sig;
    sig.reserve(events.size());
    for (const auto& e : events) sig.push_back(e.contains(w));
    auto it = std::find(signatures.begin(), signatures.end(), sig);
    if (it == signatures.end()) {
      signatures.push_back(std::move(sig));
      cells.push_back(Event::of(universe, {w}));
    } else {
      auto idx = static_cast<std::size_t>(it - signatures.begin());
      cells[idx] = cells[idx].with(w);
    }
  }
  return Partition(universe, std::move(cells));
}

Partition product_partition(const Partition& p, const Partition& q) {
  require_same_universe(p.universe(), q.universe(), "product_partition");
  std::vector<Event> blocks;
  for (const auto& a : p.blocks()) {
    for (const auto& b : q.blocks()) {
      Event cell = a & b;
      if (!cell.empty()) blocks.push_back(std::move(cell));
    }
  }
  return Partition(p.universe(), std::move(blocks));
}

Event inner_event(const Event& e, const Partition& p) {
  require_same_universe(e.universe(), p.universe(), "inner_event");
  Event out(p.universe());
  for (const auto& block : p.blocks()) {
    if (block.subset_of(e)) out = out | block;
  }
  return out;
}

Event outer_event(const Event& e, const Partition& p) {
  require_same_universe(e.universe(), p.universe(), "outer_event");
  Event out(p.universe());
  for (const auto& block : p.blocks()) {
    if (block.intersects(e)) out = out | block;
  }
  return out;
}

bool is_logically_dependent(const Event& e, const Partition& p) {
  return inner_event(e, p) == e;
}

// ------------------------------------------------------------------ Gamble

Gamble::Gamble(UniversePtr universe, std::vector<Rational> values)
    : universe_(std::move(universe)), values_(std::move(values)) {
  if (!universe_) throw DomainError("gamble without a universe");
  if (values_.size() != universe_->size()) {
    throw DomainError("gamble needs one value per world");
  }
}

Gamble Gamble::constant(UniversePtr universe, const Rational& value) {
  std::vector<Rational> values(universe->size(), value);
  return Gamble(std::move(universe), std::move(values));
}

Gamble Gamble::indicator(const Event& e) {
  std::vector<Rational> values(e.universe()->size());
  for (std::size_t w = 0; w < values.size(); ++w) values[w] = e.contains(w) ? 1 : 0;
  return Gamble(e.universe(), std::move(values));
}

Gamble Gamble::operator-() const {
  Gamble g(*this);
  for (auto& v : g.values_) v = -v;
  return g;
}

Gamble Gamble::operator+(const Rational& c) const {
  Gamble g(*this);
  for (auto& v : g.values_) v += c;
  return g;
}

Gamble Gamble::operator*(const Rational& c) const {
  Gamble g(*this);
  for (auto& v : g.values_) v *= c;
  return g;
}

Gamble Gamble::restricted_to(const Event& e) const {
  require_same_universe(universe_, e.universe(), "restricted_to");
  Gamble g(*this);
  for (std::size_t w = 0; w < g.values_.size(); ++w) {
    if (!e.contains(w)) g.values_[w] = 0;
  }
  return g;
}

bool Gamble::operator==(const Gamble& other) const {
  return values_ == other.values_ && same_universe(universe_, other.universe_);
}

Rational sup_over(const Gamble& x, const Event& b) {
  require_same_universe(x.universe(), b.universe(), "sup_over");
  auto worlds = b.worlds();
  if (worlds.empty()) throw DomainError("sup over the impossible event");
  Rational best = x(worlds.front());
  for (auto w : worlds) {
    if (x(w) > best) best = x(w);
  }
  return best;
}

Rational inf_over(const Gamble& x, const Event& b) {
  require_same_universe(x.universe(), b.universe(), "inf_over");
  auto worlds = b.worlds();
  if (worlds.empty()) throw DomainError("inf over the impossible event");
  Rational best = x(worlds.front());
  for (auto w : worlds) {
    if (x(w) < best) best = x(w);
  }
  return best;
}

// -------------------------------------------------------- ConditionalEvent

ConditionalEvent::ConditionalEvent(const Event& conditioned, const Event& conditioning)
    : conditioned_(conditioned & conditioning), conditioning_(conditioning) {
  if (conditioning_.empty()) throw DomainError("conditioning event must not be impossible");
}

bool ConditionalEvent::is_trivial() const {
  return conditioned_.empty() || conditioned_ == conditioning_;
}

bool ConditionalEvent::is_measurable(const Partition& p) const {
  return is_logically_dependent(conditioned_, p) && is_logically_dependent(conditioning_, p);
}

std::string ConditionalEvent::to_string() const {
  return conditioned_.to_string() + "|" + conditioning_.to_string();
}

// ------------------------------------------------------- ConditionalGamble

ConditionalGamble::ConditionalGamble(const Gamble& payoff, const Event& conditioning)
    : payoff_(payoff.restricted_to(conditioning)), conditioning_(conditioning) {
  if (conditioning_.empty()) throw DomainError("conditioning event must not be impossible");
}

ConditionalGamble ConditionalGamble::indicator(const ConditionalEvent& ce) {
  return ConditionalGamble(Gamble::indicator(ce.conditioned()), ce.conditioning());
}

bool ConditionalGamble::is_indicator() const {
  for (auto w : conditioning_.worlds()) {
    if (payoff_(w) != 0 && payoff_(w) != 1) return false;
  }
  return true;
}

ConditionalEvent ConditionalGamble::as_event() const {
  if (!is_indicator()) throw DomainError("conditional gamble is not an indicator");
  Event a(universe());
  for (auto w : conditioning_.worlds()) {
    if (payoff_(w) == 1) a = a.with(w);
  }
  return ConditionalEvent(a, conditioning_);
}

ConditionalGamble ConditionalGamble::operator-() const {
  return ConditionalGamble(-payoff_, conditioning_);
}

std::string ConditionalGamble::to_string() const {
  std::string out = "[";
  bool first = true;
  for (auto w : conditioning_.worlds()) {
    if (!first) out += ",";
    out += universe()->name(w) + ":" + gnrel::to_string(payoff_(w));
    first = false;
  }
  return out + "]|" + conditioning_.to_string();
}

}  // namespace gnrel
