#pragma once

#include <boost/container/small_vector.hpp>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gnrel/errors.hpp"
#include "gnrel/rational.hpp"

namespace gnrel {

/// Ordered list of named worlds. Worlds are the atoms of the finest
/// partition in play; every Partition is a coarsening of its universe.
class Universe {
 public:
  explicit Universe(std::vector<std::string> worlds);

  std::size_t size() const { return worlds_.size(); }
  const std::string& name(std::size_t world) const { return worlds_.at(world); }
  const std::vector<std::string>& worlds() const { return worlds_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  bool operator==(const Universe& other) const { return worlds_ == other.worlds_; }

 private:
  std::vector<std::string> worlds_;
  std::unordered_map<std::string, std::size_t> index_;
};

using UniversePtr = std::shared_ptr<const Universe>;

UniversePtr make_universe(std::vector<std::string> worlds);
/// Universe with worlds named "1", ..., "n".
UniversePtr make_universe(std::size_t n);

/// True when both pointers designate the same world list.
bool same_universe(const UniversePtr& a, const UniversePtr& b);
void require_same_universe(const UniversePtr& a, const UniversePtr& b, std::string_view what);

/// A subset of the worlds of one universe, stored as a bitset.
class Event {
 public:
  using Words = boost::container::small_vector<std::uint64_t, 1>;

  explicit Event(UniversePtr universe);

  static Event none(UniversePtr universe);
  static Event all(UniversePtr universe);
  static Event of(UniversePtr universe, std::initializer_list<std::size_t> worlds);
  static Event of(UniversePtr universe, std::span<const std::size_t> worlds);
  /// Bit w of `mask` selects world w; requires size() <= 64.
  static Event from_mask(UniversePtr universe, std::uint64_t mask);

  const UniversePtr& universe() const { return universe_; }

  bool contains(std::size_t world) const {
    return (words_[world / 64] >> (world % 64)) & 1u;
  }
  bool empty() const;
  bool is_all() const;
  std::size_t count() const;
  std::vector<std::size_t> worlds() const;
  std::uint64_t mask() const;

  bool subset_of(const Event& other) const;
  bool intersects(const Event& other) const;

  Event operator~() const;
  Event operator&(const Event& other) const;
  Event operator|(const Event& other) const;
  /// Set difference, this ∧ ¬other.
  Event operator-(const Event& other) const;
  Event with(std::size_t world) const;

  bool operator==(const Event& other) const;

  std::string to_string() const;

 private:
  void trim();

  UniversePtr universe_;
  Words words_;
};

/// Pairwise-disjoint nonempty blocks covering the universe.
class Partition {
 public:
  Partition(UniversePtr universe, std::vector<Event> blocks);

  /// The one-block partition {Ω}.
  static Partition trivial(UniversePtr universe);
  /// One block per world.
  static Partition finest(UniversePtr universe);

  const UniversePtr& universe() const { return universe_; }
  const std::vector<Event>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  std::size_t block_of(std::size_t world) const { return block_of_[world]; }

  /// Union of the blocks selected by the bits of `mask` (requires size() <= 64).
  Event union_of(std::uint64_t mask) const;

  /// Same set of blocks, irrespective of order.
  bool operator==(const Partition& other) const;

 private:
  UniversePtr universe_;
  std::vector<Event> blocks_;
  std::vector<std::size_t> block_of_;
};

/// Nonempty cells ⋀ Eᵢ′ with each Eᵢ′ ∈ {Eᵢ, ¬Eᵢ}. `universe` is used
/// when `events` is empty, and must match the events otherwise.
Partition generated_partition(const UniversePtr& universe, std::span<const Event> events);
Partition product_partition(const Partition& p, const Partition& q);

/// Union of the blocks of `p` contained in `e`.
Event inner_event(const Event& e, const Partition& p);
/// Union of the blocks of `p` meeting `e`.
Event outer_event(const Event& e, const Partition& p);
bool is_logically_dependent(const Event& e, const Partition& p);

/// Bounded real function on the worlds of a universe.
class Gamble {
 public:
  Gamble(UniversePtr universe, std::vector<Rational> values);

  static Gamble constant(UniversePtr universe, const Rational& value);
  static Gamble indicator(const Event& e);

  const UniversePtr& universe() const { return universe_; }
  const Rational& operator()(std::size_t world) const { return values_[world]; }
  const std::vector<Rational>& values() const { return values_; }

  Gamble operator-() const;
  Gamble operator+(const Rational& c) const;
  Gamble operator*(const Rational& c) const;
  /// Pointwise product with the indicator of `e` (the gamble written EX).
  Gamble restricted_to(const Event& e) const;

  bool operator==(const Gamble& other) const;

 private:
  UniversePtr universe_;
  std::vector<Rational> values_;
};

Rational sup_over(const Gamble& x, const Event& b);
Rational inf_over(const Gamble& x, const Event& b);

/// A|B, normalized to A∧B|B. The conditioning event is never empty.
class ConditionalEvent {
 public:
  ConditionalEvent(const Event& conditioned, const Event& conditioning);

  const Event& conditioned() const { return conditioned_; }
  const Event& conditioning() const { return conditioning_; }
  const UniversePtr& universe() const { return conditioning_.universe(); }

  /// ∅|B or B|B, whose value is fixed by the consistency conditions.
  bool is_trivial() const;
  bool is_measurable(const Partition& p) const;

  bool operator==(const ConditionalEvent& other) const = default;

  std::string to_string() const;

 private:
  Event conditioned_;
  Event conditioning_;
};

/// X|B. Values outside B are zeroed, so equality compares the payoff on B only.
class ConditionalGamble {
 public:
  ConditionalGamble(const Gamble& payoff, const Event& conditioning);

  static ConditionalGamble indicator(const ConditionalEvent& ce);

  const Gamble& payoff() const { return payoff_; }
  const Event& conditioning() const { return conditioning_; }
  const UniversePtr& universe() const { return conditioning_.universe(); }

  Rational sup() const { return sup_over(payoff_, conditioning_); }
  Rational inf() const { return inf_over(payoff_, conditioning_); }
  /// True when the payoff takes only the values 0 and 1 on the conditioning event.
  bool is_indicator() const;
  /// The conditional event whose indicator this is; requires is_indicator().
  ConditionalEvent as_event() const;

  ConditionalGamble operator-() const;

  bool operator==(const ConditionalGamble& other) const = default;

  std::string to_string() const;

 private:
  Gamble payoff_;
  Event conditioning_;
};

}  // namespace gnrel
