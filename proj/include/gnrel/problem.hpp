#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gnrel/assessment.hpp"

namespace gnrel {

/// Malformed or inconsistent problem file. `line` is 1-based, 0 when unknown.
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& message, std::size_t line = 0);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// One assessment entry as written in the file.
struct EntrySource {
  std::optional<std::string> event;   ///< event expression, or
  std::optional<std::string> gamble;  ///< gamble name
  std::string given = "Omega";
  std::string value;
};

struct AssessmentSource {
  PrevisionKind kind = PrevisionKind::precise;
  ConsistencyClass cls = ConsistencyClass::dF;
  std::vector<EntrySource> entries;
};

/// A parsed problem file. Every named object is validated on load; the
/// *_source members keep what is needed to write the file back.
struct ProblemFile {
  UniversePtr universe;
  std::map<std::string, Event> events;
  std::map<std::string, Partition> partitions;
  std::map<std::string, Gamble> gambles;
  std::map<std::string, LayeredProbability> layered;
  std::map<std::string, CredalSet> credal;
  std::map<std::string, Assessment> assessments;

  std::map<std::string, std::vector<std::string>> credal_source;
  std::map<std::string, AssessmentSource> assessment_source;
  /// Each query is an argument list for the command line, without the file.
  std::vector<std::vector<std::string>> queries;

  /// Event expression: names, world sets {w1,w2}, Omega, Empty, not/!,
  /// and/&, or, parentheses.
  Event event(const std::string& expression) const;
  /// "A | B", or "A" meaning A|Omega.
  ConditionalEvent conditional(const std::string& expression) const;
  /// "X | B" with X a gamble name or an event expression (its indicator).
  ConditionalGamble conditional_gamble(const std::string& expression) const;

  const Partition& partition(const std::string& name) const;
  const Gamble& gamble(const std::string& name) const;
  const Assessment& assessment(const std::string& name) const;
  /// A layered probability gives a precise evaluator; a credal set gives
  /// its lower or upper envelope.
  Evaluator evaluator(const std::string& name, EvaluatorSide credal_side) const;
};

ProblemFile parse_problem(const std::string& text);
ProblemFile load_problem(const std::string& path);
/// Canonical JSON text (sorted names, two-space indent, trailing newline).
std::string dump_problem(const ProblemFile& problem);

/// Conditional event rendered with world sets, e.g. "{w1} | {w1,w2}".
std::string render(const ConditionalEvent& ce);
/// Indicators are rendered as conditional events, other gambles as
/// "[w1:1,w2:-1] | {w1,w2}".
std::string render(const ConditionalGamble& xb);

}  // namespace gnrel
