#include "gnrel/problem.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

namespace gnrel {

using nlohmann::json;

InputError::InputError(const std::string& message, std::size_t line)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

namespace {

// ------------------------------------------------------------ line tracking

// Forward iterator over the text that counts the newlines it has stepped over.
class CountingIterator {
 public:
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  CountingIterator(const char* p, std::size_t* line) : p_(p), line_(line) {}
  reference operator*() const { return *p_; }
  CountingIterator& operator++() {
    if (*p_ == '\n') ++*line_;
    ++p_;
    return *this;
  }
  CountingIterator operator++(int) {
    auto copy = *this;
    ++*this;
    return copy;
  }
  bool operator==(const CountingIterator& other) const { return p_ == other.p_; }
  bool operator!=(const CountingIterator& other) const { return p_ != other.p_; }

 private:
  const char* p_;
  std::size_t* line_;
};

std::string escape_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

// Records the line on which every JSON value starts, keyed by JSON pointer.
class LineRecorder : public nlohmann::json_sax<json> {
 public:
  explicit LineRecorder(const std::size_t* line) : line_(line) {}

  std::map<std::string, std::size_t> lines;

  bool null() override { return scalar(); }
  bool boolean(bool) override { return scalar(); }
  bool number_integer(number_integer_t) override { return scalar(); }
  bool number_unsigned(number_unsigned_t) override { return scalar(); }
  bool number_float(number_float_t, const string_t&) override { return scalar(); }
  bool string(string_t&) override { return scalar(); }
  bool binary(binary_t&) override { return scalar(); }
  bool start_object(std::size_t) override { return open(false); }
  bool key(string_t& k) override {
    frames_.back().key = k;
    return true;
  }
  bool end_object() override { return close(); }
  bool start_array(std::size_t) override { return open(true); }
  bool end_array() override { return close(); }
  bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception&) override {
    return false;
  }

 private:
  struct Frame {
    bool array;
    std::size_t index = 0;
    std::string key;
  };

  std::string here() const {
    std::string out;
    for (const auto& f : frames_) out += "/" + (f.array ? std::to_string(f.index) : escape_token(f.key));
    return out;
  }
  void record() { lines.emplace(here(), *line_); }
  void advance() {
    if (!frames_.empty() && frames_.back().array) ++frames_.back().index;
  }
  bool scalar() {
    record();
    advance();
    return true;
  }
  bool open(bool array) {
    record();
    frames_.push_back({array, 0, {}});
    return true;
  }
  bool close() {
    frames_.pop_back();
    advance();
    return true;
  }

  const std::size_t* line_;
  std::vector<Frame> frames_;
};

// --------------------------------------------------------------- expressions

class ExpressionParser {
 public:
  ExpressionParser(const ProblemFile& problem, const std::string& text)
      : problem_(problem), text_(text) {
    tokenize();
  }

  Event parse() {
    if (tokens_.empty()) fail("empty event expression");
    Event e = parse_or();
    if (pos_ != tokens_.size()) fail("unexpected '" + tokens_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw InputError(message + " in '" + text_ + "'");
  }

  static bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-' ||
           c == '\'' || static_cast<unsigned char>(c) >= 0x80;
  }

  void tokenize() {
    std::size_t i = 0;
    while (i < text_.size()) {
      char c = text_[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (std::string_view("(){},!~&").find(c) != std::string_view::npos) {
        tokens_.emplace_back(1, c);
        ++i;
      } else if (word_char(c)) {
        std::size_t j = i;
        while (j < text_.size() && word_char(text_[j])) ++j;
        tokens_.push_back(text_.substr(i, j - i));
        i = j;
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
    }
  }

  bool accept(std::string_view token) {
    if (pos_ < tokens_.size() && tokens_[pos_] == token) {
      ++pos_;
      return true;
    }
    return false;
  }

  const std::string& next() {
    if (pos_ >= tokens_.size()) fail("unexpected end of expression");
    return tokens_[pos_++];
  }

  Event parse_or() {
    Event e = parse_and();
    while (accept("or")) e = e | parse_and();
    return e;
  }

  Event parse_and() {
    Event e = parse_unary();
    while (accept("and") || accept("&")) e = e & parse_unary();
    return e;
  }

  Event parse_unary() {
    if (accept("not") || accept("!") || accept("~")) return ~parse_unary();
    return parse_primary();
  }

  Event parse_primary() {
    const auto& u = problem_.universe;
    if (accept("(")) {
      Event e = parse_or();
      if (!accept(")")) fail("missing ')'");
      return e;
    }
    if (accept("{")) {
      Event e = Event::none(u);
      if (accept("}")) return e;
      do {
        const std::string& name = next();
        auto w = u->index_of(name);
        if (!w) fail("unknown world '" + name + "'");
        e = e.with(*w);
      } while (accept(","));
      if (!accept("}")) fail("missing '}'");
      return e;
    }
    const std::string& name = next();
    if (name == "Omega") return Event::all(u);
    if (name == "Empty") return Event::none(u);
    auto it = problem_.events.find(name);
    if (it == problem_.events.end()) fail("unknown event '" + name + "'");
    return it->second;
  }

  const ProblemFile& problem_;
  std::string text_;
  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
};

std::pair<std::string, std::string> split_bar(const std::string& expression) {
  auto bar = expression.find('|');
  if (bar == std::string::npos) return {expression, "Omega"};
  if (expression.find('|', bar + 1) != std::string::npos) {
    throw InputError("more than one '|' in '" + expression + "'");
  }
  return {expression.substr(0, bar), expression.substr(bar + 1)};
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\n\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\n\r");
  return s.substr(b, e - b + 1);
}

bool is_keyword(const std::string& name) {
  return name == "Omega" || name == "Empty" || name == "and" || name == "or" || name == "not";
}

// -------------------------------------------------------------------- loader

class Loader {
 public:
  Loader(const std::string& text) {
    std::size_t line = 1;
    LineRecorder recorder(&line);
    CountingIterator first(text.data(), &line);
    CountingIterator last(text.data() + text.size(), &line);
    bool ok = json::sax_parse(first, last, &recorder);
    if (!ok) {
      try {
        doc_ = json::parse(text);
      } catch (const json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
      }
      throw InputError("invalid JSON");
    }
    lines_ = std::move(recorder.lines);
    doc_ = json::parse(text);
  }

  ProblemFile load() {
    if (!doc_.is_object()) fail("", "top level must be an object");
    for (const auto& [key, value] : doc_.items()) {
      static const std::vector<std::string> known{"universe", "events",     "partitions",
                                                  "gambles",  "layered",    "credal",
                                                  "assessments", "queries"};
      if (std::find(known.begin(), known.end(), key) == known.end()) {
        fail("/" + escape_token(key), "unknown section '" + key + "'");
      }
    }
    load_universe();
    load_events();
    load_partitions();
    load_gambles();
    load_layered();
    load_credal();
    load_assessments();
    load_queries();
    return std::move(pf_);
  }

 private:
  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
    std::string p = pointer;
    for (;;) {
      if (auto it = lines_.find(p); it != lines_.end()) {
        throw InputError(message + (pointer.empty() ? "" : " (at " + pointer + ")"), it->second);
      }
      if (p.empty()) break;
      p = p.substr(0, p.rfind('/'));
    }
    throw InputError(message + (pointer.empty() ? "" : " (at " + pointer + ")"));
  }

  const json& section(const char* name, json::value_t type) {
    static const json empty_object = json::object();
    static const json empty_array = json::array();
    if (!doc_.contains(name)) return type == json::value_t::array ? empty_array : empty_object;
    const json& s = doc_.at(name);
    if (s.type() != type) {
      fail(std::string("/") + name, std::string("section '") + name + "' must be " +
                                        (type == json::value_t::array ? "an array" : "an object"));
    }
    return s;
  }

  std::string text_at(const json& v, const std::string& pointer, const char* what) const {
    if (!v.is_string()) fail(pointer, std::string(what) + " must be a string");
    return v.get<std::string>();
  }

  Rational rational_at(const json& v, const std::string& pointer) const {
    if (v.is_number_integer()) return Rational(v.dump());
    if (v.is_number_float()) fail(pointer, "write non-integer numbers as strings such as \"3/10\"");
    if (!v.is_string()) fail(pointer, "expected a rational");
    try {
      return parse_rational(v.get<std::string>());
    } catch (const DomainError& e) {
      fail(pointer, e.what());
    }
  }

  std::size_t world_at(const json& v, const std::string& pointer) const {
    auto name = text_at(v, pointer, "world name");
    auto w = pf_.universe->index_of(name);
    if (!w) fail(pointer, "unknown world '" + name + "'");
    return *w;
  }

  Event world_set(const json& v, const std::string& pointer) const {
    if (!v.is_array()) fail(pointer, "expected a list of worlds");
    Event e = Event::none(pf_.universe);
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::string p = pointer + "/" + std::to_string(i);
      std::size_t w = world_at(v[i], p);
      if (e.contains(w)) fail(p, "world listed twice");
      e = e.with(w);
    }
    return e;
  }

  void check_name(const std::string& name, const std::string& pointer) const {
    if (name.empty()) fail(pointer, "empty name");
    if (is_keyword(name)) fail(pointer, "'" + name + "' is a reserved word");
  }

  void load_universe() {
    if (!doc_.contains("universe")) fail("", "missing 'universe'");
    const json& u = doc_.at("universe");
    if (!u.is_array() || u.empty()) fail("/universe", "'universe' must be a nonempty list");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < u.size(); ++i) {
      std::string p = "/universe/" + std::to_string(i);
      names.push_back(text_at(u[i], p, "world name"));
      if (std::find(names.begin(), names.end() - 1, names.back()) != names.end() - 1) {
        fail(p, "duplicate world '" + names.back() + "'");
      }
    }
    pf_.universe = make_universe(std::move(names));
  }

  void load_events() {
    for (const auto& [name, v] : section("events", json::value_t::object).items()) {
      std::string p = "/events/" + escape_token(name);
      check_name(name, p);
      pf_.events.emplace(name, world_set(v, p));
    }
  }

  void load_partitions() {
    for (const auto& [name, v] : section("partitions", json::value_t::object).items()) {
      std::string p = "/partitions/" + escape_token(name);
      if (!v.is_array()) fail(p, "a partition is a list of blocks");
      std::vector<Event> blocks;
      for (std::size_t i = 0; i < v.size(); ++i) {
        blocks.push_back(world_set(v[i], p + "/" + std::to_string(i)));
      }
      try {
        pf_.partitions.emplace(name, Partition(pf_.universe, std::move(blocks)));
      } catch (const DomainError& e) {
        fail(p, e.what());
      }
    }
  }

  void load_gambles() {
    for (const auto& [name, v] : section("gambles", json::value_t::object).items()) {
      std::string p = "/gambles/" + escape_token(name);
      check_name(name, p);
      if (!v.is_object()) fail(p, "a gamble maps worlds to values");
      std::vector<Rational> values(pf_.universe->size());
      for (const auto& [world, value] : v.items()) {
        std::string wp = p + "/" + escape_token(world);
        auto w = pf_.universe->index_of(world);
        if (!w) fail(wp, "unknown world '" + world + "'");
        values[*w] = rational_at(value, wp);
      }
      pf_.gambles.emplace(name, Gamble(pf_.universe, std::move(values)));
    }
  }

  void load_layered() {
    for (const auto& [name, v] : section("layered", json::value_t::object).items()) {
      std::string p = "/layered/" + escape_token(name);
      if (!v.is_array()) fail(p, "a layered probability is a list of layers");
      std::vector<std::vector<Rational>> layers;
      for (std::size_t k = 0; k < v.size(); ++k) {
        std::string lp = p + "/" + std::to_string(k);
        if (!v[k].is_object()) fail(lp, "a layer maps worlds to masses");
        std::vector<Rational> layer(pf_.universe->size());
        for (const auto& [world, mass] : v[k].items()) {
          std::string wp = lp + "/" + escape_token(world);
          auto w = pf_.universe->index_of(world);
          if (!w) fail(wp, "unknown world '" + world + "'");
          layer[*w] = rational_at(mass, wp);
        }
        layers.push_back(std::move(layer));
      }
      try {
        pf_.layered.emplace(name, LayeredProbability(pf_.universe, std::move(layers)));
      } catch (const DomainError& e) {
        fail(p, e.what());
      }
    }
  }

  void load_credal() {
    for (const auto& [name, v] : section("credal", json::value_t::object).items()) {
      std::string p = "/credal/" + escape_token(name);
      if (pf_.layered.count(name)) fail(p, "'" + name + "' is already a layered probability");
      if (!v.is_array() || v.empty()) fail(p, "a credal set is a nonempty list of layered names");
      std::vector<LayeredProbability> members;
      std::vector<std::string> names;
      for (std::size_t i = 0; i < v.size(); ++i) {
        std::string mp = p + "/" + std::to_string(i);
        names.push_back(text_at(v[i], mp, "member"));
        auto it = pf_.layered.find(names.back());
        if (it == pf_.layered.end()) fail(mp, "unknown layered probability '" + names.back() + "'");
        members.push_back(it->second);
      }
      pf_.credal.emplace(name, CredalSet(std::move(members)));
      pf_.credal_source.emplace(name, std::move(names));
    }
  }

  void load_assessments() {
    for (const auto& [name, v] : section("assessments", json::value_t::object).items()) {
      std::string p = "/assessments/" + escape_token(name);
      if (!v.is_object()) fail(p, "an assessment is an object");
      for (const auto& [key, unused] : v.items()) {
        if (key != "kind" && key != "class" && key != "entries") {
          fail(p + "/" + escape_token(key), "unknown field '" + key + "'");
        }
      }
      AssessmentSource source;
      try {
        source.kind = parse_prevision_kind(v.contains("kind")
                                               ? text_at(v["kind"], p + "/kind", "kind")
                                               : std::string("precise"));
      } catch (const DomainError& e) {
        fail(p + "/kind", e.what());
      }
      try {
        source.cls = parse_consistency_class(
            v.contains("class") ? text_at(v["class"], p + "/class", "class") : std::string("dF"));
      } catch (const DomainError& e) {
        fail(p + "/class", e.what());
      }
      const json empty = json::array();
      const json& entries = v.contains("entries") ? v["entries"] : empty;
      if (!entries.is_array()) fail(p + "/entries", "'entries' must be a list");

      std::vector<AssessmentEntry> resolved;
      for (std::size_t i = 0; i < entries.size(); ++i) {
        std::string ep = p + "/entries/" + std::to_string(i);
        const json& e = entries[i];
        if (!e.is_object()) fail(ep, "an entry is an object");
        EntrySource src;
        if (e.contains("event") == e.contains("gamble")) fail(ep, "give exactly one of 'event' and 'gamble'");
        if (e.contains("event")) src.event = text_at(e["event"], ep + "/event", "event");
        if (e.contains("gamble")) src.gamble = text_at(e["gamble"], ep + "/gamble", "gamble");
        if (e.contains("given")) src.given = text_at(e["given"], ep + "/given", "given");
        if (!e.contains("value")) fail(ep, "missing 'value'");
        Rational value = rational_at(e["value"], ep + "/value");
        src.value = to_string(value);
        try {
          Event given = pf_.event(src.given);
          if (given.empty()) fail(ep + "/given", "conditioning event is impossible");
          if (src.event) {
            resolved.push_back({ConditionalGamble::indicator(ConditionalEvent(pf_.event(*src.event), given)), value});
          } else {
            resolved.push_back({ConditionalGamble(pf_.gamble(*src.gamble), given), value});
          }
        } catch (const InputError& err) {
          if (err.line()) throw;
          fail(ep, err.what());
        }
        source.entries.push_back(std::move(src));
      }
      try {
        pf_.assessments.emplace(name, Assessment(source.kind, source.cls, std::move(resolved)));
      } catch (const DomainError& err) {
        fail(p, err.what());
      }
      pf_.assessment_source.emplace(name, std::move(source));
    }
  }

  void load_queries() {
    const json& q = section("queries", json::value_t::array);
    for (std::size_t i = 0; i < q.size(); ++i) {
      std::string p = "/queries/" + std::to_string(i);
      if (!q[i].is_array() || q[i].empty()) fail(p, "a query is a nonempty list of arguments");
      std::vector<std::string> args;
      for (std::size_t j = 0; j < q[i].size(); ++j) {
        args.push_back(text_at(q[i][j], p + "/" + std::to_string(j), "query argument"));
      }
      pf_.queries.push_back(std::move(args));
    }
  }

  json doc_;
  std::map<std::string, std::size_t> lines_;
  ProblemFile pf_;
};

nlohmann::ordered_json world_list(const Event& e) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (auto w : e.worlds()) out.push_back(e.universe()->name(w));
  return out;
}

}  // namespace

// -------------------------------------------------------------- ProblemFile

Event ProblemFile::event(const std::string& expression) const {
  return ExpressionParser(*this, expression).parse();
}

ConditionalEvent ProblemFile::conditional(const std::string& expression) const {
  auto [left, right] = split_bar(expression);
  Event b = event(right);
  if (b.empty()) throw InputError("conditioning event is impossible in '" + expression + "'");
  return ConditionalEvent(event(left), b);
}

ConditionalGamble ProblemFile::conditional_gamble(const std::string& expression) const {
  auto [left, right] = split_bar(expression);
  Event b = event(right);
  if (b.empty()) throw InputError("conditioning event is impossible in '" + expression + "'");
  std::string name = trim(left);
  if (auto it = gambles.find(name); it != gambles.end()) return ConditionalGamble(it->second, b);
  return ConditionalGamble::indicator(ConditionalEvent(event(left), b));
}

const Partition& ProblemFile::partition(const std::string& name) const {
  auto it = partitions.find(name);
  if (it == partitions.end()) throw InputError("unknown partition '" + name + "'");
  return it->second;
}

const Gamble& ProblemFile::gamble(const std::string& name) const {
  auto it = gambles.find(trim(name));
  if (it == gambles.end()) throw InputError("unknown gamble '" + name + "'");
  return it->second;
}

const Assessment& ProblemFile::assessment(const std::string& name) const {
  auto it = assessments.find(name);
  if (it == assessments.end()) throw InputError("unknown assessment '" + name + "'");
  return it->second;
}

Evaluator ProblemFile::evaluator(const std::string& name, EvaluatorSide credal_side) const {
  if (auto it = layered.find(name); it != layered.end()) return Evaluator::precise(it->second);
  if (auto it = credal.find(name); it != credal.end()) {
    return credal_side == EvaluatorSide::upper ? Evaluator::upper(it->second)
                                               : Evaluator::lower(it->second);
  }
  throw InputError("unknown layered probability or credal set '" + name + "'");
}

ProblemFile parse_problem(const std::string& text) { return Loader(text).load(); }

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_problem(buffer.str());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string dump_problem(const ProblemFile& pf) {
  using ojson = nlohmann::ordered_json;
  ojson doc;
  doc["universe"] = pf.universe->worlds();
  ojson events = ojson::object();
  for (const auto& [name, e] : pf.events) events[name] = world_list(e);
  doc["events"] = events;
  ojson partitions = ojson::object();
  for (const auto& [name, p] : pf.partitions) {
    ojson blocks = ojson::array();
    for (const auto& b : p.blocks()) blocks.push_back(world_list(b));
    partitions[name] = blocks;
  }
  doc["partitions"] = partitions;
  ojson gambles = ojson::object();
  for (const auto& [name, g] : pf.gambles) {
    ojson values = ojson::object();
    for (std::size_t w = 0; w < g.values().size(); ++w) {
      if (sgn(g(w)) != 0) values[pf.universe->name(w)] = to_string(g(w));
    }
    gambles[name] = values;
  }
  doc["gambles"] = gambles;
  ojson layered = ojson::object();
  for (const auto& [name, p] : pf.layered) {
    ojson layers = ojson::array();
    for (const auto& layer : p.layers()) {
      ojson masses = ojson::object();
      for (std::size_t w = 0; w < layer.size(); ++w) {
        if (sgn(layer[w]) != 0) masses[pf.universe->name(w)] = to_string(layer[w]);
      }
      layers.push_back(masses);
    }
    layered[name] = layers;
  }
  doc["layered"] = layered;
  ojson credal = ojson::object();
  for (const auto& [name, members] : pf.credal_source) credal[name] = members;
  doc["credal"] = credal;
  ojson assessments = ojson::object();
  for (const auto& [name, src] : pf.assessment_source) {
    ojson a;
    a["kind"] = std::string(to_string(src.kind));
    a["class"] = std::string(to_string(src.cls));
    ojson entries = ojson::array();
    for (const auto& e : src.entries) {
      ojson entry;
      if (e.event) entry["event"] = *e.event;
      if (e.gamble) entry["gamble"] = *e.gamble;
      entry["given"] = e.given;
      entry["value"] = e.value;
      entries.push_back(entry);
    }
    a["entries"] = entries;
    assessments[name] = a;
  }
  doc["assessments"] = assessments;
  if (!pf.queries.empty()) doc["queries"] = pf.queries;
  return doc.dump(2) + "\n";
}

std::string render(const ConditionalEvent& ce) {
  return ce.conditioned().to_string() + " | " + ce.conditioning().to_string();
}

std::string render(const ConditionalGamble& xb) {
  if (xb.is_indicator()) return render(xb.as_event());
  std::string out = "[";
  bool first = true;
  for (auto w : xb.conditioning().worlds()) {
    if (!first) out += ",";
    out += xb.universe()->name(w) + ":" + to_string(xb.payoff()(w));
    first = false;
  }
  return out + "] | " + xb.conditioning().to_string();
}

}  // namespace gnrel
