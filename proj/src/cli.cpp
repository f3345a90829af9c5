#include "gnrel/cli.hpp"

#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gnrel/coherence.hpp"
#include "gnrel/extension.hpp"
#include "gnrel/gn.hpp"
#include "gnrel/inequalities.hpp"
#include "gnrel/problem.hpp"

namespace gnrel {

namespace {

using ojson = nlohmann::ordered_json;

enum class Format { text, json };

struct Context {
  std::ostream& out;
  Format format = Format::text;

  void emit(const ojson& record, const std::string& text) const {
    if (format == Format::json) {
      out << record.dump(2) << '\n';
    } else {
      out << text;
    }
  }
};

ojson optional_rational(const std::optional<Rational>& v) {
  return v ? ojson(to_string(*v)) : ojson(nullptr);
}

const Partition& pick_partition(const ProblemFile& pf, const std::string& name) {
  if (!name.empty()) return pf.partition(name);
  if (pf.partitions.size() != 1) {
    throw InputError("pass --partition: the file defines " + std::to_string(pf.partitions.size()) +
                     " partitions");
  }
  return pf.partitions.begin()->second;
}

EvaluatorSide parse_side(const std::string& side) {
  if (side == "lower") return EvaluatorSide::lower;
  if (side == "upper") return EvaluatorSide::upper;
  throw InputError("side must be 'lower' or 'upper', got '" + side + "'");
}

// ------------------------------------------------------------------- check

int cmd_check(const Context& ctx, const std::string& file, const std::string& name,
              const std::string& cls_flag) {
  ProblemFile pf = load_problem(file);
  const Assessment& a = pf.assessment(name);
  ConsistencyClass cls;
  try {
    cls = cls_flag.empty() ? a.intended_class() : parse_consistency_class(cls_flag);
  } catch (const DomainError& e) {
    throw InputError(e.what());
  }
  Verdict v = check(a, cls);

  ojson record;
  record["command"] = "check";
  record["assessment"] = name;
  record["kind"] = std::string(to_string(a.kind()));
  record["class"] = v.criterion;
  record["consistent"] = v.consistent;
  ojson centering = ojson::array();
  for (const auto& c : v.centering_added) centering.push_back(render(c));
  record["centering_added"] = centering;
  ojson notes = ojson::array();
  for (const auto& n : a.necessary_condition_violations()) notes.push_back(n);
  record["necessary_condition_violations"] = notes;

  std::ostringstream text;
  text << (v.consistent ? "consistent" : "inconsistent") << " (" << v.criterion << ", "
       << to_string(a.kind()) << ")\n";
  for (const auto& n : a.necessary_condition_violations()) text << "note: " << n << '\n';
  if (!v.witness) {
    record["witness"] = nullptr;
  } else {
    const GainSpec& g = *v.witness;
    ojson witness;
    witness["conjugated"] = v.witness_conjugated;
    witness["against"] = g.against ? ojson(*g.against) : ojson(nullptr);
    ojson terms = ojson::array();
    Rational max_gain = max_conditioned_gain(g);
    text << "witness" << (v.witness_conjugated ? " (on the conjugate assessment)" : "")
         << ": max gain " << to_string(max_gain) << " on " << g.conditioning().to_string() << '\n';
    for (std::size_t i = 0; i < g.terms.size(); ++i) {
      const auto& t = g.terms[i];
      terms.push_back({{"entry", render(t.gamble)},
                       {"value", to_string(t.value)},
                       {"stake", to_string(t.stake)}});
      text << "  stake " << to_string(t.stake) << "  " << render(t.gamble) << " = "
           << to_string(t.value) << (g.against == i ? "  [against]" : "") << '\n';
    }
    witness["terms"] = terms;
    witness["max_gain"] = to_string(max_gain);
    record["witness"] = witness;
  }
  ctx.emit(record, text.str());
  return v.consistent ? 0 : 1;
}

// ---------------------------------------------------------------------- gn

int cmd_gn(const Context& ctx, const std::string& file, const std::string& left,
           const std::string& right, bool gambles) {
  ProblemFile pf = load_problem(file);
  GnVerdict verdict;
  std::string l, r;
  if (gambles) {
    auto x = pf.conditional_gamble(left);
    auto y = pf.conditional_gamble(right);
    verdict = gn_compare(x, y);
    l = render(x);
    r = render(y);
  } else {
    auto x = pf.conditional(left);
    auto y = pf.conditional(right);
    verdict = gn_compare(x, y);
    l = render(x);
    r = render(y);
  }
  ojson record{{"command", "gn"}, {"left", l}, {"right", r},
               {"verdict", std::string(to_string(verdict))}};
  ctx.emit(record, std::string(to_string(verdict)) + "\n");
  return verdict == GnVerdict::incomparable ? 1 : 0;
}

// ------------------------------------------------------------------ extend

int cmd_extend(const Context& ctx, const std::string& file, const std::string& eval_name,
               const std::string& target_text, const std::string& partition_name,
               const std::string& mode, const std::string& side) {
  ProblemFile pf = load_problem(file);
  Evaluator mu = pf.evaluator(eval_name, parse_side(side));
  const Partition& p = pick_partition(pf, partition_name);
  ConditionalEvent target = pf.conditional(target_text);

  ojson record{{"command", "extend"},
               {"mode", mode},
               {"evaluator", eval_name},
               {"side", std::string(to_string(mu.side()))},
               {"target", render(target)}};
  std::ostringstream text;
  if (mode == "interval") {
    ExtensionInterval iv = extension_interval(mu, target, p);
    record["low"] = to_string(iv.low);
    record["high"] = to_string(iv.high);
    record["inner"] = render(iv.low_witness);
    record["outer"] = render(iv.high_witness);
    text << to_string(iv.low) << ' ' << to_string(iv.high) << '\n'
         << "inner: " << render(iv.low_witness) << '\n'
         << "outer: " << render(iv.high_witness) << '\n';
  } else if (mode == "natural") {
    Rational v = natural_extension(mu, std::span<const ConditionalEvent>(&target, 1), p).front();
    record["value"] = to_string(v);
    text << to_string(v) << '\n';
  } else if (mode == "upper") {
    Rational v = upper_extension(mu, target, p);
    record["value"] = to_string(v);
    text << to_string(v) << '\n';
  } else {
    throw InputError("mode must be natural, interval or upper, got '" + mode + "'");
  }
  ctx.emit(record, text.str());
  return 0;
}

// ------------------------------------------------------------------- audit

int cmd_audit(const Context& ctx, const std::string& file, const std::string& name) {
  ProblemFile pf = load_problem(file);
  const Assessment& a = pf.assessment(name);
  auto pairs = monotonicity_audit(a);
  ojson violations = ojson::array();
  std::ostringstream text;
  for (auto [i, j] : pairs) {
    const auto& left = a.entries()[i];
    const auto& right = a.entries()[j];
    violations.push_back({{"left", render(left.gamble)},
                          {"left_value", to_string(left.value)},
                          {"right", render(right.gamble)},
                          {"right_value", to_string(right.value)}});
    text << "violation: " << render(left.gamble) << " <=GN " << render(right.gamble) << " but "
         << to_string(left.value) << " > " << to_string(right.value) << '\n';
  }
  if (pairs.empty()) text << "no violations\n";
  ctx.emit({{"command", "audit"}, {"assessment", name}, {"violations", violations}}, text.str());
  return pairs.empty() ? 0 : 1;
}

// ------------------------------------------------------------------ bounds

template <class Reports>
int emit_reports(const Context& ctx, const std::string& kind, const Reports& reports) {
  ojson list = ojson::array();
  std::ostringstream text;
  bool ok = true;
  for (const BoundReport& r : reports) {
    list.push_back({{"name", r.name},
                    {"applicable", r.applicable},
                    {"lhs", optional_rational(r.lhs)},
                    {"rhs", optional_rational(r.rhs)},
                    {"holds", r.holds ? ojson(*r.holds) : ojson(nullptr)},
                    {"context", r.context}});
    text << r.name << ": ";
    if (!r.applicable) {
      text << "not applicable";
    } else if (!r.holds) {
      text << "bound " << (r.lhs ? to_string(*r.lhs) : std::string("?"));
    } else {
      text << (*r.holds ? "holds" : "FAILS") << "  lhs " << to_string(*r.lhs) << "  rhs "
           << to_string(*r.rhs);
    }
    text << "  [" << r.context << "]\n";
    if (r.holds && !*r.holds) ok = false;
  }
  ctx.emit({{"command", "bounds"}, {"kind", kind}, {"reports", list}}, text.str());
  return ok ? 0 : 1;
}

void expect_args(const std::vector<std::string>& args, std::size_t n, const char* usage) {
  if (args.size() != n) throw InputError(std::string("usage: bounds FILE EVAL ") + usage);
}

int cmd_bounds(const Context& ctx, const std::string& file, const std::string& eval_name,
               const std::string& kind, const std::vector<std::string>& args,
               const std::string& partition_name, const std::string& side) {
  ProblemFile pf = load_problem(file);
  if (kind == "sign") {
    expect_args(args, 3, "sign X B1 B0");
    SignRelation s = sign_relation(pf.gamble(args[0]), pf.event(args[1]), pf.event(args[2]));
    ctx.emit({{"command", "bounds"},
              {"kind", "sign"},
              {"verdict", std::string(to_string(s.verdict))},
              {"rationale", s.rationale}},
             std::string(to_string(s.verdict)) + "  (" + s.rationale + ")\n");
    return s.verdict == GnVerdict::incomparable ? 1 : 0;
  }
  Evaluator mu = pf.evaluator(eval_name, parse_side(side));
  if (kind == "product") {
    expect_args(args, 3, "product A B X");
    return emit_reports(ctx, kind,
                        product_rule_report(mu, pf.event(args[0]), pf.event(args[1]),
                                            pf.gamble(args[2])));
  }
  if (kind == "nested") {
    expect_args(args, 3, "nested A|X B1 B0");
    Event b1 = pf.event(args[1]);
    Event b0 = pf.event(args[2]);
    if (pf.gambles.count(args[0])) {
      return emit_reports(ctx, kind, nested_conditioning_report(mu, pf.gamble(args[0]), b1, b0));
    }
    return emit_reports(ctx, kind, nested_conditioning_report(mu, pf.event(args[0]), b1, b0));
  }
  if (kind == "inner" || kind == "finite") {
    expect_args(args, 2, "inner|finite X B");
    const Gamble& x = pf.gamble(args[0]);
    Event b = pf.event(args[1]);
    if (b.empty()) throw InputError("B must not be impossible");
    const Partition& p = pick_partition(pf, partition_name);
    Rational truth = mu(ConditionalGamble(x, b));
    BoundReport r = kind == "inner" ? inner_event_lower_bound(mu, x, b, p, truth)
                                    : finite_values_lower_bound(mu, x, b, p, truth);
    return emit_reports(ctx, kind, std::array<BoundReport, 1>{r});
  }
  throw InputError("bounds kind must be product, nested, inner, finite or sign");
}

// ------------------------------------------------------------------ random

std::string random_problem(std::uint64_t seed, std::size_t worlds, std::size_t members,
                           std::size_t layers, std::size_t entries) {
  if (worlds < 1 || worlds > 24) throw InputError("--worlds must be between 1 and 24");
  if (members < 1) throw InputError("--members must be positive");
  if (layers < 1) throw InputError("--layers must be positive");
  if (entries > max_check_entries) throw InputError("--entries is at most 16");
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= worlds; ++i) names.push_back("w" + std::to_string(i));
  auto u = make_universe(names);
  std::mt19937_64 rng(seed);
  CredalSet m = random_credal(rng(), u, members, layers);

  const std::uint64_t full = worlds == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << worlds) - 1;
  std::uniform_int_distribution<std::uint64_t> any(0, full);
  std::uniform_int_distribution<std::uint64_t> nonempty(1, full);

  std::ostringstream doc;
  ojson root;
  root["universe"] = names;
  auto set_of = [&](std::uint64_t mask) {
    ojson out = ojson::array();
    for (std::size_t w = 0; w < worlds; ++w) {
      if (mask >> w & 1u) out.push_back(names[w]);
    }
    return out;
  };
  std::uint64_t e1 = any(rng), e2 = any(rng);
  root["events"] = {{"E1", set_of(e1)}, {"E2", set_of(e2)}};
  Partition p = generated_partition(u, std::vector<Event>{Event::from_mask(u, e1),
                                                          Event::from_mask(u, e2)});
  ojson blocks = ojson::array();
  for (const auto& b : p.blocks()) blocks.push_back(set_of(b.mask()));
  root["partitions"] = {{"P", blocks}};
  root["gambles"] = ojson::object();
  ojson layered = ojson::object();
  ojson credal = ojson::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::string name = "M" + std::to_string(i + 1);
    ojson ls = ojson::array();
    for (const auto& layer : m.members()[i].layers()) {
      ojson masses = ojson::object();
      for (std::size_t w = 0; w < worlds; ++w) {
        if (sgn(layer[w]) != 0) masses[names[w]] = to_string(layer[w]);
      }
      ls.push_back(masses);
    }
    layered[name] = ls;
    credal.push_back(name);
  }
  root["layered"] = layered;
  root["credal"] = {{"M", credal}};
  ojson list = ojson::array();
  for (std::size_t k = 0; k < entries; ++k) {
    std::uint64_t a = any(rng), b = nonempty(rng);
    ConditionalEvent ce(Event::from_mask(u, a), Event::from_mask(u, b));
    Rational v = envelope_lower(m, ConditionalGamble::indicator(ce));
    std::ostringstream ev, given;
    ev << "{";
    given << "{";
    bool first = true;
    for (auto w : ce.conditioned().worlds()) {
      ev << (first ? "" : ",") << names[w];
      first = false;
    }
    first = true;
    for (auto w : ce.conditioning().worlds()) {
      given << (first ? "" : ",") << names[w];
      first = false;
    }
    ev << "}";
    given << "}";
    list.push_back({{"event", ev.str()}, {"given", given.str()}, {"value", to_string(v)}});
  }
  root["assessments"] = {{"A", {{"kind", "lower"}, {"class", "W"}, {"entries", list}}}};
  root["queries"] = ojson::array({ojson::array({"check", "A"}), ojson::array({"audit", "A"})});
  // Re-parse so that generated files go through the same validation as user files.
  return dump_problem(parse_problem(root.dump()));
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Goodman-Nguyen relation, coherence checks and extensions for imprecise "
               "conditional probabilities"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));

  std::string file, name, cls, left, right, eval, target, partition, mode = "interval",
                                                                     side = "lower", kind;
  bool gambles = false;
  std::vector<std::string> rest;
  std::uint64_t seed = 0;
  std::size_t worlds = 4, members = 2, layers = 2, entries = 4;

  auto* check_cmd = app.add_subcommand("check", "Decide the consistency class of an assessment");
  check_cmd->add_option("file", file, "Problem file")->required();
  check_cmd->add_option("assessment", name, "Assessment name")->required();
  check_cmd->add_option("--class", cls, "dF, W, convex or 1convex (default: the file's tag)");

  auto* gn_cmd = app.add_subcommand("gn", "Compare two conditional events or gambles");
  gn_cmd->add_option("file", file, "Problem file")->required();
  gn_cmd->add_option("left", left, "Left operand, e.g. 'A | B'")->required();
  gn_cmd->add_option("right", right, "Right operand")->required();
  gn_cmd->add_flag("--gambles", gambles, "Operands are conditional gambles");

  auto* extend_cmd = app.add_subcommand("extend", "Extend an evaluator to a conditional event");
  extend_cmd->add_option("file", file, "Problem file")->required();
  extend_cmd->add_option("evaluator", eval, "Layered probability or credal set")->required();
  extend_cmd->add_option("target", target, "Target conditional event")->required();
  extend_cmd->add_option("--partition", partition, "Partition name");
  extend_cmd->add_option("--mode", mode, "natural, interval or upper")
      ->check(CLI::IsMember({"natural", "interval", "upper"}));
  extend_cmd->add_option("--side", side, "Envelope side of a credal set")
      ->check(CLI::IsMember({"lower", "upper"}));

  auto* audit_cmd = app.add_subcommand("audit", "List monotonicity violations of an assessment");
  audit_cmd->add_option("file", file, "Problem file")->required();
  audit_cmd->add_option("assessment", name, "Assessment name")->required();

  auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate derived inequalities");
  bounds_cmd->add_option("file", file, "Problem file")->required();
  bounds_cmd->add_option("evaluator", eval, "Layered probability or credal set")->required();
  bounds_cmd->add_option("kind", kind, "product, nested, inner, finite or sign")->required();
  bounds_cmd->add_option("args", rest, "Operands");
  bounds_cmd->add_option("--partition", partition, "Partition name");
  bounds_cmd->add_option("--side", side, "Envelope side of a credal set")
      ->check(CLI::IsMember({"lower", "upper"}));

  auto* random_cmd = app.add_subcommand("random", "Write a seeded random problem file");
  random_cmd->add_option("--seed", seed, "Random seed");
  random_cmd->add_option("--worlds", worlds, "Number of worlds");
  random_cmd->add_option("--members", members, "Credal set size");
  random_cmd->add_option("--layers", layers, "Maximum layers per member");
  random_cmd->add_option("--entries", entries, "Assessment entries");

  auto* fmt_cmd = app.add_subcommand("fmt", "Validate a problem file and print it canonically");
  fmt_cmd->add_option("file", file, "Problem file")->required();

  auto* run_cmd = app.add_subcommand("run", "Run the queries stored in a problem file");
  run_cmd->add_option("file", file, "Problem file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  Context ctx{out, format == "json" ? Format::json : Format::text};
  try {
    if (check_cmd->parsed()) return cmd_check(ctx, file, name, cls);
    if (gn_cmd->parsed()) return cmd_gn(ctx, file, left, right, gambles);
    if (extend_cmd->parsed()) return cmd_extend(ctx, file, eval, target, partition, mode, side);
    if (audit_cmd->parsed()) return cmd_audit(ctx, file, name);
    if (bounds_cmd->parsed()) return cmd_bounds(ctx, file, eval, kind, rest, partition, side);
    if (random_cmd->parsed()) {
      out << random_problem(seed, worlds, members, layers, entries);
      return 0;
    }
    if (fmt_cmd->parsed()) {
      out << dump_problem(load_problem(file));
      return 0;
    }
    if (run_cmd->parsed()) {
      ProblemFile pf = load_problem(file);
      int worst = 0;
      for (const auto& query : pf.queries) {
        std::vector<std::string> args{query.front(), file};
        args.insert(args.end(), query.begin() + 1, query.end());
        args.push_back("--format=" + format);
        if (ctx.format == Format::text) {
          out << "$";
          for (const auto& a : query) out << ' ' << a;
          out << '\n';
        }
        worst = std::max(worst, run_cli(args, out, err));
      }
      return worst;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const SizeError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const UnsupportedOperation& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"gnrel"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace gnrel
