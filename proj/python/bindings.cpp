#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "gnrel/cli.hpp"
#include "gnrel/coherence.hpp"
#include "gnrel/extension.hpp"
#include "gnrel/gn.hpp"
#include "gnrel/inequalities.hpp"
#include "gnrel/problem.hpp"

namespace py = pybind11;

// Rationals cross the boundary as fractions.Fraction; int and "p/q" strings
// are accepted on input.
namespace pybind11::detail {
template <>
struct type_caster<gnrel::Rational> {
  PYBIND11_TYPE_CASTER(gnrel::Rational, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (!src || PyFloat_Check(src.ptr()) || PyBool_Check(src.ptr())) return false;
    py::object fraction = py::module_::import("fractions").attr("Fraction");
    if (!PyLong_Check(src.ptr()) && !py::isinstance<py::str>(src) &&
        !py::isinstance(src, fraction)) {
      return false;
    }
    try {
      value = gnrel::parse_rational(py::str(src).cast<std::string>());
    } catch (const gnrel::DomainError&) {
      return false;
    }
    return true;
  }

  static handle cast(const gnrel::Rational& v, return_value_policy, handle) {
    py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(py::int_(py::str(v.get_num().get_str())),
                    py::int_(py::str(v.get_den().get_str())))
        .release();
  }
};
}  // namespace pybind11::detail

namespace {

using namespace gnrel;
using UniverseHolder = std::shared_ptr<Universe>;

UniversePtr as_const(const UniverseHolder& u) { return u; }

UniverseHolder holder(const UniversePtr& u) { return std::const_pointer_cast<Universe>(u); }

std::size_t world_index(const Universe& u, const std::string& name) {
  auto w = u.index_of(name);
  if (!w) throw py::key_error("unknown world '" + name + "'");
  return *w;
}

Event make_event(const UniverseHolder& u, const std::vector<std::string>& worlds) {
  Event e = Event::none(as_const(u));
  for (const auto& name : worlds) e = e.with(world_index(*u, name));
  return e;
}

std::vector<std::string> world_names(const Event& e) {
  std::vector<std::string> out;
  for (auto w : e.worlds()) out.push_back(e.universe()->name(w));
  return out;
}

Gamble make_gamble(const UniverseHolder& u, const std::map<std::string, Rational>& values) {
  std::vector<Rational> v(u->size());
  for (const auto& [name, x] : values) v[world_index(*u, name)] = x;
  return Gamble(as_const(u), std::move(v));
}

std::map<std::string, Rational> gamble_values(const Gamble& g) {
  std::map<std::string, Rational> out;
  for (std::size_t w = 0; w < g.values().size(); ++w) out[g.universe()->name(w)] = g(w);
  return out;
}

LayeredProbability make_layered(const UniverseHolder& u,
                                const std::vector<std::map<std::string, Rational>>& layers) {
  std::vector<std::vector<Rational>> out;
  for (const auto& layer : layers) {
    std::vector<Rational> v(u->size());
    for (const auto& [name, x] : layer) v[world_index(*u, name)] = x;
    out.push_back(std::move(v));
  }
  return LayeredProbability(as_const(u), std::move(out));
}

py::dict verdict_dict(const Verdict& v) {
  py::dict d;
  d["consistent"] = v.consistent;
  d["criterion"] = v.criterion;
  d["witness_conjugated"] = v.witness_conjugated;
  py::list centering;
  for (const auto& c : v.centering_added) centering.append(render(c));
  d["centering_added"] = centering;
  if (v.witness) {
    py::list terms;
    for (const auto& t : v.witness->terms) {
      py::dict term;
      term["entry"] = render(t.gamble);
      term["value"] = t.value;
      term["stake"] = t.stake;
      terms.append(term);
    }
    py::dict w;
    w["terms"] = terms;
    w["against"] = v.witness->against ? py::object(py::int_(*v.witness->against)) : py::none();
    w["max_gain"] = max_conditioned_gain(*v.witness);
    d["witness"] = w;
  } else {
    d["witness"] = py::none();
  }
  return d;
}

py::dict report_dict(const BoundReport& r) {
  py::dict d;
  d["name"] = r.name;
  d["applicable"] = r.applicable;
  d["lhs"] = r.lhs ? py::cast(*r.lhs) : py::none();
  d["rhs"] = r.rhs ? py::cast(*r.rhs) : py::none();
  d["holds"] = r.holds ? py::cast(*r.holds) : py::none();
  d["context"] = r.context;
  return d;
}

template <class Reports>
py::list report_list(const Reports& reports) {
  py::list out;
  for (const auto& r : reports) out.append(report_dict(r));
  return out;
}

}  // namespace

PYBIND11_MODULE(_gnrel, m) {
  m.doc() = R"pbdoc(
      Exact Goodman-Nguyen comparisons, coherence checks and extensions
      for imprecise conditional probabilities on finite universes.
  )pbdoc";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<SizeError>(m, "SizeError", PyExc_ValueError);
  py::register_exception<UnsupportedOperation>(m, "UnsupportedOperation", PyExc_NotImplementedError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

  py::class_<Universe, UniverseHolder>(m, "Universe")
      .def(py::init([](std::vector<std::string> worlds) { return holder(make_universe(std::move(worlds))); }))
      .def_property_readonly("worlds", &Universe::worlds)
      .def("__len__", &Universe::size)
      .def("event", &make_event, py::arg("worlds"))
      .def("all", [](const UniverseHolder& u) { return Event::all(as_const(u)); })
      .def("none", [](const UniverseHolder& u) { return Event::none(as_const(u)); })
      .def("gamble", &make_gamble, py::arg("values"))
      .def("layered", &make_layered, py::arg("layers"))
      .def("__repr__", [](const Universe& u) {
        std::string out = "Universe([";
        for (std::size_t i = 0; i < u.size(); ++i) out += (i ? ", '" : "'") + u.name(i) + "'";
        return out + "])";
      });

  py::class_<Event>(m, "Event")
      .def(py::init(&make_event), py::arg("universe"), py::arg("worlds"))
      .def_property_readonly("universe", [](const Event& e) { return holder(e.universe()); })
      .def("worlds", &world_names)
      .def("empty", &Event::empty)
      .def("subset_of", &Event::subset_of)
      .def("__len__", &Event::count)
      .def(~py::self)
      .def(py::self & py::self)
      .def(py::self | py::self)
      .def(py::self - py::self)
      .def(py::self == py::self)
      .def("__hash__", [](const Event& e) { return std::hash<std::string>{}(e.to_string()); })
      .def("__repr__", &Event::to_string);

  py::class_<Partition>(m, "Partition")
      .def(py::init([](const UniverseHolder& u, const std::vector<std::vector<std::string>>& blocks) {
             std::vector<Event> events;
             for (const auto& b : blocks) events.push_back(make_event(u, b));
             return Partition(as_const(u), std::move(events));
           }),
           py::arg("universe"), py::arg("blocks"))
      .def_static("trivial", [](const UniverseHolder& u) { return Partition::trivial(as_const(u)); })
      .def_static("finest", [](const UniverseHolder& u) { return Partition::finest(as_const(u)); })
      .def_property_readonly("blocks", &Partition::blocks)
      .def("__len__", &Partition::size)
      .def(py::self == py::self);

  py::class_<Gamble>(m, "Gamble")
      .def(py::init(&make_gamble), py::arg("universe"), py::arg("values"))
      .def_static("indicator", &Gamble::indicator)
      .def("values", &gamble_values)
      .def("restricted_to", &Gamble::restricted_to)
      .def(-py::self)
      .def(py::self == py::self);

  py::class_<ConditionalEvent>(m, "ConditionalEvent")
      .def(py::init<const Event&, const Event&>(), py::arg("conditioned"), py::arg("conditioning"))
      .def_property_readonly("conditioned", &ConditionalEvent::conditioned)
      .def_property_readonly("conditioning", &ConditionalEvent::conditioning)
      .def("is_trivial", &ConditionalEvent::is_trivial)
      .def(py::self == py::self)
      .def("__repr__", [](const ConditionalEvent& ce) { return render(ce); });

  py::class_<ConditionalGamble>(m, "ConditionalGamble")
      .def(py::init<const Gamble&, const Event&>(), py::arg("payoff"), py::arg("conditioning"))
      .def_static("indicator", &ConditionalGamble::indicator)
      .def_property_readonly("payoff", &ConditionalGamble::payoff)
      .def_property_readonly("conditioning", &ConditionalGamble::conditioning)
      .def("sup", &ConditionalGamble::sup)
      .def("inf", &ConditionalGamble::inf)
      .def(-py::self)
      .def(py::self == py::self)
      .def("__repr__", [](const ConditionalGamble& xb) { return render(xb); });

  m.def("inner_event", &inner_event);
  m.def("outer_event", &outer_event);
  m.def("generated_partition", [](const UniverseHolder& u, const std::vector<Event>& events) {
    return generated_partition(as_const(u), events);
  });
  m.def("product_partition", &product_partition);

  m.def("gn_leq", py::overload_cast<const ConditionalEvent&, const ConditionalEvent&>(&gn_leq));
  m.def("gn_leq", py::overload_cast<const ConditionalGamble&, const ConditionalGamble&>(&gn_leq));
  m.def("gn_compare", [](const ConditionalEvent& a, const ConditionalEvent& b) {
    return std::string(to_string(gn_compare(a, b)));
  });
  m.def("gn_compare", [](const ConditionalGamble& a, const ConditionalGamble& b) {
    return std::string(to_string(gn_compare(a, b)));
  });
  m.def("ce_and", &ce_and);
  m.def("ce_or", &ce_or);

  py::class_<LayeredProbability>(m, "LayeredProbability")
      .def(py::init(&make_layered), py::arg("universe"), py::arg("layers"))
      .def_static("uniform", [](const UniverseHolder& u) { return LayeredProbability::uniform(as_const(u)); })
      .def("probability", &LayeredProbability::probability)
      .def("prevision", &LayeredProbability::prevision);

  py::class_<CredalSet>(m, "CredalSet")
      .def(py::init<std::vector<LayeredProbability>>(), py::arg("members"))
      .def("__len__", &CredalSet::size)
      .def("lower", [](const CredalSet& c, const ConditionalGamble& x) { return envelope_lower(c, x); })
      .def("upper", [](const CredalSet& c, const ConditionalGamble& x) { return envelope_upper(c, x); });

  py::class_<Evaluator>(m, "Evaluator")
      .def_static("precise", &Evaluator::precise)
      .def_static("lower", &Evaluator::lower)
      .def_static("upper", &Evaluator::upper)
      .def_property_readonly("side", [](const Evaluator& e) { return std::string(to_string(e.side())); })
      .def("__call__", py::overload_cast<const ConditionalEvent&>(&Evaluator::operator(), py::const_))
      .def("__call__", py::overload_cast<const ConditionalGamble&>(&Evaluator::operator(), py::const_));

  py::class_<Assessment>(m, "Assessment")
      .def(py::init([](const std::string& kind, const std::string& cls,
                       const std::vector<std::pair<py::object, Rational>>& entries) {
             std::vector<AssessmentEntry> out;
             for (const auto& [target, value] : entries) {
               if (py::isinstance<ConditionalEvent>(target)) {
                 out.push_back({ConditionalGamble::indicator(target.cast<ConditionalEvent>()), value});
               } else {
                 out.push_back({target.cast<ConditionalGamble>(), value});
               }
             }
             return Assessment(parse_prevision_kind(kind), parse_consistency_class(cls), std::move(out));
           }),
           py::arg("kind"), py::arg("cls"), py::arg("entries"))
      .def_property_readonly("kind", [](const Assessment& a) { return std::string(to_string(a.kind())); })
      .def_property_readonly("cls", [](const Assessment& a) { return std::string(to_string(a.intended_class())); })
      .def("__len__", &Assessment::size)
      .def("entries", [](const Assessment& a) {
        std::vector<std::pair<ConditionalGamble, Rational>> out;
        for (const auto& e : a.entries()) out.emplace_back(e.gamble, e.value);
        return out;
      });

  m.def("check", [](const Assessment& a, const std::string& cls) {
    return verdict_dict(cls.empty() ? check(a) : check(a, parse_consistency_class(cls)));
  }, py::arg("assessment"), py::arg("cls") = "");
  m.def("check_avoids_sure_loss", [](const Assessment& a) { return verdict_dict(check_avoids_sure_loss(a)); });
  m.def("conjugate", &conjugate);
  m.def("monotonicity_audit", &monotonicity_audit);

  m.def("conditional_inner", &conditional_inner);
  m.def("conditional_outer", &conditional_outer);
  m.def("gn_lower_set", &gn_lower_set);
  m.def("gn_upper_set", &gn_upper_set);
  m.def("extension_interval", [](const Evaluator& mu, const ConditionalEvent& cd, const Partition& p) {
    auto iv = extension_interval(mu, cd, p);
    return py::make_tuple(iv.low, iv.high, iv.low_witness, iv.high_witness);
  });
  m.def("natural_extension", [](const Evaluator& mu, const std::vector<ConditionalEvent>& targets,
                                const Partition& p) { return natural_extension(mu, targets, p); });
  m.def("upper_extension", py::overload_cast<const Evaluator&, const ConditionalEvent&, const Partition&>(&upper_extension));

  m.def("product_rule_report", [](const Evaluator& mu, const Event& a, const Event& b, const Gamble& x) {
    return report_list(product_rule_report(mu, a, b, x));
  });
  m.def("inner_event_lower_bound", [](const Evaluator& mu, const Gamble& x, const Event& b,
                                      const Partition& p, std::optional<Rational> truth) {
    return report_dict(inner_event_lower_bound(mu, x, b, p, truth));
  }, py::arg("mu"), py::arg("x"), py::arg("b"), py::arg("p"), py::arg("truth") = py::none());
  m.def("finite_values_lower_bound", [](const Evaluator& mu, const Gamble& x, const Event& b,
                                        const Partition& p, std::optional<Rational> truth) {
    return report_dict(finite_values_lower_bound(mu, x, b, p, truth));
  }, py::arg("mu"), py::arg("x"), py::arg("b"), py::arg("p"), py::arg("truth") = py::none());
  m.def("sign_relation", [](const Gamble& x, const Event& b1, const Event& b0) {
    auto s = sign_relation(x, b1, b0);
    return py::make_tuple(std::string(to_string(s.verdict)), s.rationale);
  });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Run the command-line tool in-process; returns (exit code, stdout, stderr).");

#ifdef GNREL_VERSION
  m.attr("__version__") = GNREL_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
