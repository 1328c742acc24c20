#include "adicomp/cli.hpp"

#include "adicomp/error.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

namespace adicomp {

namespace {

[[noreturn]] void parse_fail(const std::string &where, const std::string &why) {
  throw Error(ErrorCode::ParseError, where + ": " + why);
}

void only_keys(const Json &j, const std::string &where, std::initializer_list<std::string_view> keys) {
  if (!j.is_object()) parse_fail(where, "expected an object");
  for (const auto &[k, v] : j.items())
    if (std::find(keys.begin(), keys.end(), k) == keys.end())
      parse_fail(where, "unknown field '" + k + "'");
}

const Json &need(const Json &j, const std::string &where, const std::string &key) {
  auto it = j.find(key);
  if (it == j.end()) parse_fail(where, "missing field '" + key + "'");
  return *it;
}

std::string get_string(const Json &j, const std::string &where) {
  if (!j.is_string()) parse_fail(where, "expected a string");
  return j.get<std::string>();
}

long get_int(const Json &j, const std::string &where) {
  if (!j.is_number_integer()) parse_fail(where, "expected an integer");
  return j.get<long>();
}

std::vector<std::string> get_strings(const Json &j, const std::string &where) {
  if (!j.is_array()) parse_fail(where, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(get_string(j[i], where + "/" + std::to_string(i)));
  return out;
}

std::string kind_name(RingKind k) {
  switch (k) {
  case RingKind::Integers: return "integers";
  case RingKind::Rationals: return "rationals";
  case RingKind::PrimeField: return "prime_field";
  case RingKind::Polynomial: return "polynomial";
  case RingKind::Quotient: return "quotient";
  case RingKind::PowerSeries: return "power_series";
  }
  return "integers";
}

RingDescription ring_at(const Json &j, const std::string &where) {
  if (!j.is_object()) parse_fail(where, "expected a ring object");
  const std::string kind = get_string(need(j, where, "kind"), where + "/kind");
  RingDescription d;
  auto sub = [&](const char *key) {
    return std::make_shared<RingDescription>(ring_at(need(j, where, key), where + "/" + key));
  };
  if (kind == "integers" || kind == "rationals") {
    only_keys(j, where, {"kind"});
    d.kind = kind == "integers" ? RingKind::Integers : RingKind::Rationals;
  } else if (kind == "prime_field") {
    only_keys(j, where, {"kind", "modulus"});
    d.kind = RingKind::PrimeField;
    d.modulus = get_int(need(j, where, "modulus"), where + "/modulus");
  } else if (kind == "polynomial") {
    only_keys(j, where, {"kind", "base", "vars", "order"});
    d.kind = RingKind::Polynomial;
    d.base = sub("base");
    d.vars = get_strings(need(j, where, "vars"), where + "/vars");
    if (j.contains("order")) {
      std::string o = get_string(j["order"], where + "/order");
      if (o == "lex") d.order = MonoOrder::Lex;
      else if (o == "grlex") d.order = MonoOrder::GrLex;
      else parse_fail(where + "/order", "expected lex or grlex");
    }
  } else if (kind == "quotient") {
    only_keys(j, where, {"kind", "ambient", "ideal"});
    d.kind = RingKind::Quotient;
    d.ambient = sub("ambient");
    d.ideal = get_strings(need(j, where, "ideal"), where + "/ideal");
  } else if (kind == "power_series") {
    only_keys(j, where, {"kind", "base", "var", "precision"});
    d.kind = RingKind::PowerSeries;
    d.base = sub("base");
    d.var = get_string(need(j, where, "var"), where + "/var");
    d.precision = static_cast<int>(get_int(need(j, where, "precision"), where + "/precision"));
  } else {
    parse_fail(where + "/kind", "unknown ring kind '" + kind + "'");
  }
  return d;
}

ModuleSpec module_at(const Json &j, const std::string &where) {
  only_keys(j, where, {"rank", "relations"});
  ModuleSpec m;
  long rank = get_int(need(j, where, "rank"), where + "/rank");
  if (rank < 0) parse_fail(where + "/rank", "negative rank");
  m.rank = static_cast<std::size_t>(rank);
  if (j.contains("relations")) {
    const Json &rels = j["relations"];
    if (!rels.is_array()) parse_fail(where + "/relations", "expected an array");
    for (std::size_t i = 0; i < rels.size(); ++i) {
      std::string w = where + "/relations/" + std::to_string(i);
      auto v = get_strings(rels[i], w);
      if (v.size() != m.rank) parse_fail(w, "relation length differs from rank");
      m.relations.push_back(std::move(v));
    }
  }
  return m;
}

Json module_json(const ModuleSpec &m) {
  Json j;
  j["rank"] = m.rank;
  j["relations"] = m.relations;
  return j;
}

ComplexSpec complex_at(const Json &j, const std::string &where) {
  only_keys(j, where, {"lo", "entries", "differentials"});
  ComplexSpec c;
  c.lo = static_cast<int>(get_int(need(j, where, "lo"), where + "/lo"));
  const Json &es = need(j, where, "entries");
  if (!es.is_array()) parse_fail(where + "/entries", "expected an array");
  for (std::size_t i = 0; i < es.size(); ++i)
    c.entries.push_back(module_at(es[i], where + "/entries/" + std::to_string(i)));
  const Json &ds = need(j, where, "differentials");
  if (!ds.is_array()) parse_fail(where + "/differentials", "expected an array");
  if (ds.size() + 1 != std::max<std::size_t>(c.entries.size(), 1))
    parse_fail(where + "/differentials", "expected one differential between consecutive entries");
  for (std::size_t k = 0; k < ds.size(); ++k) {
    std::string w = where + "/differentials/" + std::to_string(k);
    if (!ds[k].is_array()) parse_fail(w, "expected an array of rows");
    std::vector<std::vector<std::string>> rows;
    for (std::size_t r = 0; r < ds[k].size(); ++r) {
      auto row = get_strings(ds[k][r], w + "/" + std::to_string(r));
      if (row.size() != c.entries[k].rank) parse_fail(w, "row length differs from source rank");
      rows.push_back(std::move(row));
    }
    if (rows.size() != c.entries[k + 1].rank) parse_fail(w, "row count differs from target rank");
    c.differentials.push_back(std::move(rows));
  }
  return c;
}

Json complex_json(const ComplexSpec &c) {
  Json j;
  j["lo"] = c.lo;
  j["entries"] = Json::array();
  for (const auto &e : c.entries) j["entries"].push_back(module_json(e));
  j["differentials"] = c.differentials;
  return j;
}

BudgetOverrides budget_at(const Json &j, const std::string &where) {
  only_keys(j, where, {"depth", "window", "stages", "stable"});
  BudgetOverrides b;
  auto field = [&](const char *k, std::optional<int> &dst) {
    if (j.contains(k)) {
      long v = get_int(j[k], where + "/" + k);
      if (v < 1 || v > 64) parse_fail(where + "/" + k, "budget out of range 1..64");
      dst = static_cast<int>(v);
    }
  };
  field("depth", b.depth);
  field("window", b.window);
  field("stages", b.stages);
  field("stable", b.stable);
  return b;
}

Json budget_json(const BudgetOverrides &b) {
  Json j = Json::object();
  if (b.depth) j["depth"] = *b.depth;
  if (b.window) j["window"] = *b.window;
  if (b.stages) j["stages"] = *b.stages;
  if (b.stable) j["stable"] = *b.stable;
  return j;
}

// Argument schema per command: allowed keys and references to named objects.
struct ArgRule {
  std::vector<std::string_view> keys;
};

const std::map<std::string, ArgRule, std::less<>> &rules() {
  static const std::map<std::string, ArgRule, std::less<>> r{
      {"is_separated", {{"module", "ideal"}}},
      {"is_complete", {{"module", "ideal"}}},
      {"is_cohomologically_complete", {{"module", "complex", "ideal", "route"}}},
      {"ext_localization", {{"module", "element", "degree"}}},
      {"check_theorem2", {{"module", "complex", "example1", "ideal"}}},
      {"check_theorem3", {{"module", "complex", "ideals"}}},
      {"check_theorem4", {{"module", "ideal", "step2"}}},
      {"check_lemma1", {{"module", "element"}}},
      {"check_lemma5", {{"map", "index", "module"}}},
      {"build_example1", {{"support", "precision"}}},
  };
  return r;
}

void check_task(const TaskSpec &t, const InstanceFile &f, const std::string &where) {
  auto rit = rules().find(t.command);
  if (rit == rules().end()) parse_fail(where + "/command", "unknown command '" + t.command + "'");
  const Json &a = t.arguments;
  if (!a.is_object()) parse_fail(where + "/arguments", "expected an object");
  for (const auto &[k, v] : a.items())
    if (std::find(rit->second.keys.begin(), rit->second.keys.end(), k) == rit->second.keys.end())
      parse_fail(where + "/arguments", "unknown argument '" + k + "'");
  const std::string aw = where + "/arguments/";
  auto ref = [&](const char *key, const auto &table) {
    std::string name = get_string(a[key], aw + key);
    if (!table.count(name)) parse_fail(aw + key, "undeclared name '" + name + "'");
  };
  auto require = [&](const char *key) {
    if (!a.contains(key)) parse_fail(where + "/arguments", "missing argument '" + std::string(key) + "'");
  };
  if (a.contains("module")) ref("module", f.modules);
  if (a.contains("complex")) ref("complex", f.complexes);
  if (a.contains("ideal")) ref("ideal", f.ideals);
  if (a.contains("map")) ref("map", f.maps);
  if (a.contains("ideals")) {
    auto names = get_strings(a["ideals"], aw + "ideals");
    if (names.size() < 2) parse_fail(aw + "ideals", "at least two ideals required");
    for (const auto &n : names)
      if (!f.ideals.count(n)) parse_fail(aw + "ideals", "undeclared name '" + n + "'");
  }
  if (a.contains("element")) get_string(a["element"], aw + "element");
  for (const char *k : {"degree", "index", "support", "precision"})
    if (a.contains(k)) get_int(a[k], aw + k);
  if (a.contains("step2")) {
    std::string s = get_string(a["step2"], aw + "step2");
    if (s != "off" && s != "auto" && s != "require") parse_fail(aw + "step2", "expected off, auto or require");
  }
  if (a.contains("route")) {
    std::string s = get_string(a["route"], aw + "route");
    if (s != "decomposed" && s != "direct") parse_fail(aw + "route", "expected decomposed or direct");
  }
  if (a.contains("example1")) {
    only_keys(a["example1"], aw + "example1", {"support", "precision"});
    get_int(need(a["example1"], aw + "example1", "support"), aw + "example1/support");
    get_int(need(a["example1"], aw + "example1", "precision"), aw + "example1/precision");
  }

  const std::string &c = t.command;
  int subjects = a.contains("module") + a.contains("complex") + a.contains("example1");
  if (c == "build_example1") {
    require("support");
    require("precision");
    return;
  }
  if (subjects != 1) parse_fail(where + "/arguments", "exactly one of module, complex or example1 required");
  if (c == "is_separated" || c == "is_complete" || c == "check_theorem4" ||
      c == "is_cohomologically_complete" || (c == "check_theorem2" && !a.contains("example1")))
    require("ideal");
  if (c == "ext_localization") {
    require("element");
    require("degree");
  }
  if (c == "check_theorem3") require("ideals");
  if (c == "check_lemma1") require("element");
  if (c == "check_lemma5") {
    require("map");
    require("index");
  }
}

} // namespace

bool operator==(const RingDescription &a, const RingDescription &b) {
  auto same_ptr = [](const auto &x, const auto &y) {
    if (!x || !y) return !x && !y;
    return *x == *y;
  };
  return a.kind == b.kind && a.modulus == b.modulus && same_ptr(a.base, b.base) &&
         a.vars == b.vars && a.order == b.order && same_ptr(a.ambient, b.ambient) &&
         a.ideal == b.ideal && a.var == b.var && a.precision == b.precision;
}

bool operator==(const InstanceFile &a, const InstanceFile &b) {
  return a.ring == b.ring && a.modules == b.modules && a.complexes == b.complexes &&
         a.ideals == b.ideals && a.maps == b.maps && a.tasks == b.tasks && a.seed == b.seed;
}

Json ring_to_json(const RingDescription &d) {
  Json j;
  j["kind"] = kind_name(d.kind);
  switch (d.kind) {
  case RingKind::Integers:
  case RingKind::Rationals: break;
  case RingKind::PrimeField: j["modulus"] = d.modulus.get_si(); break;
  case RingKind::Polynomial:
    j["base"] = ring_to_json(*d.base);
    j["vars"] = d.vars;
    j["order"] = d.order == MonoOrder::Lex ? "lex" : "grlex";
    break;
  case RingKind::Quotient:
    j["ambient"] = ring_to_json(*d.ambient);
    j["ideal"] = d.ideal;
    break;
  case RingKind::PowerSeries:
    j["base"] = ring_to_json(*d.base);
    j["var"] = d.var;
    j["precision"] = d.precision;
    break;
  }
  return j;
}

RingDescription ring_from_json(const Json &j) { return ring_at(j, "/ring"); }

Json to_json(const InstanceFile &f) {
  Json j;
  j["ring"] = ring_to_json(f.ring);
  j["modules"] = Json::object();
  for (const auto &[n, m] : f.modules) j["modules"][n] = module_json(m);
  j["complexes"] = Json::object();
  for (const auto &[n, c] : f.complexes) j["complexes"][n] = complex_json(c);
  j["ideals"] = Json::object();
  for (const auto &[n, i] : f.ideals) j["ideals"][n] = i;
  j["maps"] = Json::object();
  for (const auto &[n, m] : f.maps) j["maps"][n] = Json{{"source", m.source}, {"images", m.images}};
  j["tasks"] = Json::array();
  for (const auto &t : f.tasks) {
    Json tj;
    tj["command"] = t.command;
    tj["arguments"] = t.arguments;
    tj["budget"] = budget_json(t.budget);
    j["tasks"].push_back(std::move(tj));
  }
  if (f.seed) j["seed"] = *f.seed;
  return j;
}

InstanceFile instance_from_json(const Json &j) {
  only_keys(j, "", {"ring", "modules", "complexes", "ideals", "maps", "tasks", "seed"});
  InstanceFile f;
  f.ring = ring_at(need(j, "", "ring"), "/ring");
  auto objects = [&](const char *key, auto &&each) {
    if (!j.contains(key)) return;
    const Json &o = j[key];
    if (!o.is_object()) parse_fail(std::string("/") + key, "expected an object");
    for (const auto &[n, v] : o.items()) each(n, v, std::string("/") + key + "/" + n);
  };
  objects("modules", [&](const std::string &n, const Json &v, const std::string &w) {
    f.modules[n] = module_at(v, w);
  });
  objects("complexes", [&](const std::string &n, const Json &v, const std::string &w) {
    f.complexes[n] = complex_at(v, w);
  });
  objects("ideals", [&](const std::string &n, const Json &v, const std::string &w) {
    f.ideals[n] = get_strings(v, w);
    if (f.ideals[n].empty()) parse_fail(w, "empty generator list");
  });
  objects("maps", [&](const std::string &n, const Json &v, const std::string &w) {
    only_keys(v, w, {"source", "images"});
    MapSpec m{get_strings(need(v, w, "source"), w + "/source"),
              get_strings(need(v, w, "images"), w + "/images")};
    if (m.source.size() != m.images.size() || m.source.empty())
      parse_fail(w, "one image per source variable required");
    f.maps[n] = std::move(m);
  });
  const Json &tasks = need(j, "", "tasks");
  if (!tasks.is_array()) parse_fail("/tasks", "expected an array");
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const std::string w = "/tasks/" + std::to_string(i);
    only_keys(tasks[i], w, {"command", "arguments", "budget"});
    TaskSpec t;
    t.command = get_string(need(tasks[i], w, "command"), w + "/command");
    if (tasks[i].contains("arguments")) t.arguments = tasks[i]["arguments"];
    if (tasks[i].contains("budget")) t.budget = budget_at(tasks[i]["budget"], w + "/budget");
    check_task(t, f, w);
    f.tasks.push_back(std::move(t));
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) parse_fail("/seed", "expected a non-negative integer");
    f.seed = j["seed"].get<std::uint64_t>();
  }
  return f;
}

InstanceFile parse_instance(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw Error(ErrorCode::ParseError, "byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return instance_from_json(j);
}

std::string serialize_instance(const InstanceFile &f) { return to_json(f).dump(2) + "\n"; }

const std::vector<std::string> &known_commands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto &[k, r] : rules()) v.push_back(k);
    return v;
  }();
  return names;
}

// Execution

DerivedBudget effective_budget(const RunOptions &opts, const BudgetOverrides &o) {
  DerivedBudget b;
  b.depth = o.depth.value_or(opts.depth);
  b.stages = o.stages.value_or(opts.stages);
  b.stable = o.stable.value_or(opts.window);
  b.window = o.window.value_or(b.window);
  b.telescope_check = false;
  return b;
}

namespace {

struct Context {
  const InstanceFile &file;
  RingSpec ring;

  FPModule module(const ModuleSpec &m) const {
    std::vector<FreeVec> rels;
    for (const auto &r : m.relations) {
      FreeVec v;
      for (const auto &s : r) v.push_back(ring.parse(s));
      rels.push_back(std::move(v));
    }
    return FPModule(ring, m.rank, rels);
  }
  FPModule module(const std::string &name) const { return module(file.modules.at(name)); }
  BoundedComplex complex(const std::string &name) const {
    const ComplexSpec &c = file.complexes.at(name);
    std::vector<FPModule> entries;
    for (const auto &e : c.entries) entries.push_back(module(e));
    std::vector<Matrix> diffs;
    for (std::size_t k = 0; k < c.differentials.size(); ++k) {
      Matrix m(ring, entries[k + 1].rank(), entries[k].rank());
      for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t s = 0; s < m.cols(); ++s) m(r, s) = ring.parse(c.differentials[k][r][s]);
      diffs.push_back(std::move(m));
    }
    if (entries.empty()) return BoundedComplex::zero(ring);
    return BoundedComplex(ring, c.lo, std::move(entries), std::move(diffs));
  }
  std::vector<RingElem> ideal(const std::string &name) const {
    std::vector<RingElem> out;
    for (const auto &s : file.ideals.at(name)) out.push_back(ring.parse(s));
    return out;
  }
  RingMap map(const std::string &name) const {
    const MapSpec &m = file.maps.at(name);
    std::vector<RingElem> images;
    for (const auto &s : m.images) images.push_back(ring.parse(s));
    return RingMap(integer_polynomial_ring(m.source), ring, images);
  }
};

void from_report(TaskResult &t, EquivalenceReport r) {
  t.kind = "equivalence";
  t.left = std::move(r.left);
  t.right = std::move(r.right);
  t.consistency = r.consistent;
  t.sub_reports = std::move(r.sub_reports);
  t.digest = std::move(r.digest);
}

void from_verdict(TaskResult &t, Verdict v, const std::string &digest_text) {
  t.kind = "verdict";
  t.left = std::move(v);
  t.digest = fnv1a_hex(digest_text);
}

Budget max_budget(const TaskResult &t) {
  Budget b = t.left.budget;
  auto take = [&](const Verdict &v) {
    b.depth = std::max(b.depth, v.budget.depth);
    b.window = std::max(b.window, v.budget.window);
    b.stages = std::max(b.stages, v.budget.stages);
  };
  if (t.right) take(*t.right);
  for (const auto &nv : t.sub_reports) take(nv.verdict);
  return b;
}

TaskResult run_task(const Context &cx, const TaskSpec &task, std::size_t index,
                    const RunOptions &opts) {
  TaskResult t;
  t.index = index;
  t.command = task.command;
  const Json &a = task.arguments;
  const DerivedBudget b = effective_budget(opts, task.budget);
  const std::string &c = task.command;
  auto str = [&](const char *k) { return a[k].get<std::string>(); };
  auto num = [&](const char *k) { return a[k].get<int>(); };

  if (c == "build_example1") {
    Example1 ex = build_example1(num("support"), num("precision"));
    t.kind = "suite";
    t.sub_reports = ex.report;
    std::vector<Verdict> decisive;
    for (const auto &nv : ex.report)
      decisive.push_back(nv.verdict.decisive() ? Verdict::holds({"decided", nv.name, {}, {}, {}})
                                               : nv.verdict);
    t.left = conjunction(decisive, "suite");
    t.left.evidence.detail = "every named verdict is decisive";
    t.digest = fnv1a_hex("example1|" + std::to_string(ex.support) + "|" + std::to_string(ex.precision));
  } else if (c == "check_theorem2") {
    if (a.contains("example1")) {
      const Json &e = a["example1"];
      from_report(t, check_theorem2(build_example1(e["support"].get<int>(), e["precision"].get<int>()), b));
    } else {
      BoundedComplex C = a.contains("complex") ? cx.complex(str("complex"))
                                               : BoundedComplex::single(cx.module(str("module")), 0);
      from_report(t, check_theorem2(C, cx.ideal(str("ideal")), b));
    }
  } else if (c == "check_theorem3") {
    std::vector<std::vector<RingElem>> ideals;
    for (const auto &n : a["ideals"]) ideals.push_back(cx.ideal(n.get<std::string>()));
    if (a.contains("complex")) from_report(t, check_theorem3(cx.complex(str("complex")), ideals, b));
    else from_report(t, check_theorem3(cx.module(str("module")), ideals, b));
  } else if (c == "check_theorem4") {
    StepTwo s = StepTwo::Auto;
    if (a.contains("step2")) s = str("step2") == "off" ? StepTwo::Off
                                 : str("step2") == "require" ? StepTwo::Require : StepTwo::Auto;
    from_report(t, check_theorem4(cx.module(str("module")), cx.ideal(str("ideal")), b, s));
  } else if (c == "check_lemma1") {
    from_report(t, check_lemma1(cx.module(str("module")), cx.ring.parse(str("element")), b));
  } else if (c == "check_lemma5") {
    long idx = a["index"].get<long>();
    if (idx < 0) throw Error(ErrorCode::IllDefined, "negative generator index");
    from_report(t, check_lemma5(cx.map(str("map")), static_cast<std::size_t>(idx),
                                cx.module(str("module")), b));
  } else {
    const std::string subject = a.contains("complex") ? "complex:" + str("complex")
                                                      : "module:" + str("module");
    std::string text = c + "|" + subject + "|";
    if (c == "ext_localization") {
      FPModule M = cx.module(str("module"));
      from_verdict(t, ext_localization(num("degree"), cx.ring.parse(str("element")), M, b).vanishing,
                   text + canonical_text(M) + "|" + str("element"));
    } else {
      std::vector<RingElem> I = cx.ideal(str("ideal"));
      text += canonical_text(I);
      if (c == "is_cohomologically_complete") {
        CCRoute route = a.contains("route") && str("route") == "direct" ? CCRoute::DirectStage
                                                                        : CCRoute::Decomposed;
        if (a.contains("complex")) {
          BoundedComplex C = cx.complex(str("complex"));
          from_verdict(t, is_cohomologically_complete(C, I, b, route), text + canonical_text(C));
        } else {
          FPModule M = cx.module(str("module"));
          from_verdict(t, is_cohomologically_complete(M, I, b, route), text + canonical_text(M));
        }
      } else {
        FPModule M = cx.module(str("module"));
        Verdict v = c == "is_separated" ? is_separated(M, I, b.adic()) : is_complete(M, I, b.adic());
        from_verdict(t, std::move(v), text + canonical_text(M));
      }
    }
  }
  t.budget = max_budget(t);
  return t;
}

} // namespace

FileReport run_instance(const InstanceFile &f, const std::string &path, const RunOptions &opts) {
  FileReport rep;
  rep.path = path;
  rep.seed = f.seed;
  rep.digest = fnv1a_hex(serialize_instance(f));
  std::optional<Context> cx;
  try {
    cx.emplace(Context{f, make_ring(f.ring)});
  } catch (const Error &e) {
    throw Error(ErrorCode::ParseError, "/ring: " + std::string(e.what()));
  }
  for (std::size_t i = 0; i < f.tasks.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    try {
      TaskResult t = run_task(*cx, f.tasks[i], i, opts);
      t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      rep.tasks.push_back(std::move(t));
    } catch (const Error &e) {
      if (e.code() == ErrorCode::ParseError) throw;
      throw Error(ErrorCode::TaskError, path + " task " + std::to_string(i) + ": " + e.what());
    }
  }
  return rep;
}

FileReport run_instance(const std::string &path, const RunOptions &opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  InstanceFile f;
  try {
    f = parse_instance(ss.str());
  } catch (const Error &e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
  return run_instance(f, path, opts);
}

Report run_files(std::vector<std::pair<std::string, InstanceFile>> files, const RunOptions &opts) {
  std::stable_sort(files.begin(), files.end(),
                   [](const auto &x, const auto &y) { return x.first < y.first; });
  Report rep;
  rep.files.resize(files.size());
  std::vector<std::exception_ptr> errors(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      try {
        rep.files[i] = run_instance(files[i].second, files[i].first, opts);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(opts.jobs, static_cast<int>(files.size())));
  std::vector<std::thread> pool;
  for (int k = 1; k < jobs; ++k) pool.emplace_back(worker);
  worker();
  for (auto &th : pool) th.join();
  for (auto &e : errors)
    if (e) std::rethrow_exception(e);
  return rep;
}

int exit_code(const Report &r) {
  bool undecided = false;
  for (const auto &f : r.files)
    for (const auto &t : f.tasks) {
      if (t.consistency == Consistency::Inconsistent) return 3;
      if (t.consistency == Consistency::Indecisive) undecided = true;
      if (!t.left.decisive() || (t.right && !t.right->decisive())) undecided = true;
    }
  return undecided ? 2 : 0;
}

// Output

Json verdict_to_json(const Verdict &v) {
  Json j;
  j["status"] = std::string(to_string(v.status));
  j["kind"] = v.evidence.kind;
  j["detail"] = v.evidence.detail;
  if (!v.evidence.element.empty()) j["witness"] = v.evidence.element;
  if (v.evidence.degree) j["degree"] = *v.evidence.degree;
  if (v.evidence.stage) j["stage"] = *v.evidence.stage;
  j["budget"] = Json{{"depth", v.budget.depth}, {"window", v.budget.window}, {"stages", v.budget.stages}};
  return j;
}

Json report_to_json(const Report &r, bool timings) {
  Json j;
  j["tool"] = "adicomp";
  j["version"] = std::string(kToolVersion);
  j["files"] = Json::array();
  std::size_t n = 0, cons = 0, incons = 0, indec = 0;
  for (const auto &f : r.files) {
    Json fj;
    fj["path"] = f.path;
    fj["digest"] = f.digest;
    if (f.seed) fj["seed"] = *f.seed;
    fj["tasks"] = Json::array();
    for (const auto &t : f.tasks) {
      ++n;
      Json tj;
      tj["index"] = t.index;
      tj["command"] = t.command;
      tj["kind"] = t.kind;
      tj["left"] = verdict_to_json(t.left);
      if (t.right) tj["right"] = verdict_to_json(*t.right);
      if (t.consistency) {
        tj["consistency"] = std::string(to_string(*t.consistency));
        cons += *t.consistency == Consistency::Consistent;
        incons += *t.consistency == Consistency::Inconsistent;
        indec += *t.consistency == Consistency::Indecisive;
      }
      tj["sub_reports"] = Json::array();
      for (const auto &nv : t.sub_reports)
        tj["sub_reports"].push_back(Json{{"name", nv.name}, {"verdict", verdict_to_json(nv.verdict)}});
      tj["digest"] = t.digest;
      tj["budget"] = Json{{"depth", t.budget.depth}, {"window", t.budget.window}, {"stages", t.budget.stages}};
      if (timings) tj["seconds"] = t.seconds;
      fj["tasks"].push_back(std::move(tj));
    }
    j["files"].push_back(std::move(fj));
  }
  j["summary"] = Json{{"tasks", n},
                      {"consistent", cons},
                      {"inconsistent", incons},
                      {"indecisive", indec},
                      {"exit_code", exit_code(r)}};
  return j;
}

namespace {

std::string cell(std::string s, std::size_t w) {
  if (s.size() > w) s = s.substr(0, w - 1) + "~";
  s.resize(w, ' ');
  return s;
}

std::string basename_of(const std::string &p) {
  auto k = p.find_last_of('/');
  return k == std::string::npos ? p : p.substr(k + 1);
}

} // namespace

std::string emit_report(const Report &r, ReportFormat format, bool timings) {
  if (format == ReportFormat::Machine) return report_to_json(r, timings).dump(2) + "\n";
  std::string out = cell("task", 44) + cell("left", 9) + cell("right", 9) + cell("consistency", 14) +
                    "budget";
  if (timings) out += "    seconds";
  out += "\n";
  for (const auto &f : r.files)
    for (const auto &t : f.tasks) {
      std::string name = basename_of(f.path) + "#" + std::to_string(t.index) + " " + t.command;
      std::string budget = "d=" + std::to_string(t.budget.depth) + " w=" +
                           std::to_string(t.budget.window) + " N=" + std::to_string(t.budget.stages);
      out += cell(name, 44) + cell(std::string(to_string(t.left.status)), 9) +
             cell(t.right ? std::string(to_string(t.right->status)) : "-", 9) +
             cell(t.consistency ? std::string(to_string(*t.consistency)) : "-", 14) + budget;
      if (timings) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "  %9.3f", t.seconds);
        out += buf;
      }
      out += "\n";
      if (t.kind == "suite")
        for (const auto &nv : t.sub_reports)
          out += "  " + cell(nv.name, 42) + std::string(to_string(nv.verdict.status)) + "\n";
    }
  return out;
}

} // namespace adicomp
