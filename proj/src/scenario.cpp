// Copyright 2026 The tailent Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tailent/scenario.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "tailent/errors.hpp"
#include "tailent/rational.hpp"

namespace tailent {
namespace {

using nlohmann::json;

template <typename M>
const typename M::mapped_type& lookup(const M& map, const std::string& kind,
                                      const std::string& name) {
  auto it = map.find(name);
  if (it == map.end()) throw UnknownName("unknown " + kind + " '" + name + "'");
  return it->second;
}

const json& field(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key))
    throw ParseError(where + ": missing field '" + key + "'");
  return obj.at(key);
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + ": expected a string");
  return v.get<std::string>();
}

std::size_t as_index(const json& v, const std::string& where) {
  if (!v.is_number_unsigned()) throw ParseError(where + ": expected a nonnegative integer");
  return v.get<std::size_t>();
}

Rational as_rational(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  try {
    return parse_rational(as_string(v, where));
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  }
}

const json& as_array(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array");
  return v;
}

std::size_t point_in(const BundleRDS& rds, std::size_t omega, const std::string& name,
                     const std::string& where) {
  auto g = rds.space().index_of(name);
  if (!g) throw UnknownName(where + ": unknown point '" + name + "'");
  std::size_t i = rds.local_index(omega, *g);
  if (i == kNoPoint)
    throw DomainError(where + ": point '" + name + "' is not in fiber " + std::to_string(omega));
  return i;
}

void parse_driving(const json& doc, Scenario& s) {
  if (!doc.contains("driving")) return;
  for (const auto& [name, v] : doc.at("driving").items()) {
    std::string where = "driving." + name;
    std::vector<Rational> prob;
    std::size_t k = 0;
    for (const auto& p : as_array(field(v, "prob", where), where + ".prob"))
      prob.push_back(as_rational(p, where + ".prob[" + std::to_string(k++) + "]"));
    std::vector<std::size_t> theta;
    for (const auto& t : as_array(field(v, "theta", where), where + ".theta"))
      theta.push_back(as_index(t, where + ".theta"));
    DrivingSystem d(std::move(prob), std::move(theta));
    auto errs = d.violations();
    if (!errs.empty()) throw ValidationError(where + ": " + errs.front());
    s.driving.emplace(name, std::move(d));
  }
}

std::vector<std::vector<Rational>> parse_metric(const json& m, std::size_t n,
                                                const std::string& where) {
  std::vector<std::vector<Rational>> dist;
  for (const auto& row : as_array(m, where)) {
    std::vector<Rational> r;
    for (const auto& x : as_array(row, where)) r.push_back(as_rational(x, where));
    if (r.size() != n) throw ParseError(where + ": metric row length differs from point count");
    dist.push_back(std::move(r));
  }
  if (dist.size() != n) throw ParseError(where + ": metric row count differs from point count");
  return dist;
}

std::shared_ptr<const MetricSpace> make_space(std::vector<std::string> points, const json* metric,
                                              const std::string& where) {
  std::shared_ptr<MetricSpace> sp;
  if (metric == nullptr) {
    sp = std::make_shared<MetricSpace>(std::move(points));
  } else if (metric->is_string()) {
    if (metric->get<std::string>() != "discrete")
      throw ParseError(where + ": metric must be \"discrete\" or a matrix");
    sp = std::make_shared<MetricSpace>(MetricSpace::discrete(std::move(points)));
  } else {
    std::size_t n = points.size();
    sp = std::make_shared<MetricSpace>(std::move(points), parse_metric(*metric, n, where));
  }
  auto errs = sp->violations();
  if (!errs.empty()) throw ValidationError(where + ": metric: " + errs.front());
  return sp;
}

void parse_spaces(const json& doc, Scenario& s) {
  if (!doc.contains("spaces")) return;
  for (const auto& [name, v] : doc.at("spaces").items()) {
    std::string where = "spaces." + name;
    std::vector<std::string> points;
    for (const auto& p : as_array(field(v, "points", where), where))
      points.push_back(as_string(p, where + ".points"));
    s.spaces.emplace(name, make_space(std::move(points), v.contains("metric") ? &v.at("metric") : nullptr,
                                      where));
  }
}

void parse_systems(const json& doc, Scenario& s) {
  if (!doc.contains("systems")) return;
  for (const auto& [name, v] : doc.at("systems").items()) {
    std::string where = "systems." + name;
    const DrivingSystem& base = lookup(s.driving, "driving system", as_string(field(v, "driving", where), where));
    const json& fj = as_array(field(v, "fibers", where), where + ".fibers");
    std::shared_ptr<const MetricSpace> space;
    if (v.contains("space")) {
      space = lookup(s.spaces, "space", as_string(v.at("space"), where + ".space"));
    } else {
      std::vector<std::string> points;
      for (const auto& fib : fj)
        for (const auto& p : as_array(fib, where + ".fibers")) {
          std::string n = as_string(p, where + ".fibers");
          if (std::find(points.begin(), points.end(), n) == points.end()) points.push_back(n);
        }
      space = make_space(std::move(points), v.contains("metric") ? &v.at("metric") : nullptr, where);
    }
    auto gid = [&](const std::string& n, const std::string& w) {
      auto g = space->index_of(n);
      if (!g) throw UnknownName(w + ": unknown point '" + n + "'");
      return *g;
    };
    std::vector<std::vector<std::size_t>> fibers;
    for (const auto& fib : fj) {
      std::vector<std::size_t> ids;
      for (const auto& p : as_array(fib, where + ".fibers"))
        ids.push_back(gid(as_string(p, where + ".fibers"), where + ".fibers"));
      fibers.push_back(std::move(ids));
    }
    const json& mj = as_array(field(v, "maps", where), where + ".maps");
    if (mj.size() != fibers.size()) throw ParseError(where + ": one map per fiber expected");
    std::vector<std::vector<std::size_t>> images(fibers.size());
    for (std::size_t w = 0; w < fibers.size(); ++w) {
      std::string mw = where + ".maps[" + std::to_string(w) + "]";
      if (!mj[w].is_object()) throw ParseError(mw + ": expected an object");
      for (std::size_t id : fibers[w]) {
        const std::string& n = space->name(id);
        if (!mj[w].contains(n)) throw ParseError(mw + ": no image for '" + n + "'");
        images[w].push_back(gid(as_string(mj[w].at(n), mw), mw));
      }
    }
    if (fibers.size() != base.size())
      throw ValidationError(where + ": fiber count differs from the driving system");
    auto sys = std::make_shared<const BundleRDS>(base, space, std::move(fibers), std::move(images));
    auto report = validate_system(*sys);
    if (!report.ok()) throw ValidationError(where + ": " + report.to_string());
    s.systems.emplace(name, std::move(sys));
  }
}

// Objects that may reference each other are resolved in passes.
void resolve_in_passes(const json& section, const std::string& kind,
                       const std::function<bool(const std::string&, const json&)>& try_build) {
  std::vector<std::pair<std::string, const json*>> pending;
  for (const auto& [name, v] : section.items()) pending.emplace_back(name, &v);
  while (!pending.empty()) {
    std::vector<std::pair<std::string, const json*>> rest;
    for (auto& [name, v] : pending)
      if (!try_build(name, *v)) rest.emplace_back(name, v);
    if (rest.size() == pending.size())
      throw UnknownName(kind + "." + rest.front().first + ": dangling reference");
    pending = std::move(rest);
  }
}

void parse_derived(const json& doc, Scenario& s) {
  if (!doc.contains("derived")) return;
  resolve_in_passes(doc.at("derived"), "derived", [&](const std::string& name, const json& v) {
    std::string where = "derived." + name;
    std::string op = as_string(field(v, "op", where), where + ".op");
    auto has = [&](const std::string& key) { return s.systems.count(as_string(field(v, key, where), where)) > 0; };
    auto sys = [&](const std::string& key) { return s.systems.at(as_string(v.at(key), where)); };
    SystemPtr out;
    if (op == "product") {
      if (!has("first") || !has("second")) return false;
      out = product_system(sys("first"), sys("second"));
    } else if (op == "pair") {
      if (!has("of")) return false;
      out = pair_system(sys("of"));
    } else if (op == "power") {
      if (!has("of")) return false;
      out = power_system(sys("of"), as_index(field(v, "m", where), where + ".m"));
    } else if (op == "point") {
      out = point_system(lookup(s.driving, "driving system", as_string(field(v, "driving", where), where)));
    } else {
      throw ParseError(where + ": unknown op '" + op + "'");
    }
    s.systems.emplace(name, std::move(out));
    return true;
  });
}

void parse_factors(const json& doc, Scenario& s) {
  if (!doc.contains("factors")) return;
  for (const auto& [name, v] : doc.at("factors").items()) {
    std::string where = "factors." + name;
    if (v.contains("op")) {
      std::string op = as_string(v.at("op"), where + ".op");
      const SystemPtr& of = s.system(as_string(field(v, "of", where), where));
      if (op == "identity") {
        s.factors.emplace(name, identity_factor(of));
      } else if (op == "first" || op == "second") {
        auto pr = canonical_projections(of);
        s.factors.emplace(name, op == "first" ? pr.first : pr.second);
      } else {
        throw ParseError(where + ": unknown op '" + op + "'");
      }
      continue;
    }
    const SystemPtr& src = s.system(as_string(field(v, "source", where), where));
    const SystemPtr& dst = s.system(as_string(field(v, "target", where), where));
    const json& mj = as_array(field(v, "map", where), where + ".map");
    if (mj.size() != src->num_fibers()) throw ParseError(where + ": one map per fiber expected");
    std::vector<std::vector<std::size_t>> table(src->num_fibers());
    for (std::size_t w = 0; w < src->num_fibers(); ++w) {
      std::string mw = where + ".map[" + std::to_string(w) + "]";
      for (std::size_t i = 0; i < src->fiber_size(w); ++i) {
        const std::string& n = src->point_name(w, i);
        if (!mj[w].is_object() || !mj[w].contains(n)) throw ParseError(mw + ": no image for '" + n + "'");
        table[w].push_back(point_in(*dst, w, as_string(mj[w].at(n), mw), mw));
      }
    }
    FactorMap pi(src, dst, std::move(table));
    auto report = validate_factor(pi);
    if (!report.ok()) throw ValidationError(where + ": " + report.to_string());
    s.factors.emplace(name, std::move(pi));
  }
}

RandomSet parse_set(const SystemPtr& sys, const json& v, const std::string& where) {
  const json& arr = as_array(v, where);
  if (arr.size() != sys->num_fibers()) throw ParseError(where + ": one section per fiber expected");
  RandomSet out = empty_set(*sys);
  for (std::size_t w = 0; w < arr.size(); ++w)
    for (const auto& p : as_array(arr[w], where))
      out[w].insert(point_in(*sys, w, as_string(p, where), where));
  return out;
}

void parse_covers(const json& doc, Scenario& s) {
  if (!doc.contains("covers")) return;
  resolve_in_passes(doc.at("covers"), "covers", [&](const std::string& name, const json& v) {
    std::string where = "covers." + name;
    RandomCover c;
    if (v.contains("join")) {
      const json& parts = as_array(v.at("join"), where + ".join");
      if (parts.empty()) throw ParseError(where + ": empty join");
      for (const auto& p : parts)
        if (!s.covers.count(as_string(p, where + ".join"))) return false;
      c = s.covers.at(parts[0].get<std::string>());
      for (std::size_t i = 1; i < parts.size(); ++i) c = join(c, s.covers.at(parts[i].get<std::string>()));
    } else if (v.contains("preimage")) {
      std::string of = as_string(field(v.at("preimage"), "cover", where), where);
      if (!s.covers.count(of)) return false;
      c = preimage_cover(s.factor(as_string(field(v.at("preimage"), "factor", where), where)),
                         s.covers.at(of));
    } else if (v.contains("builtin")) {
      std::string b = as_string(v.at("builtin"), where + ".builtin");
      if (b == "factor") {
        c = factor_partition(s.factor(as_string(field(v, "factor", where), where)));
      } else {
        const SystemPtr& sys = s.system(as_string(field(v, "system", where), where));
        if (b == "trivial") c = trivial_cover(sys);
        else if (b == "singletons") c = singleton_partition(sys);
        else if (b == "fiber") c = fiber_partition(sys);
        else if (b == "first") c = first_coordinate_partition(sys);
        else if (b == "second") c = second_coordinate_partition(sys);
        else throw ParseError(where + ": unknown builtin '" + b + "'");
      }
    } else {
      const SystemPtr& sys = s.system(as_string(field(v, "system", where), where));
      std::vector<RandomSet> elements;
      std::size_t k = 0;
      for (const auto& e : as_array(field(v, "elements", where), where + ".elements"))
        elements.push_back(parse_set(sys, e, where + ".elements[" + std::to_string(k++) + "]"));
      try {
        c = make_cover(sys, std::move(elements), name);
      } catch (const Error& e) {
        throw ValidationError(where + ": " + e.what());
      }
    }
    c.label = name;
    s.covers.emplace(name, std::move(c));
    return true;
  });
}

void parse_measures(const json& doc, Scenario& s) {
  if (!doc.contains("measures")) return;
  for (const auto& [name, v] : doc.at("measures").items()) {
    std::string where = "measures." + name;
    const SystemPtr& sys = s.system(as_string(field(v, "system", where), where));
    FiberedMeasure mu(sys);
    if (v.contains("uniform") && v.at("uniform").is_boolean() && v.at("uniform").get<bool>()) {
      mu = FiberedMeasure::uniform(sys);
    } else {
      const json& wj = as_array(field(v, "weights", where), where + ".weights");
      if (wj.size() != sys->num_fibers()) throw ParseError(where + ": one weight table per fiber expected");
      for (std::size_t w = 0; w < wj.size(); ++w) {
        if (!wj[w].is_object()) throw ParseError(where + ".weights: expected an object");
        for (const auto& [p, x] : wj[w].items())
          mu.at(w, point_in(*sys, w, p, where)) = as_rational(x, where + ".weights");
      }
    }
    auto errs = mu.violations();
    if (!errs.empty()) throw ValidationError(where + ": " + errs.front());
    s.measures.emplace(name, std::move(mu));
  }
}

TransitionMatrix parse_matrix(const json& m, const std::string& where) {
  TransitionMatrix out;
  for (const auto& row : as_array(m, where)) {
    std::vector<std::uint8_t> r;
    for (const auto& x : as_array(row, where)) {
      std::size_t b = as_index(x, where);
      if (b > 1) throw ParseError(where + ": matrix entries must be 0 or 1");
      r.push_back(static_cast<std::uint8_t>(b));
    }
    out.push_back(std::move(r));
  }
  return out;
}

void parse_sfts(const json& doc, Scenario& s) {
  if (!doc.contains("sfts")) return;
  for (const auto& [name, v] : doc.at("sfts").items()) {
    std::string where = "sfts." + name;
    RandomSFT sft{s.driving_system(as_string(field(v, "driving", where), where)), {}, name};
    for (const auto& cj : as_array(field(v, "components", where), where + ".components")) {
      SftComponent c;
      c.alphabet = as_index(field(cj, "alphabet", where), where + ".alphabet");
      if (cj.contains("matrix")) {
        c.matrices.assign(sft.base.size(), parse_matrix(cj.at("matrix"), where));
      } else {
        for (const auto& m : as_array(field(cj, "matrices", where), where + ".matrices"))
          c.matrices.push_back(parse_matrix(m, where));
      }
      sft.components.push_back(std::move(c));
    }
    auto errs = validate_sft(sft);
    if (!errs.empty()) throw ValidationError(where + ": " + errs.front());
    s.sfts.emplace(name, std::move(sft));
  }
}

json set_json(const BundleRDS& rds, const RandomSet& set) {
  json out = json::array();
  for (std::size_t w = 0; w < set.size(); ++w) {
    json f = json::array();
    for (std::size_t i : set[w].members()) f.push_back(rds.point_name(w, i));
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

const DrivingSystem& Scenario::driving_system(const std::string& name) const {
  return lookup(driving, "driving system", name);
}
const SystemPtr& Scenario::system(const std::string& name) const {
  return lookup(systems, "system", name);
}
const RandomCover& Scenario::cover(const std::string& name) const {
  return lookup(covers, "cover", name);
}
const FiberedMeasure& Scenario::measure(const std::string& name) const {
  return lookup(measures, "measure", name);
}
const FactorMap& Scenario::factor(const std::string& name) const {
  return lookup(factors, "factor", name);
}
const RandomSFT& Scenario::sft(const std::string& name) const { return lookup(sfts, "sft", name); }

Scenario parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("scenario: top level must be an object");
  if (doc.contains("version")) {
    if (!doc.at("version").is_number_integer() || doc.at("version").get<int>() != kScenarioVersion)
      throw ParseError("scenario: unsupported version");
  }
  Scenario s;
  parse_driving(doc, s);
  parse_spaces(doc, s);
  parse_systems(doc, s);
  parse_derived(doc, s);
  parse_factors(doc, s);
  parse_covers(doc, s);
  parse_measures(doc, s);
  parse_sfts(doc, s);
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string dump_scenario(const Scenario& scenario) {
  json doc;
  doc["format"] = "tailent-scenario";
  doc["version"] = kScenarioVersion;
  auto driving_json = [](const DrivingSystem& d) {
    json j;
    j["prob"] = json::array();
    for (const auto& p : d.probs()) j["prob"].push_back(to_string(p));
    j["theta"] = std::vector<std::size_t>(d.thetas().begin(), d.thetas().end());
    return j;
  };
  for (const auto& [name, d] : scenario.driving) doc["driving"][name] = driving_json(d);
  for (const auto& [name, sys] : scenario.systems) {
    std::string dname = name + ".base";
    doc["driving"][dname] = driving_json(sys->base());
    json j;
    j["driving"] = dname;
    j["fibers"] = json::array();
    j["maps"] = json::array();
    for (std::size_t w = 0; w < sys->num_fibers(); ++w) {
      json f = json::array(), m = json::object();
      for (std::size_t i = 0; i < sys->fiber_size(w); ++i) {
        f.push_back(sys->point_name(w, i));
        m[sys->point_name(w, i)] = sys->space().name(sys->image_global(w, i));
      }
      j["fibers"].push_back(std::move(f));
      j["maps"].push_back(std::move(m));
    }
    std::string sname = name + ".space";
    json sp;
    sp["points"] = sys->space().names();
    if (sys->has_metric()) {
      json rows = json::array();
      for (std::size_t a = 0; a < sys->space().size(); ++a) {
        json row = json::array();
        for (std::size_t b = 0; b < sys->space().size(); ++b) row.push_back(to_string(sys->space().distance(a, b)));
        rows.push_back(std::move(row));
      }
      sp["metric"] = std::move(rows);
    }
    doc["spaces"][sname] = std::move(sp);
    j["space"] = sname;
    doc["systems"][name] = std::move(j);
  }
  auto system_name = [&](const SystemPtr& p) -> std::string {
    for (const auto& [name, sys] : scenario.systems)
      if (sys == p) return name;
    throw UnknownName("object refers to a system that is not part of the scenario");
  };
  for (const auto& [name, c] : scenario.covers) {
    json j;
    j["system"] = system_name(c.system);
    j["elements"] = json::array();
    for (const auto& e : c.elements) j["elements"].push_back(set_json(*c.system, e));
    doc["covers"][name] = std::move(j);
  }
  for (const auto& [name, mu] : scenario.measures) {
    json j;
    j["system"] = system_name(mu.system());
    j["weights"] = json::array();
    const BundleRDS& rds = *mu.system();
    for (std::size_t w = 0; w < rds.num_fibers(); ++w) {
      json t = json::object();
      for (std::size_t i = 0; i < rds.fiber_size(w); ++i)
        if (mu.at(w, i) != 0) t[rds.point_name(w, i)] = to_string(mu.at(w, i));
      j["weights"].push_back(std::move(t));
    }
    doc["measures"][name] = std::move(j);
  }
  for (const auto& [name, pi] : scenario.factors) {
    json j;
    j["source"] = system_name(pi.source());
    j["target"] = system_name(pi.target());
    j["map"] = json::array();
    for (std::size_t w = 0; w < pi.source()->num_fibers(); ++w) {
      json m = json::object();
      for (std::size_t i = 0; i < pi.source()->fiber_size(w); ++i)
        m[pi.source()->point_name(w, i)] = pi.target()->point_name(w, pi(w, i));
      j["map"].push_back(std::move(m));
    }
    doc["factors"][name] = std::move(j);
  }
  for (const auto& [name, sft] : scenario.sfts) {
    std::string dname = name + ".base";
    doc["driving"][dname] = driving_json(sft.base);
    json j;
    j["driving"] = dname;
    j["components"] = json::array();
    for (const auto& c : sft.components) {
      json cj;
      cj["alphabet"] = c.alphabet;
      cj["matrices"] = c.matrices;
      j["components"].push_back(std::move(cj));
    }
    doc["sfts"][name] = std::move(j);
  }
  return doc.dump(2) + "\n";
}

}  // namespace tailent
