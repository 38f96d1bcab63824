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

#include "tailent/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tailent/budget.hpp"
#include "tailent/counting.hpp"
#include "tailent/errors.hpp"
#include "tailent/invariant.hpp"
#include "tailent/measures.hpp"
#include "tailent/scenario.hpp"
#include "tailent/symbolic.hpp"
#include "tailent/tail_entropy.hpp"
#include "tailent/verify.hpp"

namespace tailent {
namespace {

using ojson = nlohmann::ordered_json;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  std::string csv() const {
    std::string out = line(header_);
    for (const auto& r : rows_) out += line(r);
    return out;
  }

 private:
  static std::string field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  static std::string line(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + field(cells[i]);
    return out + "\n";
  }
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct Options {
  std::string scenario;
  std::string out = "tailent-out";
  std::string budget;
  std::string system;
  std::string r, q, mu, sigma, sft, rspec, qspec, p, delta = "1/2", suite;
  std::vector<std::string> qfamily, rfamily, qchain, pchain, lift;
  std::size_t n = 1, nmax = 8, nentropy = 4, trials = 100;
  std::uint64_t seed = 1;
  bool vertices = false, prop3 = false, prop4 = false;
  std::string cesaro;
};

// Collects artifacts and writes the run manifest.
class Run {
 public:
  Run(const Options& opt, std::string command, const std::vector<std::string>& args, Budget budget)
      : opt_(opt), command_(std::move(command)), args_(args), budget_(budget) {}

  void write(const std::string& name, const std::string& content) {
    std::filesystem::create_directories(opt_.out);
    std::ofstream f(std::filesystem::path(opt_.out) / name, std::ios::binary);
    f << content;
    artifacts_.push_back(name);
  }
  void column(const std::string& name, const std::string& op) { columns_[name] = op; }

  void manifest(int code, const std::string& error) {
    ojson m;
    m["tool"] = "tailent";
    m["version"] = kToolVersion;
    m["scenario_format_version"] = kScenarioVersion;
    m["command"] = command_;
    m["arguments"] = args_;
    m["scenario"] = opt_.scenario;
    if (!opt_.scenario.empty()) {
      std::ifstream in(opt_.scenario, std::ios::binary);
      std::stringstream buf;
      buf << in.rdbuf();
      m["scenario_digest"] = fnv1a(buf.str());
    }
    m["seed"] = opt_.seed;
    m["budgets"] = budget_.to_string();
    m["artifacts"] = artifacts_;
    m["columns"] = columns_;
    m["exit_code"] = code;
    if (!error.empty()) m["error"] = error;
    std::filesystem::create_directories(opt_.out);
    std::ofstream f(std::filesystem::path(opt_.out) / "manifest.json", std::ios::binary);
    f << m.dump(2) << "\n";
  }

 private:
  const Options& opt_;
  std::string command_;
  std::vector<std::string> args_;
  Budget budget_;
  std::vector<std::string> artifacts_;
  ojson columns_ = ojson::object();
};

RandomCover resolve_cover(const Scenario& s, const Options& opt, const std::string& name) {
  if (name.empty()) throw UnknownName("missing cover name");
  if (name[0] != '@') return s.cover(name);
  if (opt.system.empty()) throw UnknownName("builtin cover " + name + " needs --system");
  const SystemPtr& sys = s.system(opt.system);
  if (name == "@trivial") return trivial_cover(sys);
  if (name == "@singletons") return singleton_partition(sys);
  if (name == "@fiber") return fiber_partition(sys);
  if (name == "@first") return first_coordinate_partition(sys);
  if (name == "@second") return second_coordinate_partition(sys);
  throw UnknownName("unknown builtin cover '" + name + "'");
}

std::vector<RandomCover> resolve_family(const Scenario& s, const Options& opt,
                                        const std::vector<std::string>& names) {
  std::vector<RandomCover> out;
  for (const auto& n : names) out.push_back(resolve_cover(s, opt, n));
  return out;
}

std::vector<Rational> parse_delta(const std::string& text, std::size_t fibers) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(parse_rational(part));
  if (out.size() == 1) out.assign(fibers, out[0]);
  if (out.size() != fibers) throw ParseError("--delta needs one value or one per fiber");
  return out;
}

CylinderCoverSpec parse_spec(const std::string& text) {
  // "c1,c2:d"; an empty component list is written ":d".
  auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("cylinder spec must look like 0,1:2");
  CylinderCoverSpec spec;
  std::stringstream ss(text.substr(0, colon));
  std::string part;
  try {
    while (std::getline(ss, part, ','))
      if (!part.empty()) spec.components.push_back(std::stoul(part));
    spec.depth = std::stoul(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw ParseError("bad cylinder spec '" + text + "'");
  }
  return spec;
}

void sequence_table(Run& run, const std::string& file, const std::vector<std::string>& keys,
                    const std::vector<std::string>& key_values, const EntropyEstimate& est,
                    const std::string& op) {
  std::vector<std::string> header = keys;
  header.insert(header.end(), {"n", "a_n", "ratio", "running_inf"});
  Table t(header);
  for (std::size_t i = 0; i < est.a.size(); ++i) {
    std::vector<std::string> row = key_values;
    row.insert(row.end(), {std::to_string(i + 1), num(est.a[i]), num(est.ratios[i]), num(est.running_inf[i])});
    t.add(std::move(row));
  }
  run.write(file, t.csv());
  run.column("a_n", op);
  run.column("ratio", "a_n / n");
  run.column("running_inf", "min over k <= n of a_k / k (Fekete upper bracket)");
}

ojson estimate_json(const EntropyEstimate& est) {
  ojson j;
  j["label"] = est.label;
  j["n_reached"] = est.n_reached;
  j["subadditive"] = est.subadditive;
  j["max_subadditivity_excess"] = est.max_subadditivity_excess;
  j["upper_bracket"] = est.upper_bracket();
  if (est.certified_limit) j["certified_limit"] = *est.certified_limit;
  else j["certified_limit"] = nullptr;
  j["certificate"] = est.certificate;
  j["truncated"] = est.truncated;
  if (est.truncated) j["truncation_reason"] = est.truncation_reason;
  return j;
}

void measure_table(Run& run, const std::string& file, const std::string& scenario,
                   const std::string& name, const FiberedMeasure& mu) {
  Table t({"scenario", "measure", "omega", "point", "weight"});
  const BundleRDS& rds = *mu.system();
  for (std::size_t w = 0; w < rds.num_fibers(); ++w)
    for (std::size_t i = 0; i < rds.fiber_size(w); ++i)
      t.add({scenario, name, std::to_string(w), rds.point_name(w, i), to_string(mu.at(w, i))});
  run.write(file, t.csv());
  run.column("weight", "exact rational mass of (omega, point)");
}

int cmd_validate(const Options& opt, Run& run, std::ostream& out) {
  ojson j;
  j["scenario"] = opt.scenario;
  int code = kExitOk;
  try {
    Scenario s = load_scenario(opt.scenario);
    j["valid"] = true;
    j["systems"] = s.systems.size();
    j["covers"] = s.covers.size();
    j["measures"] = s.measures.size();
    j["factors"] = s.factors.size();
    j["sfts"] = s.sfts.size();
    out << "valid\n";
  } catch (const ValidationError& e) {
    j["valid"] = false;
    j["error"] = e.what();
    out << "invalid: " << e.what() << "\n";
    code = kExitCheckFailed;
  }
  run.write("validate.json", j.dump(2) + "\n");
  return code;
}

int cmd_count(const Options& opt, Run& run, std::ostream& out, const Budget& budget) {
  Scenario s = load_scenario(opt.scenario);
  RandomCover r = resolve_cover(s, opt, opt.r), q = resolve_cover(s, opt, opt.q);
  Table t({"scenario", "r", "q", "omega", "n", "count"});
  run.column("count", "count_profile: N(R^(n) | Q^(n))(omega)");
  CountEngine engine(r, q, budget);
  int code = kExitOk;
  try {
    for (std::size_t n = 1; n <= opt.n; ++n) {
      CountProfile p = engine.profile(n);
      for (std::size_t w = 0; w < p.counts.size(); ++w)
        t.add({opt.scenario, opt.r, opt.q, std::to_string(w), std::to_string(n), std::to_string(p.counts[w])});
    }
  } catch (const BudgetExceeded& e) {
    out << "budget exceeded: " << e.what() << "\n";
    code = kExitBudget;
  }
  run.write("count.csv", t.csv());
  out << t.csv();
  return code;
}

int cmd_tail(const Options& opt, Run& run, std::ostream& out, const Budget& budget) {
  Scenario s = load_scenario(opt.scenario);
  RandomCover r = resolve_cover(s, opt, opt.r), q = resolve_cover(s, opt, opt.q);
  EntropyEstimate est = tail_entropy_estimate(r, q, opt.nmax, budget);
  sequence_table(run, "tail.csv", {"scenario", "r", "q"}, {opt.scenario, opt.r, opt.q}, est,
                 "tail_entropy_estimate: integral of log N(R^(n) | Q^(n)) dP");
  run.write("tail.json", estimate_json(est).dump(2) + "\n");
  out << "upper bracket " << num(est.upper_bracket());
  if (est.certified_limit) out << ", certified limit " << num(*est.certified_limit);
  out << "\n";
  if (est.truncated) {
    out << "truncated: " << est.truncation_reason << "\n";
    return kExitBudget;
  }
  return kExitOk;
}

int cmd_tail_total(const Options& opt, Run& run, std::ostream& out, const Budget& budget) {
  Scenario s = load_scenario(opt.scenario);
  auto qf = resolve_family(s, opt, opt.qfamily), rf = resolve_family(s, opt, opt.rfamily);
  TailValue v = tail_entropy_total(qf, rf, opt.nmax, budget);
  auto joined = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ";") + x;
    return s;
  };
  Table t({"scenario", "qfamily", "rfamily", "nmax", "truncated", "certified"});
  t.add({opt.scenario, joined(opt.qfamily), joined(opt.rfamily), std::to_string(opt.nmax), num(v.truncated),
         v.certified ? num(*v.certified) : ""});
  run.write("tail_total.csv", t.csv());
  run.column("truncated", "tail_entropy_total: inf over Q of max over R of running_inf at nmax");
  run.column("certified", "tail_entropy_total from certified limits (empty when unavailable)");
  out << t.csv();
  return kExitOk;
}

int cmd_sft_tail(const Options& opt, Run& run, std::ostream& out) {
  Scenario s = load_scenario(opt.scenario);
  const RandomSFT& sft = s.sft(opt.sft);
  EntropyEstimate est = sft_tail_sequence(sft, parse_spec(opt.rspec), parse_spec(opt.qspec), opt.nmax);
  sequence_table(run, "sft_tail.csv", {"scenario", "sft", "rspec", "qspec"},
                 {opt.scenario, opt.sft, opt.rspec, opt.qspec}, est,
                 "sft_tail_sequence: integral of log N(R^(n) | Q^(n)) dP, closed form");
  run.write("sft_tail.json", estimate_json(est).dump(2) + "\n");
  out << "upper bracket " << num(est.upper_bracket()) << "\n";
  return kExitOk;
}

int cmd_entropy(const Options& opt, Run& run, std::ostream& out, bool sequence) {
  Scenario s = load_scenario(opt.scenario);
  const FiberedMeasure& mu = s.measure(opt.mu);
  RandomCover r = resolve_cover(s, opt, opt.r), sigma = resolve_cover(s, opt, opt.sigma);
  if (!sequence) {
    double h = conditional_entropy(mu, r, sigma);
    Table t({"scenario", "mu", "r", "sigma", "H"});
    t.add({opt.scenario, opt.mu, opt.r, opt.sigma, num(h)});
    run.write("entropy.csv", t.csv());
    run.column("H", "conditional_entropy: H_mu(R | S)");
    out << t.csv();
    return kExitOk;
  }
  EntropyEstimate est = relative_entropy_sequence(mu, r, sigma, opt.nmax);
  sequence_table(run, "entropy.csv", {"scenario", "mu", "r", "sigma"}, {opt.scenario, opt.mu, opt.r, opt.sigma},
                 est, "relative_entropy_sequence: b_n = H_mu(R^(n) | S)");
  run.write("entropy.json", estimate_json(est).dump(2) + "\n");
  out << "upper bracket " << num(est.upper_bracket()) << "\n";
  return kExitOk;
}

int cmd_invariant(const Options& opt, Run& run, std::ostream& out, const Budget& budget) {
  Scenario s = load_scenario(opt.scenario);
  if (opt.vertices) {
    const SystemPtr& sys = s.system(opt.system);
    InvariantPolytope poly = vertex_enumeration(sys, budget);
    Table t({"scenario", "system", "vertex", "omega", "point", "weight"});
    for (std::size_t k = 0; k < poly.vertices.size(); ++k)
      for (std::size_t w = 0; w < sys->num_fibers(); ++w)
        for (std::size_t i = 0; i < sys->fiber_size(w); ++i)
          t.add({opt.scenario, opt.system, std::to_string(k), std::to_string(w), sys->point_name(w, i),
                 to_string(poly.vertices[k].at(w, i))});
    run.write("vertices.csv", t.csv());
    run.column("weight", "vertex_enumeration: exact vertex weights");
    out << poly.vertices.size() << " vertices (" << poly.method << ")\n";
    return kExitOk;
  }
  if (!opt.cesaro.empty()) {
    FiberedMeasure m = cesaro_limit(s.measure(opt.cesaro));
    measure_table(run, "cesaro.csv", opt.scenario, opt.cesaro, m);
    ojson j;
    j["defect"] = to_string(invariance_defect(m));
    run.write("cesaro.json", j.dump(2) + "\n");
    out << "defect " << to_string(invariance_defect(m)) << "\n";
    return invariance_defect(m) == 0 ? kExitOk : kExitCheckFailed;
  }
  if (opt.lift.size() == 2) {
    LiftResult lift = lift_invariant(s.factor(opt.lift[0]), s.measure(opt.lift[1]));
    measure_table(run, "lift.csv", opt.scenario, opt.lift[1], lift.lifted);
    ojson j;
    j["invariant"] = lift.invariant;
    j["projects"] = lift.projects;
    run.write("lift.json", j.dump(2) + "\n");
    out << "invariant " << lift.invariant << " projects " << lift.projects << "\n";
    return lift.invariant && lift.projects ? kExitOk : kExitCheckFailed;
  }
  throw PreconditionFailed("invariant", "choose --vertices, --cesaro MU or --lift PI MU");
}

int cmd_construct(const Options& opt, Run& run, std::ostream& out, const Budget& budget) {
  Scenario s = load_scenario(opt.scenario);
  if (opt.prop3) {
    RandomCover p = resolve_cover(s, opt, opt.p), q = resolve_cover(s, opt, opt.q);
    SeparatedEmpirical se = separated_empirical(p, q, opt.n, parse_delta(opt.delta, p.system->num_fibers()), budget);
    const BundleRDS& rds = *p.system;
    Table t({"scenario", "omega", "count", "anchor", "separated", "gate", "spanning", "card_ok"});
    bool ok = se.mu_n_support_ok;
    for (std::size_t w = 0; w < se.fibers.size(); ++w) {
      const auto& f = se.fibers[w];
      std::string sep;
      for (auto y : f.separated) sep += (sep.empty() ? "" : " ") + rds.point_name(w, y);
      t.add({opt.scenario, std::to_string(w), std::to_string(f.count), rds.point_name(w, f.anchor), sep,
             f.gate ? "1" : "0", f.spanning ? "1" : "0", f.card_ok ? "1" : "0"});
      ok = ok && f.spanning && f.card_ok;
    }
    run.write("separated.csv", t.csv());
    run.column("count", "separated_empirical: N(Q, P^(n))(omega)");
    measure_table(run, "mu_n.csv", opt.scenario, "mu_n", se.mu_n);
    measure_table(run, "mu_q.csv", opt.scenario, "mu_q", se.mu_q);
    ojson j;
    j["mu_n_defect"] = to_string(se.mu_n_defect);
    j["mu_n_support_ok"] = se.mu_n_support_ok;
    j["mu_q_support_ok"] = se.mu_q_support_ok;
    j["eq1_applicable"] = se.eq1_applicable;
    j["eq1_holds"] = se.eq1_holds;
    run.write("construct.json", j.dump(2) + "\n");
    out << t.csv();
    return ok ? kExitOk : kExitCheckFailed;
  }
  if (opt.prop4) {
    auto qc = resolve_family(s, opt, opt.qchain), pc = resolve_family(s, opt, opt.pchain);
    if (qc.empty()) throw PreconditionFailed("chain", "--qchain is empty");
    DiagonalMeasure dm = diagonal_measure(qc, pc, opt.n, parse_delta(opt.delta, qc[0].system->num_fibers()),
                                          opt.nentropy, budget);
    measure_table(run, "diagonal.csv", opt.scenario, "m", dm.m);
    ojson j;
    j["invariant"] = dm.invariant;
    j["diagonal_expected"] = dm.diagonal_expected;
    j["on_diagonal"] = dm.on_diagonal;
    j["b"] = dm.b;
    j["b_zero"] = dm.b_zero;
    run.write("construct.json", j.dump(2) + "\n");
    out << "invariant " << dm.invariant << " on_diagonal " << dm.on_diagonal << " b_zero " << dm.b_zero << "\n";
    bool ok = dm.invariant && dm.b_zero && (!dm.diagonal_expected || dm.on_diagonal);
    return ok ? kExitOk : kExitCheckFailed;
  }
  throw PreconditionFailed("construct", "choose --prop3 or --prop4");
}

int cmd_verify(const Options& opt, Run& run, std::ostream& out, const Budget& budget) {
  SuiteReport report = run_suite(opt.suite, opt.seed, opt.trials, budget);
  run.write("verify-" + opt.suite + ".json", report.to_json());
  run.write("verify-" + opt.suite + ".txt", report.to_text());
  out << report.to_text();
  return report.ok() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Relative tail entropy on finite bundle random dynamical systems", "tailent"};
  app.set_version_flag("--version", kToolVersion);
  app.add_option("--out", opt.out, "Output directory for artifacts");
  app.add_option("--budget", opt.budget, "Budget overrides key=value,... (after TAILENT_BUDGETS)");
  app.require_subcommand(1);

  auto scenario_opt = [&](CLI::App* c) { c->add_option("--scenario", opt.scenario, "Scenario file")->required(); };
  auto system_opt = [&](CLI::App* c) { c->add_option("--system", opt.system, "System for @builtin covers"); };

  auto* validate = app.add_subcommand("validate", "Load and validate a scenario");
  scenario_opt(validate);

  auto* count = app.add_subcommand("count", "Relative counts N(R^(n) | Q^(n))(omega)");
  scenario_opt(count);
  system_opt(count);
  count->add_option("--r", opt.r)->required();
  count->add_option("--q", opt.q)->required();
  count->add_option("--n", opt.n)->check(CLI::PositiveNumber);

  auto* tail = app.add_subcommand("tail", "Tail entropy sequence of R given Q");
  scenario_opt(tail);
  system_opt(tail);
  tail->add_option("--r", opt.r)->required();
  tail->add_option("--q", opt.q)->required();
  tail->add_option("--nmax", opt.nmax)->check(CLI::PositiveNumber);

  auto* total = app.add_subcommand("tail-total", "inf over Q of sup over R of the tail entropy");
  scenario_opt(total);
  system_opt(total);
  total->add_option("--qfamily", opt.qfamily)->required()->delimiter(',');
  total->add_option("--rfamily", opt.rfamily)->required()->delimiter(',');
  total->add_option("--nmax", opt.nmax)->check(CLI::PositiveNumber);

  auto* sft = app.add_subcommand("sft-tail", "Cylinder-cover tail sequence on a random SFT");
  scenario_opt(sft);
  sft->add_option("--sft", opt.sft)->required();
  sft->add_option("--rspec", opt.rspec, "components:depth, e.g. 0,1:1")->required();
  sft->add_option("--qspec", opt.qspec, "components:depth, e.g. 0:1")->required();
  sft->add_option("--nmax", opt.nmax)->check(CLI::PositiveNumber);

  auto* entropy = app.add_subcommand("entropy", "H_mu(R | S), or b_n with --nmax");
  scenario_opt(entropy);
  system_opt(entropy);
  entropy->add_option("--mu", opt.mu)->required();
  entropy->add_option("--r", opt.r)->required();
  entropy->add_option("--sigma", opt.sigma)->required();
  auto* entropy_nmax = entropy->add_option("--nmax", opt.nmax)->check(CLI::PositiveNumber);

  auto* invariant = app.add_subcommand("invariant", "Vertices, Cesaro limits and lifts");
  scenario_opt(invariant);
  system_opt(invariant);
  invariant->add_flag("--vertices", opt.vertices);
  invariant->add_option("--cesaro", opt.cesaro);
  invariant->add_option("--lift", opt.lift, "PI MU")->expected(2);

  auto* construct = app.add_subcommand("construct", "Separated-set and diagonal measures");
  scenario_opt(construct);
  system_opt(construct);
  construct->add_flag("--prop3", opt.prop3, "separated_empirical");
  construct->add_flag("--prop4", opt.prop4, "diagonal_measure");
  construct->add_option("--p", opt.p);
  construct->add_option("--q", opt.q);
  construct->add_option("--qchain", opt.qchain)->delimiter(',');
  construct->add_option("--pchain", opt.pchain)->delimiter(',');
  construct->add_option("--n", opt.n)->check(CLI::PositiveNumber);
  construct->add_option("--delta", opt.delta, "one rational, or one per fiber");
  construct->add_option("--nentropy", opt.nentropy)->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", opt.suite, "cover|power|setcover|entropy|invariant|construction|theorem|principal")
      ->required();
  verify->add_option("--seed", opt.seed);
  verify->add_option("--trials", opt.trials)->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitInputError;
  }

  CLI::App* sub = app.get_subcommands().front();
  Budget budget;
  try {
    budget = Budget::from_environment();
    if (!opt.budget.empty()) budget.apply_overrides(opt.budget);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  std::string error;
  int code = kExitOk;
  Run run(opt, sub->get_name(), args, budget);
  try {
    const std::string& name = sub->get_name();
    if (name == "validate") code = cmd_validate(opt, run, out);
    else if (name == "count") code = cmd_count(opt, run, out, budget);
    else if (name == "tail") code = cmd_tail(opt, run, out, budget);
    else if (name == "tail-total") code = cmd_tail_total(opt, run, out, budget);
    else if (name == "sft-tail") code = cmd_sft_tail(opt, run, out);
    else if (name == "entropy") code = cmd_entropy(opt, run, out, entropy_nmax->count() > 0);
    else if (name == "invariant") code = cmd_invariant(opt, run, out, budget);
    else if (name == "construct") code = cmd_construct(opt, run, out, budget);
    else if (name == "verify") code = cmd_verify(opt, run, out, budget);
  } catch (const BudgetExceeded& e) {
    error = e.what();
    code = kExitBudget;
  } catch (const Error& e) {
    error = e.what();
    code = kExitInputError;
  } catch (const std::exception& e) {
    error = e.what();
    code = kExitInputError;
  }
  if (!error.empty()) err << "error: " << error << "\n";
  run.manifest(code, error);
  return code;
}

}  // namespace tailent
