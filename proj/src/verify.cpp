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

#include "tailent/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <thread>
#include <utility>

#include "json.hpp"
#include "tailent/counting.hpp"
#include "tailent/errors.hpp"
#include "tailent/invariant.hpp"
#include "tailent/measures.hpp"
#include "tailent/scenario.hpp"
#include "tailent/tail_entropy.hpp"

namespace tailent {
namespace {

constexpr std::size_t kMaxCounterexamples = 20;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
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

struct Outcome {
  std::string check;
  CheckStatus status;
  std::string detail;
  double violation = 0;
};

class Recorder {
 public:
  void pass(const std::string& check, double violation = 0) {
    outcomes.push_back({check, CheckStatus::kPass, "", violation});
  }
  void fail(const std::string& check, std::string detail, double violation = 0) {
    outcomes.push_back({check, CheckStatus::kFail, std::move(detail), violation});
  }
  void skip(const std::string& check, std::string reason) {
    outcomes.push_back({check, CheckStatus::kSkipped, std::move(reason), 0});
  }
  void expect(const std::string& check, bool ok, const std::string& detail = "") {
    if (ok) pass(check);
    else fail(check, detail.empty() ? "violated" : detail);
  }
  // `excess` is how far the inequality misses; passes when it is <= tol.
  void within(const std::string& check, double excess, double tol, const std::string& detail) {
    double v = std::max(0.0, excess);
    if (v <= tol) pass(check, v);
    else fail(check, detail + " (excess " + fmt(v) + ")", v);
  }
  void note(std::string text) { notes.push_back(std::move(text)); }

  // Runs `body`; budget overruns and failed preconditions named in
  // `skippable` become skips, other library errors become failures.
  void guarded(const std::string& check, const std::function<void()>& body,
               const std::vector<std::string>& skippable = {}) {
    try {
      body();
    } catch (const BudgetExceeded& e) {
      skip(check, std::string("budget exceeded: ") + e.what());
    } catch (const PreconditionFailed& e) {
      if (std::find(skippable.begin(), skippable.end(), e.name()) != skippable.end())
        skip(check, "precondition " + e.name());
      else
        fail(check, e.what());
    } catch (const Error& e) {
      fail(check, e.what());
    }
  }

  std::vector<Outcome> outcomes;
  std::vector<std::string> notes;
  Scenario scenario;
};

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  std::size_t workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  for (auto& th : pool) th.join();
}

CheckSummary& summary_for(SuiteReport& report, const std::string& name) {
  for (auto& c : report.checks)
    if (c.name == name) return c;
  report.checks.push_back({});
  report.checks.back().name = name;
  return report.checks.back();
}

SuiteReport assemble(std::string suite, std::uint64_t seed, std::vector<Recorder>& recs) {
  SuiteReport report;
  report.suite = std::move(suite);
  report.seed = seed;
  report.trials = recs.size();
  for (std::size_t t = 0; t < recs.size(); ++t) {
    Recorder& rec = recs[t];
    std::string doc;
    try {
      doc = dump_scenario(rec.scenario);
    } catch (const Error& e) {
      doc = std::string("unserializable scenario: ") + e.what();
    }
    report.digests.push_back(fnv1a(doc));
    for (const auto& o : rec.outcomes) {
      CheckSummary& s = summary_for(report, o.check);
      s.max_violation = std::max(s.max_violation, o.violation);
      switch (o.status) {
        case CheckStatus::kPass: ++s.passed; break;
        case CheckStatus::kSkipped:
          ++s.skipped;
          ++s.skip_reasons[o.detail];
          break;
        case CheckStatus::kFail:
          ++s.failed;
          if (report.counterexamples.size() < kMaxCounterexamples)
            report.counterexamples.push_back({o.check, t, o.detail, doc});
          break;
      }
    }
    for (const auto& n : rec.notes) report.diagnostics.push_back("trial " + std::to_string(t) + ": " + n);
  }
  return report;
}

using TrialFn = std::function<void(std::size_t, TrialRng&, Recorder&)>;

SuiteReport run_trials(const std::string& suite, std::uint64_t suite_tag, std::uint64_t seed,
                       std::size_t trials, const TrialFn& fn) {
  std::vector<Recorder> recs(trials);
  parallel_for(trials, [&](std::size_t i) {
    TrialRng rng(seed, (suite_tag << 32) | i);
    try {
      fn(i, rng, recs[i]);
    } catch (const std::exception& e) {
      recs[i].fail("trial completes", e.what());
    }
  });
  return assemble(suite, seed, recs);
}

std::size_t lookup_omega(const BundleRDS& rds, std::size_t omega, std::size_t n) {
  return rds.base().iterate(omega, n);
}

double integrate_log(const BundleRDS& rds, const std::vector<std::size_t>& counts) {
  double a = 0;
  for (std::size_t w = 0; w < counts.size(); ++w)
    a += to_double(rds.base().prob(w)) * std::log(static_cast<double>(counts[w]));
  return a;
}

// First half of every fiber (by local index) against the rest.
RandomCover half_partition(const SystemPtr& system) {
  RandomSet lo = empty_set(*system), hi = empty_set(*system);
  for (std::size_t w = 0; w < system->num_fibers(); ++w) {
    std::size_t k = system->fiber_size(w);
    for (std::size_t i = 0; i < k; ++i) (i < (k + 1) / 2 ? lo : hi)[w].insert(i);
  }
  return make_cover(system, {lo, hi}, "half");
}

std::string join_counts(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

// ---------------------------------------------------------------- covers

void cover_checks(Recorder& rec, const SystemPtr& sys, const RandomCover& r, const RandomCover& q,
                  const RandomCover& u, const RandomCover& v, const RandomCover& x,
                  const RandomCover& y, const Budget& budget) {
  const BundleRDS& rds = *sys;
  std::size_t nw = rds.num_fibers();

  rec.guarded("(n1) refinement monotonicity", [&] {
    RandomCover u1 = join(r, x), q1 = join(v, y);
    bool ok = refines(u1, r) && refines(q1, v);
    std::string detail = ok ? "" : "constructed covers do not refine";
    for (std::size_t w = 0; w < nw && ok; ++w) {
      std::size_t a = relative_count(r, q1, w), b = relative_count(u1, v, w);
      if (a > b) {
        ok = false;
        detail = "w=" + std::to_string(w) + ": N(r|q)=" + std::to_string(a) + " > N(u|v)=" + std::to_string(b);
      }
    }
    rec.expect("(n1) refinement monotonicity", ok, detail);
  });

  rec.guarded("(n2) pullback", [&] {
    RandomCover pr = pullback(r, 1), pq = pullback(q, 1);
    bool ok = true;
    std::string detail;
    std::size_t printed_violations = 0;
    for (std::size_t w = 0; w < nw; ++w) {
      std::size_t tw = rds.base().theta(w);
      std::size_t a = relative_count(pr, pq, w), b = relative_count(r, q, tw);
      if (a > b && ok) {
        ok = false;
        detail = "w=" + std::to_string(w) + ": N(pullback)=" + std::to_string(a) + " > N(r|q)(theta w)=" + std::to_string(b);
      }
      if (relative_count(pr, pq, tw) > relative_count(r, q, w)) ++printed_violations;
    }
    if (printed_violations)
      rec.note("(n2) evaluated at theta w against w fails on " + std::to_string(printed_violations) + " fiber(s)");
    rec.expect("(n2) pullback", ok, detail);
  });

  rec.guarded("(n3) join against product", [&] {
    RandomCover rq = join(r, q), ru = join(r, u);
    bool ok = true;
    std::string detail;
    for (std::size_t w = 0; w < nw && ok; ++w) {
      std::size_t a = relative_count(rq, u, w);
      std::size_t b = relative_count(r, u, w) * relative_count(q, ru, w);
      if (a > b) {
        ok = false;
        detail = "w=" + std::to_string(w) + ": " + std::to_string(a) + " > " + std::to_string(b);
      }
    }
    rec.expect("(n3) join against product", ok, detail);
  });

  rec.guarded("(n4) join against join", [&] {
    RandomCover rq = join(r, q), uv = join(u, v);
    bool ok = true;
    std::string detail;
    for (std::size_t w = 0; w < nw && ok; ++w) {
      std::size_t a = relative_count(rq, uv, w);
      std::size_t b = relative_count(r, u, w) * relative_count(q, v, w);
      if (a > b) {
        ok = false;
        detail = "w=" + std::to_string(w) + ": " + std::to_string(a) + " > " + std::to_string(b);
      }
    }
    rec.expect("(n4) join against join", ok, detail);
  });

  constexpr std::size_t kDepth = 3;
  rec.guarded("(n5) matched-depth monotonicity", [&] {
    RandomCover u1 = join(r, x), q1 = join(v, y);
    CountEngine small(r, q1, budget), large(u1, v, budget);
    bool ok = true;
    std::string detail;
    for (std::size_t n = 1; n <= kDepth && ok; ++n) {
      auto a = small.profile(n).counts, b = large.profile(n).counts;
      for (std::size_t w = 0; w < nw; ++w)
        if (a[w] > b[w]) ok = false;
      if (integrate_log(rds, a) > integrate_log(rds, b)) ok = false;
      if (!ok) detail = "n=" + std::to_string(n) + ": [" + join_counts(a) + "] vs [" + join_counts(b) + "]";
    }
    rec.expect("(n5) matched-depth monotonicity", ok, detail);
  });

  rec.guarded("(n6) trivial condition dominates", [&] {
    CountEngine free(r, trivial_cover(sys), budget), cond(r, q, budget);
    bool ok = true;
    std::string detail;
    for (std::size_t n = 1; n <= kDepth && ok; ++n) {
      auto a = cond.profile(n).counts, b = free.profile(n).counts;
      for (std::size_t w = 0; w < nw; ++w)
        if (a[w] > b[w]) ok = false;
      if (integrate_log(rds, a) > integrate_log(rds, b)) ok = false;
      if (!ok) detail = "n=" + std::to_string(n) + ": [" + join_counts(a) + "] vs [" + join_counts(b) + "]";
    }
    rec.expect("(n6) trivial condition dominates", ok, detail);
  });

  rec.guarded("orbit subadditivity", [&] {
    CountEngine e(r, q, budget);
    bool ok = true, positive = true;
    std::string detail;
    for (std::size_t n = 1; n < 4; ++n)
      for (std::size_t m = 1; n + m <= 4; ++m)
        for (std::size_t w = 0; w < nw; ++w) {
          std::size_t lhs = e.count(w, n + m);
          std::size_t rhs = e.count(w, n) * e.count(lookup_omega(rds, w, n), m);
          if (lhs == 0) positive = false;
          if (lhs > rhs && ok) {
            ok = false;
            detail = "w=" + std::to_string(w) + " n=" + std::to_string(n) + " m=" + std::to_string(m) +
                     ": " + std::to_string(lhs) + " > " + std::to_string(rhs);
          }
        }
    rec.expect("orbit subadditivity", ok, detail);
    rec.expect("counts are positive", positive, "a count was 0");
  });

  for (std::size_t m = 2; m <= 3; ++m)
    for (std::size_t n = 1; n <= 2; ++n) {
      rec.guarded("power rule", [&] {
        PowerRuleResult p = power_rule_check(r, q, m, n, budget);
        rec.expect("power rule", p.holds,
                   "m=" + std::to_string(m) + " n=" + std::to_string(n) + ": [" +
                       join_counts(p.direct) + "] vs [" + join_counts(p.via_power) + "]");
      });
    }
}

void add_covers(Scenario& s, std::initializer_list<const RandomCover*> covers) {
  for (const RandomCover* c : covers) s.covers.emplace(c->label, *c);
}

// Elements empty on whole fibers, over SYS-A.
void adversarial_cover_trial(Recorder& rec, const Budget& budget) {
  SystemPtr sys = sys_a();
  auto set = [&](std::vector<std::size_t> f0, std::vector<std::size_t> f1) {
    RandomSet s = empty_set(*sys);
    for (auto i : f0) s[0].insert(i);
    for (auto i : f1) s[1].insert(i);
    return s;
  };
  RandomCover r = make_cover(sys, {set({}, {0, 1}), set({0, 1}, {}), set({0}, {0})}, "r");
  RandomCover q = make_cover(sys, {set({0}, {}), set({1}, {0, 1})}, "q");
  RandomCover u = make_cover(sys, {set({0, 1}, {}), set({}, {1}), set({}, {0})}, "u");
  RandomCover v = make_cover(sys, {set({}, {}), set({0, 1}, {0, 1})}, "v");
  RandomCover x = make_cover(sys, {set({1}, {0}), set({0}, {1}), set({}, {0, 1})}, "x");
  RandomCover y = make_cover(sys, {set({0, 1}, {1}), set({}, {0})}, "y");
  rec.scenario.systems.emplace("E", sys);
  add_covers(rec.scenario, {&r, &q, &u, &v, &x, &y});
  cover_checks(rec, sys, r, q, u, v, x, y, budget);
  rec.expect("empty section counts as 1",
             minimal_subcover(set({}, {0}), r, 0) == 1, "N(empty, r) != 1");
}

void single_point_cover_trial(Recorder& rec, const Budget& budget) {
  SystemPtr sys = point_system(DrivingSystem({Rational(1)}, {0}));
  RandomCover t = trivial_cover(sys);
  rec.scenario.systems.emplace("E", sys);
  rec.scenario.covers.emplace("trivial", t);
  cover_checks(rec, sys, t, t, t, t, t, t, budget);
  bool ones = true;
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t c : count_profile(t, t, n, budget).counts) ones = ones && c == 1;
  rec.expect("single point: all counts 1", ones);
}

// ---------------------------------------------------------------- oracles

std::size_t exhaustive_cover(std::uint32_t target, const std::vector<std::uint32_t>& family) {
  if (target == 0) return 1;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::uint32_t mask = 1; mask < (1u << family.size()); ++mask) {
    std::uint32_t uni = 0;
    for (std::size_t j = 0; j < family.size(); ++j)
      if (mask & (1u << j)) uni |= family[j];
    if ((uni & target) == target)
      best = std::min<std::size_t>(best, static_cast<std::size_t>(__builtin_popcount(mask)));
  }
  return best;
}

// ---------------------------------------------------------------- entropy

void entropy_trial(TrialRng& rng, Recorder& rec, const Budget& budget) {
  DrivingSystem base = random_driving(rng, 3);
  SystemShape shape{3, 1, 3, false};
  SystemPtr g = random_system_over(rng, base, shape);
  SystemPtr e = random_system_over(rng, base, shape);
  SystemPtr h = product_system(g, e);
  FactorMap pi_e = canonical_projections(h).second;
  FiberedMeasure mu = random_measure(rng, h);
  RandomCover r = random_partition(rng, h, 4, "r");
  RandomCover q = random_partition(rng, h, 4, "q");
  RandomCover re = random_partition(rng, e, 3, "rE");
  RandomCover qe = random_partition(rng, e, 3, "qE");
  RandomCover dh = first_coordinate_partition(h);
  RandomCover fe = fiber_partition(h);
  Scenario& s = rec.scenario;
  s.systems.emplace("G", g);
  s.systems.emplace("E", e);
  s.systems.emplace("H", h);
  add_covers(s, {&r, &q, &re, &qe});
  s.measures.emplace("mu", mu);

  rec.guarded("lemlog", [&] {
    SlackCheck c = lemlog_check(mu, r, q);
    rec.within("lemlog", -c.slack, kTolerance, "left " + fmt(c.left) + " right " + fmt(c.right));
  });
  rec.guarded("lemlog r = q is exact", [&] {
    SlackCheck c = lemlog_check(mu, r, r);
    rec.expect("lemlog r = q is exact", c.left == 0 && c.right == 0 && c.slack == 0,
               "slack " + fmt(c.slack));
  });
  rec.guarded("lem3 (pulled-back partitions)", [&] {
    SlackCheck c = lem3_check(mu, preimage_cover(pi_e, re), preimage_cover(pi_e, qe), dh);
    rec.within("lem3 (pulled-back partitions)", -c.slack, kTolerance,
               "left " + fmt(c.left) + " right " + fmt(c.right));
  });
  rec.guarded("lem3 (partitions of H)", [&] {
    SlackCheck c = lem3_check(mu, r, q, dh);
    rec.within("lem3 (partitions of H)", -c.slack, kTolerance,
               "left " + fmt(c.left) + " right " + fmt(c.right));
  });
  rec.guarded("chain rule", [&] {
    double lhs = conditional_entropy(mu, join(r, q), dh);
    double rhs = conditional_entropy(mu, r, dh) + conditional_entropy(mu, q, join(r, dh));
    rec.within("chain rule", std::abs(lhs - rhs), kTolerance, fmt(lhs) + " vs " + fmt(rhs));
  });
  rec.guarded("disintegration identity", [&] {
    double lhs = conditional_entropy(mu, r, fe);
    double rhs = fiber_entropy_integral(mu, r);
    rec.within("disintegration identity", std::abs(lhs - rhs), kTolerance, fmt(lhs) + " vs " + fmt(rhs));
  });
  rec.guarded("lem222 filtration", [&] {
    RandomCover singles = singleton_partition(h);
    std::vector<SigmaAlgebra> chain{trivial_cover(h), fe, dh, join(dh, q), singles};
    FiltrationCheck c = filtration_limit_check(mu, r, chain, singles);
    rec.expect("lem222 filtration", c.holds(),
               std::string(c.monotone ? "" : "not monotone ") + (c.limit_matches ? "" : "limit differs"));
  });
  rec.guarded("lem415 corrected bound", [&] {
    RandomCover p = random_partition(rng, h, 4, "p");
    // q2: a relabelling of p's cells, then one point moved.
    std::vector<std::size_t> cell = atom_labels(p);
    std::size_t k = rng.between(1, 3);
    std::vector<std::size_t> to(p.size() + 1);
    for (auto& t : to) t = rng.below(k);
    std::vector<std::size_t> label(h->total_points());
    for (std::size_t i = 0; i < label.size(); ++i) label[i] = to[std::min(cell[i], p.size())];
    if (rng.coin()) label[rng.below(label.size())] = rng.below(k);
    std::vector<RandomSet> elems(k, empty_set(*h));
    for (std::size_t w = 0; w < h->num_fibers(); ++w)
      for (std::size_t i = 0; i < h->fiber_size(w); ++i) elems[label[h->flat_index(w, i)]][w].insert(i);
    RandomCover q2 = make_cover(h, elems, "q415");
    Rational delta(1, static_cast<long long>(2u << rng.below(3)));
    Lem415Check c = lem415_bound_check(mu, p, q2, delta, budget);
    if (!c.holds_printed) rec.note("lem415 printed-sign bound fails: H=" + fmt(c.entropy) + " printed " + fmt(c.printed_bound));
    rec.within("lem415 corrected bound", c.entropy - c.corrected_bound, kTolerance,
               "H=" + fmt(c.entropy) + " bound " + fmt(c.corrected_bound));
  }, {"delta-contains"});
  rec.guarded("lem2 continuity", [&] {
    FiberedMeasure nu = random_measure(rng, h);
    double at_m = conditional_entropy(mu, r, dh);
    double first = 0, last = 0;
    for (int j = 1; j <= 30; ++j) {
      Rational t(1, static_cast<long long>(1) << j);
      double d = std::abs(conditional_entropy(mix(t, nu, mu), r, dh) - at_m);
      if (j == 10) first = d;
      last = d;
    }
    rec.within("lem2 continuity", std::max(last - 1e-6, last - first), 0.0,
               "difference " + fmt(last) + " at t = 2^-30");
  });
}

// ---------------------------------------------------------------- invariant

void invariant_trial(std::size_t index, TrialRng& rng, Recorder& rec, const Budget& budget) {
  SystemPtr sys = random_system(rng, {4, 1, 5, false});
  FiberedMeasure nu = random_measure(rng, sys);
  FiberedMeasure m = cesaro_limit(nu);
  rec.scenario.systems.emplace("E", sys);
  rec.scenario.measures.emplace("nu", nu);
  rec.expect("cesaro limit has defect 0", invariance_defect(m) == 0, "defect " + to_string(invariance_defect(m)));
  rec.expect("cesaro limit keeps the marginal", m.violations().empty());
  rec.expect("cesaro limit is idempotent", cesaro_limit(m) == m);

  rec.guarded("vertices are invariant and distinct", [&] {
    InvariantPolytope poly = vertex_enumeration(sys, budget);
    bool ok = !poly.vertices.empty();
    for (std::size_t i = 0; i < poly.vertices.size(); ++i) {
      const auto& v = poly.vertices[i];
      ok = ok && invariance_defect(v) == 0 && v.violations().empty();
      if (i > 0) ok = ok && !(poly.vertices[i - 1] == v);
    }
    rec.expect("vertices are invariant and distinct", ok);
    HullCertificate hc = convex_hull_membership(poly, m);
    rec.expect("cesaro limit lies in the vertex hull", hc.member);
    std::vector<Rational> w(poly.vertices.size());
    Rational total = 0;
    for (auto& x : w) total += (x = Rational(static_cast<long long>(rng.between(1, 5))));
    std::vector<Rational> cw(sys->total_points(), Rational(0));
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t p = 0; p < cw.size(); ++p) cw[p] += w[i] / total * poly.vertices[i].weights()[p];
    FiberedMeasure cm(sys, cw);
    rec.expect("vertex combinations are invariant", invariance_defect(cm) == 0);
    rec.expect("vertex combinations lie in the hull", convex_hull_membership(poly, cm).member);
  });

  if (index % 2 != 0) return;
  // Extension G_w = E_w x {0..k_w-1} with random second coordinate dynamics.
  const BundleRDS& e = *sys;
  std::size_t nw = e.num_fibers();
  std::vector<std::size_t> k(nw);
  for (auto& x : k) x = rng.between(1, 2);
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> fibers(nw), images(nw), table(nw);
  std::vector<std::vector<std::size_t>> id_of(nw);
  for (std::size_t w = 0; w < nw; ++w)
    for (std::size_t i = 0; i < e.fiber_size(w); ++i)
      for (std::size_t j = 0; j < k[w]; ++j) {
        id_of[w].push_back(names.size());
        fibers[w].push_back(names.size());
        table[w].push_back(i);
        names.push_back(e.point_name(w, i) + "|" + std::to_string(j));
      }
  for (std::size_t w = 0; w < nw; ++w) {
    std::size_t tw = e.base().theta(w);
    for (std::size_t i = 0; i < e.fiber_size(w); ++i)
      for (std::size_t j = 0; j < k[w]; ++j)
        images[w].push_back(id_of[tw][e.next(w, i) * k[tw] + rng.below(k[tw])]);
  }
  auto g = std::make_shared<const BundleRDS>(e.base(), std::make_shared<const MetricSpace>(names),
                                             fibers, images);
  FactorMap pi(g, sys, table);
  rec.scenario.systems.emplace("G", g);
  rec.scenario.factors.emplace("pi", pi);
  rec.expect("constructed factor map is valid", validate_factor(pi).ok());
  LiftResult lift = lift_invariant(pi, m);
  rec.expect("lift is invariant", lift.invariant);
  rec.expect("lift projects onto mu", lift.projects);
  FiberedMeasure nug = random_measure(rng, g);
  rec.expect("cesaro commutes with pushforward",
             pushforward_measure(pi, cesaro_limit(nug)) == cesaro_limit(pushforward_measure(pi, nug)));
}

// ---------------------------------------------------------------- constructions

Rational oracle_bowen(const BundleRDS& rds, std::size_t w, std::size_t x, std::size_t y,
                      std::size_t n, const std::vector<Rational>& delta) {
  Rational best = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t wk = rds.base().iterate(w, k);
    Rational d = rds.distance(wk, x, y) / delta[wk];
    if (d > best) best = d;
    x = rds.next(wk, x);
    y = rds.next(wk, y);
  }
  return best;
}

void construction_trial(TrialRng& rng, Recorder& rec, const Budget& budget) {
  SystemPtr sys = random_system(rng, {3, 1, 4, true});
  const BundleRDS& rds = *sys;
  RandomCover p = rng.coin() ? random_partition(rng, sys, 3, "p") : random_cover(rng, sys, 2, 3, "p");
  RandomCover q = random_cover(rng, sys, 1, 3, "q");
  std::size_t n = rng.between(1, 3);
  std::vector<Rational> delta(rds.num_fibers());
  for (auto& d : delta) d = Rational(static_cast<long long>(rng.between(2, 8)), 4);
  rec.scenario.systems.emplace("E", sys);
  add_covers(rec.scenario, {&p, &q});
  std::string params = "n=" + std::to_string(n);

  SeparatedEmpirical se = separated_empirical(p, q, n, delta, budget);
  bool separated = true, inside = true, spanning = true, card = true;
  std::size_t gated = 0;
  for (std::size_t w = 0; w < rds.num_fibers(); ++w) {
    const SeparatedFiber& f = se.fibers[w];
    for (std::size_t a = 0; a < f.separated.size(); ++a) {
      inside = inside && f.chosen.contains(f.separated[a]);
      for (std::size_t b = a + 1; b < f.separated.size(); ++b)
        separated = separated && oracle_bowen(rds, w, f.separated[a], f.separated[b], n, delta) >= 1;
    }
    for (std::size_t x : f.chosen.members()) {
      bool near = std::any_of(f.separated.begin(), f.separated.end(), [&](std::size_t y) {
        return oracle_bowen(rds, w, x, y, n, delta) < 1;
      });
      spanning = spanning && near;
    }
    if (f.gate) {
      ++gated;
      card = card && f.separated.size() >= f.count;
    }
  }
  rec.expect("separated set is (n,delta)-separated", separated, params);
  rec.expect("separated set lies in Q", inside, params);
  rec.expect("separated set is maximal", spanning, params);
  rec.expect("spanning certificate agrees", spanning == std::all_of(se.fibers.begin(), se.fibers.end(),
                                                                    [](const SeparatedFiber& f) { return f.spanning; }));
  if (gated == 0) rec.skip("card E_n >= N(Q, P^(n)) under the gate", "gate closed on every fiber");
  else rec.expect("card E_n >= N(Q, P^(n)) under the gate", card, params);
  rec.expect("sigma has marginal P", se.sigma.violations().empty());
  rec.expect("mu_n support inside the Q-diagonal blocks", se.mu_n_support_ok, params);
  rec.expect("mu_n defect <= 2/n", se.mu_n_defect <= Rational(2, static_cast<long long>(n)),
             "defect " + to_string(se.mu_n_defect));
  rec.expect("mu_Q is invariant", invariance_defect(se.mu_q) == 0);
  if (!se.mu_q_support_ok) rec.note("mu_Q leaves the Q-diagonal blocks");
  if (!is_partition(p)) rec.skip("eq1 identity", "p is not a partition");
  else if (!se.eq1_applicable) rec.skip("eq1 identity", "a P^(n) cell holds two separated points");
  else rec.expect("eq1 identity", se.eq1_holds, params);
}

// ---------------------------------------------------------------- theorems

RandomCover p_from_singletons(const SystemPtr& e) {
  // P_i = R_i minus the last point of its fiber; P_0 collects those points.
  const BundleRDS& rds = *e;
  std::vector<RandomSet> out;
  RandomSet p0 = empty_set(rds);
  for (std::size_t w = 0; w < rds.num_fibers(); ++w) {
    std::size_t last = rds.fiber_size(w) - 1;
    p0[w].insert(last);
    for (std::size_t i = 0; i < last; ++i) {
      RandomSet s = empty_set(rds);
      s[w].insert(i);
      out.push_back(std::move(s));
    }
  }
  out.insert(out.begin(), p0);
  return make_cover(e, out, "P");
}

RandomCover u_from_p(const RandomCover& p) {
  std::vector<RandomSet> out;
  const RandomSet& p0 = p.elements[0];
  for (std::size_t i = 1; i < p.size(); ++i) {
    RandomSet s = p.elements[i];
    for (std::size_t w = 0; w < s.size(); ++w) s[w] |= p0[w];
    out.push_back(std::move(s));
  }
  if (out.empty()) out.push_back(p0);
  return make_cover(p.system, out, "U");
}

void theorem_trial(const TheoremScenario& sc, std::size_t n_max, Recorder& rec, const Budget& budget) {
  const std::string pre = sc.name + ": ";
  SystemPtr e = sc.e;
  SystemPtr h = product_system(sc.g, e);
  FactorMap pi_e = canonical_projections(h).second;
  RandomCover dh = first_coordinate_partition(h);
  RandomCover r = singleton_partition(e);
  RandomCover p = p_from_singletons(e);
  RandomCover u = u_from_p(p);
  std::vector<RandomCover> qs{trivial_cover(e), half_partition(e)};
  rec.scenario.systems.emplace("G", sc.g);
  rec.scenario.systems.emplace("E", e);
  rec.scenario.systems.emplace("H", h);
  add_covers(rec.scenario, {&p, &u});

  InvariantPolytope hpoly = vertex_enumeration(h, budget);
  std::vector<FiberedMeasure> family = hpoly.vertices;
  family.push_back(cesaro_limit(FiberedMeasure::uniform(h)));
  const BundleRDS& erds = *e;

  for (const RandomCover& q : qs) {
    std::string qpre = pre + "Q=" + q.label + ": ";
    CountEngine pu(p, u, budget), uq(u, q, budget), pq(p, q, budget);
    CountEngine hpq(preimage_cover(pi_e, p), preimage_cover(pi_e, q), budget);
    for (std::size_t n = 1; n <= n_max; ++n) {
      std::string at = qpre + "n=" + std::to_string(n);
      auto cpu = pu.profile(n).counts, cuq = uq.profile(n).counts, cpq = pq.profile(n).counts;
      bool a = true, b = true, f = true;
      for (std::size_t w = 0; w < erds.num_fibers(); ++w) {
        a = a && cpu[w] <= (std::size_t{1} << n);
        b = b && cpq[w] <= cuq[w] * cpu[w];
        f = f && hpq.count(w, n) == cpq[w];
      }
      rec.expect(pre + "prop1 (a) N(P|U) <= 2^n", a, at + ": [" + join_counts(cpu) + "]");
      rec.expect(pre + "prop1 (b) N(P|Q) <= N(U|Q) N(P|U)", b, at);
      rec.expect(pre + "prop1 (f) counts agree on H and E", f, at);

      RandomCover pn = preimage_cover(pi_e, iterate_cover(p, n, budget));
      RandomCover qn = preimage_cover(pi_e, iterate_cover(q, n, budget));
      RandomCover rn = preimage_cover(pi_e, iterate_cover(r, n, budget));
      double log_uq = integrate_log(erds, cuq), log_pu = integrate_log(erds, cpu);
      for (std::size_t k = 0; k < family.size(); ++k) {
        const FiberedMeasure& mu = family[k];
        std::string mat = at + " measure " + std::to_string(k);
        SlackCheck c = lem3_check(mu, pn, qn, dh);
        rec.within(pre + "prop1 (c) lem3 at depth n", -c.slack, kTolerance, mat);
        double lhs = c.left;
        double rhs = conditional_entropy(mu, qn, dh) + log_uq + log_pu;
        rec.within(pre + "prop1 (d) combined inequality", lhs - rhs, kTolerance, mat);
        FiberedMeasure nu = pushforward_measure(pi_e, mu);
        double hrp = conditional_entropy(nu, r, p);
        double hrp_h = conditional_entropy(mu, preimage_cover(pi_e, r), preimage_cover(pi_e, p));
        rec.within(pre + "prop1 (e) pulled-back conditional entropy", std::abs(hrp - hrp_h), kTolerance, mat);
        double left_e = conditional_entropy(mu, rn, dh);
        double right_e = lhs + static_cast<double>(n) * hrp;
        rec.within(pre + "prop1 (e) refinement step", left_e - right_e, kTolerance, mat);
      }
    }
  }

  // Degenerate exact forms.
  std::vector<RandomCover> fam_e{singleton_partition(e), trivial_cover(e), half_partition(e)};
  TailValue hstar = tail_entropy_total(fam_e, fam_e, n_max, budget);
  rec.expect(pre + "h*(Theta) certified 0", hstar.certified && *hstar.certified == 0,
             "truncated " + fmt(hstar.truncated));

  double prop2_left = 0;
  bool certified = true;
  for (const auto& m : family) {
    certified = certified && transformation_relative_entropy(m, dh, n_max).certified_limit.has_value();
    prop2_left = std::max(prop2_left, defect(m, dh, family, Rational(2), n_max).asymptotic);
  }
  rec.expect(pre + "prop2 as 0 <= 0", certified && hstar.certified && prop2_left == 0 &&
                                          prop2_left <= *hstar.certified,
             "left " + fmt(prop2_left));

  SystemPtr pair = pair_system(e);
  RandomCover a2 = first_coordinate_partition(pair);
  InvariantPolytope ppoly = vertex_enumeration(pair, budget);
  double theo_max = 0, theo_trunc = 0;
  for (const auto& v : ppoly.vertices) {
    DefectReport d = defect(v, a2, ppoly.vertices, Rational(2), n_max);
    theo_max = std::max(theo_max, d.asymptotic);
    theo_trunc = std::max(theo_trunc, d.truncated);
  }
  rec.expect(pre + "theo1 max over vertices = h*", hstar.certified && theo_max == *hstar.certified,
             "max " + fmt(theo_max));
  rec.within(pre + "theo1 truncated max = truncated h*", std::abs(theo_trunc - hstar.truncated),
             kTolerance, "max " + fmt(theo_trunc) + " h* " + fmt(hstar.truncated));

  std::vector<Rational> delta(erds.num_fibers(), Rational(1, 2));
  DiagonalMeasure dm = diagonal_measure({singleton_partition(e)}, {singleton_partition(e)}, 2, delta,
                                        n_max, budget);
  FiberedMeasure m(pair, dm.m.weights());
  rec.expect(pre + "diagonal measure is invariant and on the diagonal",
             dm.invariant && dm.diagonal_expected && dm.on_diagonal);
  rec.expect(pre + "diagonal measure has b_n = 0", dm.b_zero);
  rec.expect(pre + "diagonal measure lies in the pair polytope", convex_hull_membership(ppoly, m).member);
  std::vector<FiberedMeasure> with_m = ppoly.vertices;
  with_m.push_back(m);
  rec.expect(pre + "diagonal measure attains the max",
             defect(m, a2, with_m, Rational(2), n_max).asymptotic == theo_max);
}

}  // namespace

// ---------------------------------------------------------------- public

const char* status_name(CheckStatus status) {
  switch (status) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kSkipped: return "skipped";
  }
  return "?";
}

CheckStatus CheckSummary::status() const {
  if (failed) return CheckStatus::kFail;
  if (passed == 0) return CheckStatus::kSkipped;
  return CheckStatus::kPass;
}

bool SuiteReport::ok() const { return failures() == 0; }

std::size_t SuiteReport::failures() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.failed;
  return n;
}

const CheckSummary* SuiteReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string SuiteReport::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["seed"] = seed;
  j["trials"] = trials;
  j["ok"] = ok();
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["status"] = status_name(c.status());
    cj["passed"] = c.passed;
    cj["failed"] = c.failed;
    cj["skipped"] = c.skipped;
    cj["skip_reasons"] = c.skip_reasons;
    cj["max_violation"] = c.max_violation;
    j["checks"].push_back(std::move(cj));
  }
  j["counterexamples"] = nlohmann::ordered_json::array();
  for (const auto& c : counterexamples) {
    nlohmann::ordered_json cj;
    cj["check"] = c.check;
    cj["trial"] = c.trial;
    cj["detail"] = c.detail;
    cj["scenario"] = nlohmann::ordered_json::parse(c.scenario, nullptr, false);
    j["counterexamples"].push_back(std::move(cj));
  }
  j["digests"] = digests;
  j["diagnostics"] = diagnostics;
  return j.dump(2) + "\n";
}

std::string SuiteReport::to_text() const {
  std::string out = "suite " + suite + "  seed " + std::to_string(seed) + "  trials " +
                    std::to_string(trials) + "\n";
  for (const auto& c : checks) {
    char line[512];
    std::snprintf(line, sizeof line, "  %-8s %-60s pass %4zu  fail %4zu  skip %4zu  max-excess %s\n",
                  status_name(c.status()), c.name.c_str(), c.passed, c.failed, c.skipped,
                  fmt(c.max_violation).c_str());
    out += line;
    for (const auto& [reason, n] : c.skip_reasons)
      out += "           skipped " + std::to_string(n) + "x: " + reason + "\n";
  }
  for (const auto& c : counterexamples)
    out += "  counterexample: " + c.check + " (trial " + std::to_string(c.trial) + "): " + c.detail + "\n";
  out += std::string("result: ") + (ok() ? "PASS" : "FAIL") + "\n";
  return out;
}

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  gen_.seed(seq);
}

std::size_t TrialRng::below(std::size_t n) {
  if (n == 0) throw PreconditionFailed("n", "below(0)");
  std::uint64_t bound = n;
  std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod n
  for (;;) {
    std::uint64_t x = gen_();
    if (x >= threshold) return static_cast<std::size_t>(x % bound);
  }
}

std::size_t TrialRng::between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }

bool TrialRng::coin() { return below(2) == 1; }

DrivingSystem random_driving(TrialRng& rng, std::size_t max_omega) {
  std::size_t n = rng.between(1, max_omega);
  std::vector<std::size_t> theta(n);
  for (std::size_t i = 0; i < n; ++i) theta[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(theta[i - 1], theta[rng.below(i)]);
  std::vector<std::size_t> cycle(n, n), weight;
  std::vector<std::size_t> length;
  for (std::size_t i = 0; i < n; ++i) {
    if (cycle[i] != n) continue;
    std::size_t id = weight.size(), len = 0;
    for (std::size_t j = i; cycle[j] == n; j = theta[j]) {
      cycle[j] = id;
      ++len;
    }
    weight.push_back(rng.between(1, 4));
    length.push_back(len);
  }
  long long total = 0;
  for (std::size_t c = 0; c < weight.size(); ++c) total += static_cast<long long>(weight[c] * length[c]);
  std::vector<Rational> prob(n);
  for (std::size_t i = 0; i < n; ++i) prob[i] = Rational(static_cast<long long>(weight[cycle[i]]), total);
  return DrivingSystem(std::move(prob), std::move(theta));
}

SystemPtr random_system_over(TrialRng& rng, const DrivingSystem& base, const SystemShape& shape) {
  std::size_t nw = base.size();
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> fibers(nw), images(nw);
  for (std::size_t w = 0; w < nw; ++w) {
    std::size_t k = rng.between(shape.min_fiber, shape.max_fiber);
    for (std::size_t i = 0; i < k; ++i) {
      fibers[w].push_back(names.size());
      names.push_back(std::to_string(w) + "." + std::to_string(i));
    }
  }
  for (std::size_t w = 0; w < nw; ++w) {
    const auto& target = fibers[base.theta(w)];
    for (std::size_t i = 0; i < fibers[w].size(); ++i) images[w].push_back(target[rng.below(target.size())]);
  }
  std::shared_ptr<const MetricSpace> space;
  if (shape.metric) {
    std::size_t n = names.size();
    std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        d[a][b] = d[b][a] = Rational(static_cast<long long>(8 + rng.below(9)), 8);
    space = std::make_shared<const MetricSpace>(std::move(names), std::move(d));
  } else {
    space = std::make_shared<const MetricSpace>(std::move(names));
  }
  return std::make_shared<const BundleRDS>(base, space, std::move(fibers), std::move(images));
}

SystemPtr random_system(TrialRng& rng, const SystemShape& shape) {
  DrivingSystem base = random_driving(rng, shape.max_omega);
  return random_system_over(rng, base, shape);
}

RandomCover random_cover(TrialRng& rng, const SystemPtr& system, std::size_t min_elements,
                         std::size_t max_elements, std::string label) {
  const BundleRDS& rds = *system;
  std::size_t k = rng.between(min_elements, max_elements);
  std::vector<RandomSet> elems(k, empty_set(rds));
  for (auto& e : elems)
    for (std::size_t w = 0; w < rds.num_fibers(); ++w)
      for (std::size_t i = 0; i < rds.fiber_size(w); ++i)
        if (rng.coin()) e[w].insert(i);
  for (std::size_t w = 0; w < rds.num_fibers(); ++w)
    for (std::size_t i = 0; i < rds.fiber_size(w); ++i) {
      bool covered = std::any_of(elems.begin(), elems.end(), [&](const RandomSet& e) { return e[w].contains(i); });
      if (!covered) elems[rng.below(k)][w].insert(i);
    }
  return make_cover(system, std::move(elems), std::move(label));
}

RandomCover random_partition(TrialRng& rng, const SystemPtr& system, std::size_t max_cells,
                             std::string label) {
  const BundleRDS& rds = *system;
  std::size_t k = rng.between(1, max_cells);
  std::vector<RandomSet> elems(k, empty_set(rds));
  for (std::size_t w = 0; w < rds.num_fibers(); ++w)
    for (std::size_t i = 0; i < rds.fiber_size(w); ++i) elems[rng.below(k)][w].insert(i);
  return make_cover(system, std::move(elems), std::move(label));
}

FiberedMeasure random_measure(TrialRng& rng, const SystemPtr& system) {
  const BundleRDS& rds = *system;
  FiberedMeasure mu(system);
  for (std::size_t w = 0; w < rds.num_fibers(); ++w) {
    std::vector<long long> wt(rds.fiber_size(w));
    long long total = 0;
    for (auto& x : wt) total += (x = static_cast<long long>(rng.below(9)));
    if (total == 0) {
      wt[rng.below(wt.size())] = 1;
      total = 1;
    }
    for (std::size_t i = 0; i < wt.size(); ++i) mu.at(w, i) = rds.base().prob(w) * Rational(wt[i], total);
  }
  return mu;
}

SuiteReport run_cover_suite(std::uint64_t seed, std::size_t trials, const Budget& budget) {
  std::vector<Recorder> recs(trials + 2);
  parallel_for(trials, [&](std::size_t i) {
    TrialRng rng(seed, (std::uint64_t{1} << 32) | i);
    Recorder& rec = recs[i];
    try {
      SystemPtr sys = random_system(rng, {4, 1, 5, false});
      RandomCover r = random_cover(rng, sys, 2, 4, "r"), q = random_cover(rng, sys, 2, 4, "q"),
                  u = random_cover(rng, sys, 2, 4, "u"), v = random_cover(rng, sys, 2, 4, "v"),
                  x = random_cover(rng, sys, 2, 4, "x"), y = random_cover(rng, sys, 2, 4, "y");
      rec.scenario.systems.emplace("E", sys);
      add_covers(rec.scenario, {&r, &q, &u, &v, &x, &y});
      cover_checks(rec, sys, r, q, u, v, x, y, budget);
    } catch (const std::exception& e) {
      rec.fail("trial completes", e.what());
    }
  });
  adversarial_cover_trial(recs[trials], budget);
  single_point_cover_trial(recs[trials + 1], budget);
  SuiteReport report = assemble("cover", seed, recs);
  report.trials = trials;
  return report;
}

SuiteReport run_power_rule_suite(std::uint64_t seed, std::size_t trials, const Budget& budget) {
  return run_trials("power", 2, seed, trials, [&](std::size_t, TrialRng& rng, Recorder& rec) {
    SystemPtr sys = random_system(rng, {4, 1, 5, false});
    RandomCover r = random_cover(rng, sys, 2, 4, "r"), q = random_cover(rng, sys, 2, 4, "q");
    rec.scenario.systems.emplace("E", sys);
    add_covers(rec.scenario, {&r, &q});
    for (std::size_t m = 1; m <= 3; ++m)
      for (std::size_t n = 1; n <= 2; ++n) {
        std::string name = "power rule m=" + std::to_string(m) + " n=" + std::to_string(n);
        rec.guarded(name, [&] {
          PowerRuleResult p = power_rule_check(r, q, m, n, budget);
          rec.expect(name, p.holds, "[" + join_counts(p.direct) + "] vs [" + join_counts(p.via_power) + "]");
        });
      }
  });
}

SuiteReport run_set_cover_suite(std::uint64_t seed, std::size_t trials) {
  return run_trials("setcover", 3, seed, trials, [&](std::size_t, TrialRng& rng, Recorder& rec) {
    std::size_t n = rng.between(1, 12), k = rng.between(1, 8);
    std::vector<std::uint32_t> family(k);
    for (auto& f : family) f = static_cast<std::uint32_t>(rng.below(std::size_t{1} << n));
    for (std::size_t i = 0; i < n; ++i) {
      bool covered = std::any_of(family.begin(), family.end(), [&](std::uint32_t f) { return (f >> i) & 1u; });
      if (!covered) family[rng.below(k)] |= 1u << i;
    }
    std::uint32_t target = static_cast<std::uint32_t>(rng.below(std::size_t{1} << n));
    std::vector<std::string> names;
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < n; ++i) {
      names.push_back("x" + std::to_string(i));
      ids.push_back(i);
    }
    auto sys = std::make_shared<const BundleRDS>(DrivingSystem({Rational(1)}, {0}),
                                                 std::make_shared<const MetricSpace>(names),
                                                 std::vector<std::vector<std::size_t>>{ids},
                                                 std::vector<std::vector<std::size_t>>{ids});
    auto to_set = [&](std::uint32_t bits) {
      RandomSet s = empty_set(*sys);
      for (std::size_t i = 0; i < n; ++i)
        if ((bits >> i) & 1u) s[0].insert(i);
      return s;
    };
    std::vector<RandomSet> elems;
    for (auto f : family) elems.push_back(to_set(f));
    RandomCover r = make_cover(sys, elems, "r");
    RandomCover t = make_cover(sys, {to_set(target), full_set(*sys)}, "target");
    rec.scenario.systems.emplace("E", sys);
    add_covers(rec.scenario, {&r, &t});
    std::size_t got = minimal_subcover(to_set(target), r, 0);
    std::size_t want = exhaustive_cover(target, family);
    rec.expect("minimal_subcover matches exhaustive search", got == want,
               std::to_string(got) + " vs " + std::to_string(want));
  });
}

SuiteReport run_entropy_suite(std::uint64_t seed, std::size_t trials, const Budget& budget) {
  return run_trials("entropy", 4, seed, trials,
                    [&](std::size_t, TrialRng& rng, Recorder& rec) { entropy_trial(rng, rec, budget); });
}

SuiteReport run_invariant_suite(std::uint64_t seed, std::size_t trials, const Budget& budget) {
  return run_trials("invariant", 5, seed, trials, [&](std::size_t i, TrialRng& rng, Recorder& rec) {
    invariant_trial(i, rng, rec, budget);
  });
}

SuiteReport run_construction_suite(std::uint64_t seed, std::size_t trials, const Budget& budget) {
  return run_trials("construction", 6, seed, trials,
                    [&](std::size_t, TrialRng& rng, Recorder& rec) { construction_trial(rng, rec, budget); });
}

SuiteReport run_theorem_suite(const std::vector<TheoremScenario>& scenarios, std::size_t n_max,
                              const Budget& budget) {
  std::vector<Recorder> recs(scenarios.size());
  parallel_for(scenarios.size(), [&](std::size_t i) {
    try {
      theorem_trial(scenarios[i], n_max, recs[i], budget);
    } catch (const BudgetExceeded& e) {
      recs[i].skip(scenarios[i].name + ": scenario", std::string("budget exceeded: ") + e.what());
    } catch (const std::exception& e) {
      recs[i].fail(scenarios[i].name + ": scenario completes", e.what());
    }
  });
  return assemble("theorem", 0, recs);
}

SuiteReport principal_extension_check(const FactorMap& pi, std::size_t n_max, const Budget& budget,
                                      const std::string& label) {
  ValidationReport vr = validate_factor(pi);
  if (!vr.ok()) throw ValidationError("factor map: " + vr.to_string());
  std::vector<Recorder> recs(1);
  Recorder& rec = recs[0];
  const std::string pre = label.empty() ? "" : label + ": ";
  const SystemPtr& g = pi.source();
  const SystemPtr& e = pi.target();
  rec.scenario.systems.emplace("G", g);
  if (e != g) rec.scenario.systems.emplace("E", e);
  rec.scenario.factors.emplace("pi", pi);
  try {
    RandomCover ag = factor_partition(pi);
    InvariantPolytope poly = vertex_enumeration(g, budget);
    for (std::size_t k = 0; k < poly.vertices.size(); ++k) {
      EntropyEstimate b = transformation_relative_entropy(poly.vertices[k], ag, n_max);
      rec.expect(pre + "vertex relative entropy certified 0", b.certified_limit && *b.certified_limit == 0,
                 "vertex " + std::to_string(k));
      bool zero = std::all_of(b.a.begin(), b.a.end(), [](double x) { return x == 0.0; });
      std::string seq;
      for (double x : b.a) seq += (seq.empty() ? "" : ",") + fmt(x);
      rec.note(pre + "vertex " + std::to_string(k) + " b_n = [" + seq + "]" + (zero ? " all exactly 0" : ""));
    }
    std::vector<RandomCover> fam_e{singleton_partition(e), trivial_cover(e), half_partition(e)};
    std::vector<RandomCover> fam_g;
    for (const auto& c : fam_e) fam_g.push_back(preimage_cover(pi, c));
    for (std::size_t a = 0; a < fam_e.size(); ++a)
      for (std::size_t b = 0; b < fam_e.size(); ++b) {
        CountEngine ce(fam_e[a], fam_e[b], budget), cg(fam_g[a], fam_g[b], budget);
        bool same = true;
        for (std::size_t n = 1; n <= n_max; ++n) {
          auto pe = ce.profile(n).counts, pg = cg.profile(n).counts;
          same = same && pe == pg && integrate_log(*e, pe) == integrate_log(*g, pg);
        }
        rec.expect(pre + "matched-depth a_n agree for pulled-back covers", same,
                   fam_e[a].label + " | " + fam_e[b].label);
      }
    fam_g.push_back(singleton_partition(g));
    TailValue he = tail_entropy_total(fam_e, fam_e, n_max, budget);
    TailValue hg = tail_entropy_total(fam_g, fam_g, n_max, budget);
    rec.expect(pre + "h* values equal", he.certified && hg.certified && *he.certified == *hg.certified,
               "E " + fmt(he.truncated) + " G " + fmt(hg.truncated));
    rec.within(pre + "truncated h* values equal", std::abs(he.truncated - hg.truncated), kTolerance,
               "E " + fmt(he.truncated) + " G " + fmt(hg.truncated));
  } catch (const BudgetExceeded& ex) {
    rec.skip(pre + "extension", std::string("budget exceeded: ") + ex.what());
  } catch (const Error& ex) {
    rec.fail(pre + "extension check completes", ex.what());
  }
  return assemble("principal", 0, recs);
}

SuiteReport run_principal_suite(std::size_t n_max, const Budget& budget) {
  SuiteReport out;
  out.suite = "principal";
  for (const auto& ex : extension_examples()) {
    SuiteReport r = principal_extension_check(ex.pi, n_max, budget, ex.name);
    for (const auto& c : r.checks) out.checks.push_back(c);
    for (const auto& c : r.counterexamples) out.counterexamples.push_back(c);
    for (const auto& d : r.digests) out.digests.push_back(d);
    for (const auto& d : r.diagnostics) out.diagnostics.push_back(d);
    ++out.trials;
  }
  return out;
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed, std::size_t trials,
                      const Budget& budget) {
  if (name == "cover") return run_cover_suite(seed, trials, budget);
  if (name == "power") return run_power_rule_suite(seed, trials, budget);
  if (name == "setcover") return run_set_cover_suite(seed, trials);
  if (name == "entropy") return run_entropy_suite(seed, trials, budget);
  if (name == "invariant") return run_invariant_suite(seed, trials, budget);
  if (name == "construction") return run_construction_suite(seed, trials, budget);
  if (name == "theorem") return run_theorem_suite(theorem_scenarios(), 6, budget);
  if (name == "principal") return run_principal_suite(4, budget);
  throw UnknownName("unknown suite '" + name + "'");
}

}  // namespace tailent
