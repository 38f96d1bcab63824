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

#include "tailent/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "tailent/counting.hpp"
#include "tailent/errors.hpp"
#include "tailent/invariant.hpp"

namespace tailent {
namespace {

std::vector<std::size_t> flat_successor(const BundleRDS& rds) {
  std::vector<std::size_t> succ(rds.total_points());
  for (std::size_t w = 0; w < rds.num_fibers(); ++w)
    for (std::size_t i = 0; i < rds.fiber_size(w); ++i) {
      std::size_t j = rds.next(w, i);
      if (j == kNoPoint) throw DomainError("orbit leaves E");
      succ[rds.flat_index(w, i)] = rds.flat_index(rds.base().theta(w), j);
    }
  return succ;
}

double entropy_term(const Rational& joint, const Rational& cond) {
  if (joint == 0 || joint == cond) return 0.0;
  return -to_double(joint) * std::log(to_double(joint / cond));
}

double log_bound(const BundleRDS& rds) {
  return std::log(static_cast<double>(std::max<std::size_t>(rds.total_points(), 1)));
}

}  // namespace

std::vector<std::size_t> atom_labels(const RandomCover& partition) {
  require_partition(partition);
  const BundleRDS& rds = *partition.system;
  std::vector<std::size_t> raw(rds.total_points(), 0);
  for (std::size_t e = 0; e < partition.size(); ++e)
    for (std::size_t w = 0; w < rds.num_fibers(); ++w)
      for (std::size_t i : partition.elements[e][w].members()) raw[rds.flat_index(w, i)] = e;
  std::vector<std::size_t> zeros(raw.size(), 0);
  return join_labels(raw, zeros);
}

std::vector<std::size_t> join_labels(const std::vector<std::size_t>& a,
                                     const std::vector<std::size_t>& b) {
  if (a.size() != b.size()) throw IncompatibleSystems("label vectors differ in length");
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> ids;
  std::vector<std::size_t> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    auto [it, inserted] = ids.try_emplace({a[k], b[k]}, ids.size());
    out[k] = it->second;
  }
  return out;
}

std::vector<std::size_t> itinerary_labels(const BundleRDS& rds, const std::vector<std::size_t>& r,
                                          std::size_t n) {
  if (n == 0) throw PreconditionFailed("depth", "itinerary length must be >= 1");
  std::vector<std::size_t> succ = flat_successor(rds);
  std::vector<std::size_t> labels = join_labels(r, std::vector<std::size_t>(r.size(), 0));
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<std::size_t> shifted(labels.size());
    for (std::size_t p = 0; p < labels.size(); ++p) shifted[p] = labels[succ[p]];
    labels = join_labels(r, shifted);
  }
  return labels;
}

bool labels_refine(const std::vector<std::size_t>& fine, const std::vector<std::size_t>& coarse) {
  std::map<std::size_t, std::size_t> seen;
  for (std::size_t k = 0; k < fine.size(); ++k) {
    auto [it, inserted] = seen.try_emplace(fine[k], coarse[k]);
    if (!inserted && it->second != coarse[k]) return false;
  }
  return true;
}

bool sigma_refines(const SigmaAlgebra& fine, const SigmaAlgebra& coarse) {
  if (fine.system != coarse.system) throw IncompatibleSystems("sigma-algebras on different systems");
  return labels_refine(atom_labels(fine), atom_labels(coarse));
}

bool sigma_backward_invariant(const SigmaAlgebra& s) {
  std::vector<std::size_t> labels = atom_labels(s);
  std::vector<std::size_t> succ = flat_successor(*s.system);
  std::vector<std::size_t> image(labels.size());
  for (std::size_t p = 0; p < labels.size(); ++p) image[p] = labels[succ[p]];
  return labels_refine(labels, image);
}

std::vector<std::optional<std::vector<Rational>>> disintegrate(const FiberedMeasure& mu) {
  const BundleRDS& rds = *mu.system();
  std::vector<std::optional<std::vector<Rational>>> out(rds.num_fibers());
  for (std::size_t w = 0; w < rds.num_fibers(); ++w) {
    const Rational& p = rds.base().prob(w);
    if (p == 0) continue;
    std::vector<Rational> v;
    for (std::size_t i = 0; i < rds.fiber_size(w); ++i) v.push_back(mu.at(w, i) / p);
    out[w] = std::move(v);
  }
  return out;
}

double entropy_of_labels(const FiberedMeasure& mu, const std::vector<std::size_t>& r,
                         const std::vector<std::size_t>& s) {
  std::vector<std::size_t> joint = join_labels(s, r);
  std::size_t nj = 0, ns = 0;
  for (std::size_t v : joint) nj = std::max(nj, v + 1);
  for (std::size_t v : s) ns = std::max(ns, v + 1);
  std::vector<Rational> mj(nj, Rational(0)), ms(ns, Rational(0));
  std::vector<std::size_t> s_of(nj, 0);
  const auto& w = mu.weights();
  for (std::size_t p = 0; p < w.size(); ++p) {
    mj[joint[p]] += w[p];
    ms[s[p]] += w[p];
    s_of[joint[p]] = s[p];
  }
  double h = 0;
  for (std::size_t j = 0; j < nj; ++j) h += entropy_term(mj[j], ms[s_of[j]]);
  return h;
}

double conditional_entropy(const FiberedMeasure& mu, const RandomCover& r, const SigmaAlgebra& s) {
  if (r.system != mu.system() || s.system != mu.system())
    throw IncompatibleSystems("measure and partitions on different systems");
  return entropy_of_labels(mu, atom_labels(r), atom_labels(s));
}

double fiber_entropy_integral(const FiberedMeasure& mu, const RandomCover& r) {
  std::vector<std::size_t> labels = atom_labels(r);
  const BundleRDS& rds = *mu.system();
  auto parts = disintegrate(mu);
  double total = 0;
  for (std::size_t w = 0; w < rds.num_fibers(); ++w) {
    if (!parts[w]) continue;
    std::map<std::size_t, Rational> cell;
    for (std::size_t i = 0; i < rds.fiber_size(w); ++i)
      cell[labels[rds.flat_index(w, i)]] += (*parts[w])[i];
    double h = 0;
    for (const auto& [label, mass] : cell) h += entropy_term(mass, Rational(1));
    total += to_double(rds.base().prob(w)) * h;
  }
  return total;
}

EntropyEstimate relative_entropy_sequence(const FiberedMeasure& mu, const RandomCover& r,
                                          const SigmaAlgebra& s, std::size_t n_max) {
  if (n_max == 0) throw PreconditionFailed("n_max", "n_max must be >= 1");
  if (invariance_defect(mu) != 0)
    throw PreconditionFailed("mu-invariant", "measure is not Theta-invariant");
  if (!sigma_backward_invariant(s))
    throw PreconditionFailed("sigma-invariant", "Theta^-1 S is not coarser than S");
  if (r.system != mu.system() || s.system != mu.system())
    throw IncompatibleSystems("measure and partitions on different systems");
  const BundleRDS& rds = *mu.system();
  std::vector<std::size_t> rl = atom_labels(r);
  std::vector<std::size_t> sl = atom_labels(s);
  std::vector<std::size_t> succ = flat_successor(rds);
  std::vector<std::size_t> labels = rl;
  std::vector<double> b;
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (n > 1) {
      std::vector<std::size_t> shifted(labels.size());
      for (std::size_t p = 0; p < labels.size(); ++p) shifted[p] = labels[succ[p]];
      labels = join_labels(rl, shifted);
    }
    b.push_back(entropy_of_labels(mu, labels, sl));
  }
  EntropyEstimate est = estimate_from_sequence(std::move(b), r.label + " | " + s.label);
  double bound = log_bound(rds);
  if (std::all_of(est.a.begin(), est.a.end(), [&](double v) { return v <= bound + kTolerance; })) {
    est.certified_limit = 0.0;
    est.certificate = "b_n bounded by log |E|";
  }
  return est;
}

EntropyEstimate transformation_relative_entropy(const FiberedMeasure& mu, const SigmaAlgebra& s,
                                                std::size_t n_max) {
  return relative_entropy_sequence(mu, singleton_partition(mu.system()), s, n_max);
}

DefectReport defect(const FiberedMeasure& m, const SigmaAlgebra& s,
                    std::span<const FiberedMeasure> family, const Rational& epsilon,
                    std::size_t n_max) {
  EntropyEstimate base = transformation_relative_entropy(m, s, n_max);
  DefectReport out;
  double best_trunc = -std::numeric_limits<double>::infinity();
  double best_asym = -std::numeric_limits<double>::infinity();
  for (const auto& mu : family) {
    if (invariance_defect(mu) != 0)
      throw PreconditionFailed("mu-invariant", "family member is not Theta-invariant");
    if (l1_distance(mu, m) > epsilon) continue;
    ++out.neighbors;
    EntropyEstimate e = transformation_relative_entropy(mu, s, n_max);
    best_trunc = std::max(best_trunc, e.ratios.back() - base.ratios.back());
    if (e.certified_limit && base.certified_limit)
      best_asym = std::max(best_asym, *e.certified_limit - *base.certified_limit);
  }
  if (out.neighbors == 0) {
    out.empty_neighborhood = true;
    return out;
  }
  out.raw_truncated = best_trunc;
  out.truncated = std::max(0.0, best_trunc);
  if (best_asym > -std::numeric_limits<double>::infinity()) {
    out.raw_asymptotic = best_asym;
    out.asymptotic = std::max(0.0, best_asym);
  }
  return out;
}

SlackCheck lemlog_check(const FiberedMeasure& mu, const RandomCover& r, const RandomCover& q) {
  SlackCheck c;
  SigmaAlgebra cond = join(q, fiber_partition(mu.system()));
  c.left = conditional_entropy(mu, r, cond);
  c.right = integrated_log_count(r, q, 1);
  c.slack = c.right - c.left;
  c.holds = c.slack >= -kTolerance;
  return c;
}

SlackCheck lem3_check(const FiberedMeasure& mu, const RandomCover& r, const RandomCover& q,
                      const SigmaAlgebra& s) {
  SlackCheck c;
  c.left = conditional_entropy(mu, r, s);
  c.right = conditional_entropy(mu, q, s) + integrated_log_count(r, q, 1);
  c.slack = c.right - c.left;
  c.holds = c.slack >= -kTolerance;
  return c;
}

Lem415Check lem415_bound_check(const FiberedMeasure& mu, const RandomCover& p,
                               const RandomCover& q, const Rational& delta,
                               const Budget& budget) {
  if (delta >= 1) throw PreconditionFailed("delta", "the bound needs 0 < delta < 1");
  Lem415Check c;
  c.containment = delta_contains(p, q, mu, delta, budget);
  if (!c.containment.contains)
    throw PreconditionFailed("delta-contains", "p does not delta-contain q; optimum " +
                                                   to_string(c.containment.optimum));
  c.entropy = conditional_entropy(mu, q, p);
  double d = to_double(delta);
  double k = static_cast<double>(q.size());
  double a = -d * std::log(d);
  double b = (1 - d) * std::log(1 - d);
  c.corrected_bound = a - b + d * std::log(k);
  c.printed_bound = a + b + d * std::log(k);
  c.holds_corrected = c.entropy <= c.corrected_bound + kTolerance;
  c.holds_printed = c.entropy <= c.printed_bound + kTolerance;
  return c;
}

FiltrationCheck filtration_limit_check(const FiberedMeasure& mu, const RandomCover& r,
                                       std::span<const SigmaAlgebra> chain,
                                       const SigmaAlgebra& target) {
  if (chain.empty()) throw PreconditionFailed("filtration", "chain is empty");
  for (std::size_t i = 1; i < chain.size(); ++i)
    if (!sigma_refines(chain[i], chain[i - 1]))
      throw PreconditionFailed("filtration", "element " + std::to_string(i) +
                                                 " does not refine its predecessor");
  std::vector<std::size_t> last = atom_labels(chain.back());
  std::vector<std::size_t> tgt = atom_labels(target);
  if (!labels_refine(last, tgt) || !labels_refine(tgt, last))
    throw PreconditionFailed("filtration", "last element does not generate the target");
  FiltrationCheck c;
  std::vector<std::size_t> rl = atom_labels(r);
  for (const auto& a : chain) c.values.push_back(entropy_of_labels(mu, rl, atom_labels(a)));
  c.target_value = entropy_of_labels(mu, rl, tgt);
  for (std::size_t i = 1; i < c.values.size(); ++i)
    if (c.values[i] > c.values[i - 1] + kTolerance) c.monotone = false;
  c.limit_matches = c.values.back() == c.target_value;
  return c;
}

FiberedMeasure pushforward_measure(const FactorMap& pi, const FiberedMeasure& mu) {
  if (mu.system() != pi.source()) throw IncompatibleSystems("measure is not on the factor's source");
  FiberedMeasure out(pi.target());
  const BundleRDS& g = *pi.source();
  for (std::size_t w = 0; w < g.num_fibers(); ++w)
    for (std::size_t i = 0; i < g.fiber_size(w); ++i) out.at(w, pi(w, i)) += mu.at(w, i);
  return out;
}

}  // namespace tailent
