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

#include "tailent/invariant.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "tailent/counting.hpp"
#include "tailent/errors.hpp"
#include "tailent/measures.hpp"

namespace tailent {
namespace {

using Vec = std::vector<Rational>;

std::vector<std::size_t> successors(const BundleRDS& rds) {
  std::vector<std::size_t> succ(rds.total_points());
  for (std::size_t w = 0; w < rds.num_fibers(); ++w)
    for (std::size_t i = 0; i < rds.fiber_size(w); ++i) {
      std::size_t j = rds.next(w, i);
      if (j == kNoPoint) throw DomainError("orbit leaves E");
      succ[rds.flat_index(w, i)] = rds.flat_index(rds.base().theta(w), j);
    }
  return succ;
}

// cycle_of[p] = index into `cycles` of the cycle the orbit of p falls into.
struct CycleStructure {
  std::vector<std::vector<std::size_t>> cycles;
  std::vector<std::size_t> cycle_of;
};

CycleStructure cycle_structure(const std::vector<std::size_t>& succ) {
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::size_t n = succ.size();
  CycleStructure cs;
  cs.cycle_of.assign(n, kUnset);
  std::vector<std::size_t> visit(n, kUnset);  // walk id that first visited p
  for (std::size_t start = 0; start < n; ++start) {
    if (cs.cycle_of[start] != kUnset) continue;
    std::vector<std::size_t> path;
    std::size_t p = start;
    while (cs.cycle_of[p] == kUnset && visit[p] != start) {
      visit[p] = start;
      path.push_back(p);
      p = succ[p];
    }
    std::size_t id;
    if (cs.cycle_of[p] != kUnset) {
      id = cs.cycle_of[p];
    } else {
      // p closes a new cycle on the current path.
      id = cs.cycles.size();
      std::vector<std::size_t> cyc;
      std::size_t q = p;
      do {
        cyc.push_back(q);
        q = succ[q];
      } while (q != p);
      std::sort(cyc.begin(), cyc.end());
      cs.cycles.push_back(std::move(cyc));
    }
    for (std::size_t q : path) cs.cycle_of[q] = id;
  }
  return cs;
}

Vec null_space_row(std::size_t cols) { return Vec(cols, Rational(0)); }

// Basis of {y : A y = 0} by exact row reduction.
std::vector<Vec> null_space(std::vector<Vec> a, std::size_t cols) {
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[r], a[piv]);
    Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t k = 0; k < cols; ++k) a[i][k] -= f * a[r][k];
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec v = null_space_row(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -a[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

void normalize(Vec& v) {
  for (const auto& x : v)
    if (x != 0) {
      Rational s = abs_of(x);
      for (auto& y : v) y /= s;
      return;
    }
}

struct Ray {
  Vec v;
  std::vector<bool> zero;  // zero[k]: v satisfies constraint k with equality
};

// Extreme rays of {y : y in span(lineality), y >= 0} by incremental double
// description with the combinatorial adjacency test. nullopt if the number
// of rays passes `cap`.
std::optional<std::vector<Vec>> double_description(std::vector<Vec> lineality, std::size_t dim,
                                                   std::size_t cap) {
  std::vector<Ray> rays;
  for (std::size_t j = 0; j < dim; ++j) {
    auto lit = std::find_if(lineality.begin(), lineality.end(),
                            [j](const Vec& l) { return l[j] != 0; });
    if (lit != lineality.end()) {
      Vec l0 = *lit;
      lineality.erase(lit);
      if (l0[j] < 0)
        for (auto& x : l0) x = -x;
      for (auto& l : lineality) {
        if (l[j] == 0) continue;
        Rational f = l[j] / l0[j];
        for (std::size_t k = 0; k < dim; ++k) l[k] -= f * l0[k];
      }
      for (auto& r : rays) {
        if (r.v[j] != 0) {
          Rational f = r.v[j] / l0[j];
          for (std::size_t k = 0; k < dim; ++k) r.v[k] -= f * l0[k];
          normalize(r.v);
        }
        r.zero[j] = true;
      }
      Ray nr{l0, std::vector<bool>(dim, false)};
      for (std::size_t k = 0; k < j; ++k) nr.zero[k] = true;
      normalize(nr.v);
      rays.push_back(std::move(nr));
      continue;
    }
    std::vector<std::size_t> pos, neg;
    std::vector<Ray> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (rays[i].v[j] > 0) pos.push_back(i);
      else if (rays[i].v[j] < 0) neg.push_back(i);
    }
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (rays[i].v[j] < 0) continue;
      Ray r = rays[i];
      if (r.v[j] == 0) r.zero[j] = true;
      next.push_back(std::move(r));
    }
    for (std::size_t a : pos)
      for (std::size_t b : neg) {
        std::vector<bool> common(dim, false);
        for (std::size_t k = 0; k < j; ++k) common[k] = rays[a].zero[k] && rays[b].zero[k];
        bool adjacent = true;
        for (std::size_t c = 0; c < rays.size() && adjacent; ++c) {
          if (c == a || c == b) continue;
          bool contains = true;
          for (std::size_t k = 0; k < j && contains; ++k)
            if (common[k] && !rays[c].zero[k]) contains = false;
          if (contains) adjacent = false;
        }
        if (!adjacent) continue;
        const Rational& pa = rays[a].v[j];
        const Rational& nb = rays[b].v[j];
        Ray r{Vec(dim), common};
        for (std::size_t k = 0; k < dim; ++k) r.v[k] = pa * rays[b].v[k] - nb * rays[a].v[k];
        r.v[j] = 0;
        r.zero[j] = true;
        normalize(r.v);
        next.push_back(std::move(r));
      }
    rays = std::move(next);
    if (rays.size() > cap) return std::nullopt;
  }
  if (!lineality.empty()) throw Error("invariant cone is not pointed");
  std::vector<Vec> out;
  for (auto& r : rays) out.push_back(std::move(r.v));
  return out;
}

// Vertices from homogenized rays (last coordinate t > 0).
std::vector<Vec> dehomogenize(const std::vector<Vec>& rays) {
  std::vector<Vec> out;
  for (const auto& r : rays) {
    const Rational& t = r.back();
    if (t <= 0) continue;
    Vec x(r.begin(), r.end() - 1);
    for (auto& v : x) v /= t;
    out.push_back(std::move(x));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

constexpr std::size_t kFullRayCap = 20000;

std::size_t smallest_by_name(const BundleRDS& rds, std::size_t omega, const PointSet& s) {
  auto m = s.members();
  return *std::min_element(m.begin(), m.end(), [&](std::size_t a, std::size_t b) {
    return rds.point_name(omega, a) < rds.point_name(omega, b);
  });
}

}  // namespace

FiberedMeasure push_forward_step(const FiberedMeasure& mu) {
  const BundleRDS& rds = *mu.system();
  std::vector<std::size_t> succ = successors(rds);
  std::vector<Rational> w(succ.size(), Rational(0));
  for (std::size_t p = 0; p < succ.size(); ++p) w[succ[p]] += mu.weights()[p];
  return FiberedMeasure(mu.system(), std::move(w));
}

Rational invariance_defect(const FiberedMeasure& mu) {
  return l1_distance(push_forward_step(mu), mu);
}

FiberedMeasure cesaro_average(const FiberedMeasure& nu, std::size_t n) {
  if (n == 0) throw PreconditionFailed("n", "Cesaro average needs n >= 1");
  std::vector<std::size_t> succ = successors(*nu.system());
  std::vector<Rational> acc(succ.size(), Rational(0));
  std::vector<Rational> cur = nu.weights();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < cur.size(); ++p) acc[p] += cur[p];
    std::vector<Rational> nxt(cur.size(), Rational(0));
    for (std::size_t p = 0; p < cur.size(); ++p) nxt[succ[p]] += cur[p];
    cur = std::move(nxt);
  }
  for (auto& a : acc) a /= Rational(n);
  return FiberedMeasure(nu.system(), std::move(acc));
}

FiberedMeasure cesaro_limit(const FiberedMeasure& nu) {
  CycleStructure cs = cycle_structure(successors(*nu.system()));
  std::vector<Rational> w(cs.cycle_of.size(), Rational(0));
  for (std::size_t p = 0; p < w.size(); ++p) {
    const Rational& m = nu.weights()[p];
    if (m == 0) continue;
    const auto& cyc = cs.cycles[cs.cycle_of[p]];
    Rational share = m / Rational(cyc.size());
    for (std::size_t q : cyc) w[q] += share;
  }
  return FiberedMeasure(nu.system(), std::move(w));
}

LiftResult lift_invariant(const FactorMap& pi, const FiberedMeasure& mu) {
  if (mu.system() != pi.target()) throw IncompatibleSystems("measure is not on the factor's target");
  if (invariance_defect(mu) != 0)
    throw PreconditionFailed("mu-invariant", "measure to lift is not Theta-invariant");
  const BundleRDS& g = *pi.source();
  FiberedMeasure nu(pi.source());
  for (std::size_t w = 0; w < g.num_fibers(); ++w) {
    std::vector<std::size_t> fiber_count(pi.target()->fiber_size(w), 0);
    for (std::size_t i = 0; i < g.fiber_size(w); ++i) ++fiber_count[pi(w, i)];
    for (std::size_t i = 0; i < g.fiber_size(w); ++i)
      nu.at(w, i) = mu.at(w, pi(w, i)) / Rational(fiber_count[pi(w, i)]);
  }
  LiftResult out;
  out.initial = nu;
  out.lifted = cesaro_limit(nu);
  out.invariant = invariance_defect(out.lifted) == 0;
  out.projects = pushforward_measure(pi, out.lifted) == mu;
  return out;
}

InvariantPolytope vertex_enumeration(const SystemPtr& system, const Budget& budget) {
  const BundleRDS& rds = *system;
  std::size_t d = rds.total_points();
  if (d > budget.vertex_max_points)
    throw BudgetExceeded("vertex enumeration: |E| = " + std::to_string(d) + " exceeds budget " +
                             std::to_string(budget.vertex_max_points),
                         0);
  std::vector<std::size_t> succ = successors(rds);
  InvariantPolytope poly;
  poly.system = system;
  // Homogenized cone in (x, t): marginal rows and invariance rows.
  std::vector<Vec> rows;
  for (std::size_t w = 0; w < rds.num_fibers(); ++w) {
    Vec row(d + 1, Rational(0));
    for (std::size_t i = 0; i < rds.fiber_size(w); ++i) row[rds.flat_index(w, i)] = 1;
    row[d] = -rds.base().prob(w);
    rows.push_back(std::move(row));
  }
  for (std::size_t q = 0; q < d; ++q) {
    Vec row(d + 1, Rational(0));
    for (std::size_t p = 0; p < d; ++p)
      if (succ[p] == q) row[p] += 1;
    row[q] -= 1;
    rows.push_back(std::move(row));
  }
  std::vector<Vec> vertices;
  auto rays = double_description(null_space(rows, d + 1), d + 1, kFullRayCap);
  if (rays) {
    vertices = dehomogenize(*rays);
    poly.method = "full";
  } else {
    // Invariant measures are constant on cycles and vanish elsewhere; rerun
    // on one variable per cycle.
    CycleStructure cs = cycle_structure(succ);
    std::size_t nc = cs.cycles.size();
    std::vector<Vec> crow;
    for (std::size_t w = 0; w < rds.num_fibers(); ++w) {
      Vec row(nc + 1, Rational(0));
      for (std::size_t c = 0; c < nc; ++c)
        for (std::size_t p : cs.cycles[c])
          if (p >= rds.fiber_offset(w) && p < rds.fiber_offset(w) + rds.fiber_size(w)) row[c] += 1;
      row[nc] = -rds.base().prob(w);
      crow.push_back(std::move(row));
    }
    auto crays = double_description(null_space(crow, nc + 1), nc + 1, static_cast<std::size_t>(-1));
    for (const auto& c : dehomogenize(*crays)) {
      Vec x(d, Rational(0));
      for (std::size_t k = 0; k < nc; ++k)
        for (std::size_t p : cs.cycles[k]) x[p] = c[k];
      vertices.push_back(std::move(x));
    }
    std::sort(vertices.begin(), vertices.end());
    poly.method = "cycles";
  }
  for (auto& v : vertices) poly.vertices.emplace_back(system, std::move(v));
  return poly;
}

HullCertificate convex_hull_membership(const InvariantPolytope& polytope,
                                       const FiberedMeasure& mu) {
  if (mu.system() != polytope.system) throw IncompatibleSystems("measure on another system");
  std::size_t k = polytope.vertices.size();
  std::size_t d = mu.weights().size();
  std::size_t m = d + 1;
  std::size_t cols = k + m;
  // Rows: sum_j lambda_j v_j(p) + a_p = mu(p); sum_j lambda_j + a_d = 1.
  std::vector<Vec> t(m, Vec(cols + 1, Rational(0)));
  for (std::size_t p = 0; p < d; ++p) {
    for (std::size_t j = 0; j < k; ++j) t[p][j] = polytope.vertices[j].weights()[p];
    t[p][k + p] = 1;
    t[p][cols] = mu.weights()[p];
  }
  for (std::size_t j = 0; j < k; ++j) t[d][j] = 1;
  t[d][k + d] = 1;
  t[d][cols] = 1;
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = k + i;
  Vec z(cols + 1, Rational(0));
  for (std::size_t j = 0; j <= cols; ++j) {
    if (j >= k && j < cols) continue;
    for (std::size_t i = 0; i < m; ++i) z[j] -= t[i][j];
  }
  for (;;) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (z[j] < 0) {
        enter = j;
        break;
      }
    if (enter == cols) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][cols] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded direction; cannot happen in phase one
    Rational inv = 1 / t[leave][enter];
    for (auto& x : t[leave]) x *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rational f = t[i][enter];
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
    }
    Rational f = z[enter];
    for (std::size_t j = 0; j <= cols; ++j) z[j] -= f * t[leave][j];
    basis[leave] = enter;
  }
  HullCertificate out;
  if (z[cols] != 0) return out;
  out.weights.assign(k, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < k) out.weights[basis[i]] = t[i][cols];
  // Check the certificate exactly.
  Vec sum(d, Rational(0));
  Rational total = 0;
  for (std::size_t j = 0; j < k; ++j) {
    total += out.weights[j];
    for (std::size_t p = 0; p < d; ++p) sum[p] += out.weights[j] * polytope.vertices[j].weights()[p];
  }
  out.member = total == 1 && sum == mu.weights();
  return out;
}

Rational bowen_distance(const BundleRDS& rds, std::size_t omega, std::size_t x, std::size_t y,
                        std::size_t n, const std::vector<Rational>& delta) {
  Rational best = 0;
  State a{omega, x}, b{omega, y};
  for (std::size_t k = 0; k < n; ++k) {
    Rational r = rds.distance(a.omega, a.point, b.point) / delta[a.omega];
    if (r > best) best = r;
    a = skew_iterate(rds, a, 1);
    b = skew_iterate(rds, b, 1);
  }
  return best;
}

PointSet bowen_ball(const BundleRDS& rds, std::size_t omega, std::size_t y, std::size_t n,
                    const std::vector<Rational>& delta) {
  if (!rds.has_metric()) throw PreconditionFailed("metric", "Bowen balls need a metric");
  if (delta.size() != rds.num_fibers()) throw PreconditionFailed("delta", "one radius per fiber");
  PointSet ball(rds.fiber_size(omega));
  for (std::size_t x = 0; x < rds.fiber_size(omega); ++x) {
    State a{omega, x}, b{omega, y};
    bool inside = true;
    for (std::size_t k = 0; k < n && inside; ++k) {
      if (!(rds.distance(a.omega, a.point, b.point) < delta[a.omega])) inside = false;
      a = skew_iterate(rds, a, 1);
      b = skew_iterate(rds, b, 1);
    }
    if (inside) ball.insert(x);
  }
  return ball;
}

std::optional<Rational> lebesgue_number(const BundleRDS& rds, std::size_t omega,
                                        const std::vector<PointSet>& traces) {
  std::size_t size = rds.fiber_size(omega);
  for (const auto& t : traces)
    if (t.count() == size) return std::nullopt;
  std::optional<Rational> eta;
  for (std::size_t x = 0; x < size; ++x) {
    Rational best = 0;
    for (const auto& t : traces) {
      if (!t.contains(x)) continue;
      std::optional<Rational> gap;
      for (std::size_t y = 0; y < size; ++y)
        if (!t.contains(y)) {
          const Rational& d = rds.distance(omega, x, y);
          if (!gap || d < *gap) gap = d;
        }
      best = std::max(best, *gap);
    }
    if (!eta || best < *eta) eta = best;
  }
  return eta;
}

SeparatedEmpirical separated_empirical(const RandomCover& p, const RandomCover& q, std::size_t n,
                                       const std::vector<Rational>& delta, const Budget& budget) {
  if (p.system != q.system) throw IncompatibleSystems("covers live on different systems");
  const SystemPtr& sys = p.system;
  const BundleRDS& rds = *sys;
  if (!rds.has_metric()) throw PreconditionFailed("metric", "separated sets need a metric");
  if (n == 0) throw PreconditionFailed("n", "n must be >= 1");
  if (delta.size() != rds.num_fibers()) throw PreconditionFailed("delta", "one radius per fiber");
  for (const auto& d : delta)
    if (d <= 0) throw PreconditionFailed("delta", "radii must be positive");

  SeparatedEmpirical out;
  out.n = n;
  out.delta = delta;
  out.pair = pair_system(sys);
  IteratedTraces pt(p, budget), qt(q, budget);
  for (std::size_t w = 0; w < rds.num_fibers(); ++w) {
    SeparatedFiber f;
    const auto& family = pt.at(w, n);
    for (const auto& t : qt.at(w, n)) {
      std::size_t c = min_cover_size(t, family);
      if (f.chosen.universe() == 0 || c > f.count) {
        f.count = c;
        f.chosen = t;
      }
    }
    f.anchor = smallest_by_name(rds, w, f.chosen);
    std::vector<std::size_t> order = f.chosen.members();
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return rds.point_name(w, a) < rds.point_name(w, b);
    });
    for (std::size_t y : order) {
      bool separated = std::all_of(f.separated.begin(), f.separated.end(), [&](std::size_t z) {
        return bowen_distance(rds, w, y, z, n, delta) >= 1;
      });
      if (separated) f.separated.push_back(y);
    }
    f.gate = true;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t wk = rds.base().iterate(w, k);
      auto eta = lebesgue_number(rds, wk, fiber_traces(p, wk));
      if (eta && delta[wk] > *eta) f.gate = false;
    }
    PointSet reached(rds.fiber_size(w));
    for (std::size_t y : f.separated) reached |= bowen_ball(rds, w, y, n, delta);
    f.spanning = f.chosen.subset_of(reached);
    f.card_ok = !f.gate || f.separated.size() >= f.count;
    out.fibers.push_back(std::move(f));
  }

  const BundleRDS& pr = *out.pair;
  out.sigma = FiberedMeasure(out.pair);
  for (std::size_t w = 0; w < rds.num_fibers(); ++w) {
    const auto& f = out.fibers[w];
    std::size_t ne = rds.fiber_size(w);
    Rational share = rds.base().prob(w) / Rational(f.separated.size());
    for (std::size_t y : f.separated) out.sigma.at(w, f.anchor * ne + y) = share;
  }
  out.mu_n = cesaro_average(out.sigma, n);
  out.mu_q = cesaro_limit(out.mu_n);
  out.mu_n_defect = invariance_defect(out.mu_n);

  auto supported = [&](const FiberedMeasure& m) {
    for (std::size_t w = 0; w < pr.num_fibers(); ++w) {
      std::size_t ne = rds.fiber_size(w);
      for (std::size_t k = 0; k < pr.fiber_size(w); ++k) {
        if (m.at(w, k) == 0) continue;
        std::size_t x = k / ne, y = k % ne;
        bool inside = std::any_of(q.elements.begin(), q.elements.end(), [&](const RandomSet& e) {
          return e[w].contains(x) && e[w].contains(y);
        });
        if (!inside) return false;
      }
    }
    return true;
  };
  out.mu_n_support_ok = supported(out.mu_n);
  out.mu_q_support_ok = supported(out.mu_q);

  if (is_partition(p)) {
    std::vector<std::size_t> cells = itinerary_labels(rds, atom_labels(p), n);
    out.eq1_applicable = true;
    for (std::size_t w = 0; w < rds.num_fibers() && out.eq1_applicable; ++w) {
      std::vector<std::size_t> seen;
      for (std::size_t y : out.fibers[w].separated) {
        std::size_t c = cells[rds.flat_index(w, y)];
        if (std::find(seen.begin(), seen.end(), c) != seen.end()) out.eq1_applicable = false;
        seen.push_back(c);
      }
    }
    if (out.eq1_applicable) {
      std::vector<std::size_t> second(pr.total_points());
      for (std::size_t w = 0; w < pr.num_fibers(); ++w) {
        std::size_t ne = rds.fiber_size(w);
        for (std::size_t k = 0; k < pr.fiber_size(w); ++k)
          second[pr.flat_index(w, k)] = cells[rds.flat_index(w, k % ne)];
      }
      double h = entropy_of_labels(out.sigma, second,
                                   atom_labels(first_coordinate_partition(out.pair)));
      double expected = 0;
      for (std::size_t w = 0; w < rds.num_fibers(); ++w)
        expected += to_double(rds.base().prob(w)) *
                    std::log(static_cast<double>(out.fibers[w].separated.size()));
      out.eq1_holds = std::abs(h - expected) <= kTolerance;
    }
  }
  return out;
}

DiagonalMeasure diagonal_measure(const std::vector<RandomCover>& q_chain,
                                 const std::vector<RandomCover>& p_chain, std::size_t n,
                                 const std::vector<Rational>& delta, std::size_t n_entropy,
                                 const Budget& budget) {
  if (q_chain.empty() || q_chain.size() != p_chain.size())
    throw PreconditionFailed("chain", "cover chains must be nonempty and of equal length");
  for (std::size_t i = 1; i < q_chain.size(); ++i)
    if (!refines(q_chain[i], q_chain[i - 1]))
      throw PreconditionFailed("chain", "element " + std::to_string(i) + " does not refine its predecessor");
  DiagonalMeasure out;
  for (std::size_t i = 0; i < q_chain.size(); ++i)
    out.stages.push_back(separated_empirical(p_chain[i], q_chain[i], n, delta, budget));
  const SeparatedEmpirical& last = out.stages.back();
  out.m = cesaro_limit(last.mu_q);
  out.invariant = invariance_defect(out.m) == 0;
  const RandomCover& qlast = q_chain.back();
  const BundleRDS& rds = *qlast.system;
  out.diagonal_expected = is_partition(qlast);
  for (std::size_t w = 0; w < rds.num_fibers() && out.diagonal_expected; ++w)
    for (const auto& t : fiber_traces(qlast, w))
      if (t.count() != 1) out.diagonal_expected = false;
  const BundleRDS& pr = *last.pair;
  out.on_diagonal = true;
  for (std::size_t w = 0; w < pr.num_fibers(); ++w) {
    std::size_t ne = rds.fiber_size(w);
    for (std::size_t k = 0; k < pr.fiber_size(w); ++k)
      if (out.m.at(w, k) != 0 && k / ne != k % ne) out.on_diagonal = false;
  }
  out.b = transformation_relative_entropy(out.m, first_coordinate_partition(last.pair), n_entropy).a;
  out.b_zero = std::all_of(out.b.begin(), out.b.end(), [](double v) { return v == 0.0; });
  return out;
}

}  // namespace tailent
