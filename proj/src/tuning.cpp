// Copyright 2026 The FGO Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "fgo/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "fgo/error.hpp"

namespace fgo {

WeightName parse_weight_name(std::string_view s) {
  if (s == "alphaRef") return WeightName::alpha_ref;
  if (s == "alphaSA") return WeightName::alpha_sa;
  if (s == "alphaTJ") return WeightName::alpha_tj;
  throw ArgumentError("unknown weight name: " + std::string(s));
}

std::string_view to_string(WeightName w) {
  switch (w) {
    case WeightName::alpha_ref: return "alphaRef";
    case WeightName::alpha_sa: return "alphaSA";
    case WeightName::alpha_tj: return "alphaTJ";
  }
  return "?";
}

namespace {

// Points are integer compositions of `units` into names.size() parts; the
// weight of part i is parts[i] / units.
using Lattice = std::vector<long>;

ModelWeights to_weights(const Lattice& p, long units, std::span<const WeightName> names, const ModelWeights& base) {
  ModelWeights w = base;
  w.alpha_ref = w.alpha_sa = w.alpha_tj = 0.0;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const double v = static_cast<double>(p[i]) / static_cast<double>(units);
    switch (names[i]) {
      case WeightName::alpha_ref: w.alpha_ref = v; break;
      case WeightName::alpha_sa: w.alpha_sa = v; break;
      case WeightName::alpha_tj: w.alpha_tj = v; break;
    }
  }
  return w;
}

void compositions(std::size_t parts, long units, Lattice& cur, std::vector<Lattice>& out) {
  if (cur.size() + 1 == parts) {
    cur.push_back(units);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (long v = 0; v <= units; ++v) {
    cur.push_back(v);
    compositions(parts, units - v, cur, out);
    cur.pop_back();
  }
}

void neighbourhood(const Lattice& centre, long units, std::size_t i, Lattice& cur, std::vector<Lattice>& out) {
  if (i + 1 == centre.size()) {
    long used = 0;
    for (long v : cur) used += v;
    const long last = units - used;
    if (last < 0) return;
    cur.push_back(last);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (long off = -2; off <= 2; ++off) {
    const long v = centre[i] + off;
    if (v < 0 || v > units) continue;
    cur.push_back(v);
    neighbourhood(centre, units, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

GridSearchResult grid_search_weights(std::span<const WeightName> names, const BatchObjective& objective,
                                     const ModelWeights& base, const GridSearchOptions& options) {
  if (names.empty()) throw ArgumentError("at least one weight must be named");
  if (std::set<WeightName>(names.begin(), names.end()).size() != names.size()) {
    throw ArgumentError("weight names must be distinct");
  }
  const double inv = 1.0 / options.coarse_step;
  const long coarse_units = std::lround(inv);
  if (coarse_units < 1 || std::abs(inv - static_cast<double>(coarse_units)) > 1e-9) {
    throw ArgumentError("coarse step must divide 1");
  }

  GridSearchResult res;
  // Objective values keyed by the point at the finest possible resolution so
  // points revisited in later rounds are not re-evaluated.
  const long finest_scale = 1L << options.max_rounds;
  std::map<Lattice, double> seen;

  long units = coarse_units;
  Lattice incumbent;
  bool have = false;

  auto run_round = [&](const std::vector<Lattice>& points, std::size_t round) {
    std::vector<Lattice> fresh;
    std::vector<ModelWeights> batch;
    const long scale = finest_scale * coarse_units / units;
    for (const auto& p : points) {
      Lattice key(p);
      for (auto& v : key) v *= scale;
      if (seen.count(key) == 0 && std::find(fresh.begin(), fresh.end(), key) == fresh.end()) {
        fresh.push_back(key);
        batch.push_back(to_weights(p, units, names, base));
      }
    }
    if (!batch.empty()) {
      const auto values = objective(batch);
      if (values.size() != batch.size()) throw ArgumentError("objective returned the wrong number of values");
      for (std::size_t i = 0; i < batch.size(); ++i) {
        seen[fresh[i]] = values[i];
        res.trace.push_back({batch[i], values[i], round, 1.0 / static_cast<double>(units)});
      }
    }
    for (const auto& p : points) {
      Lattice key(p);
      for (auto& v : key) v *= scale;
      const double v = seen.at(key);
      if (!have || v > res.best_objective) {
        have = true;
        res.best_objective = v;
        incumbent = p;
      }
    }
    res.best = to_weights(incumbent, units, names, base);
    res.round_best.push_back(res.best_objective);
    res.final_step = 1.0 / static_cast<double>(units);
    res.rounds = round + 1;
  };

  std::vector<Lattice> points;
  Lattice cur;
  compositions(names.size(), units, cur, points);
  run_round(points, 0);

  for (std::size_t round = 1; round <= options.max_rounds; ++round) {
    units *= 2;
    for (auto& v : incumbent) v *= 2;
    points.clear();
    cur.clear();
    neighbourhood(incumbent, units, 0, cur, points);
    const double previous = res.best_objective;
    run_round(points, round);
    if (std::abs(res.best_objective - previous) < options.stop_threshold) {
      res.stopped_by_threshold = true;
      break;
    }
  }
  return res;
}

}  // namespace fgo
