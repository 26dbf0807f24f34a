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
#include "fgo/evaluation.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>

#include "fgo/error.hpp"

namespace fgo {

FGGroundTruth load_ground_truth(const LabelMap& signed_map) {
  FGGroundTruth gt;
  gt.rows = signed_map.rows();
  gt.cols = signed_map.cols();
  for (std::size_t r = 0; r < gt.rows; ++r) {
    for (std::size_t c = 0; c < gt.cols; ++c) {
      const auto v = signed_map(r, c);
      if (v < -1 || v > 1) throw FormatError("signed ground truth values must be -1, 0 or 1");
      if (v != -1) continue;
      double sx = 0.0, sy = 0.0;
      int n = 0;
      for (long dr = -1; dr <= 1; ++dr) {
        for (long dc = -1; dc <= 1; ++dc) {
          const long rr = static_cast<long>(r) + dr, cc = static_cast<long>(c) + dc;
          if ((dr == 0 && dc == 0) || !signed_map.contains(rr, cc)) continue;
          if (signed_map(rr, cc) == 1) {
            sx += static_cast<double>(dc);
            sy += static_cast<double>(dr);
            ++n;
          }
        }
      }
      const double len = std::hypot(sx, sy);
      // Opposing +1 neighbours can cancel; such pixels carry no direction.
      if (n == 0 || len < 1e-12) continue;
      gt.records.push_back({static_cast<long>(c), static_cast<long>(r), sx / len, sy / len});
    }
  }
  return gt;
}

Decision decide_figure(const DirectedMaps& final_maps, long x, long y, double radius) {
  const auto& first = final_maps.maps[0];
  const long reach = static_cast<long>(std::floor(radius));
  double best = 0.0;
  std::vector<std::size_t> winners;
  for (std::size_t d = 0; d < kNumDirected; ++d) {
    const auto& m = final_maps.maps[d];
    for (long dy = -reach; dy <= reach; ++dy) {
      for (long dx = -reach; dx <= reach; ++dx) {
        if (static_cast<double>(dx * dx + dy * dy) > radius * radius + 1e-12) continue;
        if (!first.contains(y + dy, x + dx)) continue;
        const double v = m(static_cast<std::size_t>(y + dy), static_cast<std::size_t>(x + dx));
        if (v > best) {
          best = v;
          winners.assign(1, d);
        } else if (v == best && v > 0.0 && (winners.empty() || winners.back() != d)) {
          winners.push_back(d);
        }
      }
    }
  }
  if (winners.empty()) return {};
  const double phi = bo_direction(winners[0] / 2, winners[0] % 2 == 0 ? Side::plus : Side::minus);
  Decision out{std::cos(phi), std::sin(phi), false};
  for (std::size_t w : winners) {
    const double p = bo_direction(w / 2, w % 2 == 0 ? Side::plus : Side::minus);
    if (std::cos(p) * out.dx + std::sin(p) * out.dy < -1e-9) return {};
  }
  return out;
}

double decision_score(const Decision& d, const BoundaryRecord& r) {
  if (d.tie) return 0.5;
  return d.dx * r.nx + d.dy * r.ny > 0.0 ? 1.0 : 0.0;
}

double GroundTruthScore::accuracy() const {
  if (total == 0) throw ArgumentError("accuracy of an empty ground truth is undefined");
  return correct / static_cast<double>(total);
}

GroundTruthScore score_decisions(std::span<const Decision> decisions, std::span<const BoundaryRecord> records) {
  if (decisions.size() != records.size()) throw DimensionError("decision and record counts differ");
  GroundTruthScore s;
  s.total = records.size();
  s.per_record.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const double v = decision_score(decisions[i], records[i]);
    s.per_record.push_back(v);
    s.correct += v;
    if (decisions[i].tie) ++s.ties;
  }
  return s;
}

GroundTruthScore score_ground_truth(const DirectedMaps& final_maps, const FGGroundTruth& gt, double radius) {
  const auto& m = final_maps.maps[0];
  if (gt.rows != m.rows() || gt.cols != m.cols()) throw DimensionError("ground truth shape differs from the maps");
  std::vector<Decision> decisions;
  decisions.reserve(gt.records.size());
  for (const auto& r : gt.records) decisions.push_back(decide_figure(final_maps, r.x, r.y, radius));
  return score_decisions(decisions, gt.records);
}

std::optional<ImageResult> compute_fgca(const std::string& id, const DirectedMaps& final_maps,
                                        std::span<const FGGroundTruth> gts, double radius) {
  ImageResult out;
  out.id = id;
  std::size_t used = 0;
  for (const auto& gt : gts) {
    if (gt.records.empty()) continue;
    auto s = score_ground_truth(final_maps, gt, radius);
    out.accuracy += s.accuracy();
    out.boundary_pixels += s.total;
    out.ties += s.ties;
    out.correct += s.correct;
    out.correctness.insert(out.correctness.end(), s.per_record.begin(), s.per_record.end());
    ++used;
  }
  if (used == 0) return std::nullopt;
  out.accuracy /= static_cast<double>(used);
  return out;
}

EvalReport make_report(std::vector<ImageResult> per_image) {
  EvalReport rep;
  rep.per_image = std::move(per_image);
  if (rep.per_image.empty()) return rep;
  double correct = 0.0, total = 0.0, sum = 0.0;
  for (const auto& r : rep.per_image) {
    correct += r.correct;
    total += static_cast<double>(r.boundary_pixels);
    sum += r.accuracy;
  }
  const double n = static_cast<double>(rep.per_image.size());
  rep.aggregate = total > 0.0 ? correct / total : 0.0;
  rep.per_image_mean = sum / n;
  double ss = 0.0;
  for (const auto& r : rep.per_image) ss += (r.accuracy - rep.per_image_mean) * (r.accuracy - rep.per_image_mean);
  rep.std_dev = rep.per_image.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  return rep;
}

void write_report(std::ostream& out, const EvalReport& report) {
  out << "# id accuracy boundary_pixels ties\n";
  out << std::fixed << std::setprecision(6);
  for (const auto& r : report.per_image) {
    out << r.id << ' ' << r.accuracy << ' ' << r.boundary_pixels << ' ' << r.ties << '\n';
  }
  out << "images=" << report.per_image.size() << '\n';
  out << "aggregate_fgca=" << report.aggregate << '\n';
  out << "per_image_mean_fgca=" << report.per_image_mean << '\n';
  out << "std_dev=" << report.std_dev << '\n';
  if (report.p_value) out << "p_value=" << std::setprecision(9) << *report.p_value << '\n';
  out.unsetf(std::ios::floatfield);
}

SplitSpec make_split(std::vector<std::string> ids, std::uint64_t seed) {
  if (ids.size() < 2) throw ArgumentError("a split needs at least two ids");
  // Explicit Fisher-Yates: std::shuffle's draw sequence is implementation defined.
  std::mt19937_64 rng(seed);
  for (std::size_t i = ids.size() - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
    std::swap(ids[i], ids[j]);
  }
  SplitSpec s;
  s.seed = seed;
  const std::size_t half = ids.size() / 2;
  s.train_ids.assign(ids.begin(), ids.begin() + static_cast<long>(half));
  s.test_ids.assign(ids.begin() + static_cast<long>(half), ids.end());
  return s;
}

}  // namespace fgo
