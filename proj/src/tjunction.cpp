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
#include "fgo/tjunction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>

#include "fgo/error.hpp"

namespace fgo {
namespace {

double dist2(double ax, double ay, double bx, double by) { return (ax - bx) * (ax - bx) + (ay - by) * (ay - by); }

// Sorted distinct nonzero labels of the pixels accepted by `inside`.
template <typename Inside>
std::vector<std::int32_t> distinct_labels(const LabelMap& map, long cx, long cy, long reach, Inside inside) {
  std::vector<std::int32_t> ids;
  for (long dy = -reach; dy <= reach; ++dy) {
    for (long dx = -reach; dx <= reach; ++dx) {
      if (!inside(dx, dy) || !map.contains(cy + dy, cx + dx)) continue;
      const std::int32_t v = map(cy + dy, cx + dx);
      if (v != 0 && std::find(ids.begin(), ids.end(), v) == ids.end()) ids.push_back(v);
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

ContourTriple to_triple(const std::vector<std::int32_t>& ids) { return {ids[0], ids[1], ids[2]}; }

struct DisjointSet {
  std::vector<std::size_t> parent;
  explicit DisjointSet(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

HatPair sorted_pair(std::int32_t a, std::int32_t b) { return a < b ? HatPair{a, b} : HatPair{b, a}; }

}  // namespace

void TJParams::validate() const {
  if (!(area_mask_radius > 0.0) || !(influence_radius > 0.0) || angle_track_length == 0 ||
      !(candidate_merge_radius > 0.0) || !(segment_neighborhood_radius > 0.0) || !(orientation_fit_radius > 0.0)) {
    throw ArgumentError("T-junction radii and lengths must be positive");
  }
  if (max_probe_length < 1 || max_probe_length > 3) throw ArgumentError("normal probe length must be 1..3 pixels");
  if (min_track_length < 2 || min_track_length > angle_track_length) {
    throw ArgumentError("minimum track length must lie in [2, track length]");
  }
}

std::string_view to_string(Rejection r) {
  switch (r) {
    case Rejection::none: return "none";
    case Rejection::y_junction: return "y_junction";
    case Rejection::arrow_junction: return "arrow_junction";
    case Rejection::tie: return "tie";
    case Rejection::malformed: return "malformed";
  }
  return "unknown";
}

std::vector<JunctionCandidate> find_junction_candidates(const LabelMap& contours, const LabelMap& segments,
                                                        const TJParams& params) {
  if (!contours.same_shape(segments)) throw DimensionError("contour and segment maps differ in shape");
  params.validate();
  struct Hit {
    long x, y;
    std::vector<std::int32_t> contour_ids, region_ids;
  };
  std::vector<Hit> hits;
  const double seg_r = params.segment_neighborhood_radius;
  const long seg_reach = static_cast<long>(std::floor(seg_r));
  auto square = [](long, long) { return true; };
  auto disk = [seg_r](long dx, long dy) { return static_cast<double>(dx * dx + dy * dy) <= seg_r * seg_r + 1e-9; };
  for (long y = 0; y < static_cast<long>(contours.rows()); ++y) {
    for (long x = 0; x < static_cast<long>(contours.cols()); ++x) {
      auto cids = distinct_labels(contours, x, y, 1, square);
      if (cids.size() != 3) continue;
      auto rids = distinct_labels(segments, x, y, seg_reach, disk);
      if (rids.size() != 3) continue;
      hits.push_back({x, y, std::move(cids), std::move(rids)});
    }
  }

  DisjointSet sets(hits.size());
  const double merge2 = params.candidate_merge_radius * params.candidate_merge_radius + 1e-9;
  for (std::size_t i = 0; i < hits.size(); ++i) {
    for (std::size_t j = i + 1; j < hits.size(); ++j) {
      if (dist2(hits[i].x, hits[i].y, hits[j].x, hits[j].y) <= merge2) sets.unite(i, j);
    }
  }

  std::vector<JunctionCandidate> out;
  for (std::size_t root = 0; root < hits.size(); ++root) {
    if (sets.find(root) != root) continue;
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < hits.size(); ++i) {
      if (sets.find(i) == root) members.push_back(i);
    }
    double sx = 0.0, sy = 0.0;
    std::vector<std::int32_t> cu, ru;
    for (std::size_t m : members) {
      sx += static_cast<double>(hits[m].x);
      sy += static_cast<double>(hits[m].y);
      cu.insert(cu.end(), hits[m].contour_ids.begin(), hits[m].contour_ids.end());
      ru.insert(ru.end(), hits[m].region_ids.begin(), hits[m].region_ids.end());
    }
    const double n = static_cast<double>(members.size());
    const double cx = sx / n, cy = sy / n;
    auto unique_sorted = [](std::vector<std::int32_t> v) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
      return v;
    };
    cu = unique_sorted(std::move(cu));
    ru = unique_sorted(std::move(ru));
    // Members that disagree on the triple sit around a point where more than
    // three contours or regions meet (e.g. a plus-shaped crossing).
    if (cu.size() != 3 || ru.size() != 3) continue;
    out.push_back({Pixel{std::lround(cx), std::lround(cy)}, to_triple(cu), to_triple(ru), std::array{cx, cy}});
  }
  std::sort(out.begin(), out.end(), [](const JunctionCandidate& a, const JunctionCandidate& b) {
    return a.location.y != b.location.y ? a.location.y < b.location.y : a.location.x < b.location.x;
  });
  return out;
}

std::optional<std::size_t> largest_region(const std::array<std::size_t, 3>& counts) {
  const auto it = std::max_element(counts.begin(), counts.end());
  if (std::count(counts.begin(), counts.end(), *it) > 1) return std::nullopt;
  return static_cast<std::size_t>(it - counts.begin());
}

AreaClassification classify_junction_area(const LabelMap& contours, const LabelMap& segments,
                                          const JunctionCandidate& candidate, const TJParams& params) {
  if (!contours.same_shape(segments)) throw DimensionError("contour and segment maps differ in shape");
  const double radius = params.area_mask_radius;
  const long reach = static_cast<long>(std::ceil(radius));
  const long jx = candidate.location.x, jy = candidate.location.y;
  auto in_disk = [&](long dx, long dy) { return static_cast<double>(dx * dx + dy * dy) <= radius * radius + 1e-9; };

  AreaClassification result;
  for (long dy = -reach; dy <= reach; ++dy) {
    for (long dx = -reach; dx <= reach; ++dx) {
      if (!in_disk(dx, dy) || !segments.contains(jy + dy, jx + dx)) continue;
      const std::int32_t id = segments(jy + dy, jx + dx);
      for (std::size_t k = 0; k < 3; ++k) {
        if (candidate.regions[k] == id) ++result.counts[k];
      }
    }
  }
  for (std::size_t c : result.counts) {
    if (c == 0) throw MalformedCandidateError("junction region absent from the area mask");
  }
  const auto best = largest_region(result.counts);
  if (!best) {
    result.tie = true;
    return result;
  }
  result.figure_region = candidate.regions[*best];

  // The stem is the contour least in contact with the figure region.
  std::array<double, 3> affinity{};
  for (std::size_t k = 0; k < 3; ++k) {
    std::size_t total = 0, touching = 0;
    for (long dy = -reach; dy <= reach; ++dy) {
      for (long dx = -reach; dx <= reach; ++dx) {
        const long x = jx + dx, y = jy + dy;
        if (!in_disk(dx, dy) || !contours.contains(y, x) || contours(y, x) != candidate.contours[k]) continue;
        ++total;
        bool touches = false;
        for (long ny = -1; ny <= 1 && !touches; ++ny) {
          for (long nx = -1; nx <= 1; ++nx) {
            if (segments.contains(y + ny, x + nx) && segments(y + ny, x + nx) == result.figure_region) {
              touches = true;
              break;
            }
          }
        }
        if (touches) ++touching;
      }
    }
    affinity[k] = total > 0 ? static_cast<double>(touching) / static_cast<double>(total) : 0.0;
  }
  std::size_t stem = 0;
  for (std::size_t k = 1; k < 3; ++k) {
    if (affinity[k] <= affinity[stem]) stem = k;
  }
  const std::size_t a = (stem + 1) % 3, b = (stem + 2) % 3;
  result.hat = sorted_pair(candidate.contours[a], candidate.contours[b]);
  return result;
}

AngleClassification classify_sectors(const std::array<double, 3>& directions, const ContourTriple& contour_ids,
                                     const TJParams& params) {
  AngleClassification result;
  std::array<double, 3> a{};
  for (std::size_t k = 0; k < 3; ++k) {
    a[k] = std::fmod(directions[k], 360.0);
    if (a[k] < 0.0) a[k] += 360.0;
    result.directions[k] = a[k];
  }
  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a[i] < a[j]; });
  result.sectors[0] = a[order[1]] - a[order[0]];
  result.sectors[1] = a[order[2]] - a[order[1]];
  result.sectors[2] = 360.0 - (result.sectors[0] + result.sectors[1]);

  std::size_t widest = 0;
  for (std::size_t k = 1; k < 3; ++k) {
    if (result.sectors[k] > result.sectors[widest]) widest = k;
  }
  result.hat = sorted_pair(contour_ids[order[widest]], contour_ids[order[(widest + 1) % 3]]);

  if (result.sectors[widest] > params.arrow_threshold) {
    result.rejected = Rejection::arrow_junction;
  } else if (std::all_of(result.sectors.begin(), result.sectors.end(), [&](double s) {
               return std::abs(s - params.y_junction_center) <= params.y_junction_tolerance;
             })) {
    result.rejected = Rejection::y_junction;
  }
  return result;
}

AngleClassification classify_junction_angle(const LabelMap& contours, const JunctionCandidate& candidate,
                                            const TJParams& params) {
  const long jx = candidate.location.x, jy = candidate.location.y;
  const double ox = candidate.centroid ? (*candidate.centroid)[0] : static_cast<double>(jx);
  const double oy = candidate.centroid ? (*candidate.centroid)[1] : static_cast<double>(jy);
  const long window = static_cast<long>(params.angle_track_length) + 3;
  std::array<double, 3> directions{};
  for (std::size_t k = 0; k < 3; ++k) {
    const std::int32_t id = candidate.contours[k];
    std::optional<Pixel> start;
    double best = 0.0;
    for (long dy = -window; dy <= window; ++dy) {
      for (long dx = -window; dx <= window; ++dx) {
        if (!contours.contains(jy + dy, jx + dx) || contours(jy + dy, jx + dx) != id) continue;
        const double d = static_cast<double>(dx * dx + dy * dy);
        if (!start || d < best) {
          start = Pixel{jx + dx, jy + dy};
          best = d;
        }
      }
    }
    if (!start) throw MalformedCandidateError("junction contour " + std::to_string(id) + " not found near junction");

    std::vector<Pixel> path{*start};
    while (path.size() < params.angle_track_length) {
      const Pixel cur = path.back();
      std::optional<Pixel> next;
      double next_d = -1.0;
      for (long ny = -1; ny <= 1; ++ny) {
        for (long nx = -1; nx <= 1; ++nx) {
          const Pixel p{cur.x + nx, cur.y + ny};
          if ((nx == 0 && ny == 0) || !contours.contains(p.y, p.x) || contours(p.y, p.x) != id) continue;
          if (std::find(path.begin(), path.end(), p) != path.end()) continue;
          const double d = dist2(p.x, p.y, jx, jy);
          if (d > next_d) {
            next = p;
            next_d = d;
          }
        }
      }
      if (!next) break;
      path.push_back(*next);
    }
    if (path.size() < params.min_track_length) {
      throw MalformedCandidateError("junction contour " + std::to_string(id) + " too short to track");
    }
    const double vx = static_cast<double>(path.back().x) - ox, vy = static_cast<double>(path.back().y) - oy;
    if (vx == 0.0 && vy == 0.0) throw MalformedCandidateError("degenerate contour direction at junction");
    directions[k] = std::atan2(vy, vx) * 180.0 / std::numbers::pi;
  }
  return classify_sectors(directions, candidate.contours, params);
}

std::vector<TJunction> detect_tjunctions(const LabelMap& contours, const LabelMap& segments, const TJParams& params) {
  std::vector<TJunction> out;
  for (const auto& cand : find_junction_candidates(contours, segments, params)) {
    TJunction j;
    j.location = cand.location;
    j.contours = cand.contours;
    j.regions = cand.regions;
    try {
      const auto area = classify_junction_area(contours, segments, cand, params);
      const auto angle = classify_junction_angle(contours, cand, params);
      j.hat_by_area = area.hat;
      j.figure_region = area.figure_region;
      j.hat_by_angle = angle.hat;
      j.angles = angle.sectors;
      if (angle.rejected != Rejection::none) {
        j.rejected = angle.rejected;
      } else if (area.tie) {
        j.rejected = Rejection::tie;
      } else {
        j.matched = area.hat == angle.hat;
      }
    } catch (const MalformedCandidateError&) {
      j.rejected = Rejection::malformed;
    }
    out.push_back(j);
  }
  return out;
}

ContourOrientation local_orientation_of_contours(const LabelMap& contours, double radius) {
  ContourOrientation out{Grid<double>(contours.rows(), contours.cols(), 0.0),
                         Grid<std::uint8_t>(contours.rows(), contours.cols(), 0)};
  const long reach = static_cast<long>(std::floor(radius));
  for (long y = 0; y < static_cast<long>(contours.rows()); ++y) {
    for (long x = 0; x < static_cast<long>(contours.cols()); ++x) {
      const std::int32_t id = contours(y, x);
      if (id == 0) continue;
      double n = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
      for (long dy = -reach; dy <= reach; ++dy) {
        for (long dx = -reach; dx <= reach; ++dx) {
          if (static_cast<double>(dx * dx + dy * dy) > radius * radius + 1e-9) continue;
          if (!contours.contains(y + dy, x + dx) || contours(y + dy, x + dx) != id) continue;
          const double px = static_cast<double>(dx), py = static_cast<double>(dy);
          n += 1.0;
          sx += px;
          sy += py;
          sxx += px * px;
          syy += py * py;
          sxy += px * py;
        }
      }
      if (n < 2.0) continue;
      const double cxx = sxx / n - (sx / n) * (sx / n);
      const double cyy = syy / n - (sy / n) * (sy / n);
      const double cxy = sxy / n - (sx / n) * (sy / n);
      double angle = 0.5 * std::atan2(2.0 * cxy, cxx - cyy);
      if (angle < 0.0) angle += std::numbers::pi;
      if (angle >= std::numbers::pi) angle -= std::numbers::pi;
      out.angle(y, x) = angle;
      out.defined(y, x) = 1;
    }
  }
  return out;
}

std::size_t orientation_bin(double angle) {
  const double step = std::numbers::pi / static_cast<double>(kNumOrientations);
  long b = std::lround(angle / step) % static_cast<long>(kNumOrientations);
  if (b < 0) b += static_cast<long>(kNumOrientations);
  return static_cast<std::size_t>(b);
}

TJMaps build_tj_maps(const LabelMap& contours, const LabelMap& segments, const std::vector<TJunction>& junctions,
                     const ContourOrientation& orientation, const TJParams& params) {
  if (!contours.same_shape(segments) || !contours.same_shape(orientation.angle)) {
    throw DimensionError("T-junction map inputs differ in shape");
  }
  TJMaps out{DirectedMaps::zeros(contours.rows(), contours.cols()), 0};
  const double radius = params.influence_radius;
  const long reach = static_cast<long>(std::ceil(radius));
  for (const auto& j : junctions) {
    if (!j.matched) continue;
    for (long dy = -reach; dy <= reach; ++dy) {
      for (long dx = -reach; dx <= reach; ++dx) {
        const long x = j.location.x + dx, y = j.location.y + dy;
        if (static_cast<double>(dx * dx + dy * dy) > radius * radius + 1e-9 || !contours.contains(y, x)) continue;
        const std::int32_t id = contours(y, x);
        if (id == 0 || (id != j.hat_by_area[0] && id != j.hat_by_area[1])) continue;
        if (!orientation.defined(y, x)) {
          ++out.skipped_pixels;
          continue;
        }
        const std::size_t bin = orientation_bin(orientation.angle(y, x));
        std::optional<Side> side;
        for (int d = 1; d <= params.max_probe_length && !side; ++d) {
          bool hit[2] = {false, false};
          for (Side s : {Side::plus, Side::minus}) {
            const double dir = bo_direction(bin, s);
            const long px = x + std::lround(d * std::cos(dir));
            const long py = y + std::lround(d * std::sin(dir));
            hit[s == Side::plus ? 0 : 1] = segments.contains(py, px) && segments(py, px) == j.figure_region;
          }
          if (hit[0] != hit[1]) side = hit[0] ? Side::plus : Side::minus;
          if (hit[0] && hit[1]) break;
        }
        if (!side) {
          ++out.skipped_pixels;
          continue;
        }
        // An earlier junction already claimed the other side: keep the first.
        if (out.maps.at(bin, opposite(*side))(y, x) != 0.0) {
          ++out.skipped_pixels;
          continue;
        }
        out.maps.at(bin, *side)(y, x) = 1.0;
      }
    }
  }
  return out;
}

void write_junctions(std::ostream& out, const std::vector<TJunction>& junctions) {
  for (const auto& j : junctions) {
    out << j.location.x << ' ' << j.location.y << ' ' << j.contours[0] << ' ' << j.contours[1] << ' '
        << j.contours[2] << ' ' << j.hat_by_area[0] << ' ' << j.hat_by_area[1] << ' ' << j.figure_region << ' '
        << (j.matched ? 1 : 0) << ' ' << to_string(j.rejected) << '\n';
  }
}

}  // namespace fgo
