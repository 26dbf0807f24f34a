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
#include "fgo/commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

#include "fgo/error.hpp"
#include "fgo/evaluation.hpp"
#include "fgo/io.hpp"
#include "fgo/parallel.hpp"
#include "fgo/stats.hpp"

namespace fgo {

namespace fs = std::filesystem;

std::vector<ManifestEntry> read_manifest(std::istream& in, const fs::path& base_dir) {
  std::vector<ManifestEntry> out;
  std::string line;
  std::size_t n = 0;
  auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? fs::path(p) : base_dir / p; };
  while (std::getline(in, line)) {
    ++n;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    ManifestEntry e;
    if (!(ls >> e.id)) continue;
    std::optional<fs::path> gt1, gt2;
    std::string tok;
    while (ls >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos || eq + 1 == tok.size()) {
        throw FormatError("manifest line " + std::to_string(n) + ": expected key=value, got '" + tok + "'");
      }
      const std::string key = tok.substr(0, eq);
      const fs::path value = resolve(tok.substr(eq + 1));
      if (key == "image") e.image = value;
      else if (key == "gt1") gt1 = value;
      else if (key == "gt2") gt2 = value;
      else if (key == "contours") e.contours = value;
      else if (key == "segments") e.segments = value;
      else throw FormatError("manifest line " + std::to_string(n) + ": unknown key '" + key + "'");
    }
    if (e.image.empty()) throw FormatError("manifest line " + std::to_string(n) + ": image= is required");
    if (!gt1) throw FormatError("manifest line " + std::to_string(n) + ": gt1= is required");
    if (e.contours.has_value() != e.segments.has_value()) {
      throw FormatError("manifest line " + std::to_string(n) + ": contours and segments come together");
    }
    e.ground_truths.push_back(*gt1);
    if (gt2) e.ground_truths.push_back(*gt2);
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<ManifestEntry> load_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open manifest " + path.string());
  return read_manifest(in, path.parent_path());
}

void write_manifest(std::ostream& out, const std::vector<ManifestEntry>& entries) {
  for (const auto& e : entries) {
    out << e.id << " image=" << e.image.string();
    for (std::size_t i = 0; i < e.ground_truths.size(); ++i) out << " gt" << i + 1 << '=' << e.ground_truths[i].string();
    if (e.contours) out << " contours=" << e.contours->string() << " segments=" << e.segments->string();
    out << '\n';
  }
}

bool drop_tj_without_labels(ModelWeights& weights) {
  if (weights.alpha_tj <= 0.0) return false;
  weights.alpha_ref += weights.alpha_tj;
  weights.alpha_tj = 0.0;
  return true;
}

Grid<std::uint8_t> direction_image(const DirectedMaps& final_maps) {
  const auto& first = final_maps.maps[0];
  Grid<std::uint8_t> img(first.rows(), first.cols(), 0);
  for (std::size_t p = 0; p < first.size(); ++p) {
    double best = 0.0;
    std::size_t winner = kNumDirected;
    for (std::size_t d = 0; d < kNumDirected; ++d) {
      const double v = final_maps.maps[d].values()[p];
      if (v > best) {
        best = v;
        winner = d;
      }
    }
    if (winner == kNumDirected) continue;
    double phi = bo_direction(winner / 2, winner % 2 == 0 ? Side::plus : Side::minus);
    phi = std::fmod(phi + 2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
    img.values()[p] = static_cast<std::uint8_t>(1 + std::lround(254.0 * phi / (2.0 * std::numbers::pi)) % 255);
  }
  return img;
}

Grid<std::uint8_t> correctness_image(const DirectedMaps& final_maps, const FGGroundTruth& gt, double radius) {
  const auto& first = final_maps.maps[0];
  Grid<std::uint8_t> img(first.rows(), first.cols(), 128);
  for (const auto& r : gt.records) {
    const auto d = decide_figure(final_maps, r.x, r.y, radius);
    const double s = decision_score(d, r);
    img(static_cast<std::size_t>(r.y), static_cast<std::size_t>(r.x)) = d.tie ? 64 : (s > 0.5 ? 255 : 0);
  }
  return img;
}

namespace {

struct LoadedImage {
  RGBImage image;
  std::vector<FGGroundTruth> gts;
  std::optional<LabelMap> contours;
  std::optional<LabelMap> segments;
};

LoadedImage load_entry(const ManifestEntry& e) {
  LoadedImage out;
  out.image = io::load_ppm(e.image);
  for (const auto& p : e.ground_truths) {
    auto gt = load_ground_truth(io::load_signed_lm1(p));
    if (gt.rows != out.image.rows() || gt.cols != out.image.cols()) {
      throw DimensionError("ground truth " + p.string() + " does not match the image size");
    }
    out.gts.push_back(std::move(gt));
  }
  if (e.contours) {
    out.contours = io::load_lm1(*e.contours);
    out.segments = io::load_lm1(*e.segments);
  }
  return out;
}

bool has_labels(const LoadedImage& img) { return img.contours.has_value() && img.segments.has_value(); }

// Cue maps needed by any of `weight_sets`. TJ maps require label maps.
CueMaps make_cues(const LoadedImage& img, const ModelParams& params, std::span<const ModelWeights> weight_sets,
                  std::vector<TJunction>* junctions = nullptr) {
  bool sa = false, tj = false;
  for (const auto& w : weight_sets) {
    sa = sa || w.alpha_sa > 0.0;
    tj = tj || w.alpha_tj > 0.0;
  }
  CueMaps cues;
  if (!params.features.orientation) return cues;
  if (sa) cues.sa = compute_sa_maps(compute_intensity(img.image), params.sa);
  if (tj && has_labels(img)) cues.tj = compute_tj_cue(*img.contours, *img.segments, params.tj, junctions).maps;
  return cues;
}

std::string direction_name(std::size_t i, Side s) {
  return "bo_t" + std::to_string(i) + (s == Side::plus ? "_plus" : "_minus") + ".fm1";
}

void ensure_dir(const fs::path& p) {
  if (p.empty()) return;
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw FormatError("cannot create directory " + p.string() + ": " + ec.message());
}

}  // namespace

int cmd_run(const RunOptions& options, RunConfig config, std::ostream& log) {
  if (options.contours.has_value() != options.segments.has_value()) {
    throw ArgumentError("--contours and --segments must be given together");
  }
  LoadedImage img;
  img.image = io::load_ppm(options.image);
  if (options.contours) {
    img.contours = io::load_lm1(*options.contours);
    img.segments = io::load_lm1(*options.segments);
  }
  for (const auto& p : options.ground_truths) img.gts.push_back(load_ground_truth(io::load_signed_lm1(p)));

  ModelWeights& w = config.model.weights;
  if (!has_labels(img) && drop_tj_without_labels(w)) {
    log << "warning: alpha_tj > 0 without contour/segment maps; T-junction weight moved onto alpha_ref\n";
  }
  config.model.validate();

  std::vector<TJunction> junctions;
  const std::array<ModelWeights, 1> sets{w};
  const CueMaps cues = make_cues(img, config.model, sets, &junctions);
  const DirectedMaps final_maps = finish_bo_maps(compute_bo_components(img.image, config.model, cues), w);

  ensure_dir(options.out_dir);
  std::ofstream index(options.out_dir / "maps.txt");
  index << "# file orientation_index theta side direction\n";
  for (std::size_t i = 0; i < kNumOrientations; ++i) {
    for (Side s : {Side::plus, Side::minus}) {
      const auto name = direction_name(i, s);
      io::save_fm1(options.out_dir / name, final_maps.at(i, s));
      index << name << ' ' << i << ' ' << orientation_angle(i) << ' ' << (s == Side::plus ? "plus" : "minus") << ' '
            << bo_direction(i, s) << '\n';
    }
  }
  if (!index) throw FormatError("cannot write " + (options.out_dir / "maps.txt").string());
  io::save_pgm(options.out_dir / "direction.pgm", direction_image(final_maps));
  {
    std::ofstream cfg(options.out_dir / "config_used.txt");
    write_config(cfg, config);
  }
  if (cues.tj) {
    std::ofstream jf(options.out_dir / "junctions.txt");
    write_junctions(jf, junctions);
  }
  if (!img.gts.empty()) {
    io::save_pgm(options.out_dir / "correctness.pgm", correctness_image(final_maps, img.gts[0], config.decision_radius));
    const auto result = compute_fgca(options.image.stem().string(), final_maps, img.gts, config.decision_radius);
    std::ofstream rep(options.out_dir / "report.txt");
    if (result) {
      write_report(rep, make_report({*result}));
      log << "fgca=" << result->accuracy << " boundary_pixels=" << result->boundary_pixels << " ties=" << result->ties
          << '\n';
    } else {
      log << "warning: ground truth has no boundary records; nothing scored\n";
    }
  }
  log << "wrote " << options.out_dir.string() << '\n';
  return 0;
}

namespace {

std::vector<ManifestEntry> select_subset(std::vector<ManifestEntry> entries, EvalOptions::Subset subset,
                                         std::uint64_t seed) {
  if (subset == EvalOptions::Subset::all) return entries;
  std::vector<std::string> ids;
  for (const auto& e : entries) ids.push_back(e.id);
  const auto split = make_split(ids, seed);
  const auto& keep = subset == EvalOptions::Subset::train ? split.train_ids : split.test_ids;
  std::vector<ManifestEntry> out;
  for (const auto& id : keep) {
    for (const auto& e : entries) {
      if (e.id == id) {
        out.push_back(e);
        break;
      }
    }
  }
  return out;
}

struct ImageOutcome {
  std::vector<std::optional<ImageResult>> per_set;
  std::string error;
};

}  // namespace

int cmd_eval(const EvalOptions& options, RunConfig config, std::ostream& out, std::ostream& log) {
  const auto entries = select_subset(load_manifest(options.manifest), options.subset, config.seed);
  if (entries.empty()) throw ArgumentError("the manifest selects no images");

  std::vector<ModelWeights> sets;
  std::vector<std::string> names;
  if (options.compare) {
    for (const auto& name : {options.compare->first, options.compare->second}) {
      ModelWeights w = config.model.weights;
      const auto p = preset_weights(name);
      w.alpha_ref = p.alpha_ref;
      w.alpha_sa = p.alpha_sa;
      w.alpha_tj = p.alpha_tj;
      sets.push_back(w);
      names.push_back(name);
    }
  } else {
    sets.push_back(config.model.weights);
    names.push_back("model");
  }
  config.model.validate();

  const std::size_t outer = std::min(config.model.jobs, entries.size());
  ModelParams params = config.model;
  if (outer > 1) params.jobs = 1;

  std::vector<ImageOutcome> outcomes(entries.size());
  parallel_for(entries.size(), outer, [&](std::size_t i) {
    auto& o = outcomes[i];
    try {
      const LoadedImage img = load_entry(entries[i]);
      std::vector<ModelWeights> used = sets;
      if (!has_labels(img)) {
        for (auto& w : used) drop_tj_without_labels(w);
      }
      const CueMaps cues = make_cues(img, params, used);
      const BOComponents comps = compute_bo_components(img.image, params, cues);
      for (const auto& w : used) {
        o.per_set.push_back(compute_fgca(entries[i].id, finish_bo_maps(comps, w), img.gts, config.decision_radius));
      }
    } catch (const std::exception& e) {
      o.error = e.what();
    }
  });

  std::vector<std::vector<ImageResult>> results(sets.size());
  std::size_t failed = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& o = outcomes[i];
    if (!o.error.empty()) {
      log << "error: " << entries[i].id << ": " << o.error << '\n';
      ++failed;
      continue;
    }
    if (!o.per_set[0]) {
      log << "warning: " << entries[i].id << ": no boundary records, excluded\n";
      continue;
    }
    for (std::size_t s = 0; s < sets.size(); ++s) results[s].push_back(*o.per_set[s]);
  }
  if (failed == entries.size()) {
    log << "error: every image failed\n";
    return 1;
  }

  std::vector<EvalReport> reports;
  for (auto& r : results) reports.push_back(make_report(std::move(r)));
  if (options.compare && !reports[0].per_image.empty()) {
    std::vector<double> base, cand;
    for (const auto& r : reports[0].per_image) base.insert(base.end(), r.correctness.begin(), r.correctness.end());
    for (const auto& r : reports[1].per_image) cand.insert(cand.end(), r.correctness.begin(), r.correctness.end());
    try {
      reports[1].p_value = right_tailed_t_test(cand, base).p;
    } catch (const DegenerateInputError& e) {
      log << "warning: t-test skipped: " << e.what() << '\n';
    }
  }

  std::ofstream file;
  if (options.report) {
    if (options.report->has_parent_path()) ensure_dir(options.report->parent_path());
    file.open(*options.report);
    if (!file) throw FormatError("cannot write report " + options.report->string());
  }
  std::ostream& dst = options.report ? static_cast<std::ostream&>(file) : out;
  for (std::size_t s = 0; s < reports.size(); ++s) {
    if (reports.size() > 1) dst << "## " << (s == 0 ? "base" : "candidate") << '=' << names[s] << '\n';
    write_report(dst, reports[s]);
  }
  return 0;
}

int cmd_tune(const TuneOptions& options, RunConfig config, std::ostream& log) {
  if (options.weights.empty()) throw ArgumentError("tune needs at least one weight name");
  auto entries = load_manifest(options.manifest);
  if (!options.use_all) entries = select_subset(std::move(entries), EvalOptions::Subset::train, config.seed);
  if (entries.empty()) throw ArgumentError("empty training set");

  std::vector<LoadedImage> images;
  std::vector<std::string> ids;
  for (const auto& e : entries) {
    try {
      images.push_back(load_entry(e));
      ids.push_back(e.id);
    } catch (const std::exception& ex) {
      log << "error: " << e.id << ": " << ex.what() << " (skipped)\n";
    }
  }
  if (images.empty()) throw ArgumentError("no training image could be loaded");

  ModelWeights probe = config.model.weights;
  probe.alpha_ref = probe.alpha_sa = probe.alpha_tj = 0.0;
  for (auto n : options.weights) {
    if (n == WeightName::alpha_sa) probe.alpha_sa = 1.0;
    if (n == WeightName::alpha_tj) probe.alpha_tj = 1.0;
  }
  const std::size_t outer = std::min(config.model.jobs, images.size());
  ModelParams params = config.model;
  if (outer > 1) params.jobs = 1;

  // Per-image components are kept between rounds while they fit the budget.
  std::vector<std::optional<BOComponents>> cache(images.size());
  const std::size_t cue_sets = 1 + (probe.alpha_sa > 0.0) + (probe.alpha_tj > 0.0);
  std::size_t budget = options.cache_mb * 1024 * 1024;
  std::vector<bool> cacheable(images.size(), false);
  for (std::size_t i = 0; i < images.size(); ++i) {
    std::size_t pyramid_pixels = 0;
    for (auto [r, c] : pyramid_shape(images[i].image.rows(), images[i].image.cols(), params.num_scales, params.factor)) {
      pyramid_pixels += r * c;
    }
    const std::size_t bytes = sizeof(double) * kNumDirected *
                              (cue_sets * pyramid_pixels + 2 * images[i].image.rows() * images[i].image.cols());
    if (bytes <= budget) {
      cacheable[i] = true;
      budget -= bytes;
    }
  }

  const BatchObjective objective = [&](std::span<const ModelWeights> batch) {
    std::vector<std::vector<std::pair<double, double>>> per_image(images.size());
    parallel_for(images.size(), outer, [&](std::size_t i) {
      const auto& img = images[i];
      std::optional<BOComponents> local;
      const BOComponents* comps = nullptr;
      if (cache[i]) {
        comps = &*cache[i];
      } else {
        const std::array<ModelWeights, 1> need{probe};
        local = compute_bo_components(img.image, params, make_cues(img, params, need));
        comps = &*local;
      }
      for (auto w : batch) {
        if (!has_labels(img)) drop_tj_without_labels(w);
        const auto r = compute_fgca(ids[i], finish_bo_maps(*comps, w), img.gts, config.decision_radius);
        per_image[i].emplace_back(r ? r->correct : 0.0, r ? static_cast<double>(r->boundary_pixels) : 0.0);
      }
      if (!cache[i] && cacheable[i]) cache[i] = std::move(local);
    });
    std::vector<double> values(batch.size(), 0.0);
    for (std::size_t b = 0; b < batch.size(); ++b) {
      double correct = 0.0, total = 0.0;
      for (const auto& img : per_image) {
        correct += img[b].first;
        total += img[b].second;
      }
      values[b] = total > 0.0 ? correct / total : 0.0;
    }
    return values;
  };

  const auto result = grid_search_weights(options.weights, objective, config.model.weights, options.search);
  config.model.weights = result.best;

  if (options.out.has_parent_path()) ensure_dir(options.out.parent_path());
  std::ofstream cfg(options.out);
  if (!cfg) throw FormatError("cannot write " + options.out.string());
  cfg << "# tuned on " << images.size() << " image(s); objective " << result.best_objective << '\n';
  write_config(cfg, config);

  if (options.trace) {
    std::ofstream tr(*options.trace);
    if (!tr) throw FormatError("cannot write " + options.trace->string());
    tr << "# round step alpha_ref alpha_sa alpha_tj objective\n";
    for (const auto& p : result.trace) {
      tr << p.round << ' ' << p.step << ' ' << p.weights.alpha_ref << ' ' << p.weights.alpha_sa << ' '
         << p.weights.alpha_tj << ' ' << p.objective << '\n';
    }
    tr << "# incumbent per round:";
    for (double v : result.round_best) tr << ' ' << v;
    tr << "\n# stopped_by_threshold=" << (result.stopped_by_threshold ? 1 : 0) << '\n';
  }
  log << "best alpha_ref=" << result.best.alpha_ref << " alpha_sa=" << result.best.alpha_sa
      << " alpha_tj=" << result.best.alpha_tj << " objective=" << result.best_objective << " rounds=" << result.rounds
      << " step=" << result.final_step << (result.stopped_by_threshold ? " (converged)" : " (round limit)") << '\n';
  return 0;
}

int cmd_synth(const SynthOptions& options, std::ostream& log) {
  const Stimulus s = generate_synthetic_stimulus(options.kind, options.params);
  const std::string prefix = options.prefix.empty() ? std::string(to_string(options.kind)) : options.prefix;
  ensure_dir(options.out_dir);
  const fs::path image = options.out_dir / (prefix + ".ppm");
  const fs::path gt = options.out_dir / (prefix + "_gt.lm1");
  const fs::path contours = options.out_dir / (prefix + "_contours.lm1");
  const fs::path segments = options.out_dir / (prefix + "_segments.lm1");
  io::save_ppm(image, s.image);
  io::save_lm1(gt, s.signed_ground_truth);
  io::save_lm1(contours, *s.contours);
  io::save_lm1(segments, *s.segments);
  log << prefix << " image=" << image.string() << " gt1=" << gt.string() << " contours=" << contours.string()
      << " segments=" << segments.string() << '\n';
  return 0;
}

}  // namespace fgo
