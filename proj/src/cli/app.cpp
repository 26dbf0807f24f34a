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
#include <CLI11.hpp>
#include <iostream>

#include "fgo/commands.hpp"
#include "fgo/error.hpp"

namespace fgo {

namespace {

// Options shared by every model-driven subcommand. Applied in order:
// config file, FGO_SEED, preset, explicit weights, --set, --seed, --jobs.
struct CommonOptions {
  std::string config_file;
  std::string preset;
  std::string weights;
  std::vector<std::string> settings;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> jobs;
  std::optional<std::size_t> top_layers;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool with_weights) {
  cmd->add_option("--config", o.config_file, "key=value configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--preset", o.preset, "reference | with-sa | with-tj | with-both");
  if (with_weights) cmd->add_option("--weights", o.weights, "alpha_ref,alpha_sa,alpha_tj");
  cmd->add_option("--set", o.settings, "override one config key (key=value), repeatable");
  cmd->add_option("--seed", o.seed, "split seed (overrides FGO_SEED)");
  cmd->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--top-layers", o.top_layers, "apply local cues to the N finest levels only")
      ->check(CLI::PositiveNumber);
}

RunConfig build_config(const CommonOptions& o) {
  RunConfig c;
  if (!o.config_file.empty()) load_config(o.config_file, c);
  apply_environment(c);
  if (!o.preset.empty()) apply_setting(c, "preset", o.preset);
  if (!o.weights.empty()) apply_setting(c, "weights", o.weights);
  for (const auto& s : o.settings) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + s + "'");
    apply_setting(c, s.substr(0, eq), s.substr(eq + 1));
  }
  if (o.seed) c.seed = *o.seed;
  if (o.jobs) c.model.jobs = *o.jobs;
  if (o.top_layers) c.model.top_layers_only = *o.top_layers;
  return c;
}

Color parse_color(const std::string& s) {
  Color c{};
  std::vector<double> v;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) v.push_back(std::stod(part));
  if (v.size() == 1) return {v[0], v[0], v[0]};
  if (v.size() != 3) throw ArgumentError("color must be one gray value or r,g,b");
  for (std::size_t i = 0; i < 3; ++i) c[i] = v[i];
  return c;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Figure-ground organization: border-ownership maps from images"};
  app.require_subcommand(1);

  CommonOptions run_common, eval_common, tune_common;
  RunOptions run;
  std::string run_image, run_contours, run_segments, run_out = "fgo_out";
  std::vector<std::string> run_gts;
  auto* run_cmd = app.add_subcommand("run", "compute the 16 final BO maps for one image");
  run_cmd->add_option("--image", run_image, "input PPM")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--contours", run_contours, "contour label map (LM1)")->check(CLI::ExistingFile);
  run_cmd->add_option("--segments", run_segments, "segmentation label map (LM1)")->check(CLI::ExistingFile);
  run_cmd->add_option("--gt", run_gts, "signed ground-truth map (LM1), up to two")->check(CLI::ExistingFile);
  run_cmd->add_option("--out", run_out, "output directory");
  add_common(run_cmd, run_common, true);

  EvalOptions eval;
  std::string eval_manifest, eval_report, eval_compare, eval_subset = "all";
  auto* eval_cmd = app.add_subcommand("eval", "score a dataset manifest");
  eval_cmd->add_option("manifest", eval_manifest, "dataset manifest")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--report", eval_report, "report file (default: stdout)");
  eval_cmd->add_option("--compare", eval_compare, "base,candidate presets; p tests candidate > base");
  eval_cmd->add_option("--subset", eval_subset, "all | train | test (seeded split)")
      ->check(CLI::IsMember({"all", "train", "test"}));
  add_common(eval_cmd, eval_common, true);

  TuneOptions tune;
  std::string tune_manifest, tune_weights = "alphaRef,alphaSA", tune_out = "tuned.cfg", tune_trace;
  auto* tune_cmd = app.add_subcommand("tune", "grid-search cue weights on the training split");
  tune_cmd->add_option("manifest", tune_manifest, "dataset manifest")->required()->check(CLI::ExistingFile);
  tune_cmd->add_option("--weights", tune_weights, "weights to tune, e.g. alphaRef,alphaSA");
  tune_cmd->add_option("--out", tune_out, "tuned configuration file");
  tune_cmd->add_option("--trace", tune_trace, "write every evaluated grid point here");
  tune_cmd->add_flag("--all", tune.use_all, "tune on every image instead of the train split");
  tune_cmd->add_option("--cache-mb", tune.cache_mb, "memory budget for cached per-image components");
  tune_cmd->add_option("--stop", tune.search.stop_threshold, "stop when the incumbent changes by less than this");
  tune_cmd->add_option("--max-rounds", tune.search.max_rounds, "refinement round limit");
  add_common(tune_cmd, tune_common, false);

  SynthOptions synth;
  std::string synth_kind, synth_out = ".", synth_figure, synth_ground, synth_back;
  auto* synth_cmd = app.add_subcommand("synth", "write a synthetic fixture");
  synth_cmd->add_option("kind", synth_kind, "isolated-square | overlapping-squares | shaded-edge | annulus")->required();
  synth_cmd->add_option("--size", synth.params.size, "image side in pixels");
  synth_cmd->add_option("--square", synth.params.square, "square side (isolated-square)");
  synth_cmd->add_option("--radius", synth.params.radius, "disk radius (annulus)");
  synth_cmd->add_option("--gradient", synth.params.gradient, "shading amplitude in [0, 1] (shaded-edge)");
  synth_cmd->add_option("--offset-x", synth.params.offset_x, "figure offset in x");
  synth_cmd->add_option("--offset-y", synth.params.offset_y, "figure offset in y");
  synth_cmd->add_option("--figure", synth_figure, "figure color: gray or r,g,b");
  synth_cmd->add_option("--ground", synth_ground, "ground color: gray or r,g,b");
  synth_cmd->add_option("--back", synth_back, "occluded square color: gray or r,g,b");
  synth_cmd->add_option("--out", synth_out, "output directory");
  synth_cmd->add_option("--prefix", synth.prefix, "file name prefix (default: kind)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*run_cmd) {
      run.image = run_image;
      if (!run_contours.empty()) run.contours = run_contours;
      if (!run_segments.empty()) run.segments = run_segments;
      if (run_gts.size() > 2) throw ArgumentError("at most two ground truths");
      for (const auto& g : run_gts) run.ground_truths.emplace_back(g);
      run.out_dir = run_out;
      return cmd_run(run, build_config(run_common), std::cerr);
    }
    if (*eval_cmd) {
      eval.manifest = eval_manifest;
      if (!eval_report.empty()) eval.report = eval_report;
      if (!eval_compare.empty()) {
        const auto comma = eval_compare.find(',');
        if (comma == std::string::npos) throw ArgumentError("--compare expects base,candidate");
        eval.compare = std::make_pair(eval_compare.substr(0, comma), eval_compare.substr(comma + 1));
      }
      eval.subset = eval_subset == "train"  ? EvalOptions::Subset::train
                    : eval_subset == "test" ? EvalOptions::Subset::test
                                            : EvalOptions::Subset::all;
      return cmd_eval(eval, build_config(eval_common), std::cout, std::cerr);
    }
    if (*tune_cmd) {
      tune.manifest = tune_manifest;
      std::stringstream ss(tune_weights);
      std::string name;
      while (std::getline(ss, name, ',')) tune.weights.push_back(parse_weight_name(name));
      tune.out = tune_out;
      if (!tune_trace.empty()) tune.trace = tune_trace;
      return cmd_tune(tune, build_config(tune_common), std::cerr);
    }
    if (*synth_cmd) {
      synth.kind = parse_stimulus_kind(synth_kind);
      if (!synth_figure.empty()) synth.params.figure = parse_color(synth_figure);
      if (!synth_ground.empty()) synth.params.ground = parse_color(synth_ground);
      if (!synth_back.empty()) synth.params.back = parse_color(synth_back);
      synth.out_dir = synth_out;
      return cmd_synth(synth, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace fgo
