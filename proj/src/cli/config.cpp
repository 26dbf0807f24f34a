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
#include "fgo/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <type_traits>

#include "fgo/error.hpp"

namespace fgo {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view v) {
  T out{};
  v = trim(v);
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ConfigError("invalid value for " + std::string(key) + ": '" + std::string(v) + "'");
  }
  return out;
}

std::vector<std::string_view> split_list(std::string_view v) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = v.find(',');
    out.push_back(trim(v.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
  v = trim(v);
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError("invalid boolean for " + std::string(key));
}

using Setter = std::function<void(RunConfig&, std::string_view, std::string_view)>;

template <typename T, typename Get>
Setter number(Get get) {
  return [get](RunConfig& c, std::string_view k, std::string_view v) { get(c) = parse_number<T>(k, v); };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"gamma", number<double>([](RunConfig& c) -> double& { return c.model.gabor.gamma; })},
      {"sigma", number<double>([](RunConfig& c) -> double& { return c.model.gabor.sigma; })},
      {"omega", number<double>([](RunConfig& c) -> double& { return c.model.gabor.omega; })},
      {"sigma_in", number<double>([](RunConfig& c) -> double& { return c.model.dog.sigma_in; })},
      {"sigma_out", number<double>([](RunConfig& c) -> double& { return c.model.dog.sigma_out; })},
      {"r0", number<double>([](RunConfig& c) -> double& { return c.model.r0; })},
      {"w_opp", number<double>([](RunConfig& c) -> double& { return c.model.weights.w_opp; })},
      {"sigma1", number<double>([](RunConfig& c) -> double& { return c.model.orientation_cs.sigma1; })},
      {"gamma1", number<double>([](RunConfig& c) -> double& { return c.model.orientation_cs.gamma1; })},
      {"omega1", number<double>([](RunConfig& c) -> double& { return c.model.orientation_cs.omega1; })},
      {"num_scales", number<std::size_t>([](RunConfig& c) -> std::size_t& { return c.model.num_scales; })},
      {"alpha_ref", number<double>([](RunConfig& c) -> double& { return c.model.weights.alpha_ref; })},
      {"alpha_sa", number<double>([](RunConfig& c) -> double& { return c.model.weights.alpha_sa; })},
      {"alpha_tj", number<double>([](RunConfig& c) -> double& { return c.model.weights.alpha_tj; })},
      {"normalization_top", number<double>([](RunConfig& c) -> double& { return c.model.normalization.top; })},
      {"normalization_window",
       number<std::size_t>([](RunConfig& c) -> std::size_t& { return c.model.normalization.local_max_window; })},
      {"sa_min_size", number<std::size_t>([](RunConfig& c) -> std::size_t& { return c.model.sa.min_filter_size; })},
      {"sa_max_size", number<std::size_t>([](RunConfig& c) -> std::size_t& { return c.model.sa.max_filter_size; })},
      {"sa_size_step", number<std::size_t>([](RunConfig& c) -> std::size_t& { return c.model.sa.size_step; })},
      {"sa_gamma", number<double>([](RunConfig& c) -> double& { return c.model.sa.gamma; })},
      {"sa_lobes_even", number<int>([](RunConfig& c) -> int& { return c.model.sa.lobes_even; })},
      {"sa_lobes_odd", number<int>([](RunConfig& c) -> int& { return c.model.sa.lobes_odd; })},
      {"sa_sigma_factor", number<double>([](RunConfig& c) -> double& { return c.model.sa.sigma_factor; })},
      {"tj_area_radius", number<double>([](RunConfig& c) -> double& { return c.model.tj.area_mask_radius; })},
      {"tj_track_length", number<std::size_t>([](RunConfig& c) -> std::size_t& { return c.model.tj.angle_track_length; })},
      {"tj_min_track_length",
       number<std::size_t>([](RunConfig& c) -> std::size_t& { return c.model.tj.min_track_length; })},
      {"tj_influence_radius", number<double>([](RunConfig& c) -> double& { return c.model.tj.influence_radius; })},
      {"tj_probe_length", number<int>([](RunConfig& c) -> int& { return c.model.tj.max_probe_length; })},
      {"tj_y_center", number<double>([](RunConfig& c) -> double& { return c.model.tj.y_junction_center; })},
      {"tj_y_tolerance", number<double>([](RunConfig& c) -> double& { return c.model.tj.y_junction_tolerance; })},
      {"tj_arrow_threshold", number<double>([](RunConfig& c) -> double& { return c.model.tj.arrow_threshold; })},
      {"tj_merge_radius", number<double>([](RunConfig& c) -> double& { return c.model.tj.candidate_merge_radius; })},
      {"tj_segment_radius",
       number<double>([](RunConfig& c) -> double& { return c.model.tj.segment_neighborhood_radius; })},
      {"tj_orientation_radius",
       number<double>([](RunConfig& c) -> double& { return c.model.tj.orientation_fit_radius; })},
      {"jobs", number<std::size_t>([](RunConfig& c) -> std::size_t& { return c.model.jobs; })},
      {"seed", number<std::uint64_t>([](RunConfig& c) -> std::uint64_t& { return c.seed; })},
      {"decision_radius", number<double>([](RunConfig& c) -> double& { return c.decision_radius; })},
      {"pyramid_factor",
       [](RunConfig& c, std::string_view k, std::string_view v) {
         v = trim(v);
         if (v == "sqrt2") c.model.factor = PyramidFactor::half_octave;
         else if (v == "2") c.model.factor = PyramidFactor::octave;
         else throw ConfigError("invalid value for " + std::string(k) + " (expected sqrt2 or 2)");
       }},
      {"von_mises_form",
       [](RunConfig& c, std::string_view k, std::string_view v) {
         v = trim(v);
         if (v == "cosine") c.model.von_mises_form = VonMisesForm::cosine;
         else if (v == "as_printed") c.model.von_mises_form = VonMisesForm::as_printed;
         else if (v == "annular") c.model.von_mises_form = VonMisesForm::annular;
         else throw ConfigError("invalid value for " + std::string(k));
       }},
      {"top_layers_only",
       [](RunConfig& c, std::string_view k, std::string_view v) {
         v = trim(v);
         if (v == "none" || v == "all") c.model.top_layers_only.reset();
         else c.model.top_layers_only = parse_number<std::size_t>(k, v);
       }},
      {"weights",
       [](RunConfig& c, std::string_view k, std::string_view v) {
         const auto parts = split_list(v);
         if (parts.size() != 3) throw ConfigError(std::string(k) + " needs alpha_ref,alpha_sa,alpha_tj");
         c.model.weights.alpha_ref = parse_number<double>(k, parts[0]);
         c.model.weights.alpha_sa = parse_number<double>(k, parts[1]);
         c.model.weights.alpha_tj = parse_number<double>(k, parts[2]);
       }},
      {"feature_weights",
       [](RunConfig& c, std::string_view k, std::string_view v) {
         const auto parts = split_list(v);
         if (parts.size() != 3) throw ConfigError(std::string(k) + " needs color,intensity,orientation");
         for (std::size_t i = 0; i < 3; ++i) c.model.weights.feature_weights[i] = parse_number<double>(k, parts[i]);
       }},
      {"color", [](RunConfig& c, std::string_view k, std::string_view v) { c.model.features.color = parse_bool(k, v); }},
      {"intensity",
       [](RunConfig& c, std::string_view k, std::string_view v) { c.model.features.intensity = parse_bool(k, v); }},
      {"orientation",
       [](RunConfig& c, std::string_view k, std::string_view v) { c.model.features.orientation = parse_bool(k, v); }},
      {"preset",
       [](RunConfig& c, std::string_view, std::string_view v) {
         const auto w = preset_weights(trim(v));
         c.model.weights.alpha_ref = w.alpha_ref;
         c.model.weights.alpha_sa = w.alpha_sa;
         c.model.weights.alpha_tj = w.alpha_tj;
       }},
  };
  return table;
}

// Shortest text that reads back to the same value.
template <typename T>
std::string num(T v) {
  if constexpr (std::is_same_v<T, bool>) {
    return v ? "1" : "0";
  } else {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
  }
}

}  // namespace

ModelWeights preset_weights(std::string_view name) {
  ModelWeights w;
  if (name == "reference") return w;
  if (name == "with-sa") {
    w.alpha_ref = 0.35;
    w.alpha_sa = 0.65;
  } else if (name == "with-tj") {
    w.alpha_ref = 0.03;
    w.alpha_tj = 0.97;
  } else if (name == "with-both") {
    w.alpha_ref = 0.05;
    w.alpha_sa = 0.15;
    w.alpha_tj = 0.80;
  } else {
    throw ConfigError("unknown preset: " + std::string(name));
  }
  return w;
}

std::vector<std::string> preset_names() { return {"reference", "with-sa", "with-tj", "with-both"}; }

void apply_setting(RunConfig& config, std::string_view key, std::string_view value) {
  const auto& table = setters();
  const auto it = table.find(trim(key));
  if (it == table.end()) throw ConfigError("unknown config key: " + std::string(trim(key)));
  it->second(config, trim(key), value);
}

void parse_config(std::istream& in, RunConfig& config) {
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    std::string_view v = line;
    if (const auto hash = v.find('#'); hash != std::string_view::npos) v = v.substr(0, hash);
    v = trim(v);
    if (v.empty()) continue;
    const auto eq = v.find('=');
    if (eq == std::string_view::npos) throw ConfigError("line " + std::to_string(n) + ": expected key = value");
    apply_setting(config, v.substr(0, eq), v.substr(eq + 1));
  }
}

void load_config(const std::filesystem::path& path, RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  parse_config(in, config);
}

void write_config(std::ostream& out, const RunConfig& c) {
  const auto& m = c.model;
  out << "gamma = " << num(m.gabor.gamma) << "\nsigma = " << num(m.gabor.sigma) << "\nomega = " << num(m.gabor.omega)
      << "\nsigma_in = " << num(m.dog.sigma_in) << "\nsigma_out = " << num(m.dog.sigma_out) << "\nr0 = " << num(m.r0)
      << "\nw_opp = " << num(m.weights.w_opp) << "\nsigma1 = " << num(m.orientation_cs.sigma1)
      << "\ngamma1 = " << num(m.orientation_cs.gamma1) << "\nomega1 = " << num(m.orientation_cs.omega1)
      << "\nnum_scales = " << num(m.num_scales)
      << "\npyramid_factor = " << (m.factor == PyramidFactor::half_octave ? "sqrt2" : "2")
      << "\nvon_mises_form = "
      << (m.von_mises_form == VonMisesForm::cosine       ? "cosine"
          : m.von_mises_form == VonMisesForm::as_printed ? "as_printed"
                                                         : "annular")
      << "\nweights = " << num(m.weights.alpha_ref) << ',' << num(m.weights.alpha_sa) << ',' << num(m.weights.alpha_tj)
      << "\nfeature_weights = " << num(m.weights.feature_weights[0]) << ',' << num(m.weights.feature_weights[1]) << ','
      << num(m.weights.feature_weights[2]) << "\ncolor = " << num(m.features.color) << "\nintensity = " << num(m.features.intensity)
      << "\norientation = " << num(m.features.orientation) << "\nnormalization_top = " << num(m.normalization.top)
      << "\nnormalization_window = " << num(m.normalization.local_max_window)
      << "\nsa_min_size = " << num(m.sa.min_filter_size) << "\nsa_max_size = " << num(m.sa.max_filter_size)
      << "\nsa_size_step = " << num(m.sa.size_step) << "\nsa_gamma = " << num(m.sa.gamma) << "\nsa_lobes_even = " << num(m.sa.lobes_even)
      << "\nsa_lobes_odd = " << num(m.sa.lobes_odd) << "\nsa_sigma_factor = " << num(m.sa.sigma_factor)
      << "\ntj_area_radius = " << num(m.tj.area_mask_radius) << "\ntj_track_length = " << num(m.tj.angle_track_length)
      << "\ntj_min_track_length = " << num(m.tj.min_track_length) << "\ntj_influence_radius = " << num(m.tj.influence_radius)
      << "\ntj_probe_length = " << num(m.tj.max_probe_length) << "\ntj_y_center = " << num(m.tj.y_junction_center)
      << "\ntj_y_tolerance = " << num(m.tj.y_junction_tolerance) << "\ntj_arrow_threshold = " << num(m.tj.arrow_threshold)
      << "\ntj_merge_radius = " << num(m.tj.candidate_merge_radius)
      << "\ntj_segment_radius = " << num(m.tj.segment_neighborhood_radius)
      << "\ntj_orientation_radius = " << num(m.tj.orientation_fit_radius) << "\ntop_layers_only = ";
  if (m.top_layers_only) out << num(*m.top_layers_only);
  else out << "none";
  out << "\njobs = " << num(m.jobs) << "\nseed = " << num(c.seed) << "\ndecision_radius = " << num(c.decision_radius) << '\n';
}

void apply_environment(RunConfig& config) {
  if (const char* s = std::getenv("FGO_SEED"); s != nullptr && *s != '\0') {
    config.seed = parse_number<std::uint64_t>("FGO_SEED", s);
  }
}

}  // namespace fgo
