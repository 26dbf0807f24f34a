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
#include "fgo/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace fgo {

RGBImage::RGBImage(FeatureMap red, FeatureMap green, FeatureMap blue)
    : r(std::move(red)), g(std::move(green)), b(std::move(blue)) {
  if (!r.same_shape(g) || !r.same_shape(b)) throw DimensionError("RGB planes differ in shape");
  for (const FeatureMap* p : {&r, &g, &b}) {
    for (double v : p->values()) {
      if (!(v >= 0.0 && v <= 1.0)) throw ArgumentError("RGB values must lie in [0, 1]");
    }
  }
}

RGBImage RGBImage::gray(const FeatureMap& level) { return RGBImage(level, level, level); }

namespace io {
namespace {

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  return out;
}

std::pair<std::size_t, std::size_t> read_header(std::istream& in, const std::string& magic) {
  std::string tag;
  long rows = 0, cols = 0;
  if (!(in >> tag) || tag != magic) throw FormatError("expected " + magic + " header");
  if (!(in >> rows >> cols) || rows <= 0 || cols <= 0) throw FormatError(magic + ": bad dimensions");
  return {static_cast<std::size_t>(rows), static_cast<std::size_t>(cols)};
}

template <typename T>
T parse_number(const std::string& token, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw FormatError(std::string(what) + ": malformed value '" + token + "'");
  }
  return value;
}

LabelMap read_labels(std::istream& in, bool allow_signed) {
  auto [rows, cols] = read_header(in, "LM1");
  LabelMap map(rows, cols, 0);
  std::string tok;
  for (auto& v : map.values()) {
    if (!(in >> tok)) throw FormatError("LM1: truncated data");
    v = parse_number<std::int32_t>(tok, "LM1");
    if (allow_signed ? (v < -1 || v > 1) : v < 0) {
      throw FormatError(allow_signed ? "signed LM1: values must be -1, 0 or 1" : "LM1: negative label");
    }
  }
  if (in >> tok) throw FormatError("LM1: trailing data");
  return map;
}

// Skips whitespace and '#' comments in a netpbm header.
long read_pnm_int(std::istream& in) {
  int ch;
  while ((ch = in.peek()) != EOF) {
    if (ch == '#') {
      std::string line;
      std::getline(in, line);
    } else if (std::isspace(ch)) {
      in.get();
    } else {
      break;
    }
  }
  long v = -1;
  if (!(in >> v)) throw FormatError("netpbm: malformed header");
  return v;
}

}  // namespace

void write_fm1(std::ostream& out, const FeatureMap& map) {
  out << "FM1 " << map.rows() << ' ' << map.cols() << '\n';
  std::array<char, 64> buf{};
  for (std::size_t r = 0; r < map.rows(); ++r) {
    for (std::size_t c = 0; c < map.cols(); ++c) {
      auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), map(r, c));
      if (c) out << ' ';
      out.write(buf.data(), ptr - buf.data());
    }
    out << '\n';
  }
}

FeatureMap read_fm1(std::istream& in) {
  auto [rows, cols] = read_header(in, "FM1");
  FeatureMap map(rows, cols, 0.0);
  std::string tok;
  for (auto& v : map.values()) {
    if (!(in >> tok)) throw FormatError("FM1: truncated data");
    v = parse_number<double>(tok, "FM1");
    if (!std::isfinite(v)) throw FormatError("FM1: non-finite value");
  }
  if (in >> tok) throw FormatError("FM1: trailing data");
  return map;
}

void save_fm1(const std::filesystem::path& path, const FeatureMap& map) {
  auto out = open_out(path);
  write_fm1(out, map);
}

FeatureMap load_fm1(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_fm1(in);
}

void write_lm1(std::ostream& out, const LabelMap& map) {
  out << "LM1 " << map.rows() << ' ' << map.cols() << '\n';
  for (std::size_t r = 0; r < map.rows(); ++r) {
    for (std::size_t c = 0; c < map.cols(); ++c) {
      if (c) out << ' ';
      out << map(r, c);
    }
    out << '\n';
  }
}

LabelMap read_lm1(std::istream& in) { return read_labels(in, false); }
LabelMap read_signed_lm1(std::istream& in) { return read_labels(in, true); }

void save_lm1(const std::filesystem::path& path, const LabelMap& map) {
  auto out = open_out(path);
  write_lm1(out, map);
}

LabelMap load_lm1(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_lm1(in);
}

LabelMap load_signed_lm1(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_signed_lm1(in);
}

RGBImage read_ppm(std::istream& in) {
  char p = 0, kind = 0;
  in.get(p).get(kind);
  if (!in || p != 'P' || (kind != '3' && kind != '6')) throw FormatError("PPM: expected P3 or P6");
  const long cols = read_pnm_int(in);
  const long rows = read_pnm_int(in);
  const long maxval = read_pnm_int(in);
  if (cols <= 0 || rows <= 0) throw FormatError("PPM: bad dimensions");
  if (maxval <= 0 || maxval > 255) throw FormatError("PPM: only 8-bit images are supported");
  const auto R = static_cast<std::size_t>(rows), C = static_cast<std::size_t>(cols);
  FeatureMap planes[3] = {FeatureMap(R, C), FeatureMap(R, C), FeatureMap(R, C)};
  const double scale = 1.0 / static_cast<double>(maxval);
  if (kind == '6') {
    in.get();  // single whitespace after maxval
    std::vector<unsigned char> raw(R * C * 3);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (in.gcount() != static_cast<std::streamsize>(raw.size())) throw FormatError("PPM: truncated pixel data");
    for (std::size_t i = 0; i < R * C; ++i) {
      for (int ch = 0; ch < 3; ++ch) {
        const long v = raw[3 * i + ch];
        if (v > maxval) throw FormatError("PPM: sample exceeds maxval");
        planes[ch].values()[i] = static_cast<double>(v) * scale;
      }
    }
  } else {
    for (std::size_t i = 0; i < R * C; ++i) {
      for (int ch = 0; ch < 3; ++ch) {
        long v = -1;
        if (!(in >> v)) throw FormatError("PPM: truncated pixel data");
        if (v < 0 || v > maxval) throw FormatError("PPM: sample out of range");
        planes[ch].values()[i] = static_cast<double>(v) * scale;
      }
    }
  }
  return RGBImage(std::move(planes[0]), std::move(planes[1]), std::move(planes[2]));
}

RGBImage load_ppm(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_ppm(in);
}

void write_ppm(std::ostream& out, const RGBImage& img) {
  out << "P6\n" << img.cols() << ' ' << img.rows() << "\n255\n";
  const std::size_t n = img.rows() * img.cols();
  std::vector<unsigned char> raw(n * 3);
  const FeatureMap* planes[3] = {&img.r, &img.g, &img.b};
  for (std::size_t i = 0; i < n; ++i) {
    for (int ch = 0; ch < 3; ++ch) {
      raw[3 * i + ch] = static_cast<unsigned char>(std::lround(std::clamp(planes[ch]->values()[i], 0.0, 1.0) * 255.0));
    }
  }
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
}

void save_ppm(const std::filesystem::path& path, const RGBImage& img) {
  auto out = open_out(path);
  write_ppm(out, img);
}

void write_pgm(std::ostream& out, const Grid<std::uint8_t>& img) {
  out << "P5\n" << img.cols() << ' ' << img.rows() << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.values().data()), static_cast<std::streamsize>(img.size()));
}

void save_pgm(const std::filesystem::path& path, const Grid<std::uint8_t>& img) {
  auto out = open_out(path);
  write_pgm(out, img);
}

Grid<std::uint8_t> read_pgm(std::istream& in) {
  char p = 0, kind = 0;
  in.get(p).get(kind);
  if (!in || p != 'P' || kind != '5') throw FormatError("PGM: expected P5");
  const long cols = read_pnm_int(in);
  const long rows = read_pnm_int(in);
  const long maxval = read_pnm_int(in);
  if (cols <= 0 || rows <= 0 || maxval <= 0 || maxval > 255) throw FormatError("PGM: bad header");
  in.get();
  Grid<std::uint8_t> img(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), 0);
  in.read(reinterpret_cast<char*>(img.values().data()), static_cast<std::streamsize>(img.size()));
  if (in.gcount() != static_cast<std::streamsize>(img.size())) throw FormatError("PGM: truncated pixel data");
  return img;
}

}  // namespace io
}  // namespace fgo
