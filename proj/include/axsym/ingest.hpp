#pragma once

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "axsym/error.hpp"
#include "axsym/estimator.hpp"
#include "axsym/peaks.hpp"
#include "axsym/rng.hpp"

namespace axsym {

//============================================================================
// Images
//============================================================================

// Grayscale raster with intensities normalized to [0, 1].
struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> pixels;  // row-major, pixels[r * width + c]

  double at(std::size_t r, std::size_t c) const { return pixels[r * width + c]; }
};

namespace detail {

// Header tokenizer for PGM: skips whitespace and '#' comments to end of line.
inline std::string next_pgm_token(const std::string& bytes, std::size_t& pos) {
  for (;;) {
    while (pos < bytes.size() &&
           std::isspace(static_cast<unsigned char>(bytes[pos])))
      ++pos;
    if (pos < bytes.size() && bytes[pos] == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      continue;
    }
    break;
  }
  if (pos >= bytes.size()) throw io_error("PGM: truncated header");
  std::size_t start = pos;
  while (pos < bytes.size() &&
         !std::isspace(static_cast<unsigned char>(bytes[pos])) &&
         bytes[pos] != '#')
    ++pos;
  return bytes.substr(start, pos - start);
}

inline std::size_t parse_pgm_uint(const std::string& tok, const char* what) {
  if (tok.empty()) throw io_error(std::string("PGM: missing ") + what);
  std::size_t v = 0;
  for (char ch : tok) {
    if (ch < '0' || ch > '9')
      throw io_error(std::string("PGM: malformed ") + what + " '" + tok + "'");
    v = v * 10 + static_cast<std::size_t>(ch - '0');
    if (v > 1000000000) throw io_error(std::string("PGM: ") + what + " too large");
  }
  return v;
}

}  // namespace detail

// Parses PGM from raw bytes. P2 (ASCII) and P5 (binary) are supported,
// maxval up to 65535; 16-bit P5 samples are big-endian per the format.
inline GrayImage parse_pgm(const std::string& bytes) {
  std::size_t pos = 0;
  const std::string magic = detail::next_pgm_token(bytes, pos);
  if (magic != "P2" && magic != "P5")
    throw io_error("PGM: unsupported magic '" + magic + "'");
  const std::size_t width =
      detail::parse_pgm_uint(detail::next_pgm_token(bytes, pos), "width");
  const std::size_t height =
      detail::parse_pgm_uint(detail::next_pgm_token(bytes, pos), "height");
  const std::size_t maxval =
      detail::parse_pgm_uint(detail::next_pgm_token(bytes, pos), "maxval");
  if (width == 0 || height == 0) throw io_error("PGM: zero dimension");
  if (maxval == 0 || maxval > 65535)
    throw io_error("PGM: maxval must be in [1, 65535]");

  GrayImage img;
  img.width = width;
  img.height = height;
  img.pixels.reserve(width * height);
  const double scale = 1.0 / static_cast<double>(maxval);

  if (magic == "P2") {
    for (std::size_t i = 0; i < width * height; ++i) {
      const std::size_t v =
          detail::parse_pgm_uint(detail::next_pgm_token(bytes, pos), "sample");
      if (v > maxval) throw io_error("PGM: sample exceeds maxval");
      img.pixels.push_back(static_cast<double>(v) * scale);
    }
  } else {
    // Exactly one whitespace byte separates the header from the raster.
    if (pos >= bytes.size() ||
        !std::isspace(static_cast<unsigned char>(bytes[pos])))
      throw io_error("PGM: malformed header/raster separator");
    ++pos;
    const std::size_t bytes_per_sample = maxval < 256 ? 1 : 2;
    const std::size_t need = width * height * bytes_per_sample;
    if (bytes.size() - pos < need) throw io_error("PGM: truncated raster");
    for (std::size_t i = 0; i < width * height; ++i) {
      std::size_t v;
      if (bytes_per_sample == 1) {
        v = static_cast<unsigned char>(bytes[pos + i]);
      } else {
        const std::size_t hi = static_cast<unsigned char>(bytes[pos + 2 * i]);
        const std::size_t lo = static_cast<unsigned char>(bytes[pos + 2 * i + 1]);
        v = hi * 256 + lo;
      }
      if (v > maxval) throw io_error("PGM: sample exceeds maxval");
      img.pixels.push_back(static_cast<double>(v) * scale);
    }
  }
  return img;
}

// Parses a CSV intensity matrix: one row per line, comma-separated values
// already in [0, 1], all rows the same width.
inline GrayImage parse_csv_matrix(const std::string& text) {
  GrayImage img;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        while (used < cell.size() &&
               std::isspace(static_cast<unsigned char>(cell[used])))
          ++used;
        if (used != cell.size()) throw std::invalid_argument(cell);
        row.push_back(v);
      } catch (const std::exception&) {
        throw io_error("CSV image: malformed cell '" + cell + "'");
      }
      if (row.back() < 0.0 || row.back() > 1.0)
        throw validation_error("CSV image: intensity outside [0, 1]");
    }
    if (row.empty()) throw io_error("CSV image: empty row");
    if (img.width == 0)
      img.width = row.size();
    else if (row.size() != img.width)
      throw io_error("CSV image: ragged rows");
    img.pixels.insert(img.pixels.end(), row.begin(), row.end());
    ++img.height;
  }
  if (img.height == 0) throw io_error("CSV image: no rows");
  return img;
}

// Loads an image file, sniffing the format: a P2/P5 magic means PGM,
// anything else is treated as a CSV matrix.
inline GrayImage load_image(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open image file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();
  std::size_t p = 0;
  while (p < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[p])))
    ++p;
  if (p + 1 < bytes.size() && bytes[p] == 'P' &&
      (bytes[p + 1] == '2' || bytes[p + 1] == '5'))
    return parse_pgm(bytes.substr(p));
  return parse_csv_matrix(bytes);
}

//============================================================================
// Image to point cloud
//============================================================================

struct ThresholdParams {
  double threshold = 0.45;
  std::size_t n = 10000;
  double jitter = 1.0;
  bool allow_replacement = false;
};

// Samples n points from the pixels with intensity strictly below the
// threshold. Pixel (r, c) maps to x = c - (w-1)/2, y = (h-1)/2 - r, so the
// image center is the origin and y points up. Draw order: the selection
// first (a partial Fisher-Yates over the qualifying list in row-major
// order, or n independent draws with replacement), then two jitter
// uniforms per selected pixel, each mapped to (-jitter/2, jitter/2).
inline PointCloud threshold_points(const GrayImage& img,
                                   const ThresholdParams& params, Rng& rng) {
  require(params.n >= 1, "threshold_points needs n >= 1");
  require(params.jitter >= 0.0, "jitter must be nonnegative");
  std::vector<std::size_t> qualifying;
  for (std::size_t r = 0; r < img.height; ++r)
    for (std::size_t c = 0; c < img.width; ++c)
      if (img.at(r, c) < params.threshold) qualifying.push_back(r * img.width + c);
  if (qualifying.empty())
    throw validation_error("empty region: no pixels below threshold");

  std::vector<std::size_t> chosen;
  chosen.reserve(params.n);
  if (params.allow_replacement) {
    for (std::size_t i = 0; i < params.n; ++i)
      chosen.push_back(qualifying[rng.bounded(qualifying.size())]);
  } else {
    if (params.n > qualifying.size())
      throw validation_error(
          "requested more points than qualifying pixels; enable replacement");
    for (std::size_t i = 0; i < params.n; ++i) {
      const std::size_t j =
          i + static_cast<std::size_t>(rng.bounded(qualifying.size() - i));
      std::swap(qualifying[i], qualifying[j]);
      chosen.push_back(qualifying[i]);
    }
  }

  const double cx = (static_cast<double>(img.width) - 1.0) / 2.0;
  const double cy = (static_cast<double>(img.height) - 1.0) / 2.0;
  PointCloud cloud;
  cloud.points.reserve(params.n);
  for (std::size_t idx : chosen) {
    const double r = static_cast<double>(idx / img.width);
    const double c = static_cast<double>(idx % img.width);
    const double dx = (rng.uniform() - 0.5) * params.jitter;
    const double dy = (rng.uniform() - 0.5) * params.jitter;
    cloud.points.push_back({c - cx + dx, cy - r + dy});
  }
  return cloud;
}

//============================================================================
// End-to-end image estimate
//============================================================================

struct ImageParams {
  ThresholdParams threshold;
  std::size_t k = 50;
  std::size_t grid_size = 200;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct ImageEstimate {
  PointCloud points;
  SymmetryProfile profile;
  PeakResult axes;
};

// threshold_points and profile draw from separate streams derived from the
// one seed, so the pair (image, params) fixes every byte of the result.
inline ImageEstimate estimate_image_axis(const GrayImage& img,
                                         const ImageParams& params) {
  Rng sample_rng(derive_stream(params.seed, 0x706978656C73ULL));  // "pixels"
  ImageEstimate out;
  out.points = threshold_points(img, params.threshold, sample_rng);
  const Rng prof_rng(derive_stream(params.seed, 0x70726F66696CULL));  // "profil"
  out.profile =
      profile(out.points, params.grid_size, params.k, prof_rng, params.threads);
  out.axes = axes_from_profile(out.profile);
  return out;
}

}  // namespace axsym
