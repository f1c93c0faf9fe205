// Copyright 2026 The detailprior Authors.
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

#include "detailprior/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>
#include <vector>

#include "detailprior/error.hpp"

namespace detailprior {
namespace fs = std::filesystem;
namespace {

constexpr std::uint8_t kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
constexpr std::size_t kDplnHeaderBytes = 16;

std::vector<std::uint8_t> read_all(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(IoError::Kind::kUnreadable, path, "cannot open file");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError(IoError::Kind::kUnreadable, path, "read failed");
  return bytes;
}

// ---------------------------------------------------------------------------
// PNG

struct PngMessage {
  char text[256] = {};
};

void png_error_handler(png_structp png, png_const_charp message) {
  auto* sink = static_cast<PngMessage*>(png_get_error_ptr(png));
  std::snprintf(sink->text, sizeof(sink->text), "%s", message);
  png_longjmp(png, 1);
}

void png_warning_handler(png_structp, png_const_charp) {}

struct MemoryReader {
  std::span<const std::uint8_t> data;
  std::size_t pos = 0;
};

void png_read_memory(png_structp png, png_bytep out, png_size_t count) {
  auto* reader = static_cast<MemoryReader*>(png_get_io_ptr(png));
  if (reader->pos + count > reader->data.size()) png_error(png, "unexpected end of data");
  std::memcpy(out, reader->data.data() + reader->pos, count);
  reader->pos += count;
}

void png_write_memory(png_structp png, png_bytep data, png_size_t count) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + count);
}

void png_flush_noop(png_structp) {}

struct DecodedPng {
  png_uint_32 width = 0;
  png_uint_32 height = 0;
  int channels = 0;
  int bit_depth = 0;
  std::vector<std::uint8_t> pixels;
  std::vector<png_bytep> rows;
};

// Everything with a destructor lives outside the setjmp frame.
bool decode_png_raw(MemoryReader& reader, DecodedPng& out, PngMessage& message) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &message, png_error_handler,
                                           png_warning_handler);
  if (png == nullptr) {
    std::snprintf(message.text, sizeof(message.text), "out of memory");
    return false;
  }
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    std::snprintf(message.text, sizeof(message.text), "out of memory");
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }

  png_set_read_fn(png, &reader, png_read_memory);
  png_read_info(png, info);
  png_set_expand(png);
  png_set_strip_alpha(png);
  png_set_interlace_handling(png);
  png_read_update_info(png, info);

  out.width = png_get_image_width(png, info);
  out.height = png_get_image_height(png, info);
  out.channels = png_get_channels(png, info);
  out.bit_depth = png_get_bit_depth(png, info);
  const png_size_t stride = png_get_rowbytes(png, info);
  out.pixels.resize(stride * out.height);
  out.rows.resize(out.height);
  for (png_uint_32 y = 0; y < out.height; ++y) out.rows[y] = out.pixels.data() + y * stride;
  png_read_image(png, out.rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return true;
}

RasterImage load_png(std::span<const std::uint8_t> bytes, const fs::path& path) {
  MemoryReader reader{bytes, 0};
  DecodedPng decoded;
  PngMessage message;
  if (!decode_png_raw(reader, decoded, message)) {
    throw IoError(IoError::Kind::kCorrupt, path, std::string("corrupt PNG: ") + message.text);
  }
  if (decoded.channels != 1 && decoded.channels != 3) {
    throw IoError(IoError::Kind::kUnsupportedFormat, path,
                  "unsupported PNG channel count " + std::to_string(decoded.channels));
  }
  if (decoded.bit_depth != 8 && decoded.bit_depth != 16) {
    throw IoError(IoError::Kind::kUnsupportedFormat, path,
                  "unsupported PNG bit depth " + std::to_string(decoded.bit_depth));
  }
  const std::size_t count =
      static_cast<std::size_t>(decoded.width) * decoded.height * decoded.channels;
  std::vector<double> samples(count);
  if (decoded.bit_depth == 8) {
    for (std::size_t i = 0; i < count; ++i) samples[i] = decoded.pixels[i];
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const unsigned v = (unsigned{decoded.pixels[2 * i]} << 8) | decoded.pixels[2 * i + 1];
      samples[i] = v * (255.0 / 65535.0);
    }
  }
  return RasterImage(decoded.width, decoded.height, decoded.channels, std::move(samples));
}

bool encode_png_raw(std::vector<std::uint8_t>& out, std::span<const std::uint8_t> pixels,
                    png_uint_32 width, png_uint_32 height, int channels, int bit_depth,
                    std::vector<png_bytep>& rows, PngMessage& message) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &message, png_error_handler,
                                            png_warning_handler);
  if (png == nullptr) return false;
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return false;
  }
  png_set_write_fn(png, &out, png_write_memory, png_flush_noop);
  png_set_IHDR(png, info, width, height, bit_depth,
               channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  const std::size_t stride = static_cast<std::size_t>(width) * channels * (bit_depth / 8);
  rows.resize(height);
  for (png_uint_32 y = 0; y < height; ++y) {
    rows[y] = const_cast<png_bytep>(pixels.data() + y * stride);
  }
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

std::vector<std::uint8_t> encode_png(std::span<const std::uint8_t> pixels, std::size_t width,
                                     std::size_t height, int channels, int bit_depth,
                                     const fs::path& path) {
  std::vector<std::uint8_t> out;
  std::vector<png_bytep> rows;
  PngMessage message;
  if (!encode_png_raw(out, pixels, static_cast<png_uint_32>(width),
                      static_cast<png_uint_32>(height), channels, bit_depth, rows, message)) {
    throw IoError(IoError::Kind::kWriteFailed, path,
                  std::string("PNG encoding failed: ") + message.text);
  }
  return out;
}

// ---------------------------------------------------------------------------
// PNM (P5 / P6)

class PnmHeaderParser {
 public:
  PnmHeaderParser(std::span<const std::uint8_t> bytes, const fs::path& path)
      : bytes_(bytes), path_(path) {}

  unsigned long next_number() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw IoError(IoError::Kind::kCorrupt, path_, "malformed PNM header");
    }
    unsigned long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_++] - '0');
      if (value > (1UL << 30)) throw IoError(IoError::Kind::kCorrupt, path_, "PNM value overflow");
    }
    return value;
  }

  // Exactly one whitespace byte separates the header from the raster.
  std::size_t raster_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw IoError(IoError::Kind::kCorrupt, path_, "malformed PNM header");
    }
    return pos_ + 1;
  }

  void skip(std::size_t n) { pos_ += n; }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  const fs::path& path_;
  std::size_t pos_ = 0;
};

RasterImage load_pnm(std::span<const std::uint8_t> bytes, const fs::path& path) {
  const std::size_t channels = bytes[1] == '5' ? 1 : 3;
  PnmHeaderParser parser(bytes, path);
  parser.skip(2);
  const auto width = parser.next_number();
  const auto height = parser.next_number();
  const auto maxval = parser.next_number();
  if (width == 0 || height == 0) throw IoError(IoError::Kind::kCorrupt, path, "zero-sized PNM");
  if (maxval == 0 || maxval > 65535) {
    throw IoError(IoError::Kind::kUnsupportedFormat, path,
                  "unsupported PNM maxval " + std::to_string(maxval));
  }
  const std::size_t offset = parser.raster_offset();
  const std::size_t bytes_per_sample = maxval < 256 ? 1 : 2;
  const std::size_t count = width * height * channels;
  if (bytes.size() < offset + count * bytes_per_sample) {
    throw IoError(IoError::Kind::kCorrupt, path, "truncated PNM raster");
  }
  const double scale = 255.0 / static_cast<double>(maxval);
  std::vector<double> samples(count);
  const std::uint8_t* data = bytes.data() + offset;
  for (std::size_t i = 0; i < count; ++i) {
    const unsigned v = bytes_per_sample == 1 ? unsigned{data[i]}
                                             : (unsigned{data[2 * i]} << 8) | data[2 * i + 1];
    samples[i] = std::min(v, static_cast<unsigned>(maxval)) * scale;
  }
  return RasterImage(width, height, channels, std::move(samples));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> bytes, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t{bytes[at + i]} << (8 * i);
  return v;
}

}  // namespace

RasterImage load_image(const fs::path& path) {
  const std::vector<std::uint8_t> bytes = read_all(path);
  if (bytes.size() >= 8 && std::equal(bytes.begin(), bytes.begin() + 8, kPngSignature)) {
    return load_png(bytes, path);
  }
  if (!bytes.empty() && bytes.size() < 8 &&
      std::equal(bytes.begin(), bytes.end(), kPngSignature)) {
    throw IoError(IoError::Kind::kCorrupt, path, "truncated PNG signature");
  }
  if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '5' || bytes[1] == '6')) {
    return load_pnm(bytes, path);
  }
  if (bytes.empty()) throw IoError(IoError::Kind::kCorrupt, path, "empty file");
  throw IoError(IoError::Kind::kUnsupportedFormat, path, "not a PNG, PGM (P5) or PPM (P6) file");
}

void save_image(const RasterImage& image, const fs::path& path) {
  if (image.pixel_count() == 0) {
    throw IoError(IoError::Kind::kWriteFailed, path, "cannot save an empty image");
  }
  std::vector<std::uint8_t> pixels(image.samples().size());
  auto src = image.samples();
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    pixels[i] = static_cast<std::uint8_t>(std::round(std::clamp(src[i], 0.0, 255.0)));
  }
  const auto png = encode_png(pixels, image.width(), image.height(),
                              static_cast<int>(image.channels()), 8, path);
  write_file_atomic(path, png);
}

std::vector<std::uint8_t> encode_dpln(const Plane& plane) {
  std::vector<std::uint8_t> out;
  out.reserve(kDplnHeaderBytes + 4 * plane.size());
  for (char c : {'D', 'P', 'L', 'N'}) out.push_back(static_cast<std::uint8_t>(c));
  put_u32(out, kDplnVersion);
  put_u32(out, static_cast<std::uint32_t>(plane.height()));
  put_u32(out, static_cast<std::uint32_t>(plane.width()));
  for (double s : plane.samples()) put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(s)));
  return out;
}

Plane decode_dpln(std::span<const std::uint8_t> bytes, const fs::path& origin) {
  if (bytes.size() < kDplnHeaderBytes || bytes[0] != 'D' || bytes[1] != 'P' || bytes[2] != 'L' ||
      bytes[3] != 'N') {
    throw IoError(IoError::Kind::kCorrupt, origin, "missing DPLN header");
  }
  const std::uint32_t version = get_u32(bytes, 4);
  if (version != kDplnVersion) {
    throw IoError(IoError::Kind::kUnsupportedFormat, origin,
                  "unsupported DPLN version " + std::to_string(version));
  }
  const std::size_t height = get_u32(bytes, 8);
  const std::size_t width = get_u32(bytes, 12);
  if (bytes.size() != kDplnHeaderBytes + 4 * width * height) {
    throw IoError(IoError::Kind::kCorrupt, origin, "DPLN payload length does not match header");
  }
  std::vector<double> samples(width * height);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const float v = std::bit_cast<float>(get_u32(bytes, kDplnHeaderBytes + 4 * i));
    if (!std::isfinite(v)) throw IoError(IoError::Kind::kCorrupt, origin, "non-finite DPLN sample");
    samples[i] = v;
  }
  return Plane(width, height, std::move(samples));
}

void write_dpln(const Plane& plane, const fs::path& path) {
  write_file_atomic(path, encode_dpln(plane));
}

Plane read_dpln(const fs::path& path) { return decode_dpln(read_all(path), path); }

fs::path range_sidecar_path(const fs::path& png_path) {
  fs::path sidecar = png_path;
  sidecar.replace_extension(".range");
  return sidecar;
}

void save_plane_visualization(const Plane& plane, const fs::path& png_path) {
  if (plane.empty()) throw IoError(IoError::Kind::kWriteFailed, png_path, "empty plane");
  const auto [lo_it, hi_it] = std::minmax_element(plane.samples().begin(), plane.samples().end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  const double span = hi - lo;
  std::vector<std::uint8_t> pixels(2 * plane.size());
  auto src = plane.samples();
  for (std::size_t i = 0; i < src.size(); ++i) {
    const double t = span > 0.0 ? (src[i] - lo) / span : 0.0;
    const auto v = static_cast<std::uint16_t>(std::round(std::clamp(t, 0.0, 1.0) * 65535.0));
    pixels[2 * i] = static_cast<std::uint8_t>(v >> 8);
    pixels[2 * i + 1] = static_cast<std::uint8_t>(v & 0xff);
  }
  write_file_atomic(png_path, encode_png(pixels, plane.width(), plane.height(), 1, 16, png_path));

  char text[96];
  const int n = std::snprintf(text, sizeof(text), "%.17g %.17g\n", lo, hi);
  const auto* begin = reinterpret_cast<const std::uint8_t*>(text);
  write_file_atomic(range_sidecar_path(png_path), std::span(begin, static_cast<std::size_t>(n)));
}

void write_file_atomic(const fs::path& path, std::span<const std::uint8_t> bytes) {
  fs::path temp = path;
  temp += ".partial";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(IoError::Kind::kWriteFailed, path, "cannot open for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) {
      std::error_code ignored;
      fs::remove(temp, ignored);
      throw IoError(IoError::Kind::kWriteFailed, path, "write failed");
    }
  }
  std::error_code ec;
  fs::rename(temp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(temp, ignored);
    throw IoError(IoError::Kind::kWriteFailed, path, "rename failed: " + ec.message());
  }
}

}  // namespace detailprior
