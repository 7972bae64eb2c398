#pragma once

// PNG (via libpng) and binary PPM readers/writers. Decoding never applies
// gamma or colour management: channel values are the raw 8-bit codes.

#include <png.h>

#include <array>
#include <cctype>
#include <csetjmp>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <memory>
#include <string>
#include <vector>

#include "boxmerge/error.hpp"
#include "boxmerge/imaging.hpp"

namespace boxmerge {

namespace detail {

struct FileCloser {
  void operator()(std::FILE* fp) const noexcept { std::fclose(fp); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

inline FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr fp(std::fopen(path.string().c_str(), mode));
  if (!fp) {
    throw Error(ErrorCode::IoError, "cannot open " + path.string() + ": " + std::strerror(errno));
  }
  return fp;
}

enum class PngStatus { Ok, Failed, BitDepth };

// Everything libpng may need to clean up after a longjmp lives here, as
// plain pointers owned by the caller, so no destructor is ever skipped.
struct PngReadState {
  PngStatus status = PngStatus::Ok;
  std::array<char, 256> message{};
  png_uint_32 width = 0;
  png_uint_32 height = 0;
  int bit_depth = 0;
  unsigned char* data = nullptr;
  png_bytep* rows = nullptr;
};

inline void png_error_to_buffer(png_structp png, png_const_charp msg) {
  auto* buffer = static_cast<std::array<char, 256>*>(png_get_error_ptr(png));
  std::snprintf(buffer->data(), buffer->size(), "%s", msg);
  png_longjmp(png, 1);
}

inline void png_ignore_warning(png_structp, png_const_charp) {}

inline void read_png_raw(std::FILE* fp, PngReadState& state) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &state.message,
                                           png_error_to_buffer, png_ignore_warning);
  if (png == nullptr) {
    state.status = PngStatus::Failed;
    std::snprintf(state.message.data(), state.message.size(), "out of memory");
    return;
  }
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    state.status = PngStatus::Failed;
    std::snprintf(state.message.data(), state.message.size(), "out of memory");
    return;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    state.status = PngStatus::Failed;
    return;
  }

  png_init_io(png, fp);
  png_read_info(png, info);
  int color_type = 0;
  png_get_IHDR(png, info, &state.width, &state.height, &state.bit_depth, &color_type, nullptr,
               nullptr, nullptr);
  if (state.bit_depth > 8) {
    png_destroy_read_struct(&png, &info, nullptr);
    state.status = PngStatus::BitDepth;
    return;
  }

  const bool has_trns = png_get_valid(png, info, PNG_INFO_tRNS) != 0;
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && state.bit_depth < 8) {
    png_set_expand_gray_1_2_4_to_8(png);
  }
  if (has_trns) png_set_tRNS_to_alpha(png);
  if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
    png_set_gray_to_rgb(png);
  }
  if ((color_type & PNG_COLOR_MASK_ALPHA) == 0 && !has_trns) {
    png_set_filler(png, 0xFF, PNG_FILLER_AFTER);
  }
  png_set_interlace_handling(png);
  png_read_update_info(png, info);

  const std::size_t row_bytes = png_get_rowbytes(png, info);
  if (row_bytes != std::size_t{state.width} * 4) {
    png_destroy_read_struct(&png, &info, nullptr);
    state.status = PngStatus::Failed;
    std::snprintf(state.message.data(), state.message.size(), "unexpected row layout");
    return;
  }
  state.data = static_cast<unsigned char*>(std::malloc(row_bytes * state.height));
  state.rows = static_cast<png_bytep*>(std::malloc(sizeof(png_bytep) * state.height));
  if (state.data == nullptr || state.rows == nullptr) {
    png_destroy_read_struct(&png, &info, nullptr);
    state.status = PngStatus::Failed;
    std::snprintf(state.message.data(), state.message.size(), "out of memory");
    return;
  }
  for (png_uint_32 y = 0; y < state.height; ++y) state.rows[y] = state.data + y * row_bytes;
  png_read_image(png, state.rows);
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
}

inline bool write_png_raw(std::FILE* fp, png_uint_32 width, png_uint_32 height,
                          const unsigned char* rgba, std::array<char, 256>& message) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &message,
                                            png_error_to_buffer, png_ignore_warning);
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
  png_init_io(png, fp);
  png_set_IHDR(png, info, width, height, 8, PNG_COLOR_TYPE_RGB_ALPHA, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (png_uint_32 y = 0; y < height; ++y) {
    png_write_row(png, rgba + std::size_t{y} * width * 4);
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

inline RasterImage read_png(std::FILE* fp, const std::string& name) {
  PngReadState state;
  read_png_raw(fp, state);
  const std::unique_ptr<unsigned char, decltype(&std::free)> data(state.data, &std::free);
  const std::unique_ptr<png_bytep, decltype(&std::free)> rows(state.rows, &std::free);

  switch (state.status) {
    case PngStatus::BitDepth:
      throw Error(ErrorCode::BitDepthUnsupported,
                  name + " has " + std::to_string(state.bit_depth) +
                      "-bit samples; only 8-bit images are supported");
    case PngStatus::Failed:
      throw Error(ErrorCode::DecodeError, name + ": " + state.message.data());
    case PngStatus::Ok:
      break;
  }

  std::vector<Rgba> pixels(std::size_t{state.width} * state.height);
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    const unsigned char* px = state.data + i * 4;
    pixels[i] = Rgba{px[0], px[1], px[2], px[3]};
  }
  return RasterImage(state.width, state.height, std::move(pixels));
}

// Reads the next whitespace-delimited header token, skipping '#' comments.
inline std::string next_ppm_token(const std::string& bytes, std::size_t& pos) {
  while (pos < bytes.size()) {
    const auto c = static_cast<unsigned char>(bytes[pos]);
    if (c == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else if (std::isspace(c)) {
      ++pos;
    } else {
      break;
    }
  }
  const std::size_t start = pos;
  while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
  return bytes.substr(start, pos - start);
}

inline std::uint32_t parse_ppm_number(const std::string& token, const std::string& name) {
  if (token.empty() || token.size() > 9 ||
      token.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(ErrorCode::DecodeError, name + ": malformed PPM header field '" + token + "'");
  }
  return static_cast<std::uint32_t>(std::stoul(token));
}

inline RasterImage read_ppm(const std::string& bytes, const std::string& name) {
  std::size_t pos = 0;
  if (next_ppm_token(bytes, pos) != "P6") {
    throw Error(ErrorCode::UnsupportedFormat, name + " is not a binary (P6) PPM");
  }
  const std::uint32_t width = parse_ppm_number(next_ppm_token(bytes, pos), name);
  const std::uint32_t height = parse_ppm_number(next_ppm_token(bytes, pos), name);
  const std::uint32_t maxval = parse_ppm_number(next_ppm_token(bytes, pos), name);
  if (width == 0 || height == 0) {
    throw Error(ErrorCode::DecodeError, name + ": zero image dimension");
  }
  if (maxval > 255) {
    throw Error(ErrorCode::BitDepthUnsupported,
                name + " has maxval " + std::to_string(maxval) + "; only 8-bit PPM is supported");
  }
  if (maxval != 255) {
    throw Error(ErrorCode::UnsupportedFormat,
                name + " has maxval " + std::to_string(maxval) + "; expected 255");
  }
  // Exactly one whitespace byte separates the header from the raster.
  if (pos >= bytes.size()) throw Error(ErrorCode::DecodeError, name + ": truncated PPM");
  ++pos;

  const std::size_t count = std::size_t{width} * height;
  if (bytes.size() - pos < count * 3) {
    throw Error(ErrorCode::DecodeError, name + ": truncated PPM raster");
  }
  std::vector<Rgba> pixels(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto* px = reinterpret_cast<const unsigned char*>(bytes.data() + pos + i * 3);
    pixels[i] = Rgba{px[0], px[1], px[2], 255};
  }
  return RasterImage(width, height, std::move(pixels));
}

}  // namespace detail

/// Decodes an 8-bit PNG (grey, grey+alpha, RGB, RGBA or palette) or a binary
/// PPM into RGBA. Missing alpha becomes 255 and grey is copied to r, g and b.
inline RasterImage decode_image_file(const std::filesystem::path& path) {
  const std::string name = path.string();
  detail::FilePtr fp = detail::open_file(path, "rb");

  std::array<unsigned char, 8> magic{};
  const std::size_t got = std::fread(magic.data(), 1, magic.size(), fp.get());
  if (got == magic.size() && png_sig_cmp(magic.data(), 0, magic.size()) == 0) {
    std::rewind(fp.get());
    return detail::read_png(fp.get(), name);
  }
  if (got >= 2 && magic[0] == 'P' && magic[1] == '6') {
    std::rewind(fp.get());
    std::string bytes;
    std::array<char, 1 << 16> chunk{};
    std::size_t n = 0;
    while ((n = std::fread(chunk.data(), 1, chunk.size(), fp.get())) > 0) bytes.append(chunk.data(), n);
    if (std::ferror(fp.get())) throw Error(ErrorCode::IoError, "read error on " + name);
    return detail::read_ppm(bytes, name);
  }
  throw Error(ErrorCode::UnsupportedFormat, name + " is neither PNG nor binary PPM");
}

/// Writes 8-bit RGBA PNG. Output bytes depend only on the pixels.
inline void write_png(const RasterImage& image, const std::filesystem::path& path) {
  std::vector<unsigned char> rgba;
  rgba.reserve(image.pixel_count() * 4);
  for (const Rgba& px : image.pixels()) rgba.insert(rgba.end(), {px.r, px.g, px.b, px.a});

  detail::FilePtr fp = detail::open_file(path, "wb");
  std::array<char, 256> message{};
  if (!detail::write_png_raw(fp.get(), image.width(), image.height(), rgba.data(), message)) {
    throw Error(ErrorCode::IoError, "PNG encoding of " + path.string() + " failed: " +
                                        message.data());
  }
  if (std::fflush(fp.get()) != 0) {
    throw Error(ErrorCode::IoError, "cannot write " + path.string());
  }
}

/// Writes binary PPM (P6). Alpha is discarded.
inline void write_ppm(const RasterImage& image, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  out << "P6\n" << image.width() << ' ' << image.height() << "\n255\n";
  for (const Rgba& px : image.pixels()) {
    const char rgb[3] = {static_cast<char>(px.r), static_cast<char>(px.g), static_cast<char>(px.b)};
    out.write(rgb, 3);
  }
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
}

}  // namespace boxmerge
