#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "boxmerge/error.hpp"
#include "boxmerge/point_set.hpp"

namespace boxmerge {

struct Rgba {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  std::uint8_t a = 0;

  friend bool operator==(const Rgba&, const Rgba&) = default;
};

/// 8-bit RGBA raster, row-major.
class RasterImage {
 public:
  RasterImage(std::uint32_t width, std::uint32_t height)
      : RasterImage(width, height,
                    std::vector<Rgba>(std::size_t{width} * std::size_t{height})) {}

  RasterImage(std::uint32_t width, std::uint32_t height, std::vector<Rgba> pixels)
      : width_(width), height_(height), pixels_(std::move(pixels)) {
    if (width_ == 0 || height_ == 0) {
      throw Error(ErrorCode::InvalidArgument, "image dimensions must be positive");
    }
    if (pixels_.size() != std::size_t{width_} * height_) {
      throw Error(ErrorCode::InvalidArgument,
                  "pixel buffer holds " + std::to_string(pixels_.size()) + " pixels, expected " +
                      std::to_string(std::size_t{width_} * height_));
    }
  }

  std::uint32_t width() const noexcept { return width_; }
  std::uint32_t height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept { return pixels_.size(); }

  const Rgba& at(std::uint32_t x, std::uint32_t y) const { return pixels_[index(x, y)]; }
  Rgba& at(std::uint32_t x, std::uint32_t y) { return pixels_[index(x, y)]; }

  const std::vector<Rgba>& pixels() const noexcept { return pixels_; }

  friend bool operator==(const RasterImage&, const RasterImage&) = default;

 private:
  std::size_t index(std::uint32_t x, std::uint32_t y) const {
    return std::size_t{y} * width_ + x;
  }

  std::uint32_t width_;
  std::uint32_t height_;
  std::vector<Rgba> pixels_;
};

/// Pixels with alpha <= threshold are transparent and left out of the embedding.
struct AlphaPolicy {
  int threshold = 0;

  void validate() const {
    if (threshold < 0 || threshold > 255) {
      throw Error(ErrorCode::InvalidArgument,
                  "alpha threshold must lie in [0, 255], got " + std::to_string(threshold));
    }
  }
};

inline constexpr std::uint32_t kColourAxisLength = 256;

inline std::vector<AxisSpec> image_axes(std::uint32_t width, std::uint32_t height) {
  return {AxisSpec(width), AxisSpec(height), AxisSpec(kColourAxisLength),
          AxisSpec(kColourAxisLength), AxisSpec(kColourAxisLength)};
}

/// Embeds an image as the 5-D set {(x, y, r, g, b)} of its visible pixels.
inline PointSet image_to_pointset(const RasterImage& image, const AlphaPolicy& policy = {}) {
  policy.validate();
  if (image.width() < 2 || image.height() < 2) {
    throw Error(ErrorCode::ImageTooSmall,
                std::to_string(image.width()) + "x" + std::to_string(image.height()) +
                    " image; both sides must be at least 2");
  }

  std::vector<Coord> coords;
  coords.reserve(image.pixel_count() * 5);
  for (std::uint32_t y = 0; y < image.height(); ++y) {
    for (std::uint32_t x = 0; x < image.width(); ++x) {
      const Rgba& px = image.at(x, y);
      if (px.a <= policy.threshold) continue;
      coords.insert(coords.end(), {x, y, px.r, px.g, px.b});
    }
  }
  if (coords.empty()) {
    throw Error(ErrorCode::AllTransparent, "every pixel is at or below the alpha threshold");
  }
  return PointSet(image_axes(image.width(), image.height()), std::move(coords),
                  std::uint64_t{image.width()} * image.height());
}

/// Inverse of image_to_pointset for image-shaped sets: every point becomes an
/// opaque pixel and every position without a point is fully transparent black.
inline RasterImage render_image(const PointSet& points) {
  const auto axes = points.axes();
  if (axes.size() != 5 || axes[2].length() != kColourAxisLength ||
      axes[3].length() != kColourAxisLength || axes[4].length() != kColourAxisLength) {
    throw Error(ErrorCode::InvalidArgument, "only (x, y, r, g, b) sets can be rendered");
  }
  RasterImage image(axes[0].length(), axes[1].length());
  std::vector<bool> filled(image.pixel_count(), false);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto p = points.point(i);
    const std::size_t slot = std::size_t{p[1]} * image.width() + p[0];
    if (filled[slot]) {
      throw Error(ErrorCode::InvalidArgument,
                  "two colours at pixel (" + std::to_string(p[0]) + ", " + std::to_string(p[1]) +
                      ")");
    }
    filled[slot] = true;
    image.at(p[0], p[1]) = Rgba{static_cast<std::uint8_t>(p[2]), static_cast<std::uint8_t>(p[3]),
                                static_cast<std::uint8_t>(p[4]), 255};
  }
  return image;
}

// Synthetic fixtures with known box dimension.

/// Colour line from (0, 0, 255, 0, 0) to (255, 255, 0, 255, 255) on an
/// otherwise transparent 256x256 frame. D = 1.
inline PointSet gen_diagonal_line() {
  std::vector<Coord> coords;
  coords.reserve(256 * 5);
  for (Coord i = 0; i < 256; ++i) coords.insert(coords.end(), {i, i, 255 - i, i, i});
  return PointSet(image_axes(256, 256), std::move(coords), std::uint64_t{256} * 256);
}

namespace detail {

// Horizontal and vertical ramps spanning 0..255 across the frame; for a
// 256-pixel side these are the identity and 255 - y.
inline Coord ramp(std::uint32_t position, std::uint32_t side) {
  return static_cast<Coord>(std::uint64_t{position} * 255 / (side - 1));
}

}  // namespace detail

/// Red ramps 0..255 along x, green 255..0 along y, blue fixed at 128. D = 2.
inline PointSet gen_gradient_plane(std::uint32_t side = 256) {
  if (side < 2) throw Error(ErrorCode::ImageTooSmall, "fixture side must be at least 2");
  std::vector<Coord> coords;
  coords.reserve(std::size_t{side} * side * 5);
  for (Coord y = 0; y < side; ++y) {
    for (Coord x = 0; x < side; ++x) {
      coords.insert(coords.end(),
                    {x, y, detail::ramp(x, side), 255 - detail::ramp(y, side), 128});
    }
  }
  return PointSet(image_axes(side, side), std::move(coords), std::uint64_t{side} * side);
}

/// The gradient plane with uniform noise in the last `noisy_channels` colour
/// channels: 1 replaces blue, 2 green and blue, 3 all three. Expected D is
/// 2 + noisy_channels.
///
/// Noise bytes are the top 8 bits of successive std::mt19937_64 outputs
/// seeded with `seed`, drawn in row-major pixel order and r, g, b order within
/// a pixel. Both the engine and this reduction are fully specified by the
/// standard, so a seed gives the same image on every platform.
inline PointSet gen_noise(int noisy_channels, std::uint64_t seed, std::uint32_t side = 256) {
  if (noisy_channels < 1 || noisy_channels > 3) {
    throw Error(ErrorCode::InvalidArgument,
                "noisy channel count must be 1, 2 or 3, got " + std::to_string(noisy_channels));
  }
  if (side < 2) throw Error(ErrorCode::ImageTooSmall, "fixture side must be at least 2");

  std::mt19937_64 engine(seed);
  const auto noise = [&engine] { return static_cast<Coord>(engine() >> 56); };

  std::vector<Coord> coords;
  coords.reserve(std::size_t{side} * side * 5);
  for (Coord y = 0; y < side; ++y) {
    for (Coord x = 0; x < side; ++x) {
      const Coord r = noisy_channels >= 3 ? noise() : detail::ramp(x, side);
      const Coord g = noisy_channels >= 2 ? noise() : 255 - detail::ramp(y, side);
      const Coord b = noise();
      coords.insert(coords.end(), {x, y, r, g, b});
    }
  }
  return PointSet(image_axes(side, side), std::move(coords), std::uint64_t{side} * side);
}

}  // namespace boxmerge
