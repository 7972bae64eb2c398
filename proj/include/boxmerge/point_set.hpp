#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "boxmerge/detail/rows.hpp"
#include "boxmerge/error.hpp"

namespace boxmerge {

using Coord = std::uint32_t;

/// Extent of one axis: the number of addressable integer coordinate values.
/// Spatial axes use the image size in pixels, 8-bit colour axes use 256.
class AxisSpec {
 public:
  constexpr explicit AxisSpec(std::uint32_t length) : length_(length) {
    if (length == 0) {
      throw Error(ErrorCode::InvalidArgument, "axis length must be at least 1");
    }
  }

  constexpr std::uint32_t length() const noexcept { return length_; }

  friend constexpr bool operator==(AxisSpec, AxisSpec) = default;

 private:
  std::uint32_t length_;
};

inline std::vector<AxisSpec> make_axes(std::initializer_list<std::uint32_t> lengths) {
  std::vector<AxisSpec> axes;
  axes.reserve(lengths.size());
  for (const auto length : lengths) axes.emplace_back(length);
  return axes;
}

/// Box coordinate of one point coordinate when its axis is cut into `s`
/// equal partitions: floor(x * s / L).
constexpr Coord box_coordinate(Coord x, std::uint32_t s, std::uint32_t axis_length) noexcept {
  return static_cast<Coord>(std::uint64_t{x} * s / axis_length);
}

/// A finite set of integer points in E dimensions.
///
/// Points are stored flat and row-major, sorted lexicographically with
/// duplicates collapsed, so two sets with the same members compare equal no
/// matter how they were assembled.
///
/// `frame_size` is set for sets embedded from a raster image and holds the
/// pixel count of the full frame (width * height), including pixels that were
/// dropped as transparent. It is the largest number of points the set could
/// have held and is what the saturation cut-off is measured against.
class PointSet {
 public:
  PointSet(std::vector<AxisSpec> axes, std::vector<Coord> coords,
           std::optional<std::uint64_t> frame_size = std::nullopt)
      : axes_(std::move(axes)), coords_(std::move(coords)), frame_size_(frame_size) {
    if (axes_.empty()) {
      throw Error(ErrorCode::InvalidArgument, "a point set needs at least one axis");
    }
    const std::size_t dim = axes_.size();
    if (coords_.size() % dim != 0) {
      throw Error(ErrorCode::InvalidArgument,
                  "coordinate count " + std::to_string(coords_.size()) +
                      " is not a multiple of the dimension " + std::to_string(dim));
    }
    std::vector<std::uint64_t> extents(dim);
    for (std::size_t i = 0; i < dim; ++i) extents[i] = axes_[i].length();
    for (std::size_t k = 0; k < coords_.size(); ++k) {
      if (coords_[k] >= extents[k % dim]) {
        throw Error(ErrorCode::CoordinateOutOfRange,
                    "coordinate " + std::to_string(coords_[k]) + " on axis " +
                        std::to_string(k % dim) + " is outside [0, " +
                        std::to_string(extents[k % dim]) + ")");
      }
    }
    detail::sort_unique_rows(coords_, dim, std::span<const std::uint64_t>(extents));

    if (frame_size_ && (*frame_size_ == 0 || *frame_size_ < size())) {
      throw Error(ErrorCode::InvalidArgument,
                  "frame size " + std::to_string(*frame_size_) +
                      " is smaller than the point count " + std::to_string(size()));
    }
  }

  std::size_t dimension() const noexcept { return axes_.size(); }
  std::size_t size() const noexcept { return coords_.size() / axes_.size(); }
  bool empty() const noexcept { return coords_.empty(); }

  std::span<const AxisSpec> axes() const noexcept { return axes_; }
  std::span<const Coord> coords() const noexcept { return coords_; }
  std::span<const Coord> point(std::size_t index) const noexcept {
    return std::span<const Coord>(coords_).subspan(index * dimension(), dimension());
  }

  std::optional<std::uint64_t> frame_size() const noexcept { return frame_size_; }

  /// Size the saturation cut-off compares box counts against.
  std::uint64_t reference_size() const noexcept { return frame_size_.value_or(size()); }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::vector<AxisSpec> axes_;
  std::vector<Coord> coords_;
  std::optional<std::uint64_t> frame_size_;
};

}  // namespace boxmerge
