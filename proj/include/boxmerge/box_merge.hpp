#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "boxmerge/detail/rows.hpp"
#include "boxmerge/error.hpp"
#include "boxmerge/point_set.hpp"

namespace boxmerge {

/// Dyadic ladder of partition counts, finest first: s_max, s_max/2, ..., 2.
struct ScalePlan {
  std::uint32_t s_max = 1;
  unsigned nu_max = 0;
  std::vector<std::uint32_t> scales;

  friend bool operator==(const ScalePlan&, const ScalePlan&) = default;
};

/// s_max is the largest power of two not exceeding the shortest axis, so that
/// every coarser scale is reached by exact integer halving.
inline ScalePlan make_scale_plan(std::span<const AxisSpec> axes) {
  if (axes.empty()) {
    throw Error(ErrorCode::InvalidArgument, "cannot plan scales without axes");
  }
  const auto shortest = std::min_element(
      axes.begin(), axes.end(),
      [](AxisSpec a, AxisSpec b) { return a.length() < b.length(); });
  const std::uint32_t min_length = shortest->length();
  if (min_length < 2) {
    throw Error(ErrorCode::MinAxisTooSmall,
                "shortest axis has length " + std::to_string(min_length) +
                    "; at least 2 is needed for one halving");
  }

  ScalePlan plan;
  plan.nu_max = static_cast<unsigned>(std::bit_width(min_length)) - 1;
  plan.s_max = std::uint32_t{1} << plan.nu_max;
  for (std::uint32_t s = plan.s_max; s >= 2; s /= 2) plan.scales.push_back(s);
  return plan;
}

/// The occupied boxes at one partition count `s`: a deduplicated,
/// lexicographically ordered table of box-coordinate tuples.
class PartitionTable {
 public:
  PartitionTable(std::uint32_t s, std::size_t dimension, std::vector<Coord> rows)
      : s_(s), dimension_(dimension), rows_(std::move(rows)) {
    if (s_ == 0 || dimension_ == 0) {
      throw Error(ErrorCode::InvalidArgument, "partition table needs s >= 1 and E >= 1");
    }
    if (rows_.size() % dimension_ != 0) {
      throw Error(ErrorCode::InvalidArgument, "row data is not a multiple of the dimension");
    }
    for (const Coord t : rows_) {
      if (t >= s_) {
        throw Error(ErrorCode::CoordinateOutOfRange,
                    "box coordinate " + std::to_string(t) + " is not below s = " +
                        std::to_string(s_));
      }
    }
    normalize();
  }

  std::uint32_t scale() const noexcept { return s_; }
  std::size_t dimension() const noexcept { return dimension_; }
  /// Number of occupied boxes.
  std::size_t size() const noexcept { return rows_.size() / dimension_; }
  std::span<const Coord> rows() const noexcept { return rows_; }
  std::span<const Coord> row(std::size_t index) const noexcept {
    return std::span<const Coord>(rows_).subspan(index * dimension_, dimension_);
  }

  friend bool operator==(const PartitionTable&, const PartitionTable&) = default;

 private:
  struct Trusted {};
  PartitionTable(Trusted, std::uint32_t s, std::size_t dimension, std::vector<Coord> rows)
      : s_(s), dimension_(dimension), rows_(std::move(rows)) {
    normalize();
  }

  void normalize() {
    const std::vector<std::uint64_t> extents(dimension_, s_);
    detail::sort_unique_rows(rows_, dimension_, std::span<const std::uint64_t>(extents));
  }

  friend PartitionTable initial_partition(const PointSet& points, std::uint32_t s);
  friend PartitionTable merge_halve(const PartitionTable& table);

  std::uint32_t s_;
  std::size_t dimension_;
  std::vector<Coord> rows_;
};

/// Maps every point to its box at partition count `s` and keeps each
/// occupied box once.
inline PartitionTable initial_partition(const PointSet& points, std::uint32_t s) {
  if (s == 0) throw Error(ErrorCode::InvalidArgument, "partition count must be >= 1");
  const auto axes = points.axes();
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (s > axes[i].length()) {
      throw Error(ErrorCode::ScaleExceedsAxis,
                  "s = " + std::to_string(s) + " exceeds length " +
                      std::to_string(axes[i].length()) + " of axis " + std::to_string(i));
    }
  }

  const std::size_t dim = axes.size();
  const auto coords = points.coords();
  std::vector<Coord> rows(coords.size());
  for (std::size_t k = 0; k < coords.size(); ++k) {
    rows[k] = box_coordinate(coords[k], s, axes[k % dim].length());
  }
  return PartitionTable(PartitionTable::Trusted{}, s, dim, std::move(rows));
}

/// Coarsens a table to s/2 by halving every box coordinate and merging the
/// rows that collide. No point is revisited.
inline PartitionTable merge_halve(const PartitionTable& table) {
  if (table.s_ < 2 || table.s_ % 2 != 0) {
    throw Error(ErrorCode::OddScale,
                "cannot halve partition count " + std::to_string(table.s_));
  }
  std::vector<Coord> rows(table.rows_.size());
  std::transform(table.rows_.begin(), table.rows_.end(), rows.begin(),
                 [](Coord t) { return t / 2; });
  return PartitionTable(PartitionTable::Trusted{}, table.s_ / 2, table.dimension_,
                        std::move(rows));
}

struct ScaleCount {
  std::uint32_t s = 0;
  std::uint64_t n = 0;

  friend bool operator==(const ScaleCount&, const ScaleCount&) = default;
};

/// Non-empty box counts per scale, finest first.
struct ScaleSeries {
  std::vector<ScaleCount> entries;
  /// Number of points in the measured set.
  std::uint64_t source_point_count = 0;
  /// Count the saturation cut-off is taken against; see PointSet::reference_size.
  std::uint64_t reference_size = 0;

  friend bool operator==(const ScaleSeries&, const ScaleSeries&) = default;
};

/// Box counts at every scale of the plan. The point set is scanned once, at
/// s_max; every coarser count comes from merging the previous table.
inline ScaleSeries box_merge_series(const PointSet& points) {
  if (points.empty()) throw Error(ErrorCode::EmptyPointSet, "nothing to measure");
  const ScalePlan plan = make_scale_plan(points.axes());

  ScaleSeries series;
  series.source_point_count = points.size();
  series.reference_size = points.reference_size();
  series.entries.reserve(plan.scales.size());

  PartitionTable table = initial_partition(points, plan.s_max);
  series.entries.push_back({table.scale(), table.size()});
  while (table.scale() > 2) {
    table = merge_halve(table);
    series.entries.push_back({table.scale(), table.size()});
  }
  return series;
}

}  // namespace boxmerge
