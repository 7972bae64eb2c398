#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "boxmerge/box_merge.hpp"
#include "boxmerge/error.hpp"
#include "boxmerge/point_set.hpp"

namespace boxmerge::oracle {

// Brute-force reticular cell counting. Every scale is counted from scratch by
// mapping each point into a fresh std::set; nothing is shared with the
// merge path except the box_coordinate mapping itself.

inline std::uint64_t naive_box_count(const PointSet& points, std::uint32_t s) {
  const auto axes = points.axes();
  if (s == 0) throw Error(ErrorCode::InvalidArgument, "partition count must be >= 1");
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (s > axes[i].length()) {
      throw Error(ErrorCode::ScaleExceedsAxis,
                  "s = " + std::to_string(s) + " exceeds length of axis " + std::to_string(i));
    }
  }

  std::set<std::vector<Coord>> boxes;
  std::vector<Coord> box(axes.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    const auto point = points.point(p);
    for (std::size_t i = 0; i < axes.size(); ++i) {
      box[i] = box_coordinate(point[i], s, axes[i].length());
    }
    boxes.insert(box);
  }
  return boxes.size();
}

inline ScaleSeries naive_series(const PointSet& points) {
  if (points.empty()) throw Error(ErrorCode::EmptyPointSet, "nothing to measure");
  const ScalePlan plan = make_scale_plan(points.axes());

  ScaleSeries series;
  series.source_point_count = points.size();
  series.reference_size = points.reference_size();
  for (const std::uint32_t s : plan.scales) {
    series.entries.push_back({s, naive_box_count(points, s)});
  }
  return series;
}

}  // namespace boxmerge::oracle
