#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "boxmerge/box_merge.hpp"
#include "boxmerge/error.hpp"
#include "boxmerge/point_set.hpp"

namespace boxmerge {

struct FitConfig {
  /// Box counts with log2(n) above cutoff_fraction * log2(reference size) are
  /// treated as saturated and left out of the fit.
  double cutoff_fraction = 0.9;

  void validate() const {
    if (!(cutoff_fraction > 0.0 && cutoff_fraction <= 1.0)) {
      throw Error(ErrorCode::InvalidArgument,
                  "cutoff fraction must lie in (0, 1], got " + std::to_string(cutoff_fraction));
    }
  }
};

struct LogLogPoint {
  double log2_s = 0.0;
  double log2_n = 0.0;

  friend bool operator==(const LogLogPoint&, const LogLogPoint&) = default;
};

struct CutoffSplit {
  std::vector<LogLogPoint> kept;
  std::vector<LogLogPoint> rejected;
  /// One flag per series entry, in series order.
  std::vector<bool> kept_mask;
  /// log2(n) ceiling; points strictly above it are rejected.
  double threshold = 0.0;
};

inline CutoffSplit apply_cutoff(const ScaleSeries& series, const FitConfig& config = {}) {
  config.validate();
  if (series.entries.empty()) {
    throw Error(ErrorCode::InvalidArgument, "scale series is empty");
  }
  if (series.reference_size == 0) {
    throw Error(ErrorCode::InvalidArgument, "scale series has no reference size");
  }

  CutoffSplit split;
  split.threshold = config.cutoff_fraction * std::log2(static_cast<double>(series.reference_size));
  split.kept_mask.reserve(series.entries.size());
  for (const ScaleCount& entry : series.entries) {
    const LogLogPoint p{std::log2(static_cast<double>(entry.s)),
                        std::log2(static_cast<double>(entry.n))};
    const bool keep = !(p.log2_n > split.threshold);
    (keep ? split.kept : split.rejected).push_back(p);
    split.kept_mask.push_back(keep);
  }
  return split;
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares of log2(n) on log2(s). The slope is the box
/// dimension.
inline LineFit fit_loglog(std::span<const LogLogPoint> points) {
  if (points.size() < 2) {
    throw Error(ErrorCode::InsufficientPoints,
                std::to_string(points.size()) +
                    " scale(s) left after the cut-off; the set is too small or too saturated");
  }
  const double count = static_cast<double>(points.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const auto& p : points) {
    mean_x += p.log2_s;
    mean_y += p.log2_n;
  }
  mean_x /= count;
  mean_y /= count;

  // Centred sums keep exact lines exact for the small dyadic values seen here.
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& p : points) {
    const double dx = p.log2_s - mean_x;
    const double dy = p.log2_n - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) {
    throw Error(ErrorCode::InsufficientPoints, "all kept scales share one abscissa");
  }

  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  if (syy == 0.0) {
    // Flat data is fitted perfectly by a zero slope.
    fit.r_squared = 1.0;
  } else {
    double ss_res = 0.0;
    for (const auto& p : points) {
      const double r = p.log2_n - (fit.intercept + fit.slope * p.log2_s);
      ss_res += r * r;
    }
    fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  return fit;
}

struct DimensionEstimate {
  double dimension = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<LogLogPoint> kept;
  std::vector<LogLogPoint> rejected;

  // Provenance: the raw counts and the cut-off decisions behind the fit.
  ScaleSeries series;
  std::vector<bool> kept_mask;
  double threshold = 0.0;
  double cutoff_fraction = 0.0;
};

inline DimensionEstimate estimate_from_series(ScaleSeries series, const FitConfig& config = {}) {
  CutoffSplit split = apply_cutoff(series, config);
  const LineFit fit = fit_loglog(split.kept);

  DimensionEstimate estimate;
  estimate.dimension = fit.slope;
  estimate.intercept = fit.intercept;
  estimate.r_squared = fit.r_squared;
  estimate.kept = std::move(split.kept);
  estimate.rejected = std::move(split.rejected);
  estimate.series = std::move(series);
  estimate.kept_mask = std::move(split.kept_mask);
  estimate.threshold = split.threshold;
  estimate.cutoff_fraction = config.cutoff_fraction;
  return estimate;
}

inline DimensionEstimate estimate_dimension(const PointSet& points, const FitConfig& config = {}) {
  config.validate();
  return estimate_from_series(box_merge_series(points), config);
}

}  // namespace boxmerge
