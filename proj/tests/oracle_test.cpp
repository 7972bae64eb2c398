#include <gtest/gtest.h>

#include <cstdint>
#include <random>
#include <vector>

#include "boxmerge/box_merge.hpp"
#include "boxmerge/imaging.hpp"
#include "boxmerge/oracle.hpp"
#include "test_support.hpp"

namespace boxmerge {
namespace {

using oracle::naive_box_count;
using oracle::naive_series;

TEST(NaiveBoxCountTest, EmptySetHasNoBoxes) {
  const PointSet empty(make_axes({16, 16}), {});
  EXPECT_EQ(naive_box_count(empty, 4), 0u);
}

TEST(NaiveBoxCountTest, DiagonalLineAtSixteen) {
  EXPECT_EQ(naive_box_count(gen_diagonal_line(), 16), 16u);
}

TEST(NaiveBoxCountTest, GradientPlaneAtTwo) {
  // Boxes are (tx, ty, tx, 1 - ty, 1): one per spatial cell.
  EXPECT_EQ(naive_box_count(gen_gradient_plane(), 2), 4u);
}

TEST(NaiveBoxCountTest, RejectsScaleBeyondAxis) {
  const PointSet ps(make_axes({8, 4}), {0, 0});
  try {
    naive_box_count(ps, 8);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ScaleExceedsAxis);
  }
}

TEST(NaiveSeriesTest, SinglePointIsAllOnes) {
  const PointSet ps(make_axes({64, 64, 64}), {5, 6, 7});
  const ScaleSeries series = naive_series(ps);
  ASSERT_EQ(series.entries.size(), 6u);
  for (const auto& e : series.entries) EXPECT_EQ(e.n, 1u);
}

TEST(NaiveSeriesTest, FullFourByFourGrid) {
  std::vector<Coord> coords;
  for (Coord y = 0; y < 4; ++y) {
    for (Coord x = 0; x < 4; ++x) coords.insert(coords.end(), {x, y});
  }
  const ScaleSeries series = naive_series(PointSet(make_axes({4, 4}), coords));
  EXPECT_EQ(series.entries, (std::vector<ScaleCount>{{4, 16}, {2, 4}}));
}

TEST(NaiveSeriesTest, FixturesMatchBoxMerging) {
  EXPECT_EQ(naive_series(gen_diagonal_line()), box_merge_series(gen_diagonal_line()));
  EXPECT_EQ(naive_series(gen_gradient_plane()), box_merge_series(gen_gradient_plane()));
  for (int channels = 1; channels <= 3; ++channels) {
    const PointSet ps = gen_noise(channels, 99);
    EXPECT_EQ(naive_series(ps), box_merge_series(ps)) << channels;
  }
}

TEST(NaiveSeriesTest, RandomSetsMatchBoxMerging) {
  std::mt19937_64 rng(8);
  static constexpr std::size_t dims[] = {1, 2, 3, 5};
  for (int c = 0; c < 200; ++c) {
    const auto spec = testing::random_set_spec(rng, dims[c % 4], 4, 256, 2000);
    const PointSet ps = testing::to_point_set(spec);
    ASSERT_EQ(naive_series(ps), box_merge_series(ps)) << "case " << c;
  }
}

TEST(NaiveBoxCountProperties, IndependentOfOrderAndDuplicates) {
  std::mt19937_64 rng(9);
  for (int c = 0; c < 100; ++c) {
    auto spec = testing::random_set_spec(rng, 3, 4, 128, 500);
    const PointSet ps = testing::to_point_set(spec);
    auto doubled = spec.coords;
    doubled.insert(doubled.end(), spec.coords.begin(), spec.coords.end());
    const PointSet dup(testing::to_axes(spec.lengths), doubled);
    for (const std::uint32_t s : make_scale_plan(ps.axes()).scales) {
      ASSERT_EQ(naive_box_count(ps, s), naive_box_count(dup, s));
      ASSERT_EQ(naive_box_count(ps, s),
                testing::boxes_by_definition(spec.lengths, spec.coords, s).size());
    }
  }
}

}  // namespace
}  // namespace boxmerge
