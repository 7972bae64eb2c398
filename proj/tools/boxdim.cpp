// boxdim: box-merging fractal dimension of colour images and synthetic fixtures.
//
// Exit codes: 0 success, 1 usage error or verification mismatch,
// 2 I/O or decode error, 3 estimation error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "boxmerge/boxmerge.hpp"

namespace {

namespace bm = boxmerge;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitIo = 2;
constexpr int kExitEstimate = 3;

constexpr std::size_t kVerifyPixelLimit = std::size_t{1} << 20;

int fail(const char* stage, const std::exception& e, int code) {
  std::cerr << "error [" << stage << "]: " << e.what() << '\n';
  return code;
}

bool is_fixture_kind(const std::string& kind) {
  return kind == "line" || kind == "plane" || kind == "noise1" || kind == "noise2" ||
         kind == "noise3";
}

bm::PointSet make_fixture(const std::string& kind, std::uint64_t seed, std::uint32_t side) {
  if (kind == "line") {
    if (side != 256) {
      throw bm::Error(bm::ErrorCode::InvalidArgument, "the line fixture is always 256x256");
    }
    return bm::gen_diagonal_line();
  }
  if (kind == "plane") return bm::gen_gradient_plane(side);
  return bm::gen_noise(kind.back() - '0', seed, side);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw bm::Error(bm::ErrorCode::IoError, "cannot write " + path.string());
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

struct MeasureArgs {
  std::string image;
  int alpha_threshold = 0;
  double cutoff = 0.9;
  std::string csv_out;
  std::string json_out;
};

int cmd_measure(const MeasureArgs& args) {
  const auto start = std::chrono::steady_clock::now();

  std::optional<bm::RasterImage> image;
  try {
    image = bm::decode_image_file(args.image);
  } catch (const std::exception& e) {
    return fail("decode", e, kExitIo);
  }

  std::optional<bm::DimensionEstimate> estimate;
  std::optional<bm::PointSet> points;
  try {
    points = bm::image_to_pointset(*image, bm::AlphaPolicy{args.alpha_threshold});
    estimate = bm::estimate_dimension(*points, bm::FitConfig{args.cutoff});
  } catch (const std::exception& e) {
    return fail("estimate", e, kExitEstimate);
  }

  const bm::RunReport report =
      bm::make_run_report(args.image, points->axes(), *estimate, elapsed_ms(start));
  try {
    if (!args.csv_out.empty()) write_text(args.csv_out, bm::to_csv(report.records));
    if (!args.json_out.empty()) write_text(args.json_out, bm::to_json(report).dump(2) + "\n");
  } catch (const std::exception& e) {
    return fail("write", e, kExitIo);
  }

  std::printf("D = %.4f\n", report.dimension);
  return kExitOk;
}

struct SynthArgs {
  std::string kind;
  std::uint64_t seed = 0;
  std::uint32_t size = 256;
  std::string output;
};

int cmd_synth(const SynthArgs& args) {
  std::optional<bm::RasterImage> image;
  try {
    image = bm::render_image(make_fixture(args.kind, args.seed, args.size));
  } catch (const std::exception& e) {
    std::cerr << "error [synth]: " << e.what() << '\n';
    return kExitMismatch;
  }
  try {
    bm::write_png(*image, args.output);
  } catch (const std::exception& e) {
    return fail("write", e, kExitIo);
  }
  return kExitOk;
}

struct VerifyArgs {
  std::string target;
  std::uint64_t seed = 0;
  std::uint32_t size = 256;
  int alpha_threshold = 0;
};

int cmd_verify(const VerifyArgs& args) {
  std::optional<bm::PointSet> points;
  if (is_fixture_kind(args.target) && !std::filesystem::exists(args.target)) {
    if (std::size_t{args.size} * args.size > kVerifyPixelLimit) {
      std::cerr << "error [verify]: fixture exceeds the 1 megapixel oracle limit\n";
      return kExitMismatch;
    }
    try {
      points = make_fixture(args.target, args.seed, args.size);
    } catch (const std::exception& e) {
      std::cerr << "error [synth]: " << e.what() << '\n';
      return kExitMismatch;
    }
  } else {
    std::optional<bm::RasterImage> image;
    try {
      image = bm::decode_image_file(args.target);
    } catch (const std::exception& e) {
      return fail("decode", e, kExitIo);
    }
    if (image->pixel_count() > kVerifyPixelLimit) {
      std::cerr << "error [verify]: " << image->width() << "x" << image->height()
                << " exceeds the 1 megapixel oracle limit\n";
      return kExitMismatch;
    }
    try {
      points = bm::image_to_pointset(*image, bm::AlphaPolicy{args.alpha_threshold});
    } catch (const std::exception& e) {
      return fail("embed", e, kExitEstimate);
    }
  }

  bm::ScaleSeries merged;
  bm::ScaleSeries naive;
  try {
    merged = bm::box_merge_series(*points);
    naive = bm::oracle::naive_series(*points);
  } catch (const std::exception& e) {
    return fail("estimate", e, kExitEstimate);
  }

  if (merged.entries.size() != naive.entries.size()) {
    std::printf("FAIL: merge produced %zu scales, oracle %zu\n", merged.entries.size(),
                naive.entries.size());
    return kExitMismatch;
  }
  for (std::size_t i = 0; i < merged.entries.size(); ++i) {
    const auto& m = merged.entries[i];
    const auto& o = naive.entries[i];
    if (!(m == o)) {
      std::printf("FAIL: first divergence at index %zu: merge (s=%u, n=%llu) oracle (s=%u, n=%llu)\n",
                  i, m.s, static_cast<unsigned long long>(m.n), o.s,
                  static_cast<unsigned long long>(o.n));
      return kExitMismatch;
    }
    std::printf("s=%u n=%llu\n", m.s, static_cast<unsigned long long>(m.n));
  }
  std::printf("PASS: %zu scales match the oracle\n", merged.entries.size());
  return kExitOk;
}

struct BenchArgs {
  std::vector<std::uint32_t> sizes{256, 512, 1024};
  std::uint64_t seed = 1;
  int repeat = 3;
  std::string csv_out;
};

int cmd_bench(const BenchArgs& args) {
  std::string csv = "side,pixels,ms,ms_per_mp,dimension\n";
  std::printf("%8s %10s %10s %10s %8s\n", "side", "pixels", "ms", "ms/MP", "D");
  for (const std::uint32_t side : args.sizes) {
    bm::PointSet points = bm::gen_noise(3, args.seed, side);
    double best = 0.0;
    double dimension = 0.0;
    for (int r = 0; r < args.repeat; ++r) {
      const auto start = std::chrono::steady_clock::now();
      try {
        dimension = bm::estimate_dimension(points).dimension;
      } catch (const std::exception& e) {
        return fail("estimate", e, kExitEstimate);
      }
      const double ms = elapsed_ms(start);
      if (r == 0 || ms < best) best = ms;
    }
    const double pixels = static_cast<double>(side) * side;
    const double per_mp = best / (pixels / 1e6);
    std::printf("%8u %10.0f %10.2f %10.2f %8.4f\n", side, pixels, best, per_mp, dimension);
    char line[160];
    std::snprintf(line, sizeof line, "%u,%.0f,%.3f,%.3f,%.6f\n", side, pixels, best, per_mp,
                  dimension);
    csv += line;
  }
  std::printf("reference: the original interpreted implementation needed about 5 s per "
              "megapixel in the worst case\n");
  if (!args.csv_out.empty()) {
    try {
      write_text(args.csv_out, csv);
    } catch (const std::exception& e) {
      return fail("write", e, kExitIo);
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Box-merging fractal dimension of colour images"};
  app.require_subcommand(1);

  MeasureArgs measure;
  auto* measure_cmd = app.add_subcommand("measure", "Estimate D of a PNG or PPM image");
  measure_cmd->add_option("image", measure.image, "Input image")->required();
  measure_cmd->add_option("--alpha-threshold", measure.alpha_threshold,
                          "Pixels with alpha <= this value are transparent")
      ->check(CLI::Range(0, 255));
  measure_cmd->add_option("--cutoff", measure.cutoff, "Saturation cut-off fraction in (0, 1]")
      ->check(CLI::Validator(
          [](std::string& value) -> std::string {
            try {
              const double f = std::stod(value);
              if (f > 0.0 && f <= 1.0) return {};
            } catch (const std::exception&) {
            }
            return "cut-off fraction must lie in (0, 1]";
          },
          "(0,1]"));
  measure_cmd->add_option("--csv", measure.csv_out, "Write per-scale records as CSV");
  measure_cmd->add_option("--json", measure.json_out, "Write the full report as JSON");

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic fixture as PNG");
  synth_cmd->add_option("kind", synth.kind, "line | plane | noise1 | noise2 | noise3")
      ->required()
      ->check(CLI::IsMember({"line", "plane", "noise1", "noise2", "noise3"}));
  synth_cmd->add_option("--seed", synth.seed, "Noise seed");
  synth_cmd->add_option("--size", synth.size, "Side length in pixels")->check(CLI::Range(2u, 65535u));
  synth_cmd->add_option("-o,--output", synth.output, "Output PNG path")->required();

  VerifyArgs verify;
  auto* verify_cmd =
      app.add_subcommand("verify", "Compare box merging against brute-force counting");
  verify_cmd->add_option("target", verify.target, "Image path or fixture kind")->required();
  verify_cmd->add_option("--seed", verify.seed, "Noise seed for fixture kinds");
  verify_cmd->add_option("--size", verify.size, "Fixture side length")->check(CLI::Range(2u, 65535u));
  verify_cmd->add_option("--alpha-threshold", verify.alpha_threshold)->check(CLI::Range(0, 255));

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time estimation on full-colour noise");
  bench_cmd->add_option("--sizes", bench.sizes, "Image side lengths")
      ->delimiter(',')
      ->check(CLI::Range(2u, 65535u));
  bench_cmd->add_option("--seed", bench.seed, "Noise seed");
  bench_cmd->add_option("--repeat", bench.repeat, "Runs per size; the fastest is reported")
      ->check(CLI::Range(1, 100));
  bench_cmd->add_option("--csv", bench.csv_out, "Write the timing table as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitMismatch;
  }

  if (*measure_cmd) return cmd_measure(measure);
  if (*synth_cmd) return cmd_synth(synth);
  if (*verify_cmd) return cmd_verify(verify);
  return cmd_bench(bench);
}
