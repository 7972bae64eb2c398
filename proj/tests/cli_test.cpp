#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include "boxmerge/estimator.hpp"
#include "boxmerge/image_io.hpp"
#include "boxmerge/imaging.hpp"
#include "boxmerge/report.hpp"

namespace boxmerge {
namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("boxdim_cli_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }

  RunResult run(const std::string& args) const {
    const std::string err_path = path("stderr.txt");
    const std::string command = std::string(BOXDIM_EXE) + " " + args + " 2>" + err_path;
    RunResult result;
    FILE* pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) return result;
    std::array<char, 4096> buffer{};
    std::size_t n = 0;
    while ((n = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) result.out.append(buffer.data(), n);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.err = slurp(err_path);
    return result;
  }

  fs::path dir_;
};

TEST_F(CliTest, MeasureGradientPlane) {
  ASSERT_EQ(run("synth plane -o " + path("plane.png")).exit_code, 0);
  const RunResult r = run("measure " + path("plane.png"));
  EXPECT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out, "D = 2.0000\n");
}

TEST_F(CliTest, MeasureTransparentLine) {
  ASSERT_EQ(run("synth line -o " + path("line.png")).exit_code, 0);
  const RunResult r = run("measure " + path("line.png"));
  EXPECT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out, "D = 1.0000\n");
}

TEST_F(CliTest, MeasureWritesCsvAndJson) {
  ASSERT_EQ(run("synth noise1 --seed 3 -o " + path("n1.png")).exit_code, 0);
  const RunResult r =
      run("measure " + path("n1.png") + " --csv " + path("n1.csv") + " --json " + path("n1.json"));
  ASSERT_EQ(r.exit_code, 0) << r.err;

  const PointSet ps = gen_noise(1, 3);
  const DimensionEstimate est = estimate_dimension(ps);
  EXPECT_EQ(slurp(path("n1.csv")), to_csv(make_run_report("", ps.axes(), est, 0).records));

  const auto json = nlohmann::json::parse(slurp(path("n1.json")));
  EXPECT_EQ(json["dimension"].get<double>(), est.dimension);
  EXPECT_EQ(json["kept"].size() + json["rejected"].size(), 8u);
  EXPECT_EQ(json["input"], path("n1.png"));
}

TEST_F(CliTest, MeasureAlphaAndCutoffFlags) {
  RasterImage image = render_image(gen_gradient_plane());
  for (std::uint32_t y = 0; y < 256; ++y) {
    for (std::uint32_t x = 0; x < 256; ++x) image.at(x, y).a = x < 128 ? 40 : 255;
  }
  write_png(image, path("half.png"));
  const RunResult opaque = run("measure " + path("half.png") + " --csv " + path("a.csv"));
  const RunResult halved =
      run("measure " + path("half.png") + " --alpha-threshold 40 --csv " + path("b.csv"));
  ASSERT_EQ(opaque.exit_code, 0);
  ASSERT_EQ(halved.exit_code, 0);
  EXPECT_EQ(parse_csv(slurp(path("a.csv"))).front().n, 65536u);
  EXPECT_EQ(parse_csv(slurp(path("b.csv"))).front().n, 32768u);

  ASSERT_EQ(run("measure " + path("half.png") + " --cutoff 1 --csv " + path("c.csv")).exit_code, 0);
  for (const auto& rec : parse_csv(slurp(path("c.csv")))) EXPECT_TRUE(rec.kept);
  EXPECT_EQ(run("measure " + path("half.png") + " --cutoff 0").exit_code, 1);
  EXPECT_EQ(run("measure " + path("half.png") + " --cutoff 1.5").exit_code, 1);
}

TEST_F(CliTest, MeasureFailureExitCodes) {
  write_png(RasterImage(8, 8), path("clear.png"));
  const RunResult clear = run("measure " + path("clear.png"));
  EXPECT_EQ(clear.exit_code, 3);
  EXPECT_NE(clear.err.find("AllTransparent"), std::string::npos) << clear.err;
  EXPECT_NE(clear.err.find("[estimate]"), std::string::npos);

  const RunResult missing = run("measure " + path("nope.png"));
  EXPECT_EQ(missing.exit_code, 2);
  EXPECT_NE(missing.err.find("[decode]"), std::string::npos);

  std::ofstream(path("junk.png")) << "hello";
  EXPECT_EQ(run("measure " + path("junk.png")).exit_code, 2);

  // Single-scale image: too small to fit a line.
  write_png(render_image(gen_gradient_plane(3)), path("tiny.png"));
  const RunResult tiny = run("measure " + path("tiny.png"));
  EXPECT_EQ(tiny.exit_code, 3);
  EXPECT_NE(tiny.err.find("InsufficientPoints"), std::string::npos);

  write_png(render_image(gen_gradient_plane()), path("p.png"));
  EXPECT_EQ(run("measure " + path("p.png") + " --csv " + path("no/dir/x.csv")).exit_code, 2);
}

TEST_F(CliTest, SynthIsDeterministic) {
  ASSERT_EQ(run("synth noise3 --seed 7 -o " + path("a.png")).exit_code, 0);
  ASSERT_EQ(run("synth noise3 --seed 7 -o " + path("b.png")).exit_code, 0);
  EXPECT_EQ(slurp(path("a.png")), slurp(path("b.png")));
  ASSERT_EQ(run("synth noise3 --seed 8 -o " + path("c.png")).exit_code, 0);
  EXPECT_NE(slurp(path("a.png")), slurp(path("c.png")));
}

TEST_F(CliTest, SynthLineHasTransparentBackground) {
  ASSERT_EQ(run("synth line -o " + path("line.png")).exit_code, 0);
  const RasterImage image = decode_image_file(path("line.png"));
  int opaque = 0;
  int transparent = 0;
  for (const Rgba& px : image.pixels()) {
    if (px.a == 255) ++opaque;
    if (px.a == 0) ++transparent;
  }
  EXPECT_EQ(opaque, 256);
  EXPECT_EQ(transparent, 65280);
}

TEST_F(CliTest, SynthErrors) {
  EXPECT_EQ(run("synth circle -o " + path("x.png")).exit_code, 1);
  EXPECT_EQ(run("synth plane -o " + path("missing/dir/x.png")).exit_code, 2);
  EXPECT_EQ(run("synth line --size 128 -o " + path("x.png")).exit_code, 1);
}

TEST_F(CliTest, VerifyFixturesAndFiles) {
  const RunResult plane = run("verify plane");
  EXPECT_EQ(plane.exit_code, 0) << plane.out << plane.err;
  EXPECT_NE(plane.out.find("PASS"), std::string::npos);

  EXPECT_EQ(run("verify noise3 --seed 1").exit_code, 0);
  EXPECT_EQ(run("verify line").exit_code, 0);

  write_png(render_image(gen_noise(2, 5, 300)), path("n2.png"));
  const RunResult file = run("verify " + path("n2.png"));
  EXPECT_EQ(file.exit_code, 0) << file.out << file.err;
}

TEST_F(CliTest, VerifyRefusesLargeInputs) {
  write_png(RasterImage(2048, 1024), path("big.png"));
  const RunResult r = run("verify " + path("big.png"));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("megapixel"), std::string::npos);
  EXPECT_EQ(run("verify noise3 --size 1448").exit_code, 1);
}

TEST_F(CliTest, BenchReportsOneRowPerSize) {
  const RunResult one = run("bench --sizes 64 --repeat 1 --csv " + path("one.csv"));
  ASSERT_EQ(one.exit_code, 0) << one.err;
  EXPECT_NE(one.out.find("5 s per megapixel"), std::string::npos);
  const std::string csv = slurp(path("one.csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);

  ASSERT_EQ(run("bench --sizes 64,128,256 --repeat 1 --csv " + path("three.csv")).exit_code, 0);
  const std::string three = slurp(path("three.csv"));
  EXPECT_EQ(std::count(three.begin(), three.end(), '\n'), 4);
  EXPECT_EQ(three.rfind("side,pixels,ms,ms_per_mp,dimension\n", 0), 0u);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run("").exit_code, 1);
  EXPECT_EQ(run("frobnicate").exit_code, 1);
  EXPECT_EQ(run("measure").exit_code, 1);
  EXPECT_EQ(run("--help").exit_code, 0);
}

}  // namespace
}  // namespace boxmerge
