// Copyright 2026 The softras Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "softras/error.hpp"
#include "softras/obj_io.hpp"
#include "softras/shapes.hpp"
#include "test_support.hpp"

namespace softras::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

TEST(Pgm, RampRoundTripIsBitExact) {
  const fs::path dir = testing::scratch_dir("pgm_ramp");
  GrayscaleImage img{64, 64, {}};
  for (int i = 0; i < 64 * 64; ++i) img.values.push_back(static_cast<std::uint8_t>(i % 256));
  write_pgm(img, dir / "ramp.pgm");
  const GrayscaleImage back = read_pgm(dir / "ramp.pgm");
  EXPECT_EQ(back.width, 64);
  EXPECT_EQ(back.height, 64);
  EXPECT_EQ(back.values, img.values);
}

TEST(Pgm, HalfRoundsUp) {
  SoftSilhouette s(3, 2);
  for (double& v : s.values) v = 0.5;
  for (std::uint8_t b : to_grayscale(s).values) EXPECT_EQ(b, 128);
  s.values = {0.0, 1.0, 0.25, 0.75, 127.4 / 255, 127.6 / 255};
  EXPECT_EQ(to_grayscale(s).values, (std::vector<std::uint8_t>{0, 255, 64, 191, 127, 128}));
}

TEST(Pgm, MaskThresholdAt128) {
  const BinaryMask m = to_mask(GrayscaleImage{4, 1, {0, 127, 128, 255}});
  EXPECT_EQ(m.values, (std::vector<std::uint8_t>{0, 0, 1, 1}));
}

TEST(Pgm, RejectsBadFiles) {
  std::istringstream ascii("P2\n2 1\n255\n0 255\n");
  EXPECT_THROW(read_pgm(ascii), IoError);
  std::istringstream deep("P5\n2 1\n65535\n\x01\x02\x03\x04");
  EXPECT_THROW(read_pgm(deep), IoError);
  std::istringstream truncated("P5\n4 4\n255\nabc");
  EXPECT_THROW(read_pgm(truncated), IoError);
  std::istringstream commented("P5\n# made by hand\n2 1\n255\n\x10\x20");
  EXPECT_EQ(read_pgm(commented).values, (std::vector<std::uint8_t>{0x10, 0x20}));
  EXPECT_THROW(read_pgm(fs::path("/nonexistent/x.pgm")), IoError);
}

TEST(Manifest, RoundTripAndRelativePaths) {
  const fs::path dir = testing::scratch_dir("manifest");
  write_manifest({{15, 30, 2.732, "views/a.pgm"}, {-0.1, 0, 3, "b.pgm"}}, dir / "m.csv");
  const auto rows = read_manifest(dir / "m.csv");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].azimuth, 15);
  EXPECT_EQ(rows[0].distance, 2.732);
  EXPECT_EQ(rows[1].azimuth, -0.1);
  EXPECT_EQ(rows[0].image, dir / "views/a.pgm");
}

TEST(Manifest, ErrorsNameTheLine) {
  const fs::path dir = testing::scratch_dir("manifest_bad");
  std::ofstream(dir / "m.csv") << "azimuth_deg,elevation_deg,distance,image_path\n0,30,2,a.pgm\n0,x,2,b.pgm\n";
  try {
    read_manifest(dir / "m.csv");
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("m.csv:3"), std::string::npos) << e.what();
  }
  std::ofstream(dir / "short.csv") << "header\n1,2,3\n";
  EXPECT_THROW(read_manifest(dir / "short.csv"), IoError);
}

TEST(LossCsv, HeaderAndEmptyColorColumn) {
  std::ostringstream out;
  write_loss_csv({LossReport{0.5, 1, 2, std::nullopt, 0.512}, LossReport{0.25, 1, 2, 0.125, 0.4}}, out);
  EXPECT_EQ(out.str(),
            "iter,iou,laplacian,flattening,color,total\n"
            "0,0.5,1,2,,0.51200000000000001\n"
            "1,0.25,1,2,0.125,0.40000000000000002\n");
}

TEST(Command, RenderSoftAndHard) {
  const fs::path dir = testing::scratch_dir("render");
  save_obj(icosphere(3, 0.375), dir / "sphere.obj");
  Outcome o = invoke({"render", "--mesh", (dir / "sphere.obj").string(), "--out", (dir / "s.pgm").string()});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const GrayscaleImage soft = read_pgm(dir / "s.pgm");
  EXPECT_EQ(soft.width, 64);
  const BinaryMask solid = to_mask(soft);
  EXPECT_GT(solid.count(), 0u);
  EXPECT_LT(solid.count(), solid.size());
  // The disk is centred: its bounding box is symmetric about the frame centre.
  int r0 = 64, r1 = -1, c0 = 64, c1 = -1;
  for (int r = 0; r < 64; ++r) {
    for (int c = 0; c < 64; ++c) {
      if (!solid.at(r, c)) continue;
      r0 = std::min(r0, r), r1 = std::max(r1, r), c0 = std::min(c0, c), c1 = std::max(c1, c);
    }
  }
  EXPECT_LE(std::abs((r0 + r1) - 63), 1);
  EXPECT_LE(std::abs((c0 + c1) - 63), 1);

  std::ofstream(dir / "empty.obj") << "# nothing\n";
  o = invoke({"render", "--mesh", (dir / "empty.obj").string(), "--hard", "--out", (dir / "h.pgm").string()});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  for (std::uint8_t b : read_pgm(dir / "h.pgm").values) EXPECT_EQ(b, 0);
}

TEST(Command, ErrorsMapToExitCodes) {
  const fs::path dir = testing::scratch_dir("errors");
  EXPECT_EQ(invoke({"render", "--mesh", (dir / "missing.obj").string(), "--out", (dir / "x.pgm").string()}).code,
            kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"render", "--mesh", "a.obj"}).code, kExitUsage);
  EXPECT_EQ(invoke({"render", "--mesh", "a.obj", "--out", "b.pgm", "--size", "-3"}).code, kExitUsage);
  EXPECT_EQ(invoke({"genviews", "--mesh", "a.obj", "--viewset", "ring12", "--outdir", "d", "--manifest", "m"}).code,
            kExitUsage);
  // A camera inside the mesh is a validation failure, not an I/O one.
  save_obj(icosphere(2, 1.0), dir / "big.obj");
  const Outcome o = invoke({"render", "--mesh", (dir / "big.obj").string(), "--distance", "0.5", "--out",
                            (dir / "x.pgm").string()});
  EXPECT_EQ(o.code, kExitFailure);
  EXPECT_NE(o.err.find("error:"), std::string::npos);
}

TEST(Command, GenviewsRing24AndGrid120) {
  const fs::path dir = testing::scratch_dir("genviews");
  save_obj(box({0.6, 0.3, 0.5}), dir / "gt.obj");
  Outcome o = invoke({"genviews", "--mesh", (dir / "gt.obj").string(), "--viewset", "ring24", "--size", "32",
                      "--outdir", (dir / "ring").string(), "--manifest", (dir / "ring.csv").string()});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  auto rows = read_manifest(dir / "ring.csv");
  ASSERT_EQ(rows.size(), 24u);
  for (const ManifestRow& r : rows) {
    EXPECT_EQ(r.elevation, 30.0);
    EXPECT_TRUE(fs::exists(r.image));
  }
  EXPECT_EQ(std::distance(fs::directory_iterator(dir / "ring"), fs::directory_iterator{}), 24);
  const std::string first = slurp(rows[5].image);

  o = invoke({"genviews", "--mesh", (dir / "gt.obj").string(), "--viewset", "ring24", "--size", "32",
              "--outdir", (dir / "ring").string(), "--manifest", (dir / "ring.csv").string()});
  ASSERT_EQ(o.code, kExitOk);
  EXPECT_EQ(slurp(rows[5].image), first);

  o = invoke({"genviews", "--mesh", (dir / "gt.obj").string(), "--viewset", "grid120", "--size", "16",
              "--outdir", (dir / "grid").string(), "--manifest", (dir / "grid.csv").string()});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  rows = read_manifest(dir / "grid.csv");
  ASSERT_EQ(rows.size(), 120u);
  std::set<double> elevations, azimuths;
  for (const ManifestRow& r : rows) elevations.insert(r.elevation), azimuths.insert(r.azimuth);
  EXPECT_EQ(elevations.size(), 5u);
  EXPECT_EQ(azimuths.size(), 24u);
}

TEST(Command, GenviewsUnwritableDirectory) {
  const fs::path dir = testing::scratch_dir("genviews_bad");
  save_obj(box({1, 1, 1}), dir / "gt.obj");
  std::ofstream(dir / "file") << "x";
  const Outcome o = invoke({"genviews", "--mesh", (dir / "gt.obj").string(), "--outdir", (dir / "file").string(),
                            "--manifest", (dir / "m.csv").string()});
  EXPECT_EQ(o.code, kExitUsage);
}

TEST(Command, FitZeroIterationsWritesTemplate) {
  const fs::path dir = testing::scratch_dir("fit0");
  save_obj(ellipsoid({0.5, 0.35, 0.25}, 3), dir / "gt.obj");
  ASSERT_EQ(invoke({"genviews", "--mesh", (dir / "gt.obj").string(), "--size", "32", "--outdir",
                    (dir / "views").string(), "--manifest", (dir / "views.csv").string()})
                .code,
            kExitOk);
  const Outcome o = invoke({"fit", "--manifest", (dir / "views.csv").string(), "--iters", "0", "--out",
                            (dir / "fit.obj").string(), "--log", (dir / "loss.csv").string()});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  std::ostringstream expected;
  write_obj(icosphere(3, 0.375), expected);
  EXPECT_EQ(slurp(dir / "fit.obj"), expected.str());
  EXPECT_EQ(slurp(dir / "loss.csv"), "iter,iou,laplacian,flattening,color,total\n");
  EXPECT_NE(o.out.find("mean 2D IoU over 24 views"), std::string::npos) << o.out;
}

TEST(Command, FitLogsEveryIteration) {
  const fs::path dir = testing::scratch_dir("fit3");
  save_obj(box({0.5, 0.5, 0.5}), dir / "gt.obj");
  ASSERT_EQ(invoke({"genviews", "--mesh", (dir / "gt.obj").string(), "--size", "24", "--outdir",
                    (dir / "views").string(), "--manifest", (dir / "views.csv").string()})
                .code,
            kExitOk);
  const Outcome o = invoke({"fit", "--manifest", (dir / "views.csv").string(), "--iters", "3", "--out",
                            (dir / "fit.obj").string(), "--log", (dir / "loss.csv").string(), "--alpha",
                            "1e-3", "--threads", "2"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  std::istringstream log(slurp(dir / "loss.csv"));
  std::string line;
  int lines = 0;
  while (std::getline(log, line)) ++lines;
  EXPECT_EQ(lines, 4);
  EXPECT_NE(o.out.find("final loss:"), std::string::npos);
  EXPECT_EQ(load_obj(dir / "fit.obj").num_vertices(), 642u);
}

TEST(Command, FitMissingImageIsAnIoError) {
  const fs::path dir = testing::scratch_dir("fit_missing");
  std::ofstream(dir / "views.csv") << "azimuth_deg,elevation_deg,distance,image_path\n0,30,2.732,nope.pgm\n";
  const Outcome o = invoke({"fit", "--manifest", (dir / "views.csv").string(), "--out", (dir / "f.obj").string(),
                            "--log", (dir / "l.csv").string()});
  EXPECT_EQ(o.code, kExitUsage);
  EXPECT_NE(o.err.find("nope.pgm"), std::string::npos) << o.err;
}

TEST(Command, Gradcheck) {
  Outcome o = invoke({"gradcheck", "--trials", "10", "--seed", "3"});
  EXPECT_EQ(o.code, kExitOk) << o.err;
  EXPECT_NE(o.out.find("trials=10 seed=3 max rel err = "), std::string::npos) << o.out;
  EXPECT_NE(o.out.find("(< 1e-4)"), std::string::npos) << o.out;
  o = invoke({"gradcheck", "--trials", "0"});
  EXPECT_EQ(o.code, kExitOk);
  EXPECT_NE(o.err.find("warning"), std::string::npos);
}

TEST(Command, Eval3d) {
  const fs::path dir = testing::scratch_dir("eval3d");
  save_obj(box({1, 1, 1}), dir / "a.obj");
  save_obj(box({1, 1, 1}, Vec3(0.5, 0, 0)), dir / "b.obj");
  Outcome o = invoke({"eval3d", "--mesh", (dir / "a.obj").string(), "--ref", (dir / "a.obj").string()});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  EXPECT_EQ(o.out, "3D IoU: 1.000000\n");
  o = invoke({"eval3d", "--mesh", (dir / "a.obj").string(), "--ref", (dir / "b.obj").string(), "--resolution",
              "64"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  EXPECT_NEAR(std::stod(o.out.substr(o.out.find(':') + 1)), 1.0 / 3.0, 0.02);

  Mesh open = box({1, 1, 1});
  open.faces.pop_back();
  save_obj(open, dir / "open.obj");
  EXPECT_EQ(invoke({"eval3d", "--mesh", (dir / "open.obj").string(), "--ref", (dir / "a.obj").string()}).code,
            kExitFailure);
}

}  // namespace
}  // namespace softras::cli
