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

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <string_view>

#include "softras/error.hpp"
#include "softras/gradcheck.hpp"
#include "softras/obj_io.hpp"
#include "softras/shapes.hpp"
#include "softras/soft_raster.hpp"
#include "softras/voxel.hpp"

namespace softras::cli {
namespace fs = std::filesystem;

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_field(std::string_view field, const fs::path& file, std::size_t line_no) {
  while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\r')) field.remove_suffix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size() ||
      !std::isfinite(value)) {
    throw IoError(file.string() + ":" + std::to_string(line_no) + ": cannot parse number '" +
                  std::string(field) + "'");
  }
  return value;
}

// Skips whitespace and '#' comments between PGM header tokens.
int read_header_int(std::istream& in) {
  for (;;) {
    const int c = in.peek();
    if (c == '#') {
      std::string skip;
      std::getline(in, skip);
    } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      in.get();
    } else {
      break;
    }
  }
  int value = -1;
  if (!(in >> value)) throw IoError("PGM header is truncated or malformed");
  return value;
}

Mesh load_template(const std::string& name) {
  if (name == "sphere642") return sphere_template();
  return load_obj(name);
}

void print_report(std::ostream& out, const LossReport& r) {
  out << "final loss: iou=" << r.iou << " laplacian=" << r.laplacian
      << " flattening=" << r.flattening;
  if (r.color) out << " color=" << *r.color;
  out << " total=" << r.total << '\n';
}

struct RenderArgs {
  std::string mesh;
  double azimuth = 0.0;
  double elevation = 0.0;
  double distance = kDefaultDistance;
  double fov = kDefaultFovY;
  int size = kDefaultImageSize;
  double sigma = kDefaultSigma;
  bool hard = false;
  std::string out;
};

int cmd_render(const RenderArgs& a, std::ostream& out) {
  const Mesh mesh = load_obj(a.mesh);
  const Camera cam{a.azimuth, a.elevation, a.distance, a.fov, a.size, a.size};
  const GrayscaleImage img =
      a.hard ? to_grayscale(render_hard(mesh, cam))
             : to_grayscale(render_soft(mesh, cam, RasterOptions{Sharpness{a.sigma}, false}));
  write_pgm(img, a.out);
  const auto solid = std::count_if(img.values.begin(), img.values.end(),
                                   [](std::uint8_t v) { return v >= 128; });
  out << "wrote " << a.out << " (" << solid << " of " << img.values.size()
      << " pixels >= 0.5)\n";
  return kExitOk;
}

struct GenviewsArgs {
  std::string mesh;
  std::string viewset = "ring24";
  int size = kDefaultImageSize;
  std::string outdir;
  std::string manifest;
  double distance = kDefaultDistance;
  double fov = kDefaultFovY;
};

int cmd_genviews(const GenviewsArgs& a, std::ostream& out) {
  const Mesh mesh = load_obj(a.mesh);
  const auto cameras = make_view_set(parse_view_set(a.viewset), a.size, a.distance, a.fov);
  std::error_code ec;
  fs::create_directories(a.outdir, ec);
  if (ec || !fs::is_directory(a.outdir)) {
    throw IoError("cannot create output directory '" + a.outdir + "'");
  }
  const fs::path manifest_dir = fs::absolute(fs::path(a.manifest)).parent_path();
  std::vector<ManifestRow> rows;
  for (std::size_t v = 0; v < cameras.size(); ++v) {
    char name[32];
    std::snprintf(name, sizeof(name), "view_%03zu.pgm", v);
    const fs::path image = fs::path(a.outdir) / name;
    write_pgm(to_grayscale(render_hard(mesh, cameras[v])), image);
    rows.push_back({cameras[v].azimuth, cameras[v].elevation, cameras[v].distance,
                    fs::absolute(image).lexically_relative(manifest_dir)});
  }
  write_manifest(rows, a.manifest);
  out << "wrote " << rows.size() << " views to " << a.outdir << " and manifest " << a.manifest
      << '\n';
  return kExitOk;
}

struct FitArgs {
  std::string templ = "sphere642";
  std::string manifest;
  int iters = 2000;
  std::string out;
  std::string log;
  double sigma = kDefaultSigma;
  double lambda = LossWeights{}.lambda;
  double mu = LossWeights{}.mu;
  double alpha = AdamParams{}.alpha;
  double fov = kDefaultFovY;
  int threads = 1;
  bool exact = false;
};

int cmd_fit(const FitArgs& a, std::ostream& out) {
  const Mesh templ = load_template(a.templ);
  const ViewSet views = load_views(a.manifest, a.fov);
  FitConfig config;
  config.sigma = a.sigma;
  config.weights = {a.lambda, a.mu};
  config.adam.alpha = a.alpha;
  config.iterations = a.iters;
  config.threads = a.threads;
  config.truncate = !a.exact;
  const FitResult result = fit(templ, views, config);
  save_obj(result.mesh, a.out);
  write_loss_csv(result.history, fs::path(a.log));
  if (!result.history.empty()) print_report(out, result.history.back());
  const ViewIou iou = evaluate_2d_iou(result.mesh, views);
  out << "mean 2D IoU over " << views.views.size() << " views: " << iou.mean << '\n';
  return kExitOk;
}

struct GradcheckArgs {
  int trials = 100;
  std::uint64_t seed = 7;
};

int cmd_gradcheck(const GradcheckArgs& a, std::ostream& out, std::ostream& err) {
  GradcheckOptions options;
  options.trials = a.trials;
  options.seed = a.seed;
  const GradcheckReport report = run_gradcheck(options);
  if (report.trials.empty()) {
    err << "warning: no trials requested; gradient check passes vacuously\n";
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "trials=%zu seed=%llu max rel err = %.6e (%s 1e-4)\n",
                report.trials.size(), static_cast<unsigned long long>(a.seed),
                report.max_rel_error, report.passed() ? "<" : ">=");
  out << buf;
  return report.passed() ? kExitOk : kExitFailure;
}

struct Eval3dArgs {
  std::string mesh;
  std::string ref;
  int resolution = 32;
};

int cmd_eval3d(const Eval3dArgs& a, std::ostream& out, std::ostream& err) {
  const Mesh mesh = load_obj(a.mesh);
  const Mesh ref = load_obj(a.ref);
  const Bounds bounds = evaluation_bounds(mesh, ref);
  const VoxelGrid ga = voxelize(mesh, a.resolution, bounds);
  const VoxelGrid gb = voxelize(ref, a.resolution, bounds);
  if (ga.count() == 0 && gb.count() == 0) {
    err << "warning: both voxelizations are empty; IoU defined as 1\n";
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "3D IoU: %.6f\n", iou_3d(ga, gb));
  out << buf;
  return kExitOk;
}

}  // namespace

GrayscaleImage read_pgm(std::istream& in) {
  char magic[2] = {0, 0};
  if (!in.read(magic, 2) || magic[0] != 'P' || magic[1] != '5') {
    throw IoError("not a binary PGM (expected magic 'P5')");
  }
  GrayscaleImage img;
  img.width = read_header_int(in);
  img.height = read_header_int(in);
  const int maxval = read_header_int(in);
  if (img.width < 1 || img.height < 1) throw IoError("PGM has invalid dimensions");
  if (maxval != 255) throw IoError("PGM maxval must be 255, got " + std::to_string(maxval));
  const int sep = in.get();
  if (sep != ' ' && sep != '\t' && sep != '\n' && sep != '\r') {
    throw IoError("PGM header is not followed by whitespace");
  }
  img.values.resize(std::size_t(img.width) * img.height);
  in.read(reinterpret_cast<char*>(img.values.data()),
          static_cast<std::streamsize>(img.values.size()));
  if (in.gcount() != static_cast<std::streamsize>(img.values.size())) {
    throw IoError("PGM payload is truncated");
  }
  return img;
}

GrayscaleImage read_pgm(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open image '" + path.string() + "'");
  try {
    return read_pgm(in);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_pgm(const GrayscaleImage& image, const fs::path& path) {
  if (image.values.size() != std::size_t(image.width) * image.height) {
    throw ValidationError("image buffer does not match its dimensions");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write image '" + path.string() + "'");
  out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.values.data()),
            static_cast<std::streamsize>(image.values.size()));
  if (!out) throw IoError("failed while writing '" + path.string() + "'");
}

GrayscaleImage to_grayscale(const SoftSilhouette& soft) {
  GrayscaleImage img{soft.width, soft.height, {}};
  img.values.reserve(soft.values.size());
  for (double v : soft.values) {
    const double scaled = std::floor(255.0 * std::clamp(v, 0.0, 1.0) + 0.5);
    img.values.push_back(static_cast<std::uint8_t>(scaled));
  }
  return img;
}

GrayscaleImage to_grayscale(const BinaryMask& mask) {
  GrayscaleImage img{mask.width, mask.height, {}};
  img.values.reserve(mask.values.size());
  for (std::uint8_t v : mask.values) img.values.push_back(v ? 255 : 0);
  return img;
}

BinaryMask to_mask(const GrayscaleImage& image) {
  BinaryMask mask(image.width, image.height);
  for (std::size_t i = 0; i < image.values.size(); ++i) {
    mask.values[i] = image.values[i] >= 128 ? 1 : 0;
  }
  return mask;
}

std::vector<ManifestRow> read_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest '" + path.string() + "'");
  const fs::path base = path.parent_path();
  std::vector<ManifestRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) continue;  // header
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (std::size_t comma; (comma = rest.find(',')) != std::string_view::npos;) {
      fields.push_back(rest.substr(0, comma));
      rest.remove_prefix(comma + 1);
    }
    fields.push_back(rest);
    if (fields.size() != 4) {
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": expected 4 fields, got " +
                    std::to_string(fields.size()));
    }
    ManifestRow row;
    row.azimuth = parse_field(fields[0], path, line_no);
    row.elevation = parse_field(fields[1], path, line_no);
    row.distance = parse_field(fields[2], path, line_no);
    std::string image(fields[3]);
    while (!image.empty() && (image.back() == '\r' || image.back() == ' ')) image.pop_back();
    if (image.empty()) {
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": empty image path");
    }
    row.image = fs::path(image).is_absolute() ? fs::path(image) : base / image;
    rows.push_back(std::move(row));
  }
  if (line_no == 0) throw IoError("manifest '" + path.string() + "' has no header line");
  return rows;
}

void write_manifest(const std::vector<ManifestRow>& rows, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write manifest '" + path.string() + "'");
  out << "azimuth_deg,elevation_deg,distance,image_path\n";
  for (const ManifestRow& r : rows) {
    out << format_double(r.azimuth) << ',' << format_double(r.elevation) << ','
        << format_double(r.distance) << ',' << r.image.generic_string() << '\n';
  }
  if (!out) throw IoError("failed while writing '" + path.string() + "'");
}

void write_loss_csv(const std::vector<LossReport>& history, std::ostream& out) {
  out << "iter,iou,laplacian,flattening,color,total\n";
  for (std::size_t i = 0; i < history.size(); ++i) {
    const LossReport& r = history[i];
    out << i << ',' << format_double(r.iou) << ',' << format_double(r.laplacian) << ','
        << format_double(r.flattening) << ',' << (r.color ? format_double(*r.color) : "") << ','
        << format_double(r.total) << '\n';
  }
}

void write_loss_csv(const std::vector<LossReport>& history, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write loss log '" + path.string() + "'");
  write_loss_csv(history, out);
  if (!out) throw IoError("failed while writing '" + path.string() + "'");
}

ViewSet load_views(const fs::path& manifest, double fov_y) {
  ViewSet views;
  for (const ManifestRow& row : read_manifest(manifest)) {
    const GrayscaleImage img = read_pgm(row.image);
    const Camera cam{row.azimuth, row.elevation, row.distance, fov_y, img.width, img.height};
    views.views.push_back({cam, to_mask(img), std::nullopt});
  }
  return views;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Differentiable silhouette rasterizer and multi-view shape fitting", "softras"};
  app.require_subcommand(1);

  RenderArgs render;
  auto* r = app.add_subcommand("render", "Render a soft or hard silhouette of an OBJ mesh");
  r->add_option("--mesh", render.mesh, "Input OBJ")->required();
  r->add_option("--azimuth", render.azimuth, "Camera azimuth (degrees)");
  r->add_option("--elevation", render.elevation, "Camera elevation (degrees)");
  r->add_option("--distance", render.distance, "Camera distance");
  r->add_option("--fov", render.fov, "Vertical field of view (degrees)");
  r->add_option("--size", render.size, "Image width and height")->check(CLI::PositiveNumber);
  r->add_option("--sigma", render.sigma, "Sharpness")->check(CLI::PositiveNumber);
  r->add_flag("--hard", render.hard, "Render a binary silhouette");
  r->add_option("--out", render.out, "Output PGM")->required();

  GenviewsArgs genviews;
  auto* g = app.add_subcommand("genviews", "Render hard target silhouettes for a view set");
  g->add_option("--mesh", genviews.mesh, "Ground-truth OBJ")->required();
  g->add_option("--viewset", genviews.viewset, "ring24 or grid120")
      ->check(CLI::IsMember({"ring24", "grid120"}));
  g->add_option("--size", genviews.size, "Image width and height")->check(CLI::PositiveNumber);
  g->add_option("--outdir", genviews.outdir, "Directory for view images")->required();
  g->add_option("--manifest", genviews.manifest, "Manifest CSV to write")->required();
  g->add_option("--distance", genviews.distance, "Camera distance");
  g->add_option("--fov", genviews.fov, "Vertical field of view (degrees)");

  FitArgs fit_args;
  auto* f = app.add_subcommand("fit", "Fit a template mesh to multi-view silhouettes");
  f->add_option("--template", fit_args.templ, "sphere642 or an OBJ path");
  f->add_option("--manifest", fit_args.manifest, "Views manifest CSV")->required();
  f->add_option("--iters", fit_args.iters, "Optimizer iterations")->check(CLI::NonNegativeNumber);
  f->add_option("--out", fit_args.out, "Fitted OBJ")->required();
  f->add_option("--log", fit_args.log, "Loss history CSV")->required();
  f->add_option("--sigma", fit_args.sigma, "Sharpness")->check(CLI::PositiveNumber);
  f->add_option("--lambda", fit_args.lambda, "Laplacian weight")->check(CLI::NonNegativeNumber);
  f->add_option("--mu", fit_args.mu, "Flattening weight")->check(CLI::NonNegativeNumber);
  f->add_option("--alpha", fit_args.alpha, "Adam step size")->check(CLI::PositiveNumber);
  f->add_option("--fov", fit_args.fov, "Vertical field of view of the views (degrees)");
  f->add_option("--threads", fit_args.threads, "Rendering threads")->check(CLI::PositiveNumber);
  f->add_flag("--exact", fit_args.exact, "Evaluate every face at every pixel");

  GradcheckArgs gradcheck;
  auto* gc = app.add_subcommand("gradcheck", "Compare analytic and finite-difference gradients");
  gc->add_option("--trials", gradcheck.trials, "Random configurations")
      ->check(CLI::NonNegativeNumber);
  gc->add_option("--seed", gradcheck.seed, "Random seed");

  Eval3dArgs eval3d;
  auto* e = app.add_subcommand("eval3d", "Voxel 3D IoU between two closed meshes");
  e->add_option("--mesh", eval3d.mesh, "Mesh OBJ")->required();
  e->add_option("--ref", eval3d.ref, "Reference OBJ")->required();
  e->add_option("--resolution", eval3d.resolution, "Voxels per axis")->check(CLI::Range(2, 1024));

  std::vector<std::string> storage{"softras"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  }

  try {
    if (r->parsed()) return cmd_render(render, out);
    if (g->parsed()) return cmd_genviews(genviews, out);
    if (f->parsed()) return cmd_fit(fit_args, out);
    if (gc->parsed()) return cmd_gradcheck(gradcheck, out, err);
    if (e->parsed()) return cmd_eval3d(eval3d, out, err);
  } catch (const IoError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const Error& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace softras::cli
