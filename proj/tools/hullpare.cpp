// Copyright 2026 The Hullpare Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: simplify, stats, overlap, bench, kdop and run.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "hullpare/baselines.h"
#include "hullpare/error.h"
#include "hullpare/hull.h"
#include "hullpare/io.h"
#include "hullpare/lp.h"
#include "hullpare/simplify.h"
#include "json.hpp"

namespace {

using namespace hullpare;
using Clock = std::chrono::steady_clock;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDisjoint = 3;
constexpr int kExitCompute = 4;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

int report(const char* code, const std::string& message) {
  std::string flat = message;
  std::replace(flat.begin(), flat.end(), '\n', ' ');
  std::cerr << "hullpare-error code=" << code << " message=" << flat << "\n";
  return kExitCompute;
}

struct SimplifyArgs {
  std::string input;
  std::string out;
  int faces = 18;
  std::string cost = "volume";
  std::string mode = "outer";
  std::vector<int> keep;
  std::uint64_t seed = 0;
  bool oracle = false;
  bool triangulate = false;
  bool timing = false;
};

int run_job(const RunJob& job) {
  const LoadedGeometry geometry = load_geometry(job.input);
  if (geometry.duplicates > 0) {
    std::cerr << "note: dropped " << geometry.duplicates << " duplicate vertices\n";
  }
  const auto start = Clock::now();
  const SimplifiedHull result = simplify(std::span<const Point3>(geometry.points), job.config);
  const double elapsed = ms_since(start);

  PlaneListDocument doc = make_document(result, job.config, job.input);
  if (job.record_timing) doc.timing_ms = elapsed;
  write_outputs(doc, result.mesh, job.output, job.triangulate_output);
  for (const std::string& w : result.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << "status=" << doc.status << " planes=" << doc.reached
            << " volume_ratio=" << doc.volume_ratio << " area_ratio=" << doc.area_ratio << "\n";
  if (result.status == SimplifyStatus::TargetUnreachable) {
    return report("TargetUnreachable", "stopped at " + std::to_string(doc.reached) +
                                           " planes; partial output written to " + job.output);
  }
  return kExitOk;
}

RunJob job_from(const SimplifyArgs& a) {
  RunJob job;
  job.input = a.input;
  job.output = a.out;
  job.config.target_faces = a.faces;
  job.config.cost_mode = a.cost == "area" ? CostMode::Area : CostMode::Volume;
  job.config.approx_mode = a.mode == "inner" ? ApproxMode::Inner : ApproxMode::Outer;
  job.config.constrained = a.keep;
  job.config.rng_seed = a.seed;
  job.config.exact_cost_check = a.oracle;
  job.triangulate_output = a.triangulate;
  job.record_timing = a.timing;
  return job;
}

int cmd_stats(const std::string& input, const std::string& against) {
  const LoadedGeometry geometry = load_geometry(input);
  const TriangulatedHull hull = convex_hull(geometry.points);
  const PlaneListDocument doc = read_plane_list(against);
  const ApproxMode mode = doc.mode == "inner" ? ApproxMode::Inner : ApproxMode::Outer;
  const TightnessReport r = tightness(doc.planes, hull, mode);
  nlohmann::ordered_json j;
  j["input"] = input;
  j["against"] = against;
  j["mode"] = to_string(mode);
  j["planes"] = doc.planes.size();
  j["hull_faces"] = face_planes(hull).halfspaces.size();
  j["volume_ratio"] = r.volume_ratio;
  j["area_ratio"] = r.area_ratio;
  j["hausdorff"] = r.hausdorff;
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_overlap(const std::string& a, const std::string& b) {
  std::vector<Halfspace> planes = read_plane_list(a).planes;
  const std::vector<Halfspace> other = read_plane_list(b).planes;
  planes.insert(planes.end(), other.begin(), other.end());
  const LpOutcome r = feasible_point(planes);
  if (r.status == LpStatus::Feasible) {
    std::cout << "overlap " << r.witness.x << " " << r.witness.y << " " << r.witness.z << "\n";
    return kExitOk;
  }
  std::cout << "disjoint\n";
  return kExitDisjoint;
}

int cmd_kdop(const std::string& input, int k, const std::string& out, bool triangulate) {
  const LoadedGeometry geometry = load_geometry(input);
  const TriangulatedHull hull = convex_hull(geometry.points);
  const std::vector<Halfspace> planes = kdop_fit(geometry.points, canonical_directions(k));
  const IntersectionResult polytope = halfspace_intersection(planes);
  const TightnessReport r = tightness(planes, hull);

  PlaneListDocument doc;
  doc.center = polytope.center;
  doc.planes = planes;
  doc.source_faces.assign(planes.size(), -1);
  doc.input = input;
  doc.target = k;
  doc.cost = "kdop";
  doc.reached = static_cast<int>(planes.size());
  doc.volume_ratio = r.volume_ratio;
  doc.area_ratio = r.area_ratio;
  write_outputs(doc, polytope.mesh, out, triangulate);
  std::cout << "planes=" << planes.size() << " volume_ratio=" << r.volume_ratio
            << " area_ratio=" << r.area_ratio << "\n";
  return kExitOk;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

int thread_budget() {
  if (const char* env = std::getenv("HULLPARE_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int cmd_bench(const std::string& dir, int faces, const std::string& out, std::uint64_t seed) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), ::tolower);
    if (entry.is_regular_file() && (ext == ".obj" || ext == ".off" || ext == ".ply")) {
      files.push_back(entry.path());
    }
  }
  if (ec) throw Error(ErrorCode::IoError, "cannot list " + dir);
  std::sort(files.begin(), files.end());

  std::vector<std::string> rows(files.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < files.size(); i = next++) {
      const std::string name = csv_field(files[i].filename().string());
      std::ostringstream row;
      row.precision(17);
      try {
        const LoadedGeometry geometry = load_geometry(files[i].string());
        auto start = Clock::now();
        const TriangulatedHull hull = convex_hull(geometry.points);
        const double hull_ms = ms_since(start);
        SimplifyConfig config;
        config.target_faces = faces;
        config.rng_seed = seed;
        start = Clock::now();
        const SimplifiedHull result = simplify(hull, config);
        const double simplify_ms = ms_since(start);
        row << name << "," << geometry.points.size() << "," << hull.triangles.size() << ","
            << hull_ms << "," << simplify_ms << "," << result.volume_ratio << ","
            << to_string(result.status) << ",";
      } catch (const Error& e) {
        row << name << ",,,,,," << "error," << csv_field(std::string(to_string(e.code())) + ": " + e.what());
      }
      rows[i] = row.str();
    }
  };
  const int threads = std::min<int>(thread_budget(), std::max<size_t>(files.size(), 1));
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  std::string csv = "file,n_points,hull_faces,hull_ms,simplify_ms,volume_ratio,status,error\n";
  for (const std::string& r : rows) csv += r + "\n";
  write_text(out, csv);
  std::cout << "wrote " << files.size() << " rows to " << out << "\n";
  return kExitOk;
}

int cmd_run(const std::string& path) {
  const RunConfigFile config = read_run_config(path);
  int status = kExitOk;
  for (const RunJob& job : config.jobs) {
    try {
      status = std::max(status, run_job(job));
    } catch (const Error& e) {
      status = std::max(status, report(to_string(e.code()), job.input + ": " + e.what()));
    }
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simplify convex hulls to a few bounding halfspaces."};
  app.require_subcommand(1);

  SimplifyArgs sa;
  CLI::App* simplify_cmd = app.add_subcommand("simplify", "Simplify the hull of a mesh or point cloud");
  simplify_cmd->add_option("--input", sa.input, "OBJ, OFF or PLY file")->required();
  simplify_cmd->add_option("--faces", sa.faces, "Target plane count (vertex count for inner)")
      ->required()
      ->check(CLI::Range(4, std::numeric_limits<int>::max()));
  simplify_cmd->add_option("--cost", sa.cost, "volume or area")->check(CLI::IsMember({"volume", "area"}));
  simplify_cmd->add_option("--mode", sa.mode, "outer or inner")->check(CLI::IsMember({"outer", "inner"}));
  simplify_cmd->add_option("--keep-face", sa.keep, "Hull face plane (outer) or vertex (inner) to keep");
  simplify_cmd->add_option("--seed", sa.seed, "Random seed");
  simplify_cmd->add_flag("--oracle-check", sa.oracle, "Verify every cost by full recomputation");
  simplify_cmd->add_flag("--triangulate-output", sa.triangulate, "Fan polygons in the OBJ output");
  simplify_cmd->add_flag("--record-timing", sa.timing, "Store wall time in the metadata");
  simplify_cmd->add_option("--out", sa.out, "Output base path")->required();

  std::string stats_input, stats_against;
  CLI::App* stats_cmd = app.add_subcommand("stats", "Compare a plane list with the hull of a mesh");
  stats_cmd->add_option("--input", stats_input)->required();
  stats_cmd->add_option("--against", stats_against)->required();

  std::string overlap_a, overlap_b;
  CLI::App* overlap_cmd = app.add_subcommand("overlap", "Test two plane lists for intersection");
  overlap_cmd->add_option("--a", overlap_a)->required();
  overlap_cmd->add_option("--b", overlap_b)->required();

  std::string bench_dir, bench_out;
  int bench_faces = 18;
  std::uint64_t bench_seed = 0;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Time hull and simplification over a directory");
  bench_cmd->add_option("--inputs", bench_dir)->required();
  bench_cmd->add_option("--faces", bench_faces)->required()->check(CLI::Range(4, std::numeric_limits<int>::max()));
  bench_cmd->add_option("--out", bench_out)->required();
  bench_cmd->add_option("--seed", bench_seed);

  std::string kdop_input, kdop_out;
  int kdop_k = 18;
  bool kdop_triangulate = false;
  CLI::App* kdop_cmd = app.add_subcommand("kdop", "Fit a k-DOP with canonical directions");
  kdop_cmd->add_option("--input", kdop_input)->required();
  kdop_cmd->add_option("--k", kdop_k)->check(CLI::IsMember({6, 14, 18, 26}));
  kdop_cmd->add_option("--out", kdop_out)->required();
  kdop_cmd->add_flag("--triangulate-output", kdop_triangulate);

  std::string run_path;
  CLI::App* run_cmd = app.add_subcommand("run", "Execute a JSON run configuration");
  run_cmd->add_option("--config", run_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*simplify_cmd) return run_job(job_from(sa));
    if (*stats_cmd) return cmd_stats(stats_input, stats_against);
    if (*overlap_cmd) return cmd_overlap(overlap_a, overlap_b);
    if (*bench_cmd) return cmd_bench(bench_dir, bench_faces, bench_out, bench_seed);
    if (*kdop_cmd) return cmd_kdop(kdop_input, kdop_k, kdop_out, kdop_triangulate);
    if (*run_cmd) return cmd_run(run_path);
  } catch (const Error& e) {
    const int code = report(to_string(e.code()), e.what());
    return e.code() == ErrorCode::InvalidConfig ? kExitUsage : code;
  }
  return kExitUsage;
}
