// axsym: axes of axial symmetry from samples, simulations, and images.
//
// Exit codes: 0 success, 2 usage or input validation failure, 3 internal error.

#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "axsym/axsym.hpp"

namespace fs = std::filesystem;

namespace {

std::string utc_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_artifact(const fs::path& dir, const std::string& name,
                    const std::string& content) {
  axsym::write_file((dir / name).string(), content);
}

std::vector<std::size_t> parse_size_list(const std::string& text,
                                         const char* what) {
  std::vector<std::size_t> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, ',')) {
    if (cur.empty()) continue;
    try {
      std::size_t used = 0;
      const long long v = std::stoll(cur, &used);
      if (used != cur.size() || v <= 0) throw std::invalid_argument(cur);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw axsym::validation_error(std::string("malformed ") + what +
                                    " list entry '" + cur + "'");
    }
  }
  if (out.empty())
    throw axsym::validation_error(std::string("empty ") + what + " list");
  return out;
}

axsym::Scenario parse_scenario(const std::string& name) {
  if (name == "gaussian" || name == "gaussian_rho") return axsym::Scenario::gaussian_rho;
  if (name == "uniform" || name == "uniform_square") return axsym::Scenario::uniform_square;
  if (name == "spherical" || name == "spherical_gaussian")
    return axsym::Scenario::spherical_gaussian;
  if (name == "mirror" || name == "custom_mirror") return axsym::Scenario::custom_mirror;
  throw axsym::validation_error("unknown scenario '" + name +
                                "' (expected gaussian|uniform|spherical|mirror)");
}

void print_axes(const axsym::PeakResult& peaks) {
  for (std::size_t i = 0; i < peaks.minima_angles.size(); ++i)
    std::printf("axis %zu: %.4f deg  (g_hat = %.6f, grid index %zu)\n", i,
                peaks.minima_angles[i].degrees(), peaks.axis_values[i],
                peaks.axis_indices[i]);
  if (peaks.minima_angles.empty()) std::printf("no axes detected\n");
}

int run_estimate(const std::string& input, std::size_t grid, std::size_t k,
                 std::uint64_t seed, int threads, const std::string& out_dir) {
  const std::string bytes = axsym::read_file(input);
  const axsym::PointCloud cloud = axsym::parse_points_csv(bytes);
  const axsym::SymmetryProfile prof =
      axsym::profile(cloud, grid, k, axsym::Rng(seed), threads);
  const axsym::PeakResult peaks = axsym::axes_from_profile(prof);

  const fs::path dir(out_dir);
  fs::create_directories(dir);
  write_artifact(dir, "profile.json", axsym::dump_json(axsym::json_profile(prof)));
  write_artifact(dir, "profile.csv", axsym::csv_profile(prof));
  write_artifact(dir, "axes.json", axsym::dump_json(axsym::json_axes(peaks)));

  axsym::ordered_json params;
  params["input"] = input;
  params["grid"] = grid;
  params["k"] = k;
  params["threads"] = threads;
  params["out_dir"] = out_dir;
  write_artifact(dir, "manifest.json",
                 axsym::dump_json(axsym::json_manifest(
                     "estimate", params, seed,
                     {{input, axsym::hex64(axsym::fnv1a64(bytes))}}, utc_now())));

  std::printf("n = %zu, k = %zu, grid = %zu, seed = %llu\n", prof.n, prof.k,
              grid, static_cast<unsigned long long>(seed));
  std::printf("epsilon_n = %.6f\n", prof.epsilon);
  print_axes(peaks);
  return 0;
}

int run_simulate(const std::string& scenario_name, double rho,
                 double mirror_angle_deg, const std::string& n_list,
                 const std::string& k_list, std::size_t grid, std::size_t reps,
                 std::uint64_t seed, int threads, const std::string& out_dir) {
  const axsym::Scenario scenario = parse_scenario(scenario_name);
  const std::vector<std::size_t> ns = parse_size_list(n_list, "n");
  const std::vector<std::size_t> ks = parse_size_list(k_list, "k");

  std::vector<axsym::SimulationReport> reports;
  for (std::size_t n : ns)
    for (std::size_t k : ks) {
      axsym::ScenarioConfig cfg;
      cfg.scenario = scenario;
      cfg.rho = rho;
      cfg.mirror_angle = mirror_angle_deg * axsym::kPi / 180.0;
      cfg.n = n;
      cfg.k = k;
      cfg.grid_size = grid;
      cfg.replications = reps;
      cfg.base_seed = seed;
      axsym::validate(cfg);
      reports.push_back(axsym::run_study(cfg, threads));
      const axsym::SimulationReport& rep = reports.back();
      std::printf("scenario=%s n=%zu k=%zu correct=%zu/%zu", scenario_name.c_str(),
                  n, k, rep.correct_reps, reps);
      if (rep.has_mean_error)
        std::printf(" mean_error=%.4f deg\n",
                    rep.mean_error_over_correct_rad * axsym::kRadToDeg);
      else
        std::printf(" mean_error=NA\n");
    }

  const fs::path dir(out_dir);
  fs::create_directories(dir);
  axsym::ordered_json jreports = axsym::ordered_json::array();
  for (const axsym::SimulationReport& rep : reports)
    jreports.push_back(axsym::json_report(rep));
  axsym::ordered_json top;
  top["artifact_version"] = axsym::kArtifactVersion;
  top["studies"] = std::move(jreports);
  write_artifact(dir, "report.json", axsym::dump_json(top));
  write_artifact(dir, "frequency.csv", axsym::csv_frequency_table(reports));
  write_artifact(dir, "error.csv", axsym::csv_error_table(reports));

  axsym::ordered_json params;
  params["scenario"] = scenario_name;
  params["rho"] = rho;
  params["mirror_angle_degrees"] = mirror_angle_deg;
  params["n"] = n_list;
  params["k"] = k_list;
  params["grid"] = grid;
  params["reps"] = reps;
  params["threads"] = threads;
  params["out_dir"] = out_dir;
  write_artifact(dir, "manifest.json",
                 axsym::dump_json(axsym::json_manifest("simulate", params, seed,
                                                       {}, utc_now())));
  return 0;
}

int run_ingest(const std::string& input, double threshold, std::size_t n,
               double jitter, bool allow_replacement, std::size_t k,
               std::size_t grid, std::uint64_t seed, int threads,
               const std::string& out_dir) {
  const std::string bytes = axsym::read_file(input);
  const axsym::GrayImage img = axsym::load_image(input);

  axsym::ImageParams params;
  params.threshold.threshold = threshold;
  params.threshold.n = n;
  params.threshold.jitter = jitter;
  params.threshold.allow_replacement = allow_replacement;
  params.k = k;
  params.grid_size = grid;
  params.seed = seed;
  params.threads = threads;
  const axsym::ImageEstimate est = axsym::estimate_image_axis(img, params);

  const fs::path dir(out_dir);
  fs::create_directories(dir);
  write_artifact(dir, "points.csv", axsym::points_csv(est.points));
  write_artifact(dir, "profile.json",
                 axsym::dump_json(axsym::json_profile(est.profile)));
  write_artifact(dir, "profile.csv", axsym::csv_profile(est.profile));
  write_artifact(dir, "axes.json", axsym::dump_json(axsym::json_axes(est.axes)));

  axsym::ordered_json jp;
  jp["input"] = input;
  jp["threshold"] = threshold;
  jp["n"] = n;
  jp["jitter"] = jitter;
  jp["allow_replacement"] = allow_replacement;
  jp["k"] = k;
  jp["grid"] = grid;
  jp["threads"] = threads;
  jp["out_dir"] = out_dir;
  write_artifact(dir, "manifest.json",
                 axsym::dump_json(axsym::json_manifest(
                     "ingest", jp, seed,
                     {{input, axsym::hex64(axsym::fnv1a64(bytes))}}, utc_now())));

  std::printf("image %zux%zu, %zu points sampled, epsilon_n = %.6f\n",
              img.width, img.height, est.points.size(), est.profile.epsilon);
  print_axes(est.axes);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"axes of axial symmetry from 1-D projections"};
  app.require_subcommand(1);

  // estimate
  auto* est = app.add_subcommand("estimate", "estimate axes from a points CSV");
  std::string est_input, est_out = ".";
  std::size_t est_grid = 200, est_k = 50;
  std::uint64_t est_seed = 0;
  int est_threads = 1;
  est->add_option("--input", est_input, "two-column CSV of points")->required();
  est->add_option("--grid", est_grid, "profile grid size");
  est->add_option("--k", est_k, "number of projection directions");
  est->add_option("--seed", est_seed, "RNG seed (default 0)");
  est->add_option("--threads", est_threads, "worker threads");
  est->add_option("--out-dir", est_out, "output directory");

  // simulate
  auto* sim = app.add_subcommand("simulate", "run a Monte Carlo study");
  std::string sim_scenario, sim_n = "1000", sim_k = "50", sim_out = ".";
  double sim_rho = 0.7, sim_mirror = 0.0;
  std::size_t sim_grid = 200, sim_reps = 0;
  std::uint64_t sim_seed = 0;
  int sim_threads = 1;
  sim->add_option("--scenario", sim_scenario,
                  "gaussian|uniform|spherical|mirror")
      ->required();
  sim->add_option("--rho", sim_rho, "gaussian correlation");
  sim->add_option("--mirror-angle", sim_mirror, "mirror axis angle, degrees");
  sim->add_option("--n", sim_n, "comma-separated sample sizes");
  sim->add_option("--k", sim_k, "comma-separated direction counts");
  sim->add_option("--grid", sim_grid, "profile grid size");
  sim->add_option("--reps", sim_reps, "replications per cell")->required();
  sim->add_option("--seed", sim_seed, "base seed")->required();
  sim->add_option("--threads", sim_threads, "worker threads");
  sim->add_option("--out-dir", sim_out, "output directory");

  // ingest
  auto* ing = app.add_subcommand("ingest", "estimate axes from an image");
  std::string ing_input, ing_out = ".";
  double ing_threshold = 0.45, ing_jitter = 1.0;
  std::size_t ing_n = 10000, ing_k = 50, ing_grid = 200;
  std::uint64_t ing_seed = 0;
  int ing_threads = 1;
  bool ing_replace = false;
  ing->add_option("--input", ing_input, "PGM (P2/P5) or CSV intensity matrix")
      ->required();
  ing->add_option("--threshold", ing_threshold, "intensity threshold");
  ing->add_option("--n", ing_n, "points to sample");
  ing->add_option("--jitter", ing_jitter, "jitter width in pixels");
  ing->add_flag("--allow-replacement", ing_replace,
                "sample qualifying pixels with replacement");
  ing->add_option("--k", ing_k, "number of projection directions");
  ing->add_option("--grid", ing_grid, "profile grid size");
  ing->add_option("--seed", ing_seed, "RNG seed (default 0)");
  ing->add_option("--threads", ing_threads, "worker threads");
  ing->add_option("--out-dir", ing_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (est->parsed())
      return run_estimate(est_input, est_grid, est_k, est_seed, est_threads,
                          est_out);
    if (sim->parsed())
      return run_simulate(sim_scenario, sim_rho, sim_mirror, sim_n, sim_k,
                          sim_grid, sim_reps, sim_seed, sim_threads, sim_out);
    if (ing->parsed())
      return run_ingest(ing_input, ing_threshold, ing_n, ing_jitter,
                        ing_replace, ing_k, ing_grid, ing_seed, ing_threads,
                        ing_out);
    std::fprintf(stderr, "error: no subcommand\n");
    return 2;
  } catch (const axsym::validation_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const axsym::io_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 3;
  }
}
