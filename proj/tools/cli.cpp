#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <ostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "csas/embedding.hpp"
#include "csas/error.hpp"
#include "csas/features.hpp"
#include "csas/io.hpp"
#include "csas/pca.hpp"
#include "csas/persistence.hpp"
#include "csas/simulator.hpp"

#ifndef CSAS_TOOL_VERSION
#define CSAS_TOOL_VERSION "0.0.0"
#endif

namespace csas::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kToolName = "csas-topo";

class Logger {
 public:
  Logger(std::ostream& sink, const bool& quiet) : sink_(sink), quiet_(quiet) {}
  void info(const std::string& msg) const {
    if (!quiet_) sink_ << kToolName << ": " << msg << '\n';
  }
  void error(const std::string& msg) const { sink_ << kToolName << ": error: " << msg << '\n'; }

 private:
  std::ostream& sink_;
  const bool& quiet_;
};

int thread_count() {
  if (const char* env = std::getenv("CSAS_THREADS")) {
    int n = 0;
    const std::string_view text(env);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
    if (ec == std::errc() && ptr == text.data() + text.size() && n > 0) return n;
    throw Error(ErrorCode::InvalidArgument, "CSAS_THREADS must be a positive integer, got '" + std::string(text) + "'");
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

// Doubles go into the manifest as JSON numbers, except non-finite ones, which JSON cannot carry.
Json number(double v) {
  if (std::isfinite(v)) return v;
  return io::format_number(v);
}

// Parameters, inputs and outputs are keyed by long flag name so that a manifest can be turned
// back into a command line.
struct Manifest {
  std::string subcommand;
  Json parameters = Json::object();
  Json inputs = Json::object();
  Json outputs = Json::object();
  Json rng_seed = nullptr;

  Json to_json() const {
    Json j;
    j["tool"] = kToolName;
    j["tool_version"] = CSAS_TOOL_VERSION;
    j["subcommand"] = subcommand;
    j["parameters"] = parameters;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    j["rng_seed"] = rng_seed;
    return j;
  }
};

void write_manifest(const Manifest& m, const fs::path& path, const Logger& log) {
  io::write_file_atomic(path, m.to_json().dump(2) + "\n");
  log.info("wrote " + path.string());
}

fs::path manifest_path_for(const fs::path& output) { return fs::path(output.string() + ".manifest.json"); }

// .csas and collection text files go through read_collection and are taken as the signature
// cloud; anything else is read as a cloud file.
PointCloud load_cloud(const fs::path& path) {
  if (path.extension() == ".csas") return as_point_cloud(io::read_collection(path));
  return io::read_cloud(path);
}

void add_feature_flags(CLI::App* app, FeatureParams& p) {
  app->add_option("--quantile", p.quantile, "Noise-floor quantile of profile norms")->capture_default_str();
  app->add_option("--factor", p.factor, "Excursion threshold as a multiple of the noise floor")->capture_default_str();
  app->add_option("--half-window", p.half_window, "Samples per side for the symmetry score")->capture_default_str();
  app->add_option("--symmetry-threshold", p.symmetry_threshold, "Scores at or above this are flares")
      ->capture_default_str();
  app->add_option("--critical-tol", p.critical_tol, "Critical-angle tolerance relative to peak speed")
      ->capture_default_str();
}

void record_feature_params(Json& j, const FeatureParams& p) {
  j["quantile"] = number(p.quantile);
  j["factor"] = number(p.factor);
  j["half-window"] = p.half_window;
  j["symmetry-threshold"] = number(p.symmetry_threshold);
  j["critical-tol"] = number(p.critical_tol);
}

std::string summarize_diagram(const PersistenceDiagram& d, double ratio) {
  DominanceOptions dom;
  dom.ratio = ratio;
  std::ostringstream os;
  os << "H0 pairs " << d.in_dim(0).size() << ", H1 pairs " << d.in_dim(1).size() << ", dominant H1 "
     << dominant_count(d, 1, dom);
  if (auto top = most_persistent(d, 1))
    os << ", longest H1 (" << io::format_number(top->birth) << ", " << io::format_number(top->death) << ")";
  return os.str();
}

struct SimulateCmd {
  std::string target;
  bool seven = false;
  double group_offset = 20.0;
  double radius = kSevenScattererRadius;
  double reflectivity = 1.0;
  double beam_width = 0.0;
  SimConfig config;
  std::string output;

  void attach(CLI::App* app) {
    auto* t = app->add_option("--target", target, "Target file: radius,angle_deg,reflectivity[,beam_width_deg]");
    auto* s = app->add_flag("--seven-scatterer", seven, "Use the seven-scatterer preset");
    t->excludes(s);
    app->add_option("--group-offset", group_offset, "Bearing offset of the five-scatterer group (deg)")
        ->capture_default_str();
    app->add_option("--radius", radius, "Preset scatterer radius (m)")->capture_default_str();
    app->add_option("--reflectivity", reflectivity, "Preset scatterer reflectivity")->capture_default_str();
    app->add_option("--beam-width", beam_width, "Preset scatterer beam width (deg, 0 = isotropic)")
        ->capture_default_str();
    app->add_option("--angles", config.n_angles, "Number of look angles")->capture_default_str();
    app->add_option("--range", config.n_range, "Number of range samples")->capture_default_str();
    app->add_option("--standoff", config.standoff, "Sensor distance to the rotation center (m)")
        ->capture_default_str();
    app->add_option("--range-min", config.range_min, "Start of the range window (m)")->capture_default_str();
    app->add_option("--range-max", config.range_max, "End of the range window (m)")->capture_default_str();
    app->add_option("--frequency", config.pulse_center_freq, "Pulse carrier (cycles per meter)")
        ->capture_default_str();
    app->add_option("--pulse-width", config.pulse_width, "Pulse envelope standard deviation (m)")
        ->capture_default_str();
    app->add_option("--noise", config.noise_sigma, "Noise standard deviation per real/imaginary part")
        ->capture_default_str();
    app->add_option("--seed", config.rng_seed, "Noise seed")->capture_default_str();
    app->add_option("-o,--output", output, "Output collection (.csas or .csv)")->required();
  }

  Manifest run(const Logger& log, std::ostream&) {
    if (!seven && target.empty())
      throw Error(ErrorCode::InvalidArgument, "simulate needs --target FILE or --seven-scatterer");
    config.threads = thread_count();
    const ScattererTarget tgt = seven ? seven_scatterer_target(LookAngle(group_offset), radius, reflectivity, beam_width)
                                      : read_target(target);
    log.info("simulating " + std::to_string(tgt.scatterers.size()) + " scatterers, " +
             std::to_string(config.n_angles) + " x " + std::to_string(config.n_range));
    io::write_collection(synthesize(tgt, config), output);
    log.info("wrote " + output);

    Manifest m{"simulate"};
    auto& p = m.parameters;
    p["seven-scatterer"] = seven;
    if (seven) {
      p["group-offset"] = number(group_offset);
      p["radius"] = number(radius);
      p["reflectivity"] = number(reflectivity);
      p["beam-width"] = number(beam_width);
    }
    p["angles"] = config.n_angles;
    p["range"] = config.n_range;
    p["standoff"] = number(config.standoff);
    p["range-min"] = number(config.range_min);
    p["range-max"] = number(config.range_max);
    p["frequency"] = number(config.pulse_center_freq);
    p["pulse-width"] = number(config.pulse_width);
    p["noise"] = number(config.noise_sigma);
    p["seed"] = config.rng_seed;
    if (!seven) m.inputs["target"] = target;
    m.outputs["output"] = output;
    m.rng_seed = config.rng_seed;
    return m;
  }

  fs::path manifest_path() const { return manifest_path_for(output); }
};

struct EmbedCmd {
  std::string input;
  std::string lags = "0,4,25";
  std::string output;

  void attach(CLI::App* app) {
    app->add_option("-i,--input", input, "Input collection")->required();
    app->add_option("--lags", lags, "Comma-separated lags in degrees")->capture_default_str();
    app->add_option("-o,--output", output, "Output cloud (.csv)")->required();
  }

  Manifest run(const Logger& log, std::ostream&) {
    const LagSet lag_set = LagSet::parse(lags);
    const Collection c = io::read_collection(input);
    const PointCloud cloud = embed(c, lag_set);
    log.info("embedded " + std::to_string(cloud.size()) + " points in dimension " + std::to_string(cloud.dim()));
    io::write_cloud(cloud, output);
    log.info("wrote " + output);

    Manifest m{"embed"};
    m.parameters["lags"] = lags;
    m.inputs["input"] = input;
    m.outputs["output"] = output;
    return m;
  }

  fs::path manifest_path() const { return manifest_path_for(output); }
};

struct PcaCmd {
  std::string input;
  int k = 3;
  std::string output;
  std::string svg;

  void attach(CLI::App* app) {
    app->add_option("-i,--input", input, "Input cloud (.csv) or collection (.csas)")->required();
    app->add_option("-k,--components", k, "Number of principal components")->capture_default_str();
    app->add_option("-o,--output", output, "Projected cloud (.csv)")->required();
    app->add_option("--svg", svg, "Scatter plot of the projection");
  }

  Manifest run(const Logger& log, std::ostream& out) {
    const PointCloud cloud = load_cloud(input);
    const PcaModel model = fit_pca(cloud, k);
    const PointCloud projected = project(model, cloud);
    io::write_cloud(projected, output);
    log.info("wrote " + output);
    if (!svg.empty()) {
      io::write_projection_svg(projected, svg, fs::path(input).filename().string());
      log.info("wrote " + svg);
    }
    const double total = total_variance(cloud.points);
    const double kept = model.explained_variance.sum();
    out << "explained variance " << io::format_number(kept) << " of " << io::format_number(total) << '\n';

    Manifest m{"pca"};
    m.parameters["components"] = k;
    m.inputs["input"] = input;
    m.outputs["output"] = output;
    if (!svg.empty()) m.outputs["svg"] = svg;
    return m;
  }

  fs::path manifest_path() const { return manifest_path_for(output); }
};

struct PersistCmd {
  std::string input;
  RipsOptions rips;
  double ratio = DominanceOptions{}.ratio;
  std::string output;
  std::string svg;

  void attach(CLI::App* app) {
    app->add_option("-i,--input", input, "Input cloud (.csv) or collection (.csas)")->required();
    app->add_option("--max-radius", rips.max_radius, "Truncate the filtration at this scale")
        ->capture_default_str();
    app->add_option("--max-dim", rips.max_dim, "Highest homology dimension (0 or 1)")->capture_default_str();
    app->add_option("--max-points", rips.max_points, "Refuse clouds larger than this")->capture_default_str();
    app->add_option("--ratio", ratio, "Lifetime gap ratio for the dominant-class count")->capture_default_str();
    app->add_option("-o,--output", output, "Diagram (.csv)")->required();
    app->add_option("--svg", svg, "Diagram plot");
  }

  Manifest run(const Logger& log, std::ostream& out) {
    const PointCloud cloud = load_cloud(input);
    log.info("persistence of " + std::to_string(cloud.size()) + " points");
    const PersistenceDiagram d = rips_persistence(distance_matrix(cloud, thread_count()), rips);
    io::write_diagram(d, output);
    log.info("wrote " + output);
    if (!svg.empty()) {
      io::write_diagram_svg(d, svg, fs::path(input).filename().string());
      log.info("wrote " + svg);
    }
    out << summarize_diagram(d, ratio) << '\n';

    Manifest m{"persist"};
    m.parameters["max-radius"] = number(rips.max_radius);
    m.parameters["max-dim"] = rips.max_dim;
    m.parameters["max-points"] = rips.max_points;
    m.parameters["ratio"] = number(ratio);
    m.inputs["input"] = input;
    m.outputs["output"] = output;
    if (!svg.empty()) m.outputs["svg"] = svg;
    return m;
  }

  fs::path manifest_path() const { return manifest_path_for(output); }
};

struct AnalyzeCmd {
  std::string input;
  FeatureParams params;
  std::string output;
  std::string rows;

  void attach(CLI::App* app) {
    app->add_option("-i,--input", input, "Input collection")->required();
    add_feature_flags(app, params);
    app->add_option("-o,--output", output, "Report (structured text)")->required();
    app->add_option("--rows", rows, "Per-excursion rows (.csv)");
  }

  Manifest run(const Logger& log, std::ostream& out) {
    const FeatureReport report = feature_report(io::read_collection(input), params);
    io::write_file_atomic(output, io::report_text(report));
    log.info("wrote " + output);
    if (!rows.empty()) {
      io::write_file_atomic(rows, io::report_rows(report));
      log.info("wrote " + rows);
    }
    const auto loops = std::ranges::count(report.features, ReflectionKind::Loop, &ReflectionFeature::kind);
    out << "excursions " << report.excursions.size() << ", loops " << loops << ", flares "
        << report.features.size() - static_cast<std::size_t>(loops) << '\n';

    Manifest m{"analyze"};
    record_feature_params(m.parameters, params);
    m.inputs["input"] = input;
    m.outputs["output"] = output;
    if (!rows.empty()) m.outputs["rows"] = rows;
    return m;
  }

  fs::path manifest_path() const { return manifest_path_for(output); }
};

struct PipelineCmd {
  std::string input;
  std::string lags = "0,4,25";
  int k = 3;
  RipsOptions rips;
  double ratio = DominanceOptions{}.ratio;
  FeatureParams params;
  std::string output;

  void attach(CLI::App* app) {
    app->add_option("-i,--input", input, "Input collection")->required();
    app->add_option("--lags", lags, "Phase-space lags in degrees")->capture_default_str();
    app->add_option("-k,--components", k, "Principal components for the projections")->capture_default_str();
    app->add_option("--max-radius", rips.max_radius, "Truncate both filtrations at this scale")
        ->capture_default_str();
    app->add_option("--max-points", rips.max_points, "Refuse clouds larger than this")->capture_default_str();
    app->add_option("--ratio", ratio, "Lifetime gap ratio for the dominant-class count")->capture_default_str();
    add_feature_flags(app, params);
    app->add_option("-o,--output", output, "Output directory")->required();
  }

  Manifest run(const Logger& log, std::ostream& out) {
    const LagSet lag_set = LagSet::parse(lags);
    const Collection c = io::read_collection(input);
    const int threads = thread_count();
    fs::create_directories(output);
    const fs::path dir(output);

    Manifest m{"pipeline"};
    auto space = [&](const std::string& name, const PointCloud& cloud) {
      log.info(name + ": " + std::to_string(cloud.size()) + " points in dimension " + std::to_string(cloud.dim()));
      io::write_cloud(cloud, dir / (name + "_cloud.csv"));

      const Eigen::Index kk = std::min<Eigen::Index>({k, cloud.dim(), cloud.size()});
      if (kk < k) log.info(name + ": using " + std::to_string(kk) + " components");
      const PointCloud projected = project(fit_pca(cloud, kk), cloud);
      io::write_cloud(projected, dir / (name + "_projection.csv"));
      io::write_projection_svg(projected, dir / (name + "_projection.svg"), name);

      const PersistenceDiagram d = rips_persistence(distance_matrix(cloud, threads), rips);
      io::write_diagram(d, dir / (name + "_diagram.csv"));
      io::write_diagram_svg(d, dir / (name + "_diagram.svg"), name);
      out << name << ": " << summarize_diagram(d, ratio) << '\n';
    };
    space("signature", as_point_cloud(c));
    space("phase", embed(c, lag_set));

    const FeatureReport report = feature_report(c, params);
    io::write_file_atomic(dir / "report.txt", io::report_text(report));
    io::write_file_atomic(dir / "report.csv", io::report_rows(report));
    out << "features: " << report.excursions.size() << " excursions\n";
    log.info("wrote outputs to " + output);

    m.parameters["lags"] = lags;
    m.parameters["components"] = k;
    m.parameters["max-radius"] = number(rips.max_radius);
    m.parameters["max-points"] = rips.max_points;
    m.parameters["ratio"] = number(ratio);
    record_feature_params(m.parameters, params);
    m.inputs["input"] = input;
    m.outputs["output"] = output;
    return m;
  }

  fs::path manifest_path() const { return fs::path(output) / "manifest.json"; }
};

// Converts a manifest back into the command line that produced it. Output paths can be moved
// under another directory, keeping their file names.
std::vector<std::string> args_from_manifest(const Json& j, const std::string& output_root) {
  if (!j.is_object() || !j.contains("subcommand") || !j["subcommand"].is_string())
    throw Error(ErrorCode::MalformedText, "manifest has no subcommand");
  std::vector<std::string> args{j["subcommand"].get<std::string>()};
  auto scalar = [](const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number() || v.is_boolean()) return v.dump();
    throw Error(ErrorCode::MalformedText, "manifest value is not a scalar: " + v.dump());
  };
  const Json parameters = j.value("parameters", Json::object());
  for (const auto& [key, value] : parameters.items()) {
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back("--" + key);
      continue;
    }
    args.push_back("--" + key);
    args.push_back(scalar(value));
  }
  const Json inputs = j.value("inputs", Json::object());
  for (const auto& [key, value] : inputs.items()) {
    args.push_back("--" + key);
    args.push_back(scalar(value));
  }
  const Json outputs = j.value("outputs", Json::object());
  for (const auto& [key, value] : outputs.items()) {
    args.push_back("--" + key);
    fs::path p(scalar(value));
    if (!output_root.empty()) p = fs::path(output_root) / p.filename();
    args.push_back(p.string());
  }
  return args;
}

int exit_code_for(ErrorCode code) {
  if (code == ErrorCode::MatrixTooLarge) return kExitResource;
  if (is_format_error(code)) return kExitFormat;
  return kExitUsage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& log_stream) {
  bool quiet = false;
  const Logger log(log_stream, quiet);

  CLI::App app{"Topological analysis of circular synthetic aperture sonar collections", kToolName};
  app.set_version_flag("--version", CSAS_TOOL_VERSION);
  app.add_flag("-q,--quiet", quiet, "Suppress progress messages");
  app.require_subcommand(1);

  SimulateCmd simulate;
  EmbedCmd embed_cmd;
  PcaCmd pca;
  PersistCmd persist;
  AnalyzeCmd analyze;
  PipelineCmd pipeline;
  std::string manifest_in;
  std::string output_root;

  simulate.attach(app.add_subcommand("simulate", "Synthesize a collection from point scatterers"));
  embed_cmd.attach(app.add_subcommand("embed", "Lagged phase-space embedding of a collection"));
  pca.attach(app.add_subcommand("pca", "Project a cloud onto its principal components"));
  persist.attach(app.add_subcommand("persist", "H0/H1 Vietoris-Rips persistence diagram of a cloud"));
  analyze.attach(app.add_subcommand("analyze", "Noise floor, excursions, flare/loop classes, critical angles"));
  pipeline.attach(app.add_subcommand("pipeline", "Signature and phase space analysis of one collection"));
  auto* rerun = app.add_subcommand("rerun", "Repeat the run recorded in a manifest");
  rerun->add_option("manifest", manifest_in, "Manifest written by an earlier run")->required();
  rerun->add_option("--output-root", output_root, "Write the outputs into this directory instead");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << CSAS_TOOL_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    log.error(e.what());
    return kExitUsage;
  }

  try {
    if (rerun->parsed()) {
      const Json j = [&] {
        try {
          return Json::parse(io::read_file(manifest_in));
        } catch (const Json::parse_error& e) {
          throw Error(ErrorCode::MalformedText, manifest_in + ": " + e.what());
        }
      }();
      auto replay = args_from_manifest(j, output_root);
      if (quiet) replay.insert(replay.begin(), "--quiet");
      if (!output_root.empty()) fs::create_directories(output_root);
      log.info("rerunning " + replay.front());
      return run(replay, out, log_stream);
    }

    auto execute = [&](auto& cmd) {
      const Manifest m = cmd.run(log, out);
      write_manifest(m, cmd.manifest_path(), log);
    };
    if (app.got_subcommand("simulate")) execute(simulate);
    else if (app.got_subcommand("embed")) execute(embed_cmd);
    else if (app.got_subcommand("pca")) execute(pca);
    else if (app.got_subcommand("persist")) execute(persist);
    else if (app.got_subcommand("analyze")) execute(analyze);
    else if (app.got_subcommand("pipeline")) execute(pipeline);
  } catch (const Error& e) {
    log.error(e.what());
    return exit_code_for(e.code());
  } catch (const fs::filesystem_error& e) {
    log.error(e.what());
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace csas::cli
