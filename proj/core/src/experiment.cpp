#include "khull/experiment.hpp"

#include "khull/faces.hpp"
#include "khull/formulas.hpp"
#include "khull/hull.hpp"
#include "khull/tessellation.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace khull {

using nlohmann::json;

namespace {

std::size_t positive_count(const json& j, const char* key) {
  if (!j[key].is_number_integer() || j[key].get<long long>() < 1)
    throw ConfigError(std::string("config: '") + key + "' must be a positive integer");
  return j[key].get<std::size_t>();
}

std::string joined_names() {
  std::string s;
  for (const auto& n : experiment_names()) s += (s.empty() ? "" : ", ") + n;
  return s;
}

json summary_json(const std::map<std::string, StatisticSummary>& stats) {
  json out = json::object();
  for (const auto& [name, s] : stats)
    out[name] = {{"count", s.count}, {"mean", s.mean}, {"sd", s.sd}, {"se", s.se}, {"moments", s.moments}};
  return out;
}

std::vector<std::string> fvector_columns(int d) {
  std::vector<std::string> c{"n"};
  for (int k = 0; k < d; ++k) c.push_back("f" + std::to_string(k));
  c.push_back("kfacets");
  for (int j = 0; j <= d; ++j) c.push_back("V" + std::to_string(j));
  c.push_back("volume_gap");
  c.push_back("candidates");
  return c;
}

ResultRow fvector_row(std::size_t n, const SampleStatistics& s) {
  ResultRow row;
  row.values.push_back(static_cast<double>(n));
  for (long f : s.fvector.counts) row.values.push_back(static_cast<double>(f));
  row.values.push_back(static_cast<double>(s.kfacets));
  for (double v : s.scaled_volumes.values) row.values.push_back(v);
  row.values.push_back(s.volume_gap);
  row.values.push_back(static_cast<double>(s.candidates));
  row.general_position = s.general_position;
  return row;
}

void write_file(const std::filesystem::path& path, const std::string& text, RunOutcome& outcome) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  outcome.files.push_back(path.string());
}

json config_json(const ExperimentConfig& c) {
  json j{{"experiment", c.experiment},
         {"body", json::parse(body_to_json(*c.body))},
         {"replicates", c.replicates},
         {"seed", c.seed},
         {"resolution",
          {{"polar_directions", c.resolution.polar_directions},
           {"radial_directions", c.resolution.radial_directions},
           {"sphere_nodes", c.resolution.sphere_nodes},
           {"inner_samples", c.resolution.inner_samples},
           {"directions_per_sample", c.resolution.directions_per_sample}}}};
  if (c.n) j["n"] = c.n;
  if (!c.n_values.empty()) j["n_values"] = c.n_values;
  if (c.experiment == "zerocell-mc") j["T"] = c.truncation;
  return j;
}

ResultTable sample_hull(const ExperimentConfig& c, unsigned threads, const std::filesystem::path& out) {
  const ConvexBody& disk = *c.body;
  return run_replicates(
      {"n", "f0", "f1", "kfacets", "x_area", "x_perimeter", "q_area", "q_perimeter"}, c.replicates, c.seed, 0,
      threads, [&](std::size_t i, std::uint64_t seed) -> std::optional<ResultRow> {
        Rng rng(seed);
        const PointSample sample = uniform_sample(disk, c.n, rng);
        const ArcBoundary x = disk_intersection_boundary(disk, sample);
        ArcBoundary counted = x;
        counted.report = {};
        const FVector f = fvector_exact_2d(counted);
        const ArcBoundary q = khull_boundary_2d(disk, counted);
        if (i < c.dump) {
          std::ofstream dump(out / ("sample-hull." + std::to_string(i) + ".json"), std::ios::binary);
          dump << "{\"x\":" << to_json(x) << ",\"q\":" << to_json(q) << "}\n";
        }
        if (!x.report.ok) return std::nullopt;
        ResultRow row;
        row.values = {static_cast<double>(c.n),
                      static_cast<double>(f[0]),
                      static_cast<double>(f[1]),
                      q.degenerate() ? 0.0 : static_cast<double>(q.arcs.size()),
                      x.area(),
                      x.perimeter(),
                      q.area(),
                      q.perimeter()};
        return row;
      });
}

ResultTable fvector_mc(const ExperimentConfig& c, std::size_t n, std::size_t offset, unsigned threads) {
  const ScaledStatisticsOptions options{c.resolution.radial_directions, c.resolution.polar_directions};
  return run_replicates(fvector_columns(c.body->dim()), c.replicates, c.seed, offset, threads,
                        [&](std::size_t, std::uint64_t seed) -> std::optional<ResultRow> {
                          Rng rng(seed);
                          const SampleStatistics s = scaled_sample_statistics(*c.body, n, rng, options);
                          if (!s.general_position) return std::nullopt;
                          return fvector_row(n, s);
                        });
}

ResultTable zerocell_mc(const ExperimentConfig& c, unsigned threads, const std::filesystem::path& out) {
  const int d = c.body->dim();
  const HyperplaneProcess process(*c.body);
  std::vector<std::string> columns{"T"};
  for (int k = 0; k < d; ++k) columns.push_back("f" + std::to_string(k));
  for (int j = 0; j <= d; ++j) columns.push_back("V" + std::to_string(j));
  columns.push_back("layers");
  columns.push_back("hyperplanes");
  return run_replicates(columns, c.replicates, c.seed, 0, threads,
                        [&](std::size_t i, std::uint64_t seed) -> std::optional<ResultRow> {
                          Rng rng(seed);
                          const ZeroCell z = zero_cell(process, rng, c.truncation);
                          if (i < c.dump) {
                            std::ofstream dump(out / ("zerocell-mc." + std::to_string(i) + ".off"), std::ios::binary);
                            dump << to_off(z.cell);
                          }
                          ResultRow row;
                          row.values.push_back(z.truncation);
                          for (long f : z.cell_fvector.counts) row.values.push_back(static_cast<double>(f));
                          for (double v : intrinsic_volumes(z.cell).values) row.values.push_back(v);
                          row.values.push_back(z.layers);
                          row.values.push_back(static_cast<double>(z.hyperplanes.size()));
                          row.certified = z.certified;
                          return row;
                        });
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"sample-hull", "fvector-mc", "zerocell-mc", "expected-facets",
                                              "convergence"};
  return names;
}

ExperimentConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  static const std::set<std::string> known{"experiment", "body", "n", "n_values", "T", "replicates",
                                           "seed", "out", "dump", "resolution"};
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) throw ConfigError("config: unknown key '" + key + "'");

  ExperimentConfig c;
  if (j.contains("experiment")) {
    if (!j["experiment"].is_string()) throw ConfigError("config: 'experiment' must be a string");
    c.experiment = j["experiment"].get<std::string>();
  }
  if (!j.contains("body")) throw ConfigError("config: missing 'body', e.g. {\"kind\":\"ball\",\"r\":1,\"center\":[0,0]}");
  c.body = body_from_json(j["body"].dump());
  if (j.contains("n")) c.n = positive_count(j, "n");
  if (j.contains("n_values")) {
    if (!j["n_values"].is_array()) throw ConfigError("config: 'n_values' must be an array of positive integers");
    for (const auto& v : j["n_values"]) {
      if (!v.is_number_integer() || v.get<long long>() < 1)
        throw ConfigError("config: 'n_values' must be an array of positive integers");
      c.n_values.push_back(v.get<std::size_t>());
    }
  }
  if (j.contains("T")) {
    if (!j["T"].is_number() || !(j["T"].get<double>() > 0.0)) throw ConfigError("config: 'T' must be a positive number");
    c.truncation = j["T"].get<double>();
  }
  if (j.contains("replicates")) c.replicates = positive_count(j, "replicates");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ConfigError("config: 'seed' must be a nonnegative 64-bit integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("out")) {
    if (!j["out"].is_string()) throw ConfigError("config: 'out' must be a string");
    c.output_dir = j["out"].get<std::string>();
  }
  if (j.contains("dump")) {
    if (!j["dump"].is_number_unsigned()) throw ConfigError("config: 'dump' must be a nonnegative integer");
    c.dump = j["dump"].get<std::size_t>();
  }
  if (j.contains("resolution")) {
    const json& r = j["resolution"];
    if (!r.is_object()) throw ConfigError("config: 'resolution' must be an object");
    static const std::set<std::string> knobs{"polar_directions", "radial_directions", "sphere_nodes",
                                             "inner_samples", "directions_per_sample"};
    for (const auto& [key, _] : r.items())
      if (!knobs.count(key)) throw ConfigError("config: unknown resolution knob '" + key + "'");
    if (r.contains("polar_directions")) c.resolution.polar_directions = positive_count(r, "polar_directions");
    if (r.contains("radial_directions")) c.resolution.radial_directions = positive_count(r, "radial_directions");
    if (r.contains("sphere_nodes")) c.resolution.sphere_nodes = positive_count(r, "sphere_nodes");
    if (r.contains("inner_samples")) c.resolution.inner_samples = positive_count(r, "inner_samples");
    if (r.contains("directions_per_sample"))
      c.resolution.directions_per_sample = positive_count(r, "directions_per_sample");
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void validate(const ExperimentConfig& c) {
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), c.experiment) == names.end())
    throw ConfigError("unknown experiment '" + c.experiment + "'; expected one of " + joined_names());
  if (!c.body) throw ConfigError("config: missing 'body'");
  const int d = c.body->dim();
  if (d != 2 && d != 3)
    throw ConfigError(c.experiment + ": dimension " + std::to_string(d) + " is not supported; use a body in R^2 or R^3");
  if (c.resolution.polar_directions < 8) throw ConfigError("config: 'polar_directions' must be at least 8");
  const bool disk = d == 2 && c.body->kind() == BodyKind::Ball;
  if (c.experiment == "sample-hull") {
    if (!disk)
      throw ConfigError("sample-hull: needs a planar disk {\"kind\":\"ball\",\"center\":[x,y]}; "
                        "use fvector-mc for other bodies (approximate pipeline)");
    if (c.n == 0) throw ConfigError("sample-hull: set 'n'");
  }
  if (c.experiment == "fvector-mc" && c.n == 0) throw ConfigError("fvector-mc: set 'n'");
  if (c.experiment == "convergence" && c.n_values.empty())
    throw ConfigError("convergence: set 'n_values', e.g. [250, 500, 1000, 2000]");
}

std::map<std::string, StatisticSummary> summarize(const std::vector<std::string>& columns,
                                                  std::span<const ResultRow> rows) {
  if (rows.empty()) throw ArgumentError("summarize: empty result stream");
  std::map<std::string, StatisticSummary> out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    StatisticSummary s;
    s.count = rows.size();
    const double R = static_cast<double>(rows.size());
    for (const auto& r : rows) {
      const double x = r.values.at(c);
      double p = x;
      for (int m = 0; m < 4; ++m, p *= x) s.moments[m] += p / R;
    }
    s.mean = s.moments[0];
    double ss = 0.0;
    for (const auto& r : rows) ss += (r.values[c] - s.mean) * (r.values[c] - s.mean);
    s.sd = rows.size() > 1 ? std::sqrt(ss / (R - 1.0)) : 0.0;
    s.se = s.sd / std::sqrt(R);
    out[columns[c]] = s;
  }
  return out;
}

std::string to_csv(const ResultTable& table) {
  std::string out = "replicate,seed";
  for (const auto& c : table.columns) out += "," + c;
  out += ",certified,general_position\n";
  for (const auto& r : table.rows) {
    out += std::to_string(r.replicate) + "," + std::to_string(r.seed);
    for (double v : r.values) out += "," + format_real(v);
    out += r.certified ? ",1" : ",0";
    out += r.general_position ? ",1\n" : ",0\n";
  }
  return out;
}

unsigned default_threads() {
  if (const char* env = std::getenv("KHULL_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

RunOutcome run(const ExperimentConfig& config, unsigned threads) {
  RunOutcome outcome;
  try {
    validate(config);
  } catch (const Error& e) {
    outcome.exit_code = 2;
    outcome.message = e.what();
    return outcome;
  }
  if (!threads) threads = default_threads();
  const auto start = std::chrono::steady_clock::now();
  const std::filesystem::path out(config.output_dir);
  const std::string stem = config.experiment;

  try {
    std::filesystem::create_directories(out);
    json summary{{"experiment", config.experiment}, {"config", config_json(config)}};

    if (config.experiment == "expected-facets") {
      QuadratureSpec spec;
      spec.sphere_nodes = config.resolution.sphere_nodes;
      spec.inner_samples = config.resolution.inner_samples;
      spec.directions_per_sample = config.resolution.directions_per_sample;
      spec.seed = config.seed;
      const ExpectationEstimate general = ef0_general(*config.body, spec);
      std::string csv = "estimator,value,standard_error,method\n";
      csv += "general," + format_real(general.value) + "," + format_real(general.standard_error) + "," +
             to_string(general.method) + "\n";
      summary["value"] = general.value;
      summary["standard_error"] = general.standard_error;
      summary["method"] = to_string(general.method);
      summary["spec"] = {{"sphere_nodes", spec.sphere_nodes},
                         {"inner_samples", spec.inner_samples},
                         {"directions_per_sample", spec.directions_per_sample},
                         {"seed", spec.seed}};
      if (config.body->origin_symmetric()) {
        const ExpectationEstimate sym = ef0_symmetric(*config.body, spec);
        csv += "symmetric," + format_real(sym.value) + "," + format_real(sym.standard_error) + "," +
               to_string(sym.method) + "\n";
        summary["symmetric"] = json::parse(to_json(sym));
      }
      write_file(out / (stem + ".csv"), csv, outcome);
    } else if (config.experiment == "convergence") {
      ResultTable all;
      json by_n = json::object();
      for (std::size_t k = 0; k < config.n_values.size(); ++k) {
        const std::size_t n = config.n_values[k];
        ResultTable t = fvector_mc(config, n, k * config.replicates, threads);
        all.columns = t.columns;
        all.excluded += t.excluded;
        json entry{{"rows", t.rows.size()}, {"excluded_replicates", t.excluded}};
        if (!t.rows.empty()) entry["statistics"] = summary_json(summarize(t.columns, t.rows));
        by_n[std::to_string(n)] = entry;
        for (auto& r : t.rows) all.rows.push_back(std::move(r));
      }
      write_file(out / (stem + ".csv"), to_csv(all), outcome);
      summary["replicates"] = config.replicates * config.n_values.size();
      summary["rows"] = all.rows.size();
      summary["excluded_replicates"] = all.excluded;
      summary["by_n"] = by_n;
    } else {
      ResultTable t;
      if (config.experiment == "sample-hull") t = sample_hull(config, threads, out);
      if (config.experiment == "fvector-mc") t = fvector_mc(config, config.n, 0, threads);
      if (config.experiment == "zerocell-mc") t = zerocell_mc(config, threads, out);
      write_file(out / (stem + ".csv"), to_csv(t), outcome);
      summary["replicates"] = config.replicates;
      summary["rows"] = t.rows.size();
      summary["excluded_replicates"] = t.excluded;
      if (t.rows.empty()) throw Error("every replicate was excluded");
      summary["statistics"] = summary_json(summarize(t.columns, t.rows));
    }

    summary["threads"] = threads;
    summary["runtime_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_file(out / (stem + ".summary.json"), summary.dump(2) + "\n", outcome);
  } catch (const ConfigError& e) {
    outcome.exit_code = 2;
    outcome.message = e.what();
  } catch (const UnsupportedKindError& e) {
    outcome.exit_code = 2;
    outcome.message = e.what();
  } catch (const std::exception& e) {
    outcome.exit_code = 3;
    outcome.message = e.what();
  }
  return outcome;
}

}  // namespace khull
