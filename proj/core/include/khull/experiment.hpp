#pragma once

#include "khull/body.hpp"
#include "khull/serialize.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace khull {

/// Names accepted by run(): sample-hull, fvector-mc, zerocell-mc,
/// expected-facets, convergence.
const std::vector<std::string>& experiment_names();

struct Resolution {
  std::size_t polar_directions = 256;
  std::size_t radial_directions = 0;  // 0: 512 in the plane, 2048 in space
  std::size_t sphere_nodes = 0;       // 0: 4096 in the plane, 20000 in space
  std::size_t inner_samples = 100000;
  std::size_t directions_per_sample = 4;
};

struct ExperimentConfig {
  std::string experiment;
  std::optional<ConvexBody> body;
  std::size_t n = 0;
  std::vector<std::size_t> n_values;  // convergence
  double truncation = 4.0;            // initial zero cell window
  std::size_t replicates = 1;
  std::uint64_t seed = 0;
  std::string output_dir = ".";
  std::size_t dump = 0;  // geometry files for the first `dump` replicates
  Resolution resolution;
};

/// Parses a JSON config. Throws ConfigError.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

/// Rejects unknown experiments and unsupported (body, dimension) pairs with
/// a remediation hint. Throws ConfigError.
void validate(const ExperimentConfig& config);

struct ResultRow {
  std::size_t replicate = 0;
  std::uint64_t seed = 0;
  std::vector<double> values;
  bool certified = true;
  bool general_position = true;
};

struct ResultTable {
  std::vector<std::string> columns;  // names of ResultRow::values
  std::vector<ResultRow> rows;       // in replicate order
  std::size_t excluded = 0;
};

struct StatisticSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double sd = 0.0;
  double se = 0.0;
  std::array<double, 4> moments{};  // raw moments E X^m, m = 1..4
};

/// Per-column mean, sample SD, SE = SD / sqrt(R) and raw moments.
/// Throws ArgumentError on an empty stream.
std::map<std::string, StatisticSummary> summarize(const std::vector<std::string>& columns,
                                                  std::span<const ResultRow> rows);

/// Header plus one line per row; reals in shortest round-trip form.
std::string to_csv(const ResultTable& table);

/// Worker count: KHULL_THREADS if set and positive, else the hardware concurrency.
unsigned default_threads();

/// Runs `count` replicates of `body(index, seed)`; rows come back in index
/// order whatever the thread count. Seeds are derive_seed(master, offset + index).
/// A replicate returning nullopt is counted as excluded.
template <class F>
ResultTable run_replicates(std::vector<std::string> columns, std::size_t count, std::uint64_t master,
                           std::size_t offset, unsigned threads, F&& body);

struct RunOutcome {
  int exit_code = 0;  // 0 ok, 2 config error, 3 numeric failure
  std::string message;
  std::vector<std::string> files;
};

/// Executes the experiment and writes <out>/<experiment>.csv and
/// <out>/<experiment>.summary.json. `threads` = 0 uses default_threads().
RunOutcome run(const ExperimentConfig& config, unsigned threads = 0);

}  // namespace khull

#include "khull/experiment_impl.hpp"
