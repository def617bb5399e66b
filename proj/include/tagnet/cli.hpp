#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tagnet/diagnostics.hpp"
#include "tagnet/ingest.hpp"
#include "tagnet/synth.hpp"

namespace tagnet::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInputError = 2,
  kInternalError = 3,
};

enum class SourceFormat { jsonl, csv, rss, snapshot };

enum class PathLengthChoice { automatic, exact, sampled };

struct AnalysisConfig {
  std::vector<std::filesystem::path> inputs;
  std::optional<SourceFormat> format;  // guessed from extensions when empty
  ingest::NormalizationPolicy normalization;
  std::size_t clique_warning_threshold = 1000;

  PathLengthChoice path_length = PathLengthChoice::automatic;
  std::size_t sample_sources = metrics::kDefaultSampleSources;
  bool largest_component_only = false;
  metrics::LowDegreePolicy clustering_policy = metrics::LowDegreePolicy::exclude;
  std::size_t k_min = 1;
  diagnostics::SmallWorldThresholds small_world;
  diagnostics::ScaleFreeThresholds scale_free;
  std::size_t top_k = 20;

  std::filesystem::path output_dir = ".";
  std::optional<std::filesystem::path> output_file;  // build / synth target
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

// Snapshot extensions: .tgr, .graph, .snapshot.
std::optional<SourceFormat> guess_format(const std::filesystem::path& path);

struct LoadedGraph {
  TagTable table;
  TagGraph graph;
  std::vector<std::string> attributes;
  std::size_t records = 0;
  std::size_t distinct_urls = 0;
  std::size_t skipped_items = 0;
  BuildStats build;
  std::vector<std::string> warnings;
};

// Reads every input of the config into one graph. Raw records from all
// inputs are aggregated before construction. Throws ParseError naming the
// file (and line where known).
LoadedGraph load(const AnalysisConfig& config);

diagnostics::AnalysisOptions analysis_options(const AnalysisConfig& config, std::size_t node_count);

struct BuildResult {
  std::filesystem::path snapshot;
  std::filesystem::path log;
  LoadedGraph loaded;
};

// Writes <output>.tgr (default <output_dir>/graph.tgr) and build.log.
BuildResult run_build(const AnalysisConfig& config);

struct AnalyzeResult {
  diagnostics::NetworkSummary summary;
  std::filesystem::path summary_json;
  std::filesystem::path degree_tsv;
  std::filesystem::path ccdf_tsv;
  std::filesystem::path plot_script;
};

// Writes summary.json, degree.tsv, ccdf.tsv and plot.gp into output_dir.
AnalyzeResult run_analyze(const AnalysisConfig& config);

// Writes the generated graph as a snapshot, or as JSON-lines items when
// `as_items` is set.
std::filesystem::path run_synth(const synth::GeneratorSpec& spec, const std::filesystem::path& output,
                                bool as_items = false);

// Command-line entry point; returns the process exit code.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tagnet::cli
