#include "tagnet/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "tagnet/error.hpp"
#include "tagnet/report.hpp"

namespace tagnet::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kOutputDirEnv = "TAGNET_OUTPUT_DIR";

// Output write failure: not the caller's input, so it maps to exit code 3.
class OutputError : public Error {
 public:
  using Error::Error;
};

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open input file " + path.string());
  return in;
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw OutputError("cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw OutputError("write failed: " + path.string());
}

[[noreturn]] void rethrow_with_file(const ParseError& e, const fs::path& path) {
  throw ParseError(path.string() + ": " + e.what());
}

SourceFormat resolve_format(const AnalysisConfig& config) {
  if (config.format) return *config.format;
  std::optional<SourceFormat> seen;
  for (const auto& p : config.inputs) {
    const auto f = guess_format(p);
    if (!f) throw InvalidArgument("cannot infer input format of " + p.string() + "; pass --format");
    if (seen && *seen != *f) throw InvalidArgument("inputs mix formats; exactly one format per run");
    seen = f;
  }
  if (!seen) throw InvalidArgument("no input files");
  return *seen;
}

}  // namespace

std::optional<SourceFormat> guess_format(const fs::path& path) {
  auto ext = path.extension().string();
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (ext == ".jsonl" || ext == ".json" || ext == ".ndjson") return SourceFormat::jsonl;
  if (ext == ".csv") return SourceFormat::csv;
  if (ext == ".rss" || ext == ".xml" || ext == ".rdf") return SourceFormat::rss;
  if (ext == ".tgr" || ext == ".graph" || ext == ".snapshot") return SourceFormat::snapshot;
  return std::nullopt;
}

LoadedGraph load(const AnalysisConfig& config) {
  if (config.inputs.empty()) throw InvalidArgument("no input files");
  const SourceFormat format = resolve_format(config);
  LoadedGraph out;

  if (format == SourceFormat::snapshot) {
    if (config.inputs.size() != 1) throw InvalidArgument("analyze takes exactly one snapshot");
    auto in = open_input(config.inputs.front());
    try {
      auto snap = read_snapshot(in);
      out.graph = std::move(snap.graph);
      out.table = std::move(snap.table);
      out.attributes = std::move(snap.attributes);
    } catch (const ParseError& e) {
      rethrow_with_file(e, config.inputs.front());
    }
    return out;
  }

  const auto ingest_format = format == SourceFormat::jsonl ? ingest::InputFormat::jsonl
                             : format == SourceFormat::csv ? ingest::InputFormat::csv
                                                           : ingest::InputFormat::rss;
  ingest::ItemTagSets items;
  for (const auto& path : config.inputs) {
    auto in = open_input(path);
    ingest::ReadStats stats;
    try {
      items.merge(ingest::aggregate_stream(in, ingest_format, config.normalization, &stats));
    } catch (const ParseError& e) {
      rethrow_with_file(e, path);
    }
    out.records += stats.records;
    out.skipped_items += stats.skipped_items;
  }
  out.distinct_urls = items.size();
  auto built = build_cooccurrence_graph(items, BuildOptions{config.clique_warning_threshold});
  out.table = std::move(built.table);
  out.graph = std::move(built.graph);
  out.build = built.stats;

  if (out.records == 0) out.warnings.emplace_back("input contains no records");
  if (out.skipped_items > 0) {
    out.warnings.emplace_back(std::to_string(out.skipped_items) + " feed items without a link were skipped");
  }
  if (out.build.large_items > 0) {
    out.warnings.emplace_back(std::to_string(out.build.large_items) + " URLs carry more than " +
                              std::to_string(config.clique_warning_threshold) +
                              " tags (expanded into full cliques)");
  }
  return out;
}

diagnostics::AnalysisOptions analysis_options(const AnalysisConfig& config, std::size_t node_count) {
  diagnostics::AnalysisOptions o;
  switch (config.path_length) {
    case PathLengthChoice::automatic:
      o.path_length = metrics::default_path_length_options(node_count);
      o.path_length.sources = config.sample_sources;
      o.path_length.seed = config.seed;
      break;
    case PathLengthChoice::exact:
      o.path_length = metrics::PathLengthOptions::exact();
      break;
    case PathLengthChoice::sampled:
      o.path_length = metrics::PathLengthOptions::sampled(config.sample_sources, config.seed);
      break;
  }
  o.path_length.largest_component_only = config.largest_component_only;
  o.path_length.threads = config.threads;
  o.clustering_policy = config.clustering_policy;
  o.k_min = config.k_min;
  o.small_world = config.small_world;
  o.scale_free = config.scale_free;
  o.top_k = config.top_k;
  return o;
}

BuildResult run_build(const AnalysisConfig& config) {
  BuildResult r;
  r.loaded = load(config);
  r.loaded.graph.validate();
  r.snapshot = config.output_file.value_or(config.output_dir / "graph.tgr");
  {
    auto out = open_output(r.snapshot);
    write_snapshot(out, r.loaded.graph, r.loaded.table, r.loaded.attributes);
    finish(out, r.snapshot);
  }
  r.log = r.snapshot;
  r.log.replace_extension(".log");
  auto log = open_output(r.log);
  const auto& l = r.loaded;
  log << "records_read\t" << l.records << "\n"
      << "distinct_urls\t" << l.distinct_urls << "\n"
      << "distinct_tags\t" << l.table.size() << "\n"
      << "nodes\t" << l.graph.node_count() << "\n"
      << "edges\t" << l.graph.edge_count() << "\n"
      << "isolated_nodes\t" << isolated_node_count(l.graph) << "\n"
      << "skipped_items\t" << l.skipped_items << "\n"
      << "largest_item_tags\t" << l.build.largest_item << "\n";
  for (const auto& w : l.warnings) log << "warning\t" << w << "\n";
  finish(log, r.log);
  return r;
}

AnalyzeResult run_analyze(const AnalysisConfig& config) {
  const auto loaded = load(config);
  loaded.graph.validate();
  AnalyzeResult r;
  r.summary = diagnostics::analyze(loaded.graph, loaded.table, analysis_options(config, loaded.graph.node_count()));
  r.summary.warnings.insert(r.summary.warnings.begin(), loaded.warnings.begin(), loaded.warnings.end());

  fs::create_directories(config.output_dir);
  r.summary_json = config.output_dir / "summary.json";
  r.degree_tsv = config.output_dir / "degree.tsv";
  r.ccdf_tsv = config.output_dir / "ccdf.tsv";
  r.plot_script = config.output_dir / "plot.gp";
  {
    auto out = open_output(r.summary_json);
    out << report::summary_text(r.summary);
    finish(out, r.summary_json);
  }
  {
    auto deg = open_output(r.degree_tsv);
    auto ccdf = open_output(r.ccdf_tsv);
    if (r.summary.distribution) {
      report::write_degree_tsv(deg, *r.summary.distribution);
      report::write_ccdf_tsv(ccdf, *r.summary.distribution);
    } else {
      deg << "k\tcount\tP(k)\tCCDF(k)\n";
      ccdf << "k\tCCDF(k)\n";
    }
    finish(deg, r.degree_tsv);
    finish(ccdf, r.ccdf_tsv);
  }
  {
    auto gp = open_output(r.plot_script);
    gp << report::plot_script(r.summary, "degree.tsv", "ccdf.tsv");
    finish(gp, r.plot_script);
  }
  return r;
}

fs::path run_synth(const synth::GeneratorSpec& spec, const fs::path& output, bool as_items) {
  const auto graph = synth::generate(spec);
  const auto table = TagTable::numbered(graph.node_count());
  auto out = open_output(output);
  if (as_items) {
    const auto items = synth::to_item_tag_sets(graph, table);
    for (const auto& [url, tags] : items.items()) {
      report::Json line;
      line["url"] = url;
      line["tags"] = tags;
      out << line.dump() << "\n";
    }
  } else {
    write_snapshot(out, graph, table, synth::snapshot_attributes(spec));
  }
  finish(out, output);
  return output;
}

// ---------------------------------------------------------------------------
// Argument parsing

namespace {

void add_input_options(CLI::App& cmd, AnalysisConfig& c, std::string& format_name) {
  cmd.add_option("inputs", c.inputs, "Input files")->required();
  cmd.add_option("-f,--format", format_name, "Input format: jsonl, csv, rss or graph")
      ->check(CLI::IsMember({"jsonl", "csv", "rss", "graph"}));
  cmd.add_flag("!--no-case-fold", c.normalization.case_fold, "Keep tag case");
  cmd.add_flag("!--no-trim", c.normalization.trim_whitespace, "Keep surrounding whitespace in tags");
  cmd.add_flag("!--keep-empty", c.normalization.drop_empty, "Keep empty tags");
  cmd.add_option("--clique-warn", c.clique_warning_threshold, "Warn about URLs with more tags than this");
  cmd.add_option("-o,--output-dir", c.output_dir, "Output directory (env " + std::string(kOutputDirEnv) + ")");
}

std::optional<SourceFormat> parse_format(const std::string& name) {
  if (name.empty()) return std::nullopt;
  if (name == "jsonl") return SourceFormat::jsonl;
  if (name == "csv") return SourceFormat::csv;
  if (name == "rss") return SourceFormat::rss;
  return SourceFormat::snapshot;
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tag co-occurrence network builder and analyzer"};
  app.require_subcommand(1);

  AnalysisConfig config;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) config.output_dir = env;
  std::string format_name;

  auto* build = app.add_subcommand("build", "Build a graph snapshot from tagged-bookmark records");
  add_input_options(*build, config, format_name);
  fs::path build_output;
  build->add_option("--snapshot", build_output, "Snapshot path (default <output-dir>/graph.tgr)");

  auto* analyze = app.add_subcommand("analyze", "Compute network statistics and verdicts");
  add_input_options(*analyze, config, format_name);
  std::string apl = "auto";
  analyze->add_option("--apl", apl, "Path length mode: auto, exact or sampled")
      ->check(CLI::IsMember({"auto", "exact", "sampled"}));
  analyze->add_option("--sources", config.sample_sources, "BFS sources in sampled mode")
      ->check(CLI::PositiveNumber);
  analyze->add_flag("--lcc-only", config.largest_component_only, "Path length over the largest component only");
  std::string low_degree = "exclude";
  analyze->add_option("--clustering-low-degree", low_degree, "Nodes with k < 2: exclude or zero")
      ->check(CLI::IsMember({"exclude", "zero"}));
  analyze->add_option("--k-min", config.k_min, "Smallest degree used by the power-law fit");
  analyze->add_option("--max-l-ratio", config.small_world.max_l_ratio, "Small world: max l / l_random");
  analyze->add_option("--min-c-ratio", config.small_world.min_c_ratio, "Small world: min C / C_random");
  analyze->add_option("--min-abs-r", config.scale_free.min_abs_r, "Scale free: min |R| of the fit");
  analyze->add_option("--top-k", config.top_k, "Rows in the top-degree table")->check(CLI::PositiveNumber);
  analyze->add_option("--seed", config.seed, "Seed for sampled path length");
  analyze->add_option("--threads", config.threads, "Worker threads (0 = all cores)");

  auto* synth_cmd = app.add_subcommand("synth", "Generate a seeded synthetic graph");
  std::string model;
  std::vector<std::string> params;
  std::uint64_t synth_seed = 1;
  fs::path synth_output;
  bool as_items = false;
  synth_cmd->add_option("model", model, "er | ws | ba")->required()->check(CLI::IsMember({"er", "ws", "ba"}));
  synth_cmd->add_option("params", params, "er: n p | ws: n k beta | ba: n m")->required();
  synth_cmd->add_option("--seed", synth_seed, "Generator seed");
  synth_cmd->add_option("-o,--output", synth_output, "Output path (default <output-dir>/synth.tgr)");
  synth_cmd->add_flag("--items", as_items, "Emit JSON-lines items instead of a snapshot");
  synth_cmd->add_option("--output-dir", config.output_dir, "Output directory");

  auto* report_cmd = app.add_subcommand("report", "Render a summary.json as a text report");
  fs::path summary_path;
  report_cmd->add_option("summary", summary_path, "summary.json written by analyze")->required();

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, eo;
    const int code = app.exit(e, o, eo);
    out << o.str();
    err << eo.str();
    return code == 0 ? kOk : kUsage;
  }

  try {
    config.format = parse_format(format_name);
    if (*build) {
      if (!build_output.empty()) config.output_file = build_output;
      const auto r = run_build(config);
      out << "wrote " << r.snapshot.string() << " (N=" << r.loaded.graph.node_count()
          << ", M=" << r.loaded.graph.edge_count() << ")\n";
      for (const auto& w : r.loaded.warnings) err << "warning: " << w << "\n";
    } else if (*analyze) {
      config.path_length = apl == "exact"     ? PathLengthChoice::exact
                           : apl == "sampled" ? PathLengthChoice::sampled
                                              : PathLengthChoice::automatic;
      config.clustering_policy =
          low_degree == "zero" ? metrics::LowDegreePolicy::count_as_zero : metrics::LowDegreePolicy::exclude;
      const auto r = run_analyze(config);
      out << report::text_report(report::summary_json(r.summary));
      out << "wrote " << r.summary_json.string() << ", " << r.degree_tsv.string() << ", "
          << r.ccdf_tsv.string() << ", " << r.plot_script.string() << "\n";
      for (const auto& w : r.summary.warnings) err << "warning: " << w << "\n";
    } else if (*synth_cmd) {
      const auto arity = model == "ws" ? 3u : 2u;
      if (params.size() != arity) {
        err << "synth " << model << " takes " << arity << " parameters\n";
        return kUsage;
      }
      synth::GeneratorSpec spec;
      spec.seed = synth_seed;
      try {
        if (model == "er") {
          spec.model = synth::ErdosRenyi{std::stoull(params[0]), std::stod(params[1])};
        } else if (model == "ws") {
          spec.model = synth::WattsStrogatz{std::stoull(params[0]), std::stoull(params[1]), std::stod(params[2])};
        } else {
          spec.model = synth::BarabasiAlbert{std::stoull(params[0]), std::stoull(params[1])};
        }
      } catch (const std::logic_error&) {
        err << "synth: parameters must be numbers\n";
        return kUsage;
      }
      synth::validate(spec);
      const auto path = synth_output.empty() ? config.output_dir / "synth.tgr" : synth_output;
      run_synth(spec, path, as_items);
      out << "wrote " << path.string() << " (" << synth::describe(spec) << ", seed " << spec.seed << ")\n";
    } else if (*report_cmd) {
      auto in = open_input(summary_path);
      report::Json j;
      try {
        j = report::Json::parse(in);
      } catch (const report::Json::parse_error& e) {
        throw ParseError(summary_path.string() + ": " + e.what());
      }
      out << report::text_report(j);
    }
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kOk;
}

}  // namespace tagnet::cli
