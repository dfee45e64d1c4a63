#include "idxadvisor/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "idxadvisor/errors.hpp"
#include "idxadvisor/pipeline.hpp"

namespace idxadvisor::cli {

namespace {

std::string read_file(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(std::string("cannot read ") + what + " file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw InputError(std::string("error reading ") + what + " file '" + path.string() + "'");
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  out.close();
  if (!out) throw InputError("cannot write '" + path.string() + "'");
}

PipelineOptions validate(const RunConfig& config) {
  PipelineOptions options;
  options.minsup = mining::MinSupport::parse(config.minsup);
  options.strategy = parse_strategy(config.strategy);
  options.policy = ExtractionPolicy::parse(config.policy);
  options.threshold_rows = config.threshold_rows;
  options.maximal_only = config.maximal_only;
  if (config.dialect != "generic") {
    throw ConfigError("unsupported dialect '" + config.dialect + "' (only generic is implemented)");
  }
  if (options.strategy == Strategy::LargeTables && !config.stats_path) {
    throw ConfigError("--strategy large-tables requires --stats");
  }
  if (config.workload_path.empty()) throw ConfigError("--workload is required");
  if (config.schema_path.empty()) throw ConfigError("--schema is required");
  return options;
}

struct Inputs {
  std::string workload;
  SchemaMap schema;
  CatalogSnapshot snapshot;
};

Inputs load_inputs(const RunConfig& config) {
  Inputs in;
  in.workload = read_file(config.workload_path, "workload");
  in.schema = parse_schema(read_file(config.schema_path, "schema"));
  if (config.stats_path) in.snapshot = load_stats(read_file(*config.stats_path, "stats"));
  return in;
}

void print_diagnostics(const std::vector<Diagnostic>& diagnostics, std::ostream& err) {
  for (const auto& d : diagnostics) {
    err << "statement " << (d.ordinal ? std::to_string(*d.ordinal) : std::string("-")) << ": "
        << d.message << "\n";
  }
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace

int run_recommend(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    PipelineOptions options = validate(config);
    Inputs in = load_inputs(config);
    MinedWorkload mined = mine_workload(in.workload, in.schema, options);
    Recommendation rec = recommend(mined, in.schema, in.snapshot, options);
    if (config.verbose) print_diagnostics(rec.diagnostics, err);

    std::string text = emit_report(rec, ReportFormat::Text);
    std::filesystem::create_directories(config.out_dir);
    write_file(config.out_dir / "recommendation.sql", emit_ddl(rec.configuration, config.index_prefix));
    write_file(config.out_dir / "report.txt", text);
    write_file(config.out_dir / "report.dat", emit_report(rec, ReportFormat::Structured));
    out << text;
    return kExitOk;
  });
}

int run_mine_debug(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    PipelineOptions options = validate(config);
    Inputs in = load_inputs(config);
    MinedWorkload mined = mine_workload(in.workload, in.schema, options);
    if (config.verbose) print_diagnostics(mined.diagnostics, err);
    out << dump_itemsets(mined.closed, mined.dictionary);
    return kExitOk;
  });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') config.out_dir = env;

  CLI::App app{"Recommends indexes from the frequent attribute sets of a SQL workload.", "idxadvisor"};
  std::string workload, schema, stats, out_dir = config.out_dir.string();
  bool no_maximal_only = false;
  app.add_option("--workload", workload, "SQL workload file (semicolon-separated statements)");
  app.add_option("--schema", schema, "Schema file (TABLE stanzas with indented column lines)");
  app.add_option("--stats", stats, "Table statistics file (<table> <row_count> [<avg_row_bytes>])");
  app.add_option("--minsup", config.minsup, "Minimum support: absolute count (6) or fraction (0.25)")
      ->capture_default_str();
  app.add_option("--strategy", config.strategy, "Selection strategy: all | large-tables")
      ->capture_default_str();
  app.add_option("--threshold-rows", config.threshold_rows,
                 "Row count at which a table counts as large")
      ->capture_default_str();
  app.add_flag("--no-maximal-only", no_maximal_only,
               "Keep candidates whose columns are a subset of another candidate on the same table");
  app.add_option("--policy", config.policy,
                 "Clause positions that yield attributes: where, join, group-by, order-by, having, "
                 "projection, set")
      ->capture_default_str();
  app.add_option("--out", out_dir, std::string("Output directory (default from $") + kOutDirEnv +
                                       " or idxadvisor-out)")
      ->capture_default_str();
  app.add_option("--dialect", config.dialect, "DDL dialect (generic)")->capture_default_str();
  app.add_option("--prefix", config.index_prefix, "Index name prefix")->capture_default_str();
  app.add_flag("--dump-itemsets", config.dump_itemsets,
               "Stop after mining and print support<TAB>items per closed itemset");
  app.add_flag("-v,--verbose", config.verbose, "Print per-statement diagnostics to stderr");

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.push_back("idxadvisor");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  config.workload_path = workload;
  config.schema_path = schema;
  if (!stats.empty()) config.stats_path = stats;
  config.out_dir = out_dir;
  config.maximal_only = !no_maximal_only;
  return config.dump_itemsets ? run_mine_debug(config, out, err) : run_recommend(config, out, err);
}

}  // namespace idxadvisor::cli
