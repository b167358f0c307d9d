// Copyright 2026 The catattr Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include "catattr/api_server.hpp"
#include "catattr/catalogue.hpp"
#include "catattr/config.hpp"
#include "catattr/dialogue.hpp"
#include "catattr/evaluation.hpp"
#include "catattr/fixture_backend.hpp"
#include "catattr/http_backend.hpp"
#include "catattr/json_io.hpp"
#include "catattr/pipeline.hpp"
#include "catattr/prompts.hpp"
#include "catattr/run_store.hpp"

namespace catattr {
namespace {

namespace fs = std::filesystem;

struct Flags {
  std::string catalogue;
  std::string config;
  std::string backend = "fixture";
  std::string fixtures;
  std::string url = "http://127.0.0.1:8000";
  std::size_t max_in_flight = 1;
  std::string videos;
  std::string gt;
  std::string out = "runs";
  std::string run_id;
  std::string label;
  std::string format = "markdown";
  std::string stopwords;
  std::string prompts;
  std::string templates;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::uint64_t seed = 0;
  double per_entry = 3.5;
  double p_abs = 0.05;
  bool serial = false;
};

textnorm::StopwordSet stopwords_for(const Flags& f) {
  return f.stopwords.empty() ? textnorm::default_stopwords() : textnorm::load_stopwords(f.stopwords);
}

AbstentionConfig config_for(const Flags& f) { return f.config.empty() ? AbstentionConfig{} : load_config(f.config); }

void print_report(const EvaluationReport& report, const Flags& f, std::ostream& out, std::ostream& err) {
  out << render_report(report, report_format_from_string(f.format));
  for (const auto& w : report.warnings) err << "warning: " << w << '\n';
}

int cmd_index(const Flags& f, std::ostream& out, std::ostream& err) {
  const CatalogueIndex index = build_index(fs::path(f.catalogue), stopwords_for(f));
  const std::string doc = index_to_json(index).dump(2) + "\n";
  if (f.out.empty() || f.out == "-") {
    out << doc;
  } else {
    std::ofstream file(f.out);
    if (!(file << doc)) throw std::runtime_error("cannot write " + f.out);
  }
  err << "indexed " << index.entries.size() << " entries in " << index.document_count << " title groups\n";
  return 0;
}

std::unique_ptr<ModelBackend> make_backend(const Flags& f) {
  if (f.backend == "fixture") {
    if (f.fixtures.empty()) throw CLI::ValidationError("--fixtures", "required with --backend fixture");
    return std::make_unique<FixtureBackend>(FixtureBackend::load(f.fixtures));
  }
  HttpBackendOptions opts;
  opts.base_url = f.url;
  opts.max_in_flight = f.max_in_flight;
  if (!f.label.empty()) opts.descriptor.name = f.label;
  return std::make_unique<HttpBackend>(opts);
}

int cmd_run(const Flags& f, std::ostream& out, std::ostream& err) {
  const AbstentionConfig config = config_for(f);
  const auto stopwords = stopwords_for(f);
  const CatalogueIndex index = f.catalogue.empty() ? build_index(std::vector<CatalogueRecord>{}, stopwords)
                                                   : build_index(fs::path(f.catalogue), stopwords);
  const PromptSet prompts = f.prompts.empty() ? PromptSet::defaults() : PromptSet::load(f.prompts);
  const auto videos = load_video_list(f.videos);
  auto backend = make_backend(f);

  PipelineOptions options;
  if (f.serial) options.execution = Execution::serial;
  const std::string started = utc_timestamp();
  const auto results = run_batch(videos, *backend, index, config, prompts, options);

  RunStore store(f.out);
  const std::string label = f.label.empty() ? backend->descriptor().name : f.label;
  const RunManifest m = store.save(results, config, backend->descriptor(), f.catalogue, index.entries.size(), label,
                                   f.run_id.empty() ? std::nullopt : std::optional<std::string>(f.run_id), started);
  std::size_t accepts = 0;
  for (const auto& r : results) {
    accepts += r.decision.accepted() ? 1 : 0;
    for (const auto& failed : r.failed_stages) err << "warning: " << r.video_ref << ": " << failed << '\n';
  }
  out << m.run_id << '\n';
  err << "processed " << results.size() << " videos, " << accepts << " accepted\n";
  return 0;
}

int cmd_eval(const Flags& f, std::ostream& out, std::ostream& err) {
  RunStore store(f.out);
  const RunManifest m = store.manifest(f.run_id);
  const GroundTruth gt = GroundTruth::load(f.gt);
  const auto report = evaluate(store.results(f.run_id), gt, m.config, f.label.empty() ? m.label : f.label);
  print_report(report, f, out, err);
  if (report.false_positives > 0) {
    err << report.false_positives << " false positive(s)\n";
    return 1;
  }
  return 0;
}

int cmd_replay(const Flags& f, std::ostream& out, std::ostream& err) {
  RunStore store(f.out);
  const RunManifest m = store.manifest(f.run_id);
  const AbstentionConfig config = f.config.empty() ? m.config : load_config(f.config);
  const CatalogueIndex index = load_run_catalogue(m, stopwords_for(f));
  const auto decisions = replay_run(store.signals(f.run_id), index, config);

  if (!f.gt.empty()) {
    const auto report = evaluate_decisions(decisions, GroundTruth::load(f.gt), config, m.backend,
                                           f.label.empty() ? m.label : f.label);
    print_report(report, f, out, err);
    return report.false_positives > 0 ? 1 : 0;
  }
  nlohmann::json rows = nlohmann::json::array();
  std::size_t accepts = 0;
  for (const auto& [video, d] : decisions) {
    rows.push_back({{"video", video}, {"decision", d}});
    accepts += d.accepted() ? 1 : 0;
  }
  out << rows.dump(2) << '\n';
  err << "replayed " << decisions.size() << " decisions, " << accepts << " accepted\n";
  return 0;
}

int cmd_export(const Flags& f, std::ostream& out, std::ostream& err) {
  const CatalogueIndex index = build_index(fs::path(f.catalogue), stopwords_for(f));
  const DialogueTemplates templates =
      f.templates.empty() ? DialogueTemplates::defaults() : DialogueTemplates::load(f.templates);
  DialogueOptions options;
  options.seed = f.seed;
  options.per_entry = f.per_entry;
  options.p_abs = f.p_abs;
  const DialogueCorpus corpus = build_dialogues(index, templates, options);
  for (const auto& s : corpus.skipped) {
    err << "skipped slot " << to_string(s.slot) << " for entry " << s.entry_id << ": field missing\n";
  }
  const std::size_t n = export_jsonl(corpus.samples, f.out);
  std::size_t abstentions = 0;
  for (const auto& s : corpus.samples) abstentions += s.is_abstention ? 1 : 0;
  out << n << '\n';
  err << "wrote " << n << " samples (" << abstentions << " abstention) to " << f.out << '\n';
  return 0;
}

ApiServer* g_server = nullptr;

int cmd_serve(const Flags& f, std::ostream& out, std::ostream&) {
  ApiOptions options;
  options.runs_dir = f.out;
  options.catalogue = f.catalogue;
  options.initial_config = config_for(f);
  if (!f.config.empty()) options.config_file = f.config;
  if (!f.gt.empty()) options.ground_truth = GroundTruth::load(f.gt);
  ApiServer server(options);
  const int port = server.bind(f.host, f.port);
  if (port < 0) throw std::runtime_error("cannot bind " + f.host + ":" + std::to_string(f.port));
  out << "listening on http://" << f.host << ':' << port << "/v1\n" << std::flush;
  g_server = &server;
  std::signal(SIGINT, [](int) {
    if (g_server) g_server->stop();
  });
  std::signal(SIGTERM, [](int) {
    if (g_server) g_server->stop();
  });
  server.listen();
  g_server = nullptr;
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Catalogue-grounded artwork attribution", "catattr"};
  app.require_subcommand(1);
  Flags f;

  auto* index = app.add_subcommand("index", "Build and print a catalogue index");
  index->add_option("--catalogue", f.catalogue, "Catalogue JSON")->required()->check(CLI::ExistingFile);
  index->add_option("--stopwords", f.stopwords, "Stopword list, one per line")->check(CLI::ExistingFile);
  index->add_option("--out", f.out, "Output file ('-' for stdout)")->capture_default_str();
  index->get_option("--out")->default_str("-");
  f.out = "-";

  auto* run = app.add_subcommand("run", "Run the pipeline over a video list and store the run");
  run->add_option("--catalogue", f.catalogue, "Catalogue JSON (omit for a run without catalogue)")
      ->check(CLI::ExistingFile);
  run->add_option("--config", f.config, "Abstention config JSON")->check(CLI::ExistingFile);
  run->add_option("--backend", f.backend, "Backend kind")->check(CLI::IsMember({"fixture", "http"}));
  run->add_option("--fixtures", f.fixtures, "Fixture script for --backend fixture")->check(CLI::ExistingFile);
  run->add_option("--url", f.url, "Model server base URL for --backend http");
  run->add_option("--max-in-flight", f.max_in_flight, "Concurrent requests for --backend http");
  run->add_option("--videos", f.videos, "Video list (text or JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", f.out, "Runs directory");
  run->add_option("--run", f.run_id, "Run id (default: derived from label and time)");
  run->add_option("--label", f.label, "Run label used in reports");
  run->add_option("--prompts", f.prompts, "Prompt template directory")->check(CLI::ExistingDirectory);
  run->add_option("--stopwords", f.stopwords, "Stopword list")->check(CLI::ExistingFile);
  run->add_flag("--serial", f.serial, "Use the serial scoring kernel");

  auto* eval = app.add_subcommand("eval", "Evaluate a stored run against ground truth");
  eval->add_option("--out", f.out, "Runs directory");
  eval->add_option("--run", f.run_id, "Run id")->required();
  eval->add_option("--gt", f.gt, "Ground-truth JSON")->required()->check(CLI::ExistingFile);
  eval->add_option("--format", f.format, "Report format")->check(CLI::IsMember({"json", "csv", "markdown"}));
  eval->add_option("--label", f.label, "Row label in the report");

  auto* replay = app.add_subcommand("replay", "Re-decide a stored run under a new config");
  replay->add_option("--out", f.out, "Runs directory");
  replay->add_option("--run", f.run_id, "Run id")->required();
  replay->add_option("--config", f.config, "Config JSON (default: the run's own)")->check(CLI::ExistingFile);
  replay->add_option("--gt", f.gt, "Ground truth; prints a report instead of decisions")->check(CLI::ExistingFile);
  replay->add_option("--format", f.format, "Report format")->check(CLI::IsMember({"json", "csv", "markdown"}));
  replay->add_option("--label", f.label, "Row label in the report");
  replay->add_option("--stopwords", f.stopwords, "Stopword list")->check(CLI::ExistingFile);

  auto* dialogues = app.add_subcommand("export-dialogues", "Write a training dialogue corpus as JSON lines");
  dialogues->add_option("--catalogue", f.catalogue, "Catalogue JSON")->required()->check(CLI::ExistingFile);
  dialogues->add_option("--templates", f.templates, "Question templates JSON")->check(CLI::ExistingFile);
  dialogues->add_option("--out", f.out, "Output .jsonl file")->required();
  dialogues->add_option("--seed", f.seed, "Sampling seed");
  dialogues->add_option("--per-entry", f.per_entry, "Average samples per entry")->check(CLI::NonNegativeNumber);
  dialogues->add_option("--p-abs", f.p_abs, "Abstention sample probability")->check(CLI::Range(0.0, 1.0));
  dialogues->add_option("--stopwords", f.stopwords, "Stopword list")->check(CLI::ExistingFile);

  auto* serve = app.add_subcommand("serve", "Serve the /v1 tuning API");
  serve->add_option("--out", f.out, "Runs directory");
  serve->add_option("--catalogue", f.catalogue, "Catalogue served at /v1/catalogue")->check(CLI::ExistingFile);
  serve->add_option("--config", f.config, "Config file; PUT /v1/config writes it back");
  serve->add_option("--gt", f.gt, "Ground truth for replay verdicts")->check(CLI::ExistingFile);
  serve->add_option("--host", f.host, "Bind address");
  serve->add_option("--port", f.port, "Port (0 picks a free one)");

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  // `index` prints to stdout unless --out names a file.
  if (!index->parsed() && f.out == "-") f.out = "runs";

  try {
    if (index->parsed()) return cmd_index(f, out, err);
    if (run->parsed()) return cmd_run(f, out, err);
    if (eval->parsed()) return cmd_eval(f, out, err);
    if (replay->parsed()) return cmd_replay(f, out, err);
    if (dialogues->parsed()) return cmd_export(f, out, err);
    if (serve->parsed()) {
      if (!f.config.empty() && !fs::exists(f.config)) save_config(AbstentionConfig{}, f.config);
      return cmd_serve(f, out, err);
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  } catch (const ConfigError& e) {
    err << "error: invalid config\n";
    for (const auto& issue : e.issues()) err << "  " << issue.parameter << ": " << issue.message << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace catattr
