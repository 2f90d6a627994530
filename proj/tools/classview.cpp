/*
 * Copyright 2026 The classview Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// classview: ingest, generate, query and serve classifier prediction datasets.

#include <pthread.h>
#include <signal.h>

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "classview/analytics/queries.hpp"
#include "classview/error.hpp"
#include "classview/ingest/csv.hpp"
#include "classview/ingest/snapshot.hpp"
#include "classview/ingest/synth.hpp"
#include "classview/service/render.hpp"
#include "classview/service/server.hpp"

namespace {

using namespace classview;

constexpr int kExitOk = 0;
constexpr int kExitUser = 1;
constexpr int kExitInternal = 2;

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  return in;
}

void write_output(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path + " for writing");
  out << data;
}

std::string totals_line(const Dataset& d) {
  std::ostringstream os;
  os << "K=" << d.num_classes() << " N=" << d.size() << " correct=" << d.total_correct()
     << " misclassified=" << d.total_misclassified();
  return os.str();
}

struct IngestArgs {
  std::string predictions;
  std::string labels;
  std::string images;
  std::string out;
  double tolerance = kDefaultProbSumTolerance;
  bool json = false;
};

int cmd_ingest(const IngestArgs& a) {
  ingest::ParseOptions options;
  options.prob_sum_tolerance = a.tolerance;
  PredictionTable table;
  {
    auto in = open_input(a.predictions);
    table = ingest::parse_predictions(in, options);
  }
  std::vector<LabelEntry> labels;
  if (!a.labels.empty()) {
    auto in = open_input(a.labels);
    labels = ingest::parse_labels(in);
  }
  ImageManifest images;
  if (!a.images.empty()) {
    auto in = open_input(a.images);
    images = ingest::parse_image_manifest(in);
  }
  BuildOptions build;
  build.prob_sum_tolerance = a.tolerance;
  Dataset d = build_dataset(std::move(table), std::move(labels), std::move(images), build);
  if (!a.out.empty()) ingest::save_snapshot(d, a.out);
  if (a.json) {
    std::cout << service::body({{"num_classes", d.num_classes()},
                                {"num_instances", d.size()},
                                {"totals",
                                 {{"correct", d.total_correct()},
                                  {"misclassified", d.total_misclassified()}}}});
  } else {
    std::cout << totals_line(d) << "\n";
  }
  return kExitOk;
}

struct GenerateArgs {
  ingest::SynthSpec spec;
  std::string out;
  bool snapshot = false;
  bool json = false;
};

int cmd_generate(const GenerateArgs& a) {
  auto table = ingest::synthesize(a.spec);
  const bool to_stdout = a.out.empty() || a.out == "-";
  std::ostream& report = to_stdout ? std::cerr : std::cout;
  if (a.snapshot) {
    if (to_stdout) throw Error(ErrorCode::InvalidArgument, "--snapshot requires --out");
    Dataset d = build_dataset(std::move(table));
    ingest::save_snapshot(d, a.out);
    double acc = static_cast<double>(d.total_correct()) / static_cast<double>(d.size());
    report << totals_line(d) << " accuracy=" << acc << "\n";
    return kExitOk;
  }
  std::uint64_t correct = 0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (predicted_class(table.probs(i)) == table.true_class(i)) ++correct;
  }
  if (to_stdout) {
    ingest::write_predictions(std::cout, table);
  } else {
    std::ofstream out(a.out, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + a.out + " for writing");
    ingest::write_predictions(out, table);
    if (!out) throw Error(ErrorCode::Io, "write to " + a.out + " failed");
  }
  const double acc = static_cast<double>(correct) / static_cast<double>(table.size());
  if (a.json) {
    report << service::body({{"num_classes", table.num_classes()},
                             {"num_instances", table.size()},
                             {"totals", {{"correct", correct}, {"misclassified", table.size() - correct}}},
                             {"accuracy", acc}});
  } else {
    report << "K=" << table.num_classes() << " N=" << table.size() << " correct=" << correct
           << " misclassified=" << table.size() - correct << " accuracy=" << acc << "\n";
  }
  return kExitOk;
}

struct SummarizeArgs {
  std::string snapshot;
  std::string sort = "index";
  std::string order = "asc";
  std::optional<std::size_t> top;
  bool json = false;
};

SortSpec parse_sort_args(const std::string& key, const std::string& order) {
  auto k = parse_sort_key(key);
  auto o = parse_sort_order(order);
  if (!k) throw Error(ErrorCode::InvalidArgument, "unknown sort key '" + key + "'");
  if (!o) throw Error(ErrorCode::InvalidArgument, "unknown sort order '" + order + "'");
  return {*k, *o};
}

int cmd_summarize(const SummarizeArgs& a) {
  Dataset d = ingest::load_snapshot(a.snapshot);
  SortSpec sort = parse_sort_args(a.sort, a.order);
  if (a.json) {
    std::cout << service::body(service::render_classes(d, sort, a.top));
    return kExitOk;
  }
  auto order = sort_classes(d, sort);
  if (a.top && *a.top < order.size()) order.resize(*a.top);
  if (order.empty()) return kExitOk;
  std::printf("%8s  %-24s %8s %8s %8s %8s %13s\n", "class_id", "label", "support", "correct",
              "inbound", "outbound", "mean_max_pred");
  for (ClassId c : order) {
    const auto& s = d.summaries()[c];
    std::printf("%8u  %-24s %8llu %8llu %8llu %8llu %13.6f\n", c, d.label(c).label.c_str(),
                static_cast<unsigned long long>(s.support), static_cast<unsigned long long>(s.correct),
                static_cast<unsigned long long>(s.inbound), static_cast<unsigned long long>(s.outbound),
                s.mean_max_pred);
  }
  return kExitOk;
}

struct ChordArgs {
  std::string snapshot;
  std::vector<ClassId> classes;
  std::size_t example_cap = kDefaultExampleCap;
  std::string out;
  bool json = false;
};

int cmd_chord(const ChordArgs& a) {
  Dataset d = ingest::load_snapshot(a.snapshot);
  auto flows = chord_flows(d, a.classes, a.example_cap);
  if (a.json || !a.out.empty()) {
    write_output(a.out, service::body(service::render_chord(d, flows)));
    return kExitOk;
  }
  for (std::size_t i = 0; i < flows.size(); ++i) {
    for (std::size_t j = 0; j < flows.size(); ++j) {
      std::cout << (j ? " " : "") << flows.flow(i, j);
    }
    std::cout << "\n";
  }
  return kExitOk;
}

struct ServeArgs {
  std::string listen = "127.0.0.1:8080";
  std::string snapshot_dir;
  std::string static_dir;
  std::vector<std::string> cors;
  bool demo = false;
  ingest::SynthSpec demo_spec;
  std::size_t max_upload = std::size_t{2} << 30;
  std::size_t max_classes = 10'000;
  std::size_t max_instances = 10'000'000;
  int threads = 8;
};

int cmd_serve(const ServeArgs& a) {
  service::ServerConfig config;
  auto colon = a.listen.rfind(':');
  if (colon == std::string::npos) throw Error(ErrorCode::InvalidArgument, "--listen must be host:port");
  config.host = a.listen.substr(0, colon);
  try {
    config.port = std::stoi(a.listen.substr(colon + 1));
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, "bad port in --listen");
  }
  if (!a.snapshot_dir.empty()) config.snapshot_dir = a.snapshot_dir;
  if (!a.static_dir.empty()) config.static_dir = a.static_dir;
  config.cors_origins = a.cors;
  config.max_upload_bytes = a.max_upload;
  config.limits.max_classes = a.max_classes;
  config.limits.max_instances = a.max_instances;
  config.threads = a.threads;

  // SIGINT/SIGTERM are consumed by a watcher thread that stops the server.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  service::Server server(config);
  if (!server.bind()) {
    std::cerr << "error: cannot listen on " << a.listen << "\n";
    return kExitUser;
  }
  std::size_t loaded = server.registry().load_snapshots();
  if (loaded) std::cerr << "loaded " << loaded << " snapshot(s)\n";
  if (a.demo) {
    auto entry = server.registry().add("demo", build_dataset(ingest::synthesize(a.demo_spec)));
    std::cerr << "registered demo dataset " << entry->dataset_id << " ("
              << totals_line(*entry->data) << ")\n";
  }

  std::thread watcher([&server, signals] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  std::cerr << "listening on http://" << config.host << ":" << server.port() << "\n";
  server.run();
  // run() also returns if the listener fails; wake the watcher either way
  pthread_kill(watcher.native_handle(), SIGTERM);
  watcher.join();
  std::cerr << "shut down\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explore multi-class classifier predictions at high class counts"};
  app.require_subcommand(1);

  IngestArgs ingest_args;
  auto* ingest_cmd = app.add_subcommand("ingest", "Validate a predictions CSV and write a snapshot");
  ingest_cmd->add_option("predictions", ingest_args.predictions, "Predictions CSV")->required();
  ingest_cmd->add_option("--labels", ingest_args.labels, "Labels CSV");
  ingest_cmd->add_option("--images", ingest_args.images, "Image manifest CSV");
  ingest_cmd->add_option("--out", ingest_args.out, "Snapshot path (.mcv)");
  ingest_cmd->add_option("--tolerance", ingest_args.tolerance, "Probability sum tolerance");
  ingest_cmd->add_flag("--json", ingest_args.json, "Print totals as JSON");

  GenerateArgs gen_args;
  auto* gen_cmd = app.add_subcommand("generate", "Write a seeded synthetic predictions dataset");
  gen_cmd->add_option("--classes", gen_args.spec.num_classes, "Class count K")->capture_default_str();
  gen_cmd->add_option("--instances", gen_args.spec.num_instances, "Instance count N")->capture_default_str();
  gen_cmd->add_option("--accuracy", gen_args.spec.accuracy, "Top-1 accuracy in (0,1]")->capture_default_str();
  gen_cmd->add_option("--spread", gen_args.spec.confusion_spread, "Cyclic successors each class confuses into")
      ->capture_default_str();
  gen_cmd->add_option("--concentration", gen_args.spec.concentration, "Sharpness of distributions")
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen_args.spec.seed, "RNG seed")->capture_default_str();
  gen_cmd->add_option("--out", gen_args.out, "Output path (CSV, or snapshot with --snapshot)");
  gen_cmd->add_flag("--snapshot", gen_args.snapshot, "Write an MCV1 snapshot instead of CSV");
  gen_cmd->add_flag("--json", gen_args.json, "Print the report as JSON");

  SummarizeArgs sum_args;
  auto* sum_cmd = app.add_subcommand("summarize", "Print per-class summaries from a snapshot");
  sum_cmd->add_option("snapshot", sum_args.snapshot, "Snapshot path")->required();
  sum_cmd->add_option("--sort", sum_args.sort, "index|correct|inbound|outbound|mean_max")->capture_default_str();
  sum_cmd->add_option("--order", sum_args.order, "asc|desc")->capture_default_str();
  sum_cmd->add_option("--top", sum_args.top, "Only the first n rows");
  sum_cmd->add_flag("--json", sum_args.json, "Emit the /classes JSON body");

  ChordArgs chord_args;
  auto* chord_cmd = app.add_subcommand("chord", "Misclassification flows among selected classes");
  chord_cmd->add_option("snapshot", chord_args.snapshot, "Snapshot path")->required();
  chord_cmd->add_option("--classes", chord_args.classes, "Comma-separated class ids")
      ->required()
      ->delimiter(',');
  chord_cmd->add_option("--example-cap", chord_args.example_cap, "Example ids kept per flow")
      ->capture_default_str();
  chord_cmd->add_option("--out", chord_args.out, "Write the JSON here instead of stdout");
  chord_cmd->add_flag("--json", chord_args.json, "Emit the /chord JSON body");

  ServeArgs serve_args;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP query service");
  serve_cmd->add_option("--listen", serve_args.listen, "host:port")->envname("CLASSVIEW_LISTEN")
      ->capture_default_str();
  serve_cmd->add_option("--snapshot-dir", serve_args.snapshot_dir, "Persist and reload snapshots here")
      ->envname("CLASSVIEW_SNAPSHOT_DIR");
  serve_cmd->add_option("--static-dir", serve_args.static_dir, "Serve the webapp bundle from here")
      ->envname("CLASSVIEW_STATIC_DIR");
  serve_cmd->add_option("--cors", serve_args.cors, "Allowed webapp origins")->delimiter(',')
      ->envname("CLASSVIEW_CORS");
  serve_cmd->add_flag("--demo", serve_args.demo, "Register a synthetic dataset at startup");
  serve_cmd->add_option("--demo-classes", serve_args.demo_spec.num_classes)->capture_default_str();
  serve_cmd->add_option("--demo-instances", serve_args.demo_spec.num_instances)->capture_default_str();
  serve_cmd->add_option("--demo-seed", serve_args.demo_spec.seed)->capture_default_str();
  serve_cmd->add_option("--max-upload", serve_args.max_upload, "Max upload bytes")->capture_default_str();
  serve_cmd->add_option("--max-classes", serve_args.max_classes)->capture_default_str();
  serve_cmd->add_option("--max-instances", serve_args.max_instances)->capture_default_str();
  serve_cmd->add_option("--threads", serve_args.threads, "HTTP worker threads")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUser;
  }

  try {
    if (*ingest_cmd) return cmd_ingest(ingest_args);
    if (*gen_cmd) return cmd_generate(gen_args);
    if (*sum_cmd) return cmd_summarize(sum_args);
    if (*chord_cmd) return cmd_chord(chord_args);
    if (*serve_cmd) return cmd_serve(serve_args);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kExitUser;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
