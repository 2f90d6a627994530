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

#include <doctest.h>
#include <httplib.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>

#include "classview/ingest/snapshot.hpp"
#include "classview/service/server.hpp"
#include "fixtures.hpp"
#include "process.hpp"

using namespace classview;
using testing::run;
using nlohmann::json;

namespace {

const std::string kBin = CLASSVIEW_BINARY;
const std::filesystem::path kData = CLASSVIEW_TEST_DATA;

std::filesystem::path scratch() {
  static const auto dir = [] {
    auto d = std::filesystem::temp_directory_path() / ("classview_cli_" + std::to_string(::getpid()));
    std::filesystem::remove_all(d);
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

std::string t6_snapshot() {
  auto path = scratch() / "t6.mcv";
  auto r = run({kBin, "ingest", (kData / "t6_predictions.csv").string(), "--labels",
                (kData / "t6_labels.csv").string(), "--images", (kData / "t6_images.csv").string(),
                "--out", path.string()});
  REQUIRE(r.exit_code == 0);
  return path.string();
}

int port_from(const std::string& line) { return std::stoi(line.substr(line.rfind(':') + 1)); }

}  // namespace

TEST_CASE("ingest prints totals") {
  auto r = run({kBin, "ingest", (kData / "t6_predictions.csv").string()});
  CHECK(r.exit_code == 0);
  CHECK(r.out == "K=3 N=6 correct=3 misclassified=3\n");
  auto j = run({kBin, "ingest", (kData / "t6_predictions.csv").string(), "--json"});
  CHECK(j.exit_code == 0);
  CHECK(json::parse(j.out)["totals"]["correct"] == 3);
}

TEST_CASE("ingest failures exit 1 with the error") {
  auto missing = run({kBin, "ingest", (scratch() / "absent.csv").string()});
  CHECK(missing.exit_code == 1);
  CHECK(missing.err.find("Io") != std::string::npos);
  auto bad = run({kBin, "ingest", (kData / "bad_sum.csv").string()});
  CHECK(bad.exit_code == 1);
  CHECK(bad.err.find("SumTolerance") != std::string::npos);
  CHECK(bad.err.find("line 4") != std::string::npos);
  CHECK(run({kBin, "ingest"}).exit_code == 1);
  CHECK(run({kBin, "frobnicate"}).exit_code == 1);
}

TEST_CASE("ingest writes a loadable snapshot") {
  auto path = t6_snapshot();
  Dataset d = ingest::load_snapshot(path);
  CHECK(d.records() == testing::t6_table());
  CHECK(d.label(2).label == "pickup truck");
}

TEST_CASE("summarize --json matches the classes endpoint") {
  auto path = t6_snapshot();
  auto r = run({kBin, "summarize", path, "--sort", "outbound", "--order", "desc", "--json"});
  REQUIRE(r.exit_code == 0);

  service::Registry registry;
  service::Api api(registry, {});
  std::ifstream labels(kData / "t6_labels.csv");
  std::ifstream images(kData / "t6_images.csv");
  std::string l((std::istreambuf_iterator<char>(labels)), {});
  std::string i((std::istreambuf_iterator<char>(images)), {});
  auto created = api.create_dataset({testing::t6_csv(), l, i, "t6"});
  std::string id = json::parse(created.body)["dataset_id"];
  auto expected = api.classes(id, {{"sort", "outbound"}, {"order", "desc"}});
  CHECK(r.out == expected.body);

  auto table = run({kBin, "summarize", path});
  CHECK(table.exit_code == 0);
  CHECK(table.out.find("tabby cat") != std::string::npos);
  auto none = run({kBin, "summarize", path, "--top", "0"});
  CHECK(none.exit_code == 0);
  CHECK(none.out.empty());
  CHECK(run({kBin, "summarize", path, "--sort", "banana"}).exit_code == 1);
}

TEST_CASE("chord prints the flow matrix") {
  auto path = t6_snapshot();
  auto r = run({kBin, "chord", path, "--classes", "0,1"});
  CHECK(r.exit_code == 0);
  CHECK(r.out == "0 1\n1 0\n");
  CHECK(run({kBin, "chord", path, "--classes", "0,0"}).exit_code == 1);
}

TEST_CASE("corrupt snapshot exits 1") {
  auto path = t6_snapshot();
  std::string bytes;
  {
    std::ifstream in(path, std::ios::binary);
    bytes.assign(std::istreambuf_iterator<char>(in), {});
  }
  bytes[40] ^= 0x10;
  auto corrupt = scratch() / "corrupt.mcv";
  std::ofstream(corrupt, std::ios::binary) << bytes;
  auto r = run({kBin, "summarize", corrupt.string()});
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("ChecksumMismatch") != std::string::npos);
}

TEST_CASE("generate is reproducible") {
  auto a = run({kBin, "generate", "--classes", "30", "--instances", "400", "--seed", "9"});
  auto b = run({kBin, "generate", "--classes", "30", "--instances", "400", "--seed", "9"});
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.starts_with("instance_id,true_class,p0,"));
  CHECK(a.err.starts_with("K=30 N=400 correct="));
  CHECK(run({kBin, "generate", "--accuracy", "0"}).exit_code == 1);
}

TEST_CASE("serve with --demo registers one dataset and stops on SIGINT") {
  testing::Child serve({kBin, "serve", "--listen", "127.0.0.1:0", "--demo", "--demo-classes", "50",
                        "--demo-instances", "1000"});
  auto line = serve.wait_for_stderr("listening on");
  REQUIRE(line);
  httplib::Client cli("127.0.0.1", port_from(*line));
  auto res = cli.Get("/api/datasets");
  REQUIRE(res);
  auto list = json::parse(res->body);
  REQUIRE(list.size() == 1);
  CHECK(list[0]["num_classes"] == 50);
  serve.signal(SIGINT);
  auto done = serve.wait();
  CHECK(done.exit_code == 0);
}

TEST_CASE("serve on an occupied port exits 1") {
  service::ServerConfig config;
  config.port = 0;
  service::Server holder(config);
  REQUIRE(holder.bind());
  auto r = run({kBin, "serve", "--listen", "127.0.0.1:" + std::to_string(holder.port())});
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("cannot listen") != std::string::npos);
}
