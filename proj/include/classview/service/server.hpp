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

#pragma once

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "classview/ingest/csv.hpp"
#include "classview/service/registry.hpp"

namespace httplib {
class Server;
}

namespace classview::service {

/// HTTP-independent request handlers. Every method returns the status code
/// and the exact body the HTTP layer sends.
class Api {
 public:
  using Params = std::multimap<std::string, std::string>;

  struct Response {
    int status = 200;
    std::string body;
  };

  struct Upload {
    std::string_view predictions;
    std::optional<std::string_view> labels;
    std::optional<std::string_view> images;
    std::string name;
  };

  Api(Registry& registry, ingest::ParseOptions limits);

  Response list_datasets() const;
  Response create_dataset(const Upload& upload);
  Response create_demo(const Params& params);
  Response remove_dataset(const std::string& id);
  Response classes(const std::string& id, const Params& params) const;
  Response overview(const std::string& id, const Params& params) const;
  Response window(const std::string& id, const Params& params) const;
  Response chord(const std::string& id, const Params& params) const;
  Response instance(const std::string& id, const std::string& instance_id) const;

  static Response error(int status, std::string_view code, std::string_view message,
                        std::optional<std::size_t> line = std::nullopt);

 private:
  Registry& registry_;
  ingest::ParseOptions limits_;
};

struct ServerConfig {
  std::string host = "127.0.0.1";
  int port = 8080;  ///< 0 picks a free port
  std::optional<std::filesystem::path> snapshot_dir;
  std::size_t max_upload_bytes = std::size_t{2} << 30;
  ingest::ParseOptions limits;
  std::vector<std::string> cors_origins;
  std::optional<std::filesystem::path> static_dir;
  int threads = 8;
};

class Server {
 public:
  explicit Server(ServerConfig config);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  Registry& registry() noexcept { return registry_; }
  Api& api() noexcept { return api_; }

  /// Binds the listening socket; returns false when the address is unavailable.
  bool bind();
  int port() const noexcept { return port_; }
  /// Serves until stop(); call after bind().
  bool run();
  void stop();
  bool running() const;

 private:
  void install_routes();

  ServerConfig config_;
  Registry registry_;
  Api api_;
  std::unique_ptr<httplib::Server> http_;
  int port_ = -1;
};

}  // namespace classview::service
