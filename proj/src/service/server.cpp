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

#include "classview/service/server.hpp"

#include <httplib.h>

#include <algorithm>

#include "classview/service/render.hpp"

namespace classview::service {

namespace {

constexpr const char* kJson = "application/json";

constexpr const char* kPlaceholderSvg =
    "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"128\" height=\"128\" viewBox=\"0 0 128 128\">"
    "<rect width=\"128\" height=\"128\" fill=\"#e5e7eb\"/>"
    "<path d=\"M24 96l28-36 20 24 12-14 20 26z\" fill=\"#9ca3af\"/>"
    "<circle cx=\"88\" cy=\"40\" r=\"10\" fill=\"#9ca3af\"/></svg>";

void send(httplib::Response& res, const Api::Response& r) {
  res.status = r.status;
  res.set_content(r.body, kJson);
}

}  // namespace

Server::Server(ServerConfig config)
    : config_(std::move(config)),
      registry_(config_.snapshot_dir),
      api_(registry_, config_.limits),
      http_(std::make_unique<httplib::Server>()) {
  install_routes();
}

Server::~Server() { stop(); }

void Server::install_routes() {
  auto& svr = *http_;
  const int threads = std::max(1, config_.threads);
  svr.new_task_queue = [threads] { return new httplib::ThreadPool(static_cast<std::size_t>(threads)); };
  svr.set_payload_max_length(config_.max_upload_bytes);
  // httplib also sets SO_REUSEPORT by default, which lets a second server
  // share an occupied port instead of failing to bind.
  svr.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof(yes));
  });

  svr.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return;
    std::string code = res.status == 413 ? "PayloadTooLarge"
                       : res.status == 404 ? "NotFound"
                                           : "HttpError";
    res.set_content(body(render_error(code, httplib::status_message(res.status))), kJson);
  });
  svr.set_exception_handler(
      [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string message = "internal error";
        try {
          std::rethrow_exception(ep);
        } catch (const std::exception& e) {
          message = e.what();
        } catch (...) {
        }
        res.status = 500;
        res.set_content(body(render_error("Internal", message)), kJson);
      });

  auto origins = config_.cors_origins;
  svr.set_post_routing_handler([origins](const httplib::Request& req, httplib::Response& res) {
    if (origins.empty()) return;
    const std::string origin = req.get_header_value("Origin");
    bool any = std::find(origins.begin(), origins.end(), "*") != origins.end();
    if (any || (!origin.empty() && std::find(origins.begin(), origins.end(), origin) != origins.end())) {
      res.set_header("Access-Control-Allow-Origin", any ? "*" : origin);
      res.set_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
    }
  });
  svr.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  svr.Get("/api/datasets", [this](const httplib::Request&, httplib::Response& res) {
    send(res, api_.list_datasets());
  });
  svr.Post("/api/datasets", [this](const httplib::Request& req, httplib::Response& res) {
    Api::Upload upload;
    if (req.is_multipart_form_data()) {
      if (!req.has_file("predictions")) {
        send(res, Api::error(400, "MissingPredictions", "multipart field 'predictions' is required"));
        return;
      }
      const auto& files = req.files;
      upload.predictions = files.find("predictions")->second.content;
      if (auto it = files.find("labels"); it != files.end()) upload.labels = it->second.content;
      if (auto it = files.find("images"); it != files.end()) upload.images = it->second.content;
      if (auto it = files.find("name"); it != files.end()) {
        upload.name = it->second.content;
      } else if (!files.find("predictions")->second.filename.empty()) {
        upload.name = files.find("predictions")->second.filename;
      }
    } else {
      upload.predictions = req.body;
      upload.name = req.get_param_value("name");
    }
    send(res, api_.create_dataset(upload));
  });
  svr.Post("/api/demo", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, api_.create_demo(req.params));
  });
  svr.Delete(R"(/api/datasets/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, api_.remove_dataset(req.matches[1]));
  });
  svr.Get(R"(/api/datasets/([^/]+)/classes)", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, api_.classes(req.matches[1], req.params));
  });
  svr.Get(R"(/api/datasets/([^/]+)/overview)", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, api_.overview(req.matches[1], req.params));
  });
  svr.Get(R"(/api/datasets/([^/]+)/window)", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, api_.window(req.matches[1], req.params));
  });
  svr.Get(R"(/api/datasets/([^/]+)/chord)", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, api_.chord(req.matches[1], req.params));
  });
  svr.Get(R"(/api/datasets/([^/]+)/instances/([^/]+))",
          [this](const httplib::Request& req, httplib::Response& res) {
            send(res, api_.instance(req.matches[1], req.matches[2]));
          });
  svr.Get(std::string(kPlaceholderImageUrl), [](const httplib::Request&, httplib::Response& res) {
    res.set_content(kPlaceholderSvg, "image/svg+xml");
  });
  if (config_.static_dir) svr.set_mount_point("/", config_.static_dir->string());
}

bool Server::bind() {
  if (config_.port == 0) {
    port_ = http_->bind_to_any_port(config_.host);
    return port_ > 0;
  }
  if (!http_->bind_to_port(config_.host, config_.port)) return false;
  port_ = config_.port;
  return true;
}

bool Server::run() { return http_->listen_after_bind(); }

void Server::stop() {
  if (http_) http_->stop();
}

bool Server::running() const { return http_->is_running(); }

}  // namespace classview::service
