// Copyright 2026 The incidentqa Authors.
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

#include <charconv>

#include <httplib.h>

#include "incidentqa/error.hpp"
#include "incidentqa/service.hpp"

namespace incidentqa {

namespace {

void send(httplib::Response& res, const ServiceResponse& r) {
  res.status = r.status;
  res.set_content(r.body.dump(2, ' ', false, nlohmann::json::error_handler_t::replace),
                  "application/json; charset=utf-8");
}

}  // namespace

ServerOptions parse_bind_address(std::string_view text, ServerOptions base) {
  if (text.empty()) return base;
  const auto colon = text.rfind(':');
  if (colon == std::string_view::npos) {
    base.host = std::string(text);
    return base;
  }
  if (colon > 0) base.host = std::string(text.substr(0, colon));
  const auto port = text.substr(colon + 1);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), value);
  if (ec != std::errc() || ptr != port.data() + port.size() || value < 0 || value > 65535) {
    throw Error(ErrorCode::InvalidArgument, "bad bind address '" + std::string(text) + "'");
  }
  base.port = value;
  return base;
}

struct HttpServer::Impl {
  Impl(const Service& s, ServerOptions o) : service(s), options(std::move(o)) {}

  const Service& service;
  ServerOptions options;
  httplib::Server server;
};

HttpServer::HttpServer(const Service& service, ServerOptions options)
    : impl_(std::make_unique<Impl>(service, std::move(options))) {
  auto& srv = impl_->server;
  const Service& svc = impl_->service;
  srv.Post("/api/query", [&svc](const httplib::Request& req, httplib::Response& res) {
    send(res, svc.handle_query(req.body));
  });
  srv.Get("/api/incidents", [&svc](const httplib::Request& req, httplib::Response& res) {
    QueryParams params(req.params.begin(), req.params.end());
    send(res, svc.list_incidents(params));
  });
  srv.Get("/api/stats", [&svc](const httplib::Request&, httplib::Response& res) {
    send(res, svc.stats());
  });
  srv.set_socket_options([](socket_t sock) {
    int yes = 1;
    ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  srv.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("ok", "text/plain");
  });
  if (!impl_->options.static_dir.empty() && !srv.set_mount_point("/", impl_->options.static_dir)) {
    throw Error(ErrorCode::StorageFailure, "cannot serve static files from " + impl_->options.static_dir);
  }
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind() {
  auto& srv = impl_->server;
  const auto& o = impl_->options;
  const int port = o.port == 0 ? srv.bind_to_any_port(o.host) : (srv.bind_to_port(o.host, o.port) ? o.port : -1);
  if (port < 0) {
    throw Error(ErrorCode::SystemFailure, "cannot bind " + o.host + ":" + std::to_string(o.port));
  }
  return port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace incidentqa
