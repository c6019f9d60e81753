// Copyright 2026 The qmorra Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// HTTP binding of PlayService on cpp-httplib.

#include <string>

// Eigen must precede httplib: glibc <resolv.h> defines a `_res` macro.
#include "qmorra/service.hpp"

#include "httplib.h"

namespace qmorra {

struct HttpOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string cors_origin{};  // empty: no CORS headers
};

inline void install_routes(httplib::Server& server, PlayService& service, const HttpOptions& opts) {
  auto cors = [opts](httplib::Response& res) {
    if (opts.cors_origin.empty()) return;
    res.set_header("Access-Control-Allow-Origin", opts.cors_origin);
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  };
  auto handler = [&service, cors](const httplib::Request& req, httplib::Response& res) {
    HttpRequest r{req.method, req.path, {}, req.body};
    for (const auto& [k, v] : req.params) r.query[k] = v;
    const HttpResponse out = service.handle(r);
    res.status = out.status;
    cors(res);
    res.set_content(out.body.dump(), "application/json");
  };
  server.Get(R"(/api/.*)", handler);
  server.Post(R"(/api/.*)", handler);
  server.Options(R"(/api/.*)", [cors](const httplib::Request&, httplib::Response& res) {
    cors(res);
    res.status = 204;
  });
}

// Blocks until the server stops.
inline bool serve(PlayService& service, const HttpOptions& opts) {
  httplib::Server server;
  install_routes(server, service, opts);
  return server.listen(opts.host, opts.port);
}

}  // namespace qmorra
