/* Copyright 2026 The copygrade Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Minimal JSON-over-HTTP POST used by the sentiment client and the
// generation harness.

#ifndef COPYGRADE_HTTP_HPP_
#define COPYGRADE_HTTP_HPP_

#include <chrono>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "httplib.h"

#include "copygrade/error.hpp"

namespace copygrade::http {

struct Url {
  std::string scheme;
  std::string host;
  int port = 0;
  std::string path;

  std::string origin() const {
    return scheme + "://" + host + ":" + std::to_string(port);
  }
};

inline Url parse_url(std::string_view text) {
  Url url;
  const auto sep = text.find("://");
  if (sep == std::string_view::npos) {
    throw Error("invalid URL \"" + std::string(text) + "\": missing scheme");
  }
  url.scheme = std::string(text.substr(0, sep));
  if (url.scheme != "http" && url.scheme != "https") {
    throw Error("invalid URL \"" + std::string(text) +
                "\": scheme must be http or https");
  }
  std::string_view rest = text.substr(sep + 3);
  const auto slash = rest.find('/');
  std::string_view authority = rest.substr(0, slash);
  url.path = slash == std::string_view::npos ? "/" : std::string(rest.substr(slash));
  if (authority.empty()) {
    throw Error("invalid URL \"" + std::string(text) + "\": missing host");
  }
  const auto colon = authority.rfind(':');
  if (colon != std::string_view::npos && authority.back() != ']') {
    url.host = std::string(authority.substr(0, colon));
    const auto port_text = authority.substr(colon + 1);
    try {
      std::size_t used = 0;
      url.port = std::stoi(std::string(port_text), &used);
      if (used != port_text.size() || url.port <= 0 || url.port > 65535) {
        throw std::out_of_range("port");
      }
    } catch (const std::exception&) {
      throw Error("invalid URL \"" + std::string(text) + "\": bad port");
    }
  } else {
    url.host = std::string(authority);
    url.port = url.scheme == "https" ? 443 : 80;
  }
  return url;
}

struct Response {
  int status = 0;
  std::string body;
};

// POSTs `body` as application/json. Transport failures (refused connection,
// timeout) raise RetryableError; HTTP error statuses are returned to the
// caller.
inline Response post_json(const Url& url, const std::string& body,
                          std::chrono::milliseconds timeout,
                          const httplib::Headers& headers = {}) {
  httplib::Client client(url.origin());
  if (!client.is_valid()) {
    throw Error("cannot create HTTP client for " + url.origin() +
                (url.scheme == "https" ? " (built without TLS support)" : ""));
  }
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  auto res = client.Post(url.path, headers, body, "application/json");
  if (!res) {
    throw RetryableError("request to " + url.origin() + url.path +
                         " failed: " + httplib::to_string(res.error()));
  }
  return {res->status, res->body};
}

}  // namespace copygrade::http

#endif  // COPYGRADE_HTTP_HPP_
