// Copyright 2026 The geobench Authors
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


#include "mock_endpoint.hpp"

#include <httplib.h>

#include <chrono>
#include <regex>
#include <stdexcept>

namespace geobench::testing {
namespace {

int directive(const std::string& query, const std::string& name, int fallback) {
  const std::regex re("#" + name + "=([0-9]+)");
  std::smatch m;
  return std::regex_search(query, m, re) ? std::stoi(m[1]) : fallback;
}

std::string format_of(const std::string& query) {
  std::smatch m;
  static const std::regex re("#format=([a-z]+)");
  return std::regex_search(query, m, re) ? m[1].str() : "json";
}

std::string document(const std::string& format, int rows) {
  std::string out;
  if (format == "xml") {
    out = "<?xml version=\"1.0\"?>\n<sparql xmlns=\"http://www.w3.org/2005/sparql-results#\">"
          "<head><variable name=\"s\"/></head><results>";
    for (int i = 0; i < rows; ++i) {
      out += "<result><binding name=\"s\"><uri>http://example.org/" + std::to_string(i) + "</uri></binding></result>";
    }
    return out + "</results></sparql>\n";
  }
  if (format == "csv" || format == "tsv") {
    out = format == "csv" ? "s\r\n" : "?s\n";
    for (int i = 0; i < rows; ++i) out += "http://example.org/" + std::to_string(i) + (format == "csv" ? "\r\n" : "\n");
    return out;
  }
  return json_result_document(rows);
}

std::string media_type(const std::string& format) {
  if (format == "xml") return "application/sparql-results+xml";
  if (format == "csv") return "text/csv";
  if (format == "tsv") return "text/tab-separated-values";
  return "application/sparql-results+json";
}

}  // namespace

std::string json_result_document(int rows) {
  std::string out = R"({"head":{"vars":["s"]},"results":{"bindings":[)";
  for (int i = 0; i < rows; ++i) {
    if (i > 0) out += ",";
    out += R"({"s":{"type":"uri","value":"http://example.org/)" + std::to_string(i) + R"("}})";
  }
  return out + "]}}\n";
}

struct MockEndpoint::Impl {
  httplib::Server server;
};

MockEndpoint::MockEndpoint() : impl_(std::make_unique<Impl>()) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    const int now = ++in_flight_;
    int prev = max_in_flight_;
    while (now > prev && !max_in_flight_.compare_exchange_weak(prev, now)) {
    }
    struct Leave {
      std::atomic<int>& n;
      ~Leave() { --n; }
    } leave{in_flight_};

    Request r;
    r.method = req.method;
    r.content_type = req.get_header_value("Content-Type");
    r.in_flight_at_start = now;
    if (r.content_type.rfind("application/sparql-query", 0) == 0) {
      r.query = req.body;
    } else {
      r.query = req.get_param_value("query");
    }
    for (std::size_t i = 0; i < req.get_param_value_count("default-graph-uri"); ++i) {
      r.default_graphs.push_back(req.get_param_value("default-graph-uri", i));
    }
    const std::string query = r.query;
    int occurrence = 0;
    {
      std::lock_guard lock(mu_);
      log_.push_back(r);
      occurrence = ++seen_[query];
    }

    if (query.rfind("ASK", 0) == 0) {
      const bool ready = asks_until_ready.fetch_sub(1) <= 0;
      res.set_content(ready ? R"({"head":{},"boolean":true})" : "starting", ready ? "application/sparql-results+json" : "text/plain");
      if (!ready) res.status = 503;
      return;
    }
    if (on_query) on_query(query);

    const bool slow = occurrence >= directive(query, "slow_from", 1);
    const auto until = [&](int ms) {
      return std::chrono::steady_clock::now() + std::chrono::milliseconds(slow ? ms : 0);
    };
    const auto sleep_end = until(directive(query, "sleep", 0));
    while (std::chrono::steady_clock::now() < sleep_end && !stopping_) {
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }

    const std::string format = format_of(query);
    int rows = directive(query, "rows", 0);
    if (rows_for) rows = rows_for(query).value_or(rows);
    std::string body = document(format, rows);
    if (query.find("#truncate") != std::string::npos) body.resize(body.size() / 2);
    res.status = directive(query, "status", 200);
    if (res.status != 200) {
      res.set_content("mock failure", "text/plain");
      return;
    }

    const int stream_ms = slow ? directive(query, "stream", 0) : 0;
    if (stream_ms == 0) {
      res.set_content(body, media_type(format));
      return;
    }
    const auto stream_end = until(stream_ms);
    res.set_chunked_content_provider(
        media_type(format), [this, body, stream_end](std::size_t, httplib::DataSink& sink) {
          if (std::chrono::steady_clock::now() < stream_end && !stopping_) {
            std::this_thread::sleep_for(std::chrono::milliseconds(20));
            return sink.write(" ", 1);
          }
          sink.write(body.data(), body.size());
          sink.done();
          return true;
        });
  };
  impl_->server.Get("/sparql", handler);
  impl_->server.Post("/sparql", handler);
  port_ = impl_->server.bind_to_any_port("127.0.0.1");
  if (port_ <= 0) throw std::runtime_error("mock endpoint cannot bind");
  thread_ = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

MockEndpoint::~MockEndpoint() {
  stopping_ = true;
  impl_->server.stop();
  thread_.join();
}

std::string MockEndpoint::url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/sparql"; }

std::vector<MockEndpoint::Request> MockEndpoint::requests() const {
  std::lock_guard lock(mu_);
  return log_;
}

std::vector<MockEndpoint::Request> MockEndpoint::queries() const {
  std::vector<Request> out;
  for (auto& r : requests()) {
    if (r.query.rfind("ASK", 0) != 0) out.push_back(r);
  }
  return out;
}

}  // namespace geobench::testing
